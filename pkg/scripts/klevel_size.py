"""Size of the <=k-level structure at constant point density."""
import argparse
import math
from pathlib import Path

from rcp.geometry import Disc
from rcp.io import write_rows
from rcp.smooth_rcp import K_LEVEL, D2Structure, _Circles
from rcp.workloads import uniform


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=[50, 100, 200, 400, 800])
    ap.add_argument("--k", type=int, default=K_LEVEL)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--out", type=Path, default=Path("results/klevel_size.csv"))
    args = ap.parse_args()
    d = Disc((0.0, 0.0), 1.0)
    rows = []
    for seed in range(args.seeds):
        for n in args.ns:
            S = uniform(n, side=math.sqrt(n), seed=70 + seed)
            d2 = D2Structure(_Circles(S, d), args.k)
            size = d2.n_vertices + len(d2.arcs)
            rows.append({"seed": seed, "n": n, "k": args.k, "vertices": d2.n_vertices, "arcs": len(d2.arcs),
                         "per_kn": size / (args.k * n)})
            print(f"seed={seed} n={n:4d} vertices={d2.n_vertices} arcs={len(d2.arcs)} size/(kn)={size / (args.k * n):.3f}")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_rows(rows, args.out)


if __name__ == "__main__":
    main()
