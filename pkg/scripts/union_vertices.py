"""Vertices of the union of lenses for growing prefixes of short disc candidates."""
import argparse
import math
from pathlib import Path

from rcp.candidates import short_candidates
from rcp.geometry import Disc
from rcp.io import write_rows
from rcp.smooth_rcp import MembershipStructure, _Circles, compute_tau
from rcp.workloads import uniform


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=900)
    ap.add_argument("--rs", type=int, nargs="+", default=[16, 32, 64, 128, 256, 512])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--out", type=Path, default=Path("results/union_vertices.csv"))
    args = ap.parse_args()
    d = Disc((0.0, 0.0), 1.0)
    rows = []
    for seed in range(args.seeds):
        S = uniform(args.n, side=0.9 * math.sqrt(args.n), seed=50 + seed)
        pairs = sorted(short_candidates(S, d, compute_tau(d), cap=2000), key=lambda p: p.a[0] + p.b[0])
        circles = _Circles(S, d)
        for r in args.rs:
            if r > len(pairs):
                break
            M = MembershipStructure(pairs[:r], circles)
            rows.append({"seed": seed, "r": r, "vertices": M.n_vertices, "per_pair": M.n_vertices / r})
            print(f"seed={seed} r={r:4d} vertices={M.n_vertices} per pair={M.n_vertices / r:.3f}")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_rows(rows, args.out)


if __name__ == "__main__":
    main()
