"""Candidate-set size per point for wedges, co-wedges and halfplanes as n doubles."""
import argparse
import math
from pathlib import Path

from rcp.candidates import cowedge_candidates, halfplane_candidates, wedge_candidates
from rcp.geometry import CoWedge, Halfplane, Wedge
from rcp.io import write_rows
from rcp.workloads import WorkloadConfig, generate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=[50, 100, 200, 400, 800])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--kind", default="uniform")
    ap.add_argument("--out", type=Path, default=Path("results/candidate_growth.csv"))
    args = ap.parse_args()
    shapes = {
        "wedge": (Wedge.from_angle(1.0, 0.3), wedge_candidates),
        "cowedge": (CoWedge.from_angle(4.2, 0.3), cowedge_candidates),
        "halfplane": (Halfplane((0.0, 0.0), (math.cos(0.3), math.sin(0.3))), halfplane_candidates),
    }
    rows = []
    for n in args.ns:
        for seed in range(args.seeds):
            S = generate(WorkloadConfig(args.kind, n, 10.0, seed=seed))
            for name, (shape, enum) in shapes.items():
                m = len(enum(S, shape))
                rows.append({"shape": name, "n": n, "seed": seed, "candidates": m, "per_point": m / n})
                print(f"{name:9s} n={n:5d} seed={seed} m={m} m/n={m / n:.3f}")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_rows(rows, args.out)


if __name__ == "__main__":
    main()
