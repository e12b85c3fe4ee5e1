"""Median query time of each structure as n grows."""
import argparse
import math
import time
from pathlib import Path

import numpy as np

from rcp.cowedge_rcp import CoWedgeRcp
from rcp.geometry import CoWedge, Disc, PolygonWithHoles, Wedge
from rcp.io import write_rows
from rcp.polygon_rcp import PolygonRcp
from rcp.smooth_rcp import SmoothRcp
from rcp.wedge_rcp import WedgeRcp
from rcp.workloads import mixed, queries, uniform

SQUARE = PolygonWithHoles.normalized([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
CASES = {
    "wedge": (lambda n: uniform(n, 10.0, seed=n), lambda S: WedgeRcp(S, Wedge.from_angle(1.0, 0.3)), 2.0),
    "cowedge": (lambda n: uniform(n, 10.0, seed=n), lambda S: CoWedgeRcp(S, CoWedge.from_angle(4.2, 0.3)), 2.0),
    "polygon": (lambda n: mixed(n, 8.0, seed=n), lambda S: PolygonRcp(S, SQUARE), SQUARE.diameter),
    "disc": (lambda n: uniform(n, 0.6 * math.sqrt(n), seed=n), lambda S: SmoothRcp(S, Disc((0.0, 0.0), 1.0)), 1.0),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shapes", nargs="+", default=list(CASES), choices=list(CASES))
    ap.add_argument("--ns", type=int, nargs="+", default=[100, 200, 400, 800])
    ap.add_argument("--queries", type=int, default=400)
    ap.add_argument("--out", type=Path, default=Path("results/query_scaling.csv"))
    args = ap.parse_args()
    rows = []
    for name in args.shapes:
        data, make, margin = CASES[name]
        for n in args.ns:
            S = data(n)
            t0 = time.perf_counter()
            st = make(S)
            build = time.perf_counter() - t0
            times = []
            for q in queries(S, args.queries, margin, seed=1):
                t0 = time.perf_counter()
                st.query(tuple(q))
                times.append(time.perf_counter() - t0)
            med = float(np.median(times))
            rows.append({"shape": name, "n": n, "build_s": build, "median_query_us": 1e6 * med})
            print(f"{name:8s} n={n:5d} build={build:.2f}s median query={1e6 * med:.1f}us")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_rows(rows, args.out)


if __name__ == "__main__":
    main()
