"""Command line entry point: ``rcp generate|build|query|verify|stats|bench``."""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import jsonschema
import numpy as np

from . import io
from .candidates import cowedge_candidates, short_candidates, wedge_candidates
from .cowedge_rcp import CoWedgeRcp
from .geometry import CoWedge, Disc, GeometryError, PolygonWithHoles, Wedge
from .oracle import RangePredicate, rcp_answer
from .polygon_rcp import PolygonRcp
from .smooth_rcp import SmoothRcp, compute_tau
from .wedge_rcp import WedgeRcp
from .workloads import KINDS, WorkloadConfig, generate, queries

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


DEFAULT_SUITE = {
    "wedge": {"type": "wedge", "theta": 1.0, "rotation": 0.3},
    "cowedge": {"type": "cowedge", "theta": 4.2, "rotation": 0.3},
    "square": {"type": "polygon", "outer": [[0, 0], [1, 0], [1, 1], [0, 1]]},
    "disc": {"type": "disc", "radius": 1.0},
}


def candidates_for(shape, P):
    if isinstance(shape, Wedge):
        return wedge_candidates(P, shape)
    if isinstance(shape, CoWedge):
        return cowedge_candidates(P, shape)
    if isinstance(shape, Disc):
        return short_candidates(P, shape, compute_tau(shape), cap=2000)
    return None


def build_structure(shape, P, seed=0, cands=None):
    if isinstance(shape, Wedge):
        return WedgeRcp(P, shape, cands, seed=seed)
    if isinstance(shape, CoWedge):
        return CoWedgeRcp(P, shape, cands, seed=seed)
    if isinstance(shape, PolygonWithHoles):
        return PolygonRcp(P, shape, seed=seed)
    if isinstance(shape, Disc):
        return SmoothRcp(P, shape, seed=seed, cands=cands)
    raise UsageError(f"no query structure for shape {type(shape).__name__}")


def extent(shape) -> float:
    if isinstance(shape, Disc):
        return shape.radius
    if isinstance(shape, PolygonWithHoles):
        return shape.diameter
    return 1.0


def default_data(shape, n, seed, kind=None, side=None) -> np.ndarray:
    if isinstance(shape, Disc):
        cfg = WorkloadConfig(kind or "uniform", n, side or 0.6 * shape.radius * math.sqrt(max(n, 1)), seed=seed)
    elif isinstance(shape, PolygonWithHoles):
        cfg = WorkloadConfig(kind or "mixed", n, side or 8.0 * max(1.0, shape.diameter / 3), seed=seed)
    else:
        cfg = WorkloadConfig(kind or "uniform", n, side or 10.0, seed=seed)
    return generate(cfg)


def _ns(args) -> list:
    if args.n is None:
        return []
    try:
        return [int(v) for v in str(args.n).split(",") if v]
    except ValueError:
        raise UsageError(f"--n expects integers, got {args.n!r}") from None


def _shape(args, required=True):
    if args.shape is None:
        if required:
            raise UsageError("--shape is required")
        return None
    return io.load_shape(args.shape)


def _points(args, shape, n=None):
    if args.data is not None:
        return io.load_points(args.data)
    ns = _ns(args)
    n = n if n is not None else (ns[0] if ns else 200)
    return default_data(shape, n, args.seed, args.kind, args.side)


def _out(args) -> Path:
    p = Path(args.out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _pair_row(q, pp) -> dict:
    row = {"qx": repr(float(q[0])), "qy": repr(float(q[1]))}
    if pp is None:
        return {**row, "ax": "", "ay": "", "bx": "", "by": "", "length": ""}
    return {**row, "ax": repr(pp.a[0]), "ay": repr(pp.a[1]), "bx": repr(pp.b[0]), "by": repr(pp.b[1]),
            "length": repr(pp.length)}


def _dump_svg(st, path) -> None:
    if isinstance(st, (WedgeRcp, CoWedgeRcp)):
        st.sub.to_svg(path)
    elif isinstance(st, SmoothRcp):
        io.curves_svg(st.d2.arcs, st.d2.bbox, path)
    elif isinstance(st, PolygonRcp):
        pts = [p for qc in st.quad.values() for p in st.S[qc.idx]]
        lo, hi = st.S.min(axis=0), st.S.max(axis=0)
        io.curves_svg([], (tuple(lo), tuple(hi)), path, points=pts)


# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    n = _ns(args)[0] if _ns(args) else 100
    if args.kind is not None and args.kind not in KINDS:
        raise UsageError(f"--kind must be one of {KINDS}")
    P = generate(WorkloadConfig(args.kind or "uniform", n, args.side or 1.0, seed=args.seed)) if n else np.zeros((0, 2))
    path = _out(args) / "points.csv"
    io.save_points(P, path)
    print(path)
    return EXIT_OK


def cmd_build(args) -> int:
    shape = _shape(args)
    P = _points(args, shape)
    out = _out(args)
    t = time.perf_counter()
    cands = candidates_for(shape, P)
    st = build_structure(shape, P, args.seed, cands)
    row = {**st.stats(), "build_s": time.perf_counter() - t}
    io.write_rows([row], out / "stats.csv")
    if cands is not None:
        cands.to_csv(out / "candidates.csv")
    if args.dump_svg:
        _dump_svg(st, out / "structure.svg")
    print(json.dumps(row))
    return EXIT_OK


def cmd_query(args) -> int:
    shape = _shape(args)
    P = _points(args, shape)
    st = build_structure(shape, P, args.seed)
    Q = np.array([args.at]) if args.at else queries(P, args.queries, extent(shape), args.seed + 1)
    rows = [_pair_row(q, st.query(tuple(q))) for q in Q]
    io.write_rows(rows, _out(args) / "answers.csv")
    for r in rows[:10]:
        print(",".join(r.values()))
    return EXIT_OK


def _verify_one(name, shape, P, Q, seed, out, workers, fault=False):
    cands = candidates_for(shape, P)
    if fault:
        if cands is None or not len(cands):
            raise UsageError("fault injection needs a non-empty candidate set")
        cands = cands.subset(list(cands)[1:], source="corrupted")
    st = build_structure(shape, P, seed, cands)
    got = [st.query(tuple(q)) for q in Q]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as ex:
        want = list(ex.map(lambda q: rcp_answer(P, RangePredicate(shape, tuple(q))), Q))
    bad = [k for k in range(len(Q)) if got[k] != want[k]]
    row = {"check": f"oracle[{name}]", "status": "pass" if not bad else "FAIL",
           "n": len(P), "queries": len(Q), "mismatches": len(bad)}
    row.update({k: v for k, v in st.stats().items() if k not in row})
    if bad:
        k = bad[0]
        replay = {"shape": io.shape_to_dict(shape), "points": P.tolist(), "q": list(map(float, Q[k])),
                  "seed": seed, "expected": _pair_row(Q[k], want[k]), "got": _pair_row(Q[k], got[k]),
                  "fault": fault}
        path = out / f"replay_{name}.json"
        path.write_text(json.dumps(replay, indent=1))
        row["replay"] = str(path)
    return row


def _replay(args) -> int:
    spec = json.loads(Path(args.replay).read_text())
    shape = io.shape_from_dict(spec["shape"])
    P = np.array(spec["points"], dtype=float).reshape(-1, 2)
    cands = candidates_for(shape, P)
    if spec.get("fault"):
        cands = cands.subset(list(cands)[1:], source="corrupted")
    st = build_structure(shape, P, spec["seed"], cands)
    q = tuple(spec["q"])
    got, want = st.query(q), rcp_answer(P, RangePredicate(shape, q))
    print("expected", want, "\ngot     ", got)
    return EXIT_OK if got == want else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.replay:
        return _replay(args)
    out = _out(args)
    rows = []
    if args.shape is None:
        ns = _ns(args)
        for name, spec in DEFAULT_SUITE.items():
            shape = io.shape_from_dict(spec)
            P = default_data(shape, ns[0] if ns else 60, args.seed, args.kind, args.side)
            Q = queries(P, args.queries, extent(shape), args.seed + 1)
            rows.append(_verify_one(name, shape, P, Q, args.seed, out, args.workers, args.inject_fault))
    else:
        shape = _shape(args)
        P = _points(args, shape)
        Q = queries(P, args.queries, extent(shape), args.seed + 1)
        rows.append(_verify_one(Path(args.shape).stem, shape, P, Q, args.seed, out, args.workers,
                                args.inject_fault))
    io.write_rows(rows, out / "report.csv")
    for r in rows:
        print(f"{r['check']}: {r['status']} ({r['mismatches']} mismatches / {r['queries']} queries)")
    return EXIT_OK if all(r["status"] == "pass" for r in rows) else EXIT_FAIL


def _slopes(rows) -> dict:
    ns = np.log([r["n"] for r in rows])
    out = {}
    for key, v in rows[0].items():
        vals = [r.get(key) for r in rows]
        # per-step maxima and parameters are not size counts
        if key in ("n", "R", "tau", "k", "delta") or key.startswith("max_") or not all(isinstance(x, (int, float)) and x > 0 for x in vals):
            continue
        out[key] = float(np.polyfit(ns, np.log(vals), 1)[0])
    return out


def cmd_stats(args) -> int:
    shape = _shape(args)
    ns = _ns(args) or [50, 100, 200, 400]
    if len(ns) < 2:
        raise UsageError("stats needs at least two --n values, e.g. --n 50,100,200")
    out = _out(args)
    rows = []
    for n in ns:
        P = default_data(shape, n, args.seed, args.kind, args.side)
        t = time.perf_counter()
        st = build_structure(shape, P, args.seed)
        rows.append({**st.stats(), "n": n, "build_s": time.perf_counter() - t})
    io.write_rows(rows, out / "stats.csv")
    slopes = _slopes(rows)
    io.write_rows([{"count": k, "loglog_slope": v} for k, v in slopes.items()], out / "slopes.csv")
    if args.dump_svg:
        for k in slopes:
            io.series_svg(ns, [r[k] for r in rows], out / f"series_{k}.svg", title=k)
    for k, v in slopes.items():
        print(f"{k:28s} slope {v:6.3f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    shape = _shape(args)
    ns = _ns(args) or [50, 100, 200, 400]
    out = _out(args)
    rows = []
    for n in ns:
        P = default_data(shape, n, args.seed, args.kind, args.side)
        t = time.perf_counter()
        st = build_structure(shape, P, args.seed)
        build_s = time.perf_counter() - t
        times = []
        for q in queries(P, args.queries, extent(shape), args.seed + 1):
            t = time.perf_counter()
            st.query(tuple(q))
            times.append(time.perf_counter() - t)
        p50, p90, p99 = np.percentile(times, [50, 90, 99]) * 1e6
        rows.append({"n": n, "build_s": build_s, "p50_us": p50, "p90_us": p90, "p99_us": p99})
        print(f"n={n:6d} build {build_s:7.2f}s  p50 {p50:9.1f}us  p90 {p90:9.1f}us")
    io.write_rows(rows, out / "bench.csv")
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "build": cmd_build, "query": cmd_query,
            "verify": cmd_verify, "stats": cmd_stats, "bench": cmd_bench}


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rcp", description="Range closest-pair queries for translates.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--shape", help="shape JSON file")
    ap.add_argument("--data", help="points CSV (x,y per line)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n", help="point count, or comma separated series for stats/bench")
    ap.add_argument("--queries", type=int, default=100)
    ap.add_argument("--out", default=".")
    ap.add_argument("--dump-svg", action="store_true")
    ap.add_argument("--kind", help=f"workload kind: {', '.join(KINDS)}")
    ap.add_argument("--side", type=float, help="side of the workload box")
    ap.add_argument("--at", type=float, nargs=2, metavar=("QX", "QY"), help="single query parameter")
    ap.add_argument("--workers", type=int, default=1, help="threads for oracle checks")
    ap.add_argument("--inject-fault", action="store_true", help="drop the shortest candidate before building")
    ap.add_argument("--replay", help="re-run a failure artifact written by verify")
    return ap


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    if args.seed < 0:
        print("rcp: --seed must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, OSError, ValueError, jsonschema.ValidationError) as e:
        kind = "invalid input: " if isinstance(e, GeometryError) else ""
        print(f"rcp: {kind}{e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
