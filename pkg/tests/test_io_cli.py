import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from rcp import io
from rcp.cli import main
from rcp.geometry import CoWedge, Disc, PolygonWithHoles, Wedge

SHAPES = Path(__file__).resolve().parents[1] / "shapes"


def test_shape_roundtrip(tmp_path):
    shapes = [Wedge.from_angle(1.0, 0.2), CoWedge.from_angle(4.0, 0.3, (1, 2)), Disc((1, -1), 2.0),
              PolygonWithHoles.normalized([(0, 0), (3, 0), (3, 3), (0, 3)], [[(1, 1), (2, 1), (2, 2), (1, 2)]])]
    for s in shapes:
        io.save_shape(s, tmp_path / "s.json")
        back = io.load_shape(tmp_path / "s.json")
        assert io.shape_to_dict(back) == pytest.approx(io.shape_to_dict(s)) if not isinstance(s, PolygonWithHoles) \
            else back == s


def test_bundled_shapes_validate():
    files = sorted(SHAPES.glob("*.json"))
    assert files
    for f in files:
        io.load_shape(f)


def test_schema_rejects_bad_specs():
    for bad in ({"type": "disc"}, {"type": "wedge", "apex": [0, 0]}, {"type": "blob"},
                {"type": "polygon", "outer": [[0, 0], [1, 1]]}, {"type": "disc", "radius": -1}):
        with pytest.raises(jsonschema.ValidationError):
            io.shape_from_dict(bad)


def test_points_roundtrip(tmp_path, rng):
    P = rng.uniform(0, 1, (50, 2))
    io.save_points(P, tmp_path / "p.csv")
    assert np.array_equal(io.load_points(tmp_path / "p.csv"), P)
    (tmp_path / "h.csv").write_text("x,y\n1,2\n3,4\n")
    assert io.load_points(tmp_path / "h.csv").tolist() == [[1, 2], [3, 4]]


def test_generate(tmp_path):
    assert main(["generate", "--n", "0", "--out", str(tmp_path / "a")]) == 0
    assert (tmp_path / "a" / "points.csv").read_text() == ""
    for d in ("b", "c"):
        assert main(["generate", "--n", "100", "--seed", "9", "--out", str(tmp_path / d)]) == 0
    b = (tmp_path / "b" / "points.csv").read_bytes()
    assert b == (tmp_path / "c" / "points.csv").read_bytes()
    P = io.load_points(tmp_path / "b" / "points.csv")
    assert len(P) == 100 and (P >= 0).all() and (P <= 1).all()


def test_verify_two_points(tmp_path):
    io.save_points([(0.1, 0.2), (0.5, 0.3)], tmp_path / "p.csv")
    rc = main(["verify", "--shape", str(SHAPES / "wedge.json"), "--data", str(tmp_path / "p.csv"),
               "--queries", "50", "--out", str(tmp_path)])
    assert rc == 0


def test_verify_fault_injection_writes_replay(tmp_path):
    args = ["verify", "--shape", str(SHAPES / "wedge.json"), "--n", "80", "--queries", "200",
            "--out", str(tmp_path)]
    assert main(args + ["--inject-fault"]) == 1
    replay = tmp_path / "replay_wedge.json"
    spec = json.loads(replay.read_text())
    assert spec["expected"] != spec["got"]
    assert main(["verify", "--replay", str(replay)]) == 1
    assert main(args) == 0


def test_default_suite_passes(tmp_path):
    assert main(["verify", "--n", "40", "--queries", "40", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "report.csv").exists()


def test_build_query_stats_bench(tmp_path):
    shape = str(SHAPES / "disc.json")
    assert main(["build", "--shape", shape, "--n", "60", "--out", str(tmp_path), "--dump-svg"]) == 0
    assert (tmp_path / "structure.svg").exists() and (tmp_path / "candidates.csv").exists()
    assert main(["query", "--shape", str(SHAPES / "lshape.json"), "--n", "60", "--queries", "5",
                 "--out", str(tmp_path)]) == 0
    assert len((tmp_path / "answers.csv").read_text().splitlines()) == 6
    assert main(["stats", "--shape", str(SHAPES / "wedge.json"), "--n", "40,80", "--out", str(tmp_path)]) == 0
    assert "candidates" in (tmp_path / "slopes.csv").read_text()
    assert main(["bench", "--shape", str(SHAPES / "cowedge.json"), "--n", "40,80", "--queries", "20",
                 "--out", str(tmp_path)]) == 0


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["nope"])
    assert e.value.code == 2
    assert main(["build", "--out", str(tmp_path)]) == 2
    assert main(["build", "--shape", str(tmp_path / "missing.json"), "--out", str(tmp_path)]) == 2
    (tmp_path / "bad.json").write_text('{"type": "disc"}')
    assert main(["build", "--shape", str(tmp_path / "bad.json"), "--out", str(tmp_path)]) == 2
    assert main(["stats", "--shape", str(SHAPES / "wedge.json"), "--n", "40", "--out", str(tmp_path)]) == 2
