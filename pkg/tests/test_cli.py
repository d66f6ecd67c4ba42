import json
from fractions import Fraction as F

import pytest

from ogrady_walls import cli
from ogrady_walls.enumeration import DEFAULT_WINDOW, enumerate_walls
from ogrady_walls.mukai import MukaiVector
from ogrady_walls.report import load_walls, record_from_dict, record_to_dict


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_flopping(capsys):
    code, out, _ = run(capsys, "classify", "--d", "1", "--v", "2,2,0", "--u", "1,0,1")
    assert code == 0
    assert "kind=Flopping" in out and "ts=true" in out
    assert out.index("witness SC 2,1,1") < out.index("witness SC -1,0,-1")


def test_classify_bn(capsys):
    code, out, _ = run(capsys, "classify", "--d", "2", "--v", "2,0,-2", "--u", "3,-2,3")
    assert code == 0
    assert "kind=DivisorialBN" in out and "witness BN 3,-2,3" in out


def test_classify_not_hyperbolic(capsys):
    code, _, err = run(capsys, "classify", "--d", "1", "--v", "2,0,-2", "--u", "1,-1,1")
    assert code == 2 and "NotHyperbolic" in err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--d", "1", "--v", "2,2,0", "--u", "1,0,1", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["classification"]["kind"] == "Flopping"
    assert obj["curve"]["center_u"] == "-1/2" and obj["curve"]["radius_sq"] == "5/4"


def test_classify_not_ogrady(capsys):
    code, _, err = run(capsys, "classify", "--d", "1", "--v", "3,0,-3", "--u", "1,0,1")
    assert code == 2 and "UnsupportedVector" in err


@pytest.mark.parametrize("d,mov,nef,lag", [
    (1, "<H~, H~-B>", "<H~, 3H~-2B>", "lagrangian-boundary: yes (H~-B)"),
    (2, "<H~, 3H~-4B>", "<H~, H~-B>", "lagrangian-boundary: no"),
    (3, "<H~, 2H~-3B>", "<H~, 2H~-3B>", "lagrangian-boundary: no"),
])
def test_cones(capsys, d, mov, nef, lag):
    code, out, _ = run(capsys, "cones", "--d", str(d))
    assert code == 0
    assert f"mov = {mov}" in out and f"nef = {nef}" in out and lag in out


def test_cones_json(capsys):
    code, out, _ = run(capsys, "cones", "--d", "31", "--format", "json")
    obj = json.loads(out)
    assert obj["nef"]["notes"] and obj["lagrangian_boundary"] is None


def test_walls_svg_flopping_circle(capsys):
    code, out, _ = run(capsys, "walls", "--d", "1", "--v", "2,2,0", "--format", "svg")
    assert code == 0
    # centre -1/2 -> x = 40 + 1.5*200, radius 1.118.. -> 223.607 px, flopping red
    assert 'd="M 116.393 340 A 223.607 223.607 0 0 1 563.607 340" stroke="#d62728"' in out


def test_walls_json_twist(capsys):
    _, a, _ = run(capsys, "walls", "--d", "1", "--v", "2,2,0", "--format", "json")
    _, b, _ = run(capsys, "walls", "--d", "1", "--v", "2,0,-2", "--format", "json", "--u-min", "-3", "--u-max", "0")
    ra, rb = load_walls(a), load_walls(b)
    shifted = [(r.curve.translated(-1), r.classification.kind) for r in ra]
    assert shifted == [(r.curve, r.classification.kind) for r in rb]
    hdr = json.loads(a)["header"]
    assert hdr["schema"] == 1 and hdr["window"] == {"u_min": "-2", "u_max": "1", "t_max": "3/2"}
    assert set(hdr) == {"schema", "v", "d", "window", "bounds", "tool_version"}


def test_walls_window_empty(capsys):
    code, _, err = run(capsys, "walls", "--d", "1", "--v", "2,2,0", "--t-max", "0")
    assert code == 2 and "WindowEmpty" in err


def test_walls_unwritable(capsys, tmp_path):
    code, _, _ = run(capsys, "walls", "--d", "1", "--v", "2,2,0", "--out", str(tmp_path / "no" / "x.json"))
    assert code == 2


def test_walls_writes_file(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, out, _ = run(capsys, "walls", "--d", "1", "--format", "json", "--out", str(path))
    assert code == 0 and out == "" and load_walls(path.read_text())


@pytest.mark.parametrize("u,ray,chamber", [
    ("-1/2", "ray=9H~-4B", "chamber: nef interior"),
    ("0", "ray=H~", "boundary ray H~"),
    ("-1", "ray=3H~-2B", "chamber: nef boundary"),
])
def test_bm(capsys, u, ray, chamber):
    code, out, _ = run(capsys, "bm", "--d", "1", "--v", "2,0,-2", "--u", u, "--t", "1")
    assert code == 0 and ray in out and chamber in out and "(positive)" in out


def test_bm_exact_output(capsys):
    _, out, _ = run(capsys, "bm", "--d", "1", "--v", "2,0,-2", "--u", "-1/2", "--t", "1")
    assert "w_sigma=(8/65, -18/65, 8/65)" in out and "q=8/65" in out


def test_bm_vanishing(capsys):
    code, _, err = run(capsys, "bm", "--d", "1", "--v", "2,0,2", "--u", "0", "--t", "1")
    assert code == 2


def test_bm_with_wall_file(capsys, tmp_path):
    path = tmp_path / "w.json"
    run(capsys, "walls", "--d", "1", "--v", "2,0,-2", "--format", "json", "--out", str(path))
    code, out, _ = run(capsys, "bm", "--d", "1", "--v", "2,0,-2", "--u", "-3/2", "--t", "1/2",
                       "--walls", str(path))
    assert code == 0 and "inside walls: Circle(center=-3/2, radius^2=5/4)" in out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["classify", "--d", "1", "--v", "2,x,0", "--u", "1,0,1"],
    ["classify", "--d", "0", "--v", "2,0,-2", "--u", "1,0,1"],
    ["classify", "--d", "1", "--v", "2,0,-2"],
    ["bm", "--d", "1", "--u", "0", "--t", "0"],
    ["walls", "--format", "png"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_config_file_and_env(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# d=1 diagram\nd = 1\nv = 2,2,0\nt_max = 3/2\nformat = json\n")
    monkeypatch.setenv(cli.CONFIG_ENV, str(cfg))
    code, out, _ = run(capsys, "walls")
    assert code == 0 and json.loads(out)["header"]["v"] == [2, 2, 0]
    # flags win over the file
    code, out, _ = run(capsys, "walls", "--format", "text")
    assert code == 0 and out.startswith("v=2,2,0 d=1")


def test_config_errors(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    code, _, err = run(capsys, "cones", "--config", str(bad))
    assert code == 1 and "unknown config key" in err
    code, _, _ = run(capsys, "cones", "--config", str(tmp_path / "missing.cfg"))
    assert code == 1


def test_svg_deterministic(capsys):
    _, a, _ = run(capsys, "walls", "--d", "2", "--format", "svg")
    _, b, _ = run(capsys, "walls", "--d", "2", "--format", "svg")
    assert a == b


def test_record_round_trip():
    for d in (1, 2, 3):
        for r in enumerate_walls(MukaiVector(2, 0, -2), d, DEFAULT_WINDOW):
            assert record_from_dict(json.loads(json.dumps(record_to_dict(r)))) == r


def test_load_walls_schema_check():
    with pytest.raises(ValueError):
        load_walls(json.dumps({"header": {"schema": 2}, "walls": []}))
