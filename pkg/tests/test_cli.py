import io
import json
import pathlib

import pytest

from schnyder_kit.cli import main, _default_jobs

import instances as I

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(argv):
    out = io.StringIO()
    rc = main(argv, out=out)
    return rc, out.getvalue()


@pytest.fixture
def cube_doc(tmp_path):
    p = tmp_path / "cube.json"
    p.write_text(json.dumps({"map": I.cube().to_json_obj(), "d": 4}))
    return str(p)


def test_validate_plain_map(cube_doc):
    rc, text = run(["validate", cube_doc])
    assert rc == 0
    assert json.loads(text) == {"ok": True, "checked": ["angulation"]}


def test_orient_convert_validate_chain(cube_doc, tmp_path):
    rc, text = run(["orient", cube_doc, "--d", "4", "--even", "--minimal"])
    assert rc == 0
    orient_path = tmp_path / "orient.json"
    orient_path.write_text(text)

    rc, text = run(["convert", str(orient_path),
                    "--from", "orientation", "--to", "schnyder"])
    assert rc == 0
    schnyder_path = tmp_path / "schnyder.json"
    schnyder_path.write_text(text)

    rc, text = run(["validate", str(schnyder_path)])
    assert rc == 0
    assert json.loads(text)["checked"] == ["angulation", "schnyder"]

    # converting back recovers the original orientation payload
    rc, text = run(["convert", str(schnyder_path),
                    "--from", "schnyder", "--to", "orientation"])
    assert rc == 0
    assert json.loads(text)["orientation"] == \
        json.loads(orient_path.read_text())["orientation"]


def test_validate_rejects_corrupted_schnyder(cube_doc, tmp_path):
    run_chain = lambda p: run(["convert", p, "--from", "orientation",
                               "--to", "schnyder"])[1]
    _, orient_text = run(["orient", cube_doc, "--d", "4", "--even"])
    op = tmp_path / "o.json"
    op.write_text(orient_text)
    doc = json.loads(run_chain(str(op)))
    colors = [list(c) for c in doc["schnyder"]["dart_colors"]]
    swap_at = next(k for k in range(1, len(colors))
                   if colors[k] != colors[0])
    colors[0], colors[swap_at] = colors[swap_at], colors[0]
    doc["schnyder"]["dart_colors"] = colors
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    rc, text = run(["validate", str(bad)])
    report = json.loads(text)
    assert rc == 1 and report["ok"] is False and report["violations"]


def test_dualize_and_draw_golden(cube_doc, tmp_path):
    _, orient_text = run(["orient", cube_doc, "--d", "4", "--even",
                          "--minimal"])
    op = tmp_path / "o.json"
    op.write_text(orient_text)
    _, schn_text = run(["convert", str(op), "--from", "orientation",
                        "--to", "schnyder"])
    sp = tmp_path / "s.json"
    sp.write_text(schn_text)

    rc, text = run(["dualize", str(sp)])
    assert rc == 0
    dual = json.loads(text)
    assert "regular_decomposition" in dual
    dp = tmp_path / "dual.json"
    dp.write_text(text)

    rc, _ = run(["validate", str(dp), "--as", "regular"])
    assert rc == 0

    svg = tmp_path / "c.svg"
    js = tmp_path / "c.json"
    rc, text = run(["draw", str(dp), "--with-root",
                    "--svg", str(svg), "--json", str(js)])
    assert rc == 0 and text == ""
    assert json.loads(js.read_text()) == \
        json.loads((GOLDEN / "cube_drawing.json").read_text())
    assert svg.read_text() == (GOLDEN / "cube_drawing.svg").read_text()


def test_draw_straightline_coordinates(cube_doc, tmp_path):
    _, orient_text = run(["orient", cube_doc, "--d", "4", "--even"])
    (tmp_path / "o.json").write_text(orient_text)
    _, dual_text = run(["dualize", str(tmp_path / "o.json")])
    dp = tmp_path / "dual.json"
    dp.write_text(dual_text)
    rc, text = run(["draw", str(dp), "--mode", "straightline"])
    assert rc == 0
    out = json.loads(text)
    assert out["mode"] == "straightline" and out["n"] == 6
    assert out["coords"] == {"0": [1, 0], "2": [4, 1], "3": [3, 4],
                             "4": [0, 3], "5": [2, 2]}


def test_lattice_counts(cube_doc, tmp_path):
    rc, text = run(["lattice", cube_doc, "--d", "4", "count"])
    assert rc == 0 and json.loads(text) == {"count": 3}
    k4 = tmp_path / "k4.json"
    k4.write_text(json.dumps(I.tetrahedron().to_json_obj()))
    rc, text = run(["lattice", str(k4), "--d", "3", "count"])
    assert rc == 0 and json.loads(text) == {"count": 1}
    rc, text = run(["lattice", cube_doc, "--d", "4", "enumerate"])
    assert len(json.loads(text)["elements"]) == 3
    rc, text = run(["lattice", cube_doc, "--d", "4", "min"])
    assert rc == 0 and "orientation" in json.loads(text)


def test_sample_deterministic_with_report(tmp_path):
    rep = tmp_path / "rep.json"
    argv = ["sample", "--n", "6", "--count", "5", "--seed", "7",
            "--report", str(rep)]
    rc1, t1 = run(argv)
    first_report = rep.read_text()
    rc2, t2 = run(argv)
    assert rc1 == rc2 == 0
    assert t1 == t2 and rep.read_text() == first_report
    out = json.loads(t1)
    assert out["n"] == 6 and out["accepted"] == 5
    full = json.loads(first_report)
    assert len(full["part_counts"]) == 5
    assert set(full["summary"]) >= {"part", "full", "reduced_width",
                                    "reduced_height", "acceptance_rate"}


def test_enumerate_outputs_validate(tmp_path):
    rc, text = run(["enumerate", "--n", "3"])
    assert rc == 0
    out = json.loads(text)
    assert out["count"] == 2 and len(out["pairs"]) == 2
    for k, pair in enumerate(out["pairs"]):
        p = tmp_path / f"pair{k}.json"
        p.write_text(json.dumps(pair))
        rc, report = run(["validate", str(p)])
        assert rc == 0 and json.loads(report)["ok"]


def test_error_objects_and_exit_codes(cube_doc, tmp_path):
    rc, text = run(["validate", str(tmp_path / "missing.json")])
    assert rc == 1
    assert json.loads(text)["error"]["kind"] == "FileNotFound"

    rc, text = run(["orient", cube_doc, "--d", "3"])
    assert rc == 1
    err = json.loads(text)["error"]
    assert err["kind"] == "NotDAngulation" and err["stage"] == "planar_map"

    with pytest.raises(SystemExit) as ei:
        main(["orient"])            # missing required arguments
    assert ei.value.code == 2
    with pytest.raises(SystemExit) as ei:
        main(["no-such-command"])
    assert ei.value.code == 2


def test_jobs_default_env(monkeypatch):
    monkeypatch.delenv("SCHNYDER_KIT_JOBS", raising=False)
    assert _default_jobs() == 1
    monkeypatch.setenv("SCHNYDER_KIT_JOBS", "3")
    assert _default_jobs() == 3
