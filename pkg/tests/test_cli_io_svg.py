import json

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from beacon_route import cli, io
from beacon_route.decomposition import vertical_decomposition
from beacon_route.geometry import Point, generate_random_orthogonal, pt
from beacon_route.spiral import SpiralSpec, generate_spiral, witness_stuck
from beacon_route.svg import Scene, emit_svg, render
from beacon_route.synthesis import synthesize
from helpers import FIXTURES, load_fixture

RECT = str(FIXTURES / "rectangle.json")
L = str(FIXTURES / "l_shape.json")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


# --------------------------------------------------------------------------
# io


def test_point_formats():
    assert io.parse_point([3, 4]) == pt(3, 4)
    assert io.parse_point([1, 2, -3, 4]) == Point(mpq(1, 2), mpq(-3, 4))
    assert io.dump_point(Point(mpq(1, 2), mpq(5))) == [1, 2, 5, 1]


@pytest.mark.parametrize("raw", [[1], [1, 2, 3], [1, 0, 2, 1], [1.5, 2], "1,2", [True, 1]])
def test_bad_points(raw):
    with pytest.raises(io.FormatError):
        io.parse_point(raw)


def test_polygon_doc_needs_vertices():
    with pytest.raises(io.FormatError):
        io.parse_polygon_doc({"verts": []})


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 24), st.integers(0, 10_000))
def test_polygon_round_trip(n, seed):
    poly = generate_random_orthogonal(2 * (n // 2), seed)
    text = io.dumps(io.polygon_doc(poly))
    back = io.parse_polygon_doc(json.loads(text))
    assert back.vertices == poly.vertices
    assert io.dumps(io.polygon_doc(back)) == text


def test_rational_round_trip():
    sp = generate_spiral(SpiralSpec.default(1))
    beacons, _, _ = synthesize(sp.poly)
    doc = json.loads(io.dumps([io.dump_point(b) for b in beacons]))
    assert io.parse_points(doc) == list(beacons.beacons)


# --------------------------------------------------------------------------
# cli


def test_synthesize_square(capsys):
    code, doc = run(capsys, "synthesize", RECT)
    assert code == 0
    assert doc["beacons"] == [] and doc["budget"]["ok"]
    assert doc["manifest"]["command"] == "synthesize"
    assert doc["manifest"]["inputs"] == [RECT]


def test_manifest_digest(capsys):
    _, doc = run(capsys, "decompose", L)
    man = doc.pop("manifest")
    assert man["output_digest"] == io.digest(io.dumps(doc))


def test_validate_and_perturb(tmp_path, capsys):
    plus = tmp_path / "plus.json"
    plus.write_text(json.dumps({"vertices": [
        [0, 0], [2, 0], [2, -2], [4, -2], [4, 0], [6, 0], [6, 2], [4, 2], [4, 4], [2, 4], [2, 2], [0, 2]]}))
    code, doc = run(capsys, "validate", str(plus))
    assert code == 1 and doc["error"] == "GeneralPositionViolation"
    code, doc = run(capsys, "validate", str(plus), "--perturb")
    assert code == 0 and doc["perturbed"] and doc["n"] == 12


def test_validate_reports_epsilon(capsys):
    code, doc = run(capsys, "validate", L)
    assert code == 0 and doc["epsilon"] == [1, 14] and doc["reflex"] == 1


def test_decompose(capsys):
    code, doc = run(capsys, "decompose", L)
    assert code == 0
    assert doc["dual_tree_edges"] == [[0, 1]]
    assert len(doc["rectangles"]) == 2 and len(doc["verticals"]) == 1


def test_attract(capsys):
    code, doc = run(capsys, "attract", L, "2,1", "1/2,3")
    assert code == 0 and doc["status"] == "reached"
    assert [e["kind"] for e in doc["events"]] == ["straight", "slide", "straight"]


def test_attract_outside_point(capsys):
    assert cli.main(["attract", L, "2,3", "1/2,1/2"]) == 1


def test_usage_errors(capsys):
    assert cli.main([]) == 2
    assert cli.main(["attract", L, "two,1", "1,1"]) == 2
    assert cli.main(["synthesize", "/nonexistent/poly.json"]) == 2
    assert cli.main(["corpus", "--max-n", "6"]) == 2
    assert cli.main(["spiral", "--sections", "1", "--lengths", "a,b"]) == 2


def test_spiral_then_verify(tmp_path, capsys):
    out = tmp_path / "spiral.json"
    code = cli.main(["spiral", "--sections", "1", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["certificate"]["ok"] and len(doc["vertices"]) == 10
    code, rep = run(capsys, "verify", str(out), "--samples", "10")
    assert code == 0 and rep["failures"] == [] and len(rep["beacons"]) == 2


def test_spiral_bad_lengths_is_check_failure(capsys):
    assert cli.main(["spiral", "--sections", "1", "--lengths", "10,10,10,10"]) == 1


def test_verify_with_beacon_file(tmp_path, capsys):
    bfile = tmp_path / "b.json"
    bfile.write_text(json.dumps({"beacons": []}))
    code, rep = run(capsys, "verify", str(FIXTURES / "basis_n8.json"), str(bfile), "--samples", "5")
    assert rep["pairs_checked"] > 0
    assert code == (0 if not rep["failures"] else 1)


def test_corpus_small(capsys):
    code, doc = run(capsys, "corpus", "--count", "3", "--seed", "7", "--max-n", "12", "--samples", "5")
    assert code == 0
    assert doc["polygons"] == 3 and doc["budget_violations"] == 0 and doc["routing_failures"] == 0
    assert [r["seed"] for r in doc["rows"]] == [7, 8, 9]


def test_commands_are_deterministic(capsys):
    a = run(capsys, "verify", L, "--samples", "8", "--seed", "3")
    b = run(capsys, "verify", L, "--samples", "8", "--seed", "3")
    assert a == b


def test_internal_error_dumps_state(monkeypatch, capsys):
    def boom(_):
        raise RuntimeError("boom")
    monkeypatch.setattr(cli, "synthesize", boom)
    assert cli.main(["synthesize", L]) == 3
    err = capsys.readouterr().err
    path = err.strip().split("state dump: ")[1]
    dump = json.loads(open(path).read())
    assert dump["error"] == "RuntimeError"


# --------------------------------------------------------------------------
# svg


def test_rectangle_scene():
    svg = render(Scene(load_fixture("rectangle")))
    assert svg.count("<polygon") == 1 and 'class="beacon"' not in svg


def test_svg_is_deterministic(tmp_path):
    poly = load_fixture("basis_n12")
    beacons, trace, st = synthesize(poly)
    scene = Scene(poly, st.d, shaded=[0], beacons=beacons.beacons, title="n12")
    emit_svg(scene, tmp_path / "a.svg")
    emit_svg(scene, tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()
    assert (tmp_path / "a.svg").read_text().count('class="beacon"') == 2


def test_spiral_scene_warps_axes(capsys):
    sp = generate_spiral(SpiralSpec.default(1))
    beacons, _, _ = synthesize(sp.poly)
    svg = render(Scene(sp.poly, vertical_decomposition(sp.poly), beacons=beacons.beacons,
                       paths=[witness_stuck(sp, 1, True)]))
    assert "warped" in svg
    assert svg.count('class="beacon"') == 2 and svg.count('class="path"') == 1


def test_cli_svg_output(tmp_path, capsys):
    out = tmp_path / "s.svg"
    assert cli.main(["synthesize", str(FIXTURES / "basis_n12.json"), "--svg", str(out)]) == 0
    assert out.read_text().startswith("<?xml")
