"""Scenario runner, canonical JSON, SVG emitter and the CLI."""

import json
import math

import numpy as np
import pytest

from ovalkit.cli import main as cli_main
from ovalkit.errors import InvalidScenarioError
from ovalkit.scenario import (
    GALLERY_SCENARIO,
    ResultDocument,
    Scenario,
    emit_json,
    parse_document,
    run_scenario,
    validate_scenario,
)
from ovalkit.svg import emit_svg


def _doc(payload):
    return run_scenario(validate_scenario(payload))


def test_empty_d_list_progenitor_only():
    doc = _doc({"curve": {"kind": "cayley", "a": 1.0, "b": 1.0}, "d": [], "samples": 400})
    assert doc.offsets == [] and doc.singular_points == []
    assert doc.progenitor.total_points > 0
    assert doc.diagnostics["shape_class"] == "Lemniscate"


def test_side_selection():
    doc = _doc({"curve": {"kind": "circle", "r": 1.0}, "d": [0.5], "side": "left", "samples": 200})
    assert [o["side"] for o in doc.offsets] == ["left"]
    doc = _doc({"curve": {"kind": "circle", "r": 1.0}, "d": [0.5], "side": "both", "samples": 200})
    assert [o["side"] for o in doc.offsets] == ["left", "right"]


def test_envelope_overlay_matches_offsets():
    doc = _doc(
        {
            "curve": {"kind": "ellipse", "a": 5.0, "b": 3.0},
            "d": [1.0],
            "samples": 500,
            "envelope": True,
        }
    )
    assert len(doc.envelopes) == 1
    env_pts = doc.envelopes[0]["polyline"].all_points()
    off_pts = np.concatenate([o["polyline"].all_points() for o in doc.offsets])
    from .oracles import hausdorff

    assert hausdorff(env_pts, off_pts) <= 1e-9


def test_contour_overlay():
    doc = _doc({"curve": {"kind": "cayley", "a": 3.0, "b": 2.0}, "d": [], "contour": True, "samples": 300})
    assert len(doc.contours["loops"].arcs) == 4
    assert len(doc.contours["true_oval"].arcs) == 2


def test_gallery_scenario_runs_and_has_singularities():
    doc = run_scenario(GALLERY_SCENARIO)
    assert len(doc.offsets) == 10  # 5 distances x 2 sides
    kinds = {p.kind for p in doc.singular_points}
    assert "crunode" in kinds and "cusp" in kinds
    ys = np.array([p.location[1] for p in doc.singular_points])
    locs = np.array([p.location for p in doc.singular_points])
    mirrored = locs * [1, -1]
    for m in mirrored:
        assert np.min(np.linalg.norm(locs - m, axis=1)) <= 1e-8


def test_determinism_byte_identical():
    a = emit_json(run_scenario(GALLERY_SCENARIO))
    b = emit_json(run_scenario(GALLERY_SCENARIO))
    assert a == b


def test_round_trip():
    doc = _doc(
        {
            "curve": {"kind": "cayley", "a": 1.0, "b": 1.0},
            "d": [0.5],
            "samples": 300,
            "singular": True,
        }
    )
    text = emit_json(doc)
    doc2 = parse_document(text)
    assert doc2 == doc
    assert emit_json(doc2) == text


def test_document_residual_gate():
    doc = _doc({"curve": {"kind": "circle", "r": 1.0}, "d": [0.5], "samples": 200, "singular": True})
    for p in doc.singular_points:
        tol = 1e-9 if p.kind == "cusp" else 1e-10
        assert p.residual <= tol


@pytest.mark.parametrize(
    "payload,field",
    [
        ({"curve": {"kind": "hyperbola"}}, "curve.kind"),
        ({"curve": {"kind": "cayley", "a": -1, "b": 1}}, "curve.a"),
        ({"curve": {"kind": "cayley", "a": 1, "b": 1}, "d": [0.0]}, "d[0]"),
        ({"curve": {"kind": "cayley", "a": 1, "b": 1}, "side": "up"}, "side"),
        ({"curve": {"kind": "cayley", "a": 1, "b": 1}, "samples": 1}, "samples"),
        ({"curve": {"kind": "cayley", "a": 1, "b": 1}, "t_range": [1.0, 1.0]}, "t_range"),
        ({"curve": {"kind": "preset", "name": "dragon"}}, "curve.name"),
        ({"curve": {"kind": "circle", "r": 1.0}, "contour": True}, "contour"),
    ],
)
def test_validation_field_paths(payload, field):
    with pytest.raises(InvalidScenarioError) as err:
        validate_scenario(payload)
    assert err.value.field == field


# -- svg -----------------------------------------------------------------------


def test_svg_single_arc_no_markers():
    doc = _doc({"curve": {"kind": "circle", "r": 1.0}, "d": [], "samples": 100})
    svg = emit_svg(doc)
    assert svg.count("<path ") == 1
    assert "polygon" not in svg and "circle cx" not in svg


def test_svg_marker_counts_match_document():
    doc = run_scenario(
        Scenario(curve={"a": 1.0, "b": 1.0, "kind": "cayley"}, d=(5.0,), samples=800, singular=True)
    )
    svg = emit_svg(doc)
    n_cusps = sum(1 for p in doc.singular_points if p.kind == "cusp")
    n_crunodes = sum(1 for p in doc.singular_points if p.kind == "crunode")
    assert svg.count('data-kind="cusp"') == n_cusps
    assert svg.count('data-kind="crunode"') == n_crunodes
    assert n_cusps + n_crunodes == len(doc.singular_points)


def test_svg_gaps_stay_gaps():
    doc = _doc({"curve": {"kind": "cayley", "a": 1.0, "b": 1.0}, "d": [0.5], "samples": 500})
    svg = emit_svg(doc)
    total_arcs = len(doc.progenitor.arcs) + sum(len(o["polyline"].arcs) for o in doc.offsets)
    assert svg.count("<path ") == total_arcs
    assert svg.count('d="M ') == total_arcs  # one subpath per arc, never joined


def test_svg_coordinates_rounded():
    doc = _doc({"curve": {"kind": "circle", "r": 1.0}, "d": [], "samples": 50})
    svg = emit_svg(doc)
    for token in svg.split('d="')[1].split('"')[0].replace("M", "").replace("L", "").split():
        if "." in token:
            assert len(token.split(".")[1]) <= 6


# -- cli -----------------------------------------------------------------------


def test_cli_offset_json(tmp_path, capsys):
    out = tmp_path / "doc.json"
    code = cli_main(
        ["offset", "--curve", "circle", "--r", "1.0", "--d", "0.5", "--samples", "200", "--out", str(out)]
    )
    assert code == 0
    doc = parse_document(out.read_text())
    assert len(doc.offsets) == 2


def test_cli_invalid_scenario_exit_2(tmp_path, capsys):
    code = cli_main(["offset", "--curve", "cayley", "--a", "-3", "--b", "1", "--d", "0.5"])
    captured = capsys.readouterr()
    assert code == 2
    err = json.loads(captured.err)
    assert err["error"]["field"] == "curve.a"


def test_cli_svg_output(tmp_path):
    out = tmp_path / "doc.svg"
    code = cli_main(
        ["offset", "--curve", "ellipse", "--a", "5", "--b", "3", "--d", "1.0",
         "--samples", "300", "--format", "svg", "--out", str(out)]
    )
    assert code == 0
    assert out.read_text().startswith("<svg")


def test_cli_gallery(tmp_path, capsys):
    code = cli_main(["gallery", "--out", str(tmp_path / "g"), "--samples", "300"])
    assert code == 0
    files = sorted(p.name for p in (tmp_path / "g").glob("*.json"))
    assert "lemniscate-offsets.json" in files
    assert "oval-shape-b2.json" in files and "oval-shape-b6.json" in files
    assert "ellipse-offset-envelope.json" in files
    doc = parse_document((tmp_path / "g" / "oval-shape-b2.json").read_text())
    assert len(doc.contours["true_oval"].arcs) == 2
