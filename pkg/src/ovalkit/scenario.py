"""Scenario execution and the canonical JSON result document.

A scenario fully describes one computation (curve, distances, sides,
sampling); running it is deterministic and the emitted JSON is canonical:
same scenario, same build, same bytes.  The JSON document is the single
interchange format; the SVG emitter and the HTTP service both derive
from it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .cayley import CayleyParams, cayley_branches, cayley_implicit, classify_shape
from .contours import ContourGrid, contour, filter_true_oval
from .curves import PRESETS, ParametricCurve, circle, ellipse
from .errors import InvalidScenarioError
from .offsets import (
    SIDE_BOTH,
    SIDE_LEFT,
    SIDE_RIGHT,
    CircleFamily,
    OffsetSpec,
    sample_curve,
    sample_envelope,
    sample_offset,
)
from .polyline import Polyline
from .singular import (
    SearchRange,
    SingularPoint,
    complete_x_symmetry,
    find_all_crunodes,
    find_cusps_curvature,
)

SCHEMA = "ovalkit/1"

_CURVE_KINDS = ("cayley", "ellipse", "circle", "preset")


@dataclass(frozen=True)
class Scenario:
    curve: dict
    d: tuple = ()
    side: str = SIDE_BOTH
    t_range: Optional[tuple] = None
    samples: int = 1000
    singular: bool = False
    envelope: bool = False
    contour: bool = False
    format: str = "json"

    def to_dict(self) -> dict:
        return {
            "curve": dict(self.curve),
            "d": [float(v) for v in self.d],
            "side": self.side,
            "t_range": None if self.t_range is None else [float(self.t_range[0]), float(self.t_range[1])],
            "samples": int(self.samples),
            "singular": bool(self.singular),
            "envelope": bool(self.envelope),
            "contour": bool(self.contour),
            "format": self.format,
        }


def validate_scenario(payload: dict) -> Scenario:
    """Validate a raw scenario dict; errors carry the offending field path."""
    if not isinstance(payload, dict):
        raise InvalidScenarioError("", "scenario must be an object")
    curve = payload.get("curve")
    if not isinstance(curve, dict):
        raise InvalidScenarioError("curve", "curve spec object required")
    kind = curve.get("kind")
    if kind not in _CURVE_KINDS:
        raise InvalidScenarioError("curve.kind", f"must be one of {_CURVE_KINDS}")
    if kind in ("cayley", "ellipse"):
        for key in ("a", "b"):
            v = curve.get(key)
            if not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0:
                raise InvalidScenarioError(f"curve.{key}", "finite positive number required")
    elif kind == "circle":
        v = curve.get("r", 1.0)
        if not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0:
            raise InvalidScenarioError("curve.r", "finite positive number required")
    else:
        name = curve.get("name")
        if name not in PRESETS:
            raise InvalidScenarioError("curve.name", f"unknown preset; choose from {sorted(PRESETS)}")
    ds = payload.get("d", [])
    if not isinstance(ds, (list, tuple)):
        raise InvalidScenarioError("d", "list of distances required")
    for i, v in enumerate(ds):
        if not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0:
            raise InvalidScenarioError(f"d[{i}]", "finite positive distance required")
    side = payload.get("side", SIDE_BOTH)
    if side not in (SIDE_LEFT, SIDE_RIGHT, SIDE_BOTH):
        raise InvalidScenarioError("side", "must be left, right or both")
    t_range = payload.get("t_range")
    if t_range is not None:
        if (
            not isinstance(t_range, (list, tuple))
            or len(t_range) != 2
            or not all(isinstance(v, (int, float)) and math.isfinite(v) for v in t_range)
            or not t_range[1] > t_range[0]
        ):
            raise InvalidScenarioError("t_range", "need [lo, hi] with hi > lo")
        t_range = (float(t_range[0]), float(t_range[1]))
    samples = payload.get("samples", 1000)
    if not isinstance(samples, int) or samples < 2:
        raise InvalidScenarioError("samples", "integer >= 2 required")
    fmt = payload.get("format", "json")
    if fmt not in ("json", "svg"):
        raise InvalidScenarioError("format", "must be json or svg")
    if payload.get("contour") and kind != "cayley":
        raise InvalidScenarioError("contour", "implicit contours exist for cayley curves only")
    return Scenario(
        curve={k: curve[k] for k in sorted(curve)},
        d=tuple(float(v) for v in ds),
        side=side,
        t_range=t_range,
        samples=samples,
        singular=bool(payload.get("singular", False)),
        envelope=bool(payload.get("envelope", False)),
        contour=bool(payload.get("contour", False)),
        format=fmt,
    )


def _components(curve: dict) -> tuple:
    """Parametric components of the scenario curve plus family metadata."""
    kind = curve["kind"]
    if kind == "cayley":
        params = CayleyParams(float(curve["a"]), float(curve["b"]))
        return cayley_branches(params), params, True
    if kind == "ellipse":
        return (ellipse(float(curve["a"]), float(curve["b"])),), None, True
    if kind == "circle":
        return (circle(float(curve.get("r", 1.0))),), None, True
    c = PRESETS[curve["name"]]()
    return (c,), None, c.symmetric_x


def _default_range(curve: dict, components: tuple) -> tuple:
    if curve["kind"] == "cayley":
        return (0.0, math.pi / 2.0)
    return components[0].default_range()


def _merge(polys: list) -> Polyline:
    out = Polyline()
    for p in polys:
        out.arcs.extend(p.arcs)
        out.gap_reasons.extend(p.gap_reasons)
    return out


@dataclass
class ResultDocument:
    scenario: Scenario
    progenitor: Polyline
    offsets: list = field(default_factory=list)      # {"d", "side", "polyline"}
    envelopes: list = field(default_factory=list)    # {"d", "polyline"}
    contours: dict = field(default_factory=dict)     # {"loops", "true_oval"}
    singular_points: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    engine: str = f"ovalkit {__version__}"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "engine": self.engine,
            "scenario": self.scenario.to_dict(),
            "progenitor": self.progenitor.to_dict(),
            "offsets": [
                {"d": float(o["d"]), "side": o["side"], "polyline": o["polyline"].to_dict()}
                for o in self.offsets
            ],
            "envelopes": [
                {"d": float(e["d"]), "polyline": e["polyline"].to_dict()} for e in self.envelopes
            ],
            "contours": {k: v.to_dict() for k, v in self.contours.items()},
            "singular_points": [p.to_dict() for p in self.singular_points],
            "diagnostics": self.diagnostics,
        }

    @staticmethod
    def from_dict(d: dict) -> "ResultDocument":
        doc = ResultDocument(
            scenario=validate_scenario(d["scenario"]),
            progenitor=Polyline.from_dict(d["progenitor"]),
            offsets=[
                {"d": o["d"], "side": o["side"], "polyline": Polyline.from_dict(o["polyline"])}
                for o in d.get("offsets", [])
            ],
            envelopes=[
                {"d": e["d"], "polyline": Polyline.from_dict(e["polyline"])}
                for e in d.get("envelopes", [])
            ],
            contours={k: Polyline.from_dict(v) for k, v in d.get("contours", {}).items()},
            singular_points=[SingularPoint.from_dict(p) for p in d.get("singular_points", [])],
            diagnostics=d.get("diagnostics", {}),
            engine=d.get("engine", ""),
        )
        return doc

    def __eq__(self, other) -> bool:
        return isinstance(other, ResultDocument) and self.to_dict() == other.to_dict()


def _sides(side: str) -> tuple:
    if side == SIDE_BOTH:
        return (SIDE_LEFT, SIDE_RIGHT)
    return (side,)


def run_scenario(s: Scenario) -> ResultDocument:
    components, cayley_params, symmetric = _components(s.curve)
    t_range = s.t_range if s.t_range is not None else _default_range(s.curve, components)

    doc = ResultDocument(
        scenario=s,
        progenitor=_merge([sample_curve(c, t_range, s.samples) for c in components]),
    )

    for d in s.d:
        for side in _sides(s.side):
            poly = _merge(
                [sample_offset(OffsetSpec(c, d, side), t_range, s.samples) for c in components]
            )
            doc.offsets.append({"d": d, "side": side, "polyline": poly})

    if s.envelope:
        for d in s.d:
            fam_polys = [
                sample_envelope(CircleFamily(c, _const(d), _const(0.0)), t_range, s.samples)
                for c in components
            ]
            doc.envelopes.append({"d": d, "polyline": _merge(fam_polys)})

    if s.contour and cayley_params is not None:
        loops = contour(cayley_implicit(cayley_params), ContourGrid.for_params(cayley_params))
        doc.contours = {"loops": loops, "true_oval": filter_true_oval(loops, cayley_params)}

    rejected = []
    tangential = []
    if s.singular:
        srange = SearchRange(intervals=(t_range,), resolution=max(s.samples, 256))
        points: list = []
        for d in s.d:
            specs = [OffsetSpec(c, d, side) for c in components for side in _sides(s.side)]
            for spec in specs:
                points.extend(find_cusps_curvature(spec, srange))
            search = find_all_crunodes(specs, srange)
            points.extend(search.points)
            tangential.extend(p.to_dict() for p in search.tangential)
            rejected.extend(
                {"s": s0, "t": t0, "reason": why} for s0, t0, why in search.rejected
            )
        if symmetric:
            points = complete_x_symmetry(points)
        doc.singular_points = sorted(points, key=lambda p: p.sort_key())

    gap_counts: dict = {}
    for poly in [doc.progenitor] + [o["polyline"] for o in doc.offsets]:
        for reason in poly.gap_reasons:
            gap_counts[reason] = gap_counts.get(reason, 0) + 1
    doc.diagnostics = {
        "gap_reasons": {k: gap_counts[k] for k in sorted(gap_counts)},
        "rejected_seeds": rejected,
        "tangential_contacts": tangential,
        "shape_class": classify_shape(cayley_params).value if cayley_params else None,
    }
    _check_residuals(doc)
    return doc


def _const(v: float):
    return lambda t: v


def _check_residuals(doc: ResultDocument):
    from .errors import NumericalError
    from .singular import CUSP_TOL, KIND_CRUNODE, KIND_CUSP, NEWTON_TOL

    for p in doc.singular_points:
        tol = CUSP_TOL if p.kind == KIND_CUSP else NEWTON_TOL
        if p.residual > tol:
            raise NumericalError(
                f"singular point residual {p.residual:g} above {tol:g}",
                diagnostics={"point": p.to_dict()},
            )


def emit_json(doc: ResultDocument) -> str:
    """Canonical JSON: sorted keys, no whitespace, shortest float repr."""
    return json.dumps(doc.to_dict(), sort_keys=True, separators=(",", ":"), allow_nan=False)


def parse_document(text: str) -> ResultDocument:
    return ResultDocument.from_dict(json.loads(text))


# the reproducible figure-series configuration used by tests and the CLI
GALLERY_SCENARIO = Scenario(
    curve={"a": 1.0, "b": 1.0, "kind": "cayley"},
    d=(0.1, 0.5, 1.0, 2.0, 5.0),
    side=SIDE_BOTH,
    samples=1500,
    singular=True,
)
