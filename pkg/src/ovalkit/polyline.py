"""Sampled curves: ordered points partitioned into arcs by gap breaks.

Arcs never bridge a gap; a break is always recorded with its reason
(singular parameter, speed collapse, domain/radicand boundary, or an
oversized edge).  This is what keeps spurious bridging segments out of
every plot and out of the intersection oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

GAP_SINGULAR = "singular-param"
GAP_SPEED = "speed-collapse"
GAP_DOMAIN = "radicand-boundary"
GAP_EDGE = "edge-length"


@dataclass
class Arc:
    """A contiguous run of samples; ``params`` is None for implicit contours."""

    points: np.ndarray  # (n, 2)
    params: Optional[np.ndarray] = None
    side: str = ""
    closed: bool = False

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.params is not None:
            self.params = np.asarray(self.params, dtype=float)

    def __len__(self) -> int:
        return len(self.points)

    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.diff(self.points, axis=0), axis=1)

    def to_dict(self) -> dict:
        return {
            "points": [[float(x), float(y)] for x, y in self.points],
            "params": None if self.params is None else [float(t) for t in self.params],
            "side": self.side,
            "closed": self.closed,
        }

    @staticmethod
    def from_dict(d: dict) -> "Arc":
        return Arc(
            points=np.asarray(d["points"], dtype=float).reshape(-1, 2),
            params=None if d.get("params") is None else np.asarray(d["params"], dtype=float),
            side=d.get("side", ""),
            closed=bool(d.get("closed", False)),
        )


@dataclass
class Polyline:
    arcs: list = field(default_factory=list)
    gap_reasons: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.arcs)

    @property
    def total_points(self) -> int:
        return sum(len(a) for a in self.arcs)

    def all_points(self) -> np.ndarray:
        if not self.arcs:
            return np.zeros((0, 2))
        return np.concatenate([a.points for a in self.arcs])

    def to_dict(self) -> dict:
        return {
            "arcs": [a.to_dict() for a in self.arcs],
            "gap_reasons": list(self.gap_reasons),
        }

    @staticmethod
    def from_dict(d: dict) -> "Polyline":
        return Polyline(
            arcs=[Arc.from_dict(a) for a in d.get("arcs", [])],
            gap_reasons=list(d.get("gap_reasons", [])),
        )


def split_long_edges(points: np.ndarray, params: Optional[np.ndarray], factor: float = 50.0):
    """Break a tentative arc wherever an edge exceeds ``factor`` times the
    arc's median edge length.  Returns (pieces, n_breaks)."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 3:
        return [(pts, params)], 0
    e = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    med = float(np.median(e))
    if med <= 0.0:
        return [(pts, params)], 0
    cuts = np.where(e > factor * med)[0]
    if len(cuts) == 0:
        return [(pts, params)], 0
    pieces = []
    start = 0
    for c in cuts:
        if c + 1 - start >= 2:
            pieces.append((pts[start : c + 1], None if params is None else params[start : c + 1]))
        start = c + 1
    if len(pts) - start >= 2:
        pieces.append((pts[start:], None if params is None else params[start:]))
    return pieces, len(cuts)
