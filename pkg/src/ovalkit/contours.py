"""Zero-level contours of implicit polynomials by marching squares.

Cell-edge crossings are linearly interpolated and chained into loops via
exact edge keys, so stitching never depends on floating-point vertex
comparisons.  Ambiguous saddle cells are resolved by the polynomial's
sign at the cell centre.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cayley import CayleyParams, bifocal_residual
from .implicit import ImplicitPolynomial
from .polyline import Arc, Polyline

# residual gates for separating the true oval from squaring artefacts
KEEP_MEDIAN_RESIDUAL = 1e-3
DISCARD_MEDIAN_RESIDUAL = 1e-2


@dataclass(frozen=True)
class ContourGrid:
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    nx: int = 512
    ny: int = 512

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs nx, ny >= 2")
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("degenerate bounding box")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.xmin, self.xmax, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.ymin, self.ymax, self.ny)

    @staticmethod
    def for_params(p: CayleyParams, n: int = 512) -> "ContourGrid":
        half = 1.2 * (float(p.a) + float(p.b))
        return ContourGrid(-half, half, -half, half, n, n)


# segment table: edge pairs per corner-sign case; B/R/T/L edges of a cell
_CASE_SEGMENTS = {
    0: [],
    1: [("L", "B")],
    2: [("B", "R")],
    3: [("L", "R")],
    4: [("R", "T")],
    6: [("B", "T")],
    7: [("L", "T")],
    8: [("T", "L")],
    9: [("B", "T")],
    11: [("R", "T")],
    12: [("L", "R")],
    13: [("B", "R")],
    14: [("L", "B")],
    15: [],
}
_SADDLE_POS = {5: [("B", "R"), ("T", "L")], 10: [("B", "L"), ("R", "T")]}
_SADDLE_NEG = {5: [("B", "L"), ("R", "T")], 10: [("B", "R"), ("T", "L")]}


def _edge_key(edge: str, i: int, j: int):
    if edge == "B":
        return ("h", i, j)
    if edge == "T":
        return ("h", i, j + 1)
    if edge == "L":
        return ("v", i, j)
    return ("v", i + 1, j)


def contour(poly: ImplicitPolynomial, grid: ContourGrid) -> Polyline:
    """Extract the zero set of ``poly`` on ``grid`` as stitched polylines."""
    xs, ys = grid.xs, grid.ys
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    V = np.asarray(poly(X, Y), dtype=float)

    pos = V > 0
    c00 = pos[:-1, :-1]
    c10 = pos[1:, :-1]
    c11 = pos[1:, 1:]
    c01 = pos[:-1, 1:]
    case = (
        c00.astype(np.int8)
        + 2 * c10.astype(np.int8)
        + 4 * c11.astype(np.int8)
        + 8 * c01.astype(np.int8)
    )
    active = np.argwhere((case != 0) & (case != 15))

    vertex: dict = {}

    def vertex_on(edge: str, i: int, j: int):
        key = _edge_key(edge, i, j)
        if key not in vertex:
            kind, ei, ej = key
            if kind == "h":
                va, vb = V[ei, ej], V[ei + 1, ej]
                frac = va / (va - vb)
                vertex[key] = (xs[ei] + frac * (xs[ei + 1] - xs[ei]), ys[ej])
            else:
                va, vb = V[ei, ej], V[ei, ej + 1]
                frac = va / (va - vb)
                vertex[key] = (xs[ei], ys[ej] + frac * (ys[ej + 1] - ys[ej]))
        return key

    segments = []
    for i, j in active:
        c = int(case[i, j])
        if c in (5, 10):
            cx = 0.5 * (xs[i] + xs[i + 1])
            cy = 0.5 * (ys[j] + ys[j + 1])
            pairs = _SADDLE_POS[c] if float(poly(cx, cy)) > 0 else _SADDLE_NEG[c]
        else:
            pairs = _CASE_SEGMENTS[c]
        for ea, eb in pairs:
            segments.append((vertex_on(ea, i, j), vertex_on(eb, i, j)))

    return _stitch(segments, vertex)


def _stitch(segments: list, vertex: dict) -> Polyline:
    """Chain cell segments into arcs by shared edge keys."""
    adjacency: dict = {}
    for idx, (ka, kb) in enumerate(segments):
        adjacency.setdefault(ka, []).append((idx, kb))
        adjacency.setdefault(kb, []).append((idx, ka))

    used = [False] * len(segments)
    poly = Polyline()

    def extend(chain: list) -> bool:
        """Append unused neighbours until the chain closes or dead-ends."""
        while True:
            options = [(i, k) for i, k in adjacency.get(chain[-1], []) if not used[i]]
            if not options:
                return False
            i, k = options[0]
            used[i] = True
            chain.append(k)
            if k == chain[0]:
                return True

    for idx, (ka, kb) in enumerate(segments):
        if used[idx]:
            continue
        used[idx] = True
        chain = [ka, kb]
        closed = extend(chain)
        if not closed:
            chain.reverse()
            extend(chain)  # grow the other end; cannot close once one end died
        pts = np.asarray([vertex[k] for k in (chain[:-1] if closed else chain)], dtype=float)
        if len(pts) >= 2:
            poly.arcs.append(Arc(points=pts, params=None, closed=closed))
    poly.arcs.sort(key=lambda a: (-len(a), round(float(a.points[0, 0]), 9), round(float(a.points[0, 1]), 9)))
    return poly


def filter_true_oval(loops: Polyline, p: CayleyParams) -> Polyline:
    """Keep only the contour loops that satisfy the bifocal definition.

    Squaring the defining equation introduces interior loops whose
    bifocal residual is O(1/b); the true oval's vertices sit at the
    interpolation error level, orders of magnitude below.
    """
    kept = Polyline()
    for arc in loops.arcs:
        res = np.abs(bifocal_residual((arc.points[:, 0], arc.points[:, 1]), p))
        if float(np.median(res)) <= KEEP_MEDIAN_RESIDUAL:
            kept.arcs.append(arc)
    return kept
