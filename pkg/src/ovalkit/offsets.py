"""Offset maps, offset sampling and envelopes of circle families.

Normal orientation is always relative to the direction of travel (Left is
the 90 degree counterclockwise rotation of the tangent, Right clockwise),
never "inward/outward" by geometry: side-by-travel is continuous wherever
the progenitor is regular, which is exactly what naive inward normals are
not when the curve crosses an axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .curves import SPEED_FLOOR, ParametricCurve, curvature
from .errors import CuspDegenerateError, DegeneratePointError
from .polyline import GAP_DOMAIN, GAP_EDGE, GAP_SINGULAR, GAP_SPEED, Arc, Polyline

SIDE_LEFT = "left"
SIDE_RIGHT = "right"
SIDE_BOTH = "both"

# Factor for the oversized-edge gap policy (times the median edge length).
EDGE_FACTOR = 50.0


@dataclass(frozen=True)
class OffsetSpec:
    """Progenitor plus offset distance d > 0 and a fixed side."""

    progenitor: ParametricCurve
    d: float
    side: str

    def __post_init__(self):
        if not self.d > 0:
            raise ValueError(f"offset distance must be positive, got {self.d!r}")
        if self.side not in (SIDE_LEFT, SIDE_RIGHT):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")

    @property
    def d_signed(self) -> float:
        """Signed distance in the formula k_off = k / (1 + k * d_signed).

        Along the left normal the displacement is +d, which enters the
        offset speed as v * (1 - d k); hence d_signed = -d on the left and
        +d on the right.
        """
        return -self.d if self.side == SIDE_LEFT else self.d


def unit_normal(c: ParametricCurve, t: float, side: str) -> tuple:
    """Unit normal at t on the requested side of the direction of travel."""
    vx, vy = c.velocity(t)
    v = math.hypot(vx, vy)
    if v <= SPEED_FLOOR:
        raise DegeneratePointError(f"speed {v:g} below floor at t={t!r}")
    if side == SIDE_LEFT:
        return (-vy / v, vx / v)
    if side == SIDE_RIGHT:
        return (vy / v, -vx / v)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def offset_point(spec: OffsetSpec, t: float) -> tuple:
    px, py = spec.progenitor.point(t)
    nx, ny = unit_normal(spec.progenitor, t, spec.side)
    return (px + spec.d * nx, py + spec.d * ny)


def offset_velocity(spec: OffsetSpec, t: float) -> tuple:
    """Analytic derivative of the offset map at t."""
    c = spec.progenitor
    vx, vy = c.velocity(t)
    ax, ay = c.acceleration(t)
    v = math.hypot(vx, vy)
    if v <= SPEED_FLOOR:
        raise DegeneratePointError(f"speed {v:g} below floor at t={t!r}")
    dv = (vx * ax + vy * ay) / v
    sgn = 1.0 if spec.side == SIDE_LEFT else -1.0
    # d/dt of (-vy, vx)/v, times the side sign
    nxd = sgn * (-ay * v + vy * dv) / (v * v)
    nyd = sgn * (ax * v - vx * dv) / (v * v)
    return (vx + spec.d * nxd, vy + spec.d * nyd)


def offset_curvature(spec: OffsetSpec, t: float) -> float:
    """Curvature transported to the offset: k / (1 + k * d_signed).

    The magnitude equals the curvature of the offset parametrization; the
    denominator vanishing means the offset speed collapses, i.e. t is a
    cusp of the offset.
    """
    k = curvature(spec.progenitor, t)
    den = 1.0 + k * spec.d_signed
    if abs(den) <= 1e-12:
        raise CuspDegenerateError(f"offset has a cusp at t={t!r}")
    return k / den


# -- vectorised sampling -----------------------------------------------------


def _eval_vec(f: Callable, ts: np.ndarray) -> np.ndarray:
    """Evaluate a coordinate callable on an array, tolerating scalar-only f."""
    try:
        out = np.asarray(f(ts), dtype=float)
        if out.shape == ts.shape:
            return out
    except Exception:
        pass
    return np.array([float(f(t)) for t in ts])


def offset_grid(spec: OffsetSpec, ts: np.ndarray):
    """Offset points and validity mask on a parameter grid (no domain gate)."""
    c = spec.progenitor
    with np.errstate(all="ignore"):
        x = _eval_vec(c.x, ts)
        y = _eval_vec(c.y, ts)
        vx = _eval_vec(c.dx, ts)
        vy = _eval_vec(c.dy, ts)
        v = np.hypot(vx, vy)
        if spec.side == SIDE_LEFT:
            nx, ny = -vy / v, vx / v
        else:
            nx, ny = vy / v, -vx / v
        ox = x + spec.d * nx
        oy = y + spec.d * ny
    ok = np.isfinite(ox) & np.isfinite(oy) & (v > SPEED_FLOOR)
    return ox, oy, ok, v


def _near_singular(c: ParametricCurve, lo: float, hi: float) -> bool:
    """Does the open parameter interval (lo, hi) contain a singular value?"""
    if not c.singular_params:
        return False
    if c.period is None:
        return any(lo < s < hi for s in c.singular_params)
    k0 = math.floor(lo / c.period) - 1
    k1 = math.ceil(hi / c.period) + 1
    for k in range(k0, k1 + 1):
        for s in c.singular_params:
            if lo < s + k * c.period < hi:
                return True
    return False


def sample_offset(spec: OffsetSpec, t_range: tuple, n: int) -> Polyline:
    """Sample the offset on a uniform grid, breaking arcs at every gap.

    Break reasons, in detection order: the grid leaves the progenitor
    domain (radicand boundary), a singular parameter falls between two
    consecutive kept samples, the speed collapses, or an edge exceeds
    EDGE_FACTOR times the arc's median edge length.
    """
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    t0, t1 = float(t_range[0]), float(t_range[1])
    ts = np.linspace(t0, t1, int(n))
    c = spec.progenitor
    in_dom = c.contains_mask(ts)
    ox, oy, ok, _v = offset_grid(spec, ts)
    poly = Polyline()

    keep = in_dom & ok
    idx = np.where(keep)[0]
    if len(idx) == 0:
        return poly

    # contiguous grid runs, then singular-crossing splits inside runs
    segments = []  # (indices, reason-after)
    run_breaks = np.where(np.diff(idx) > 1)[0]
    runs = np.split(idx, run_breaks + 1)
    for r_i, run in enumerate(runs):
        start = 0
        for j in range(len(run) - 1):
            if _near_singular(c, ts[run[j]], ts[run[j + 1]]):
                segments.append((run[start : j + 1], GAP_SINGULAR))
                start = j + 1
        tail_reason = None
        if r_i < len(runs) - 1:
            gap_lo, gap_hi = ts[run[-1]], ts[runs[r_i + 1][0]]
            if _near_singular(c, gap_lo, gap_hi):
                tail_reason = GAP_SINGULAR
            elif np.any(~ok[run[-1] : runs[r_i + 1][0] + 1] & in_dom[run[-1] : runs[r_i + 1][0] + 1]):
                tail_reason = GAP_SPEED
            else:
                tail_reason = GAP_DOMAIN
        segments.append((run[start:], tail_reason))

    for indices, reason in segments:
        if len(indices) < 2:
            continue  # stray sample, not an arc
        pts = np.column_stack([ox[indices], oy[indices]])
        pieces, _ = split_long_edges_pieces(pts, ts[indices])
        for p_i, (pp, tt) in enumerate(pieces):
            poly.arcs.append(Arc(points=pp, params=tt, side=spec.side))
            if p_i < len(pieces) - 1:
                poly.gap_reasons.append(GAP_EDGE)
        if reason is not None:
            poly.gap_reasons.append(reason)

    _mark_closed(poly)
    return poly


def split_long_edges_pieces(pts: np.ndarray, params: np.ndarray):
    from .polyline import split_long_edges

    return split_long_edges(pts, params, EDGE_FACTOR)


def _mark_closed(poly: Polyline):
    """A lone arc whose endpoints nearly meet is a closed loop."""
    if len(poly.arcs) != 1:
        return
    arc = poly.arcs[0]
    if len(arc) < 4:
        return
    med = float(np.median(arc.edge_lengths()))
    if np.linalg.norm(arc.points[0] - arc.points[-1]) <= 2.0 * med:
        arc.closed = True


def sample_curve(c: ParametricCurve, t_range: tuple, n: int) -> Polyline:
    """Sample the progenitor itself with the same gap policy (d plays no role)."""
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    ts = np.linspace(float(t_range[0]), float(t_range[1]), int(n))
    in_dom = c.contains_mask(ts)
    with np.errstate(all="ignore"):
        x = _eval_vec(c.x, ts)
        y = _eval_vec(c.y, ts)
    keep = in_dom & np.isfinite(x) & np.isfinite(y)
    poly = Polyline()
    idx = np.where(keep)[0]
    if len(idx) == 0:
        return poly
    run_breaks = np.where(np.diff(idx) > 1)[0]
    runs = np.split(idx, run_breaks + 1)
    for r_i, run in enumerate(runs):
        start = 0
        pieces_idx = []
        for j in range(len(run) - 1):
            if _near_singular(c, ts[run[j]], ts[run[j + 1]]):
                pieces_idx.append((run[start : j + 1], GAP_SINGULAR))
                start = j + 1
        pieces_idx.append((run[start:], GAP_DOMAIN if r_i < len(runs) - 1 else None))
        for indices, reason in pieces_idx:
            if len(indices) < 2:
                continue
            pts = np.column_stack([x[indices], y[indices]])
            pieces, _ = split_long_edges_pieces(pts, ts[indices])
            for p_i, (pp, tt) in enumerate(pieces):
                poly.arcs.append(Arc(points=pp, params=tt, side=""))
                if p_i < len(pieces) - 1:
                    poly.gap_reasons.append(GAP_EDGE)
            if reason is not None:
                poly.gap_reasons.append(reason)
    _mark_closed(poly)
    return poly


# -- envelopes of circle families ---------------------------------------------


@dataclass(frozen=True)
class CircleFamily:
    """Circles of radius r(t) >= 0 centered on a parametric curve."""

    center: ParametricCurve
    radius: Callable
    dradius: Optional[Callable] = None

    def radius_slope(self, t: float) -> float:
        if self.dradius is not None:
            return float(self.dradius(t))
        h = max(1e-6, 1e-6 * abs(t))
        return (float(self.radius(t + h)) - float(self.radius(t - h))) / (2.0 * h)

    def radius_slope_defined(self, t: float) -> bool:
        """One-sided difference quotients must agree; |cos| style kinks fail."""
        if self.dradius is not None:
            return math.isfinite(float(self.dradius(t)))
        h = max(1e-5, 1e-5 * abs(t))
        r0 = float(self.radius(t))
        fwd = (float(self.radius(t + h)) - r0) / h
        bwd = (r0 - float(self.radius(t - h))) / h
        scale = max(1.0, abs(fwd), abs(bwd))
        return abs(fwd - bwd) <= 1e-2 * scale


ENVELOPE_TWO = "two-points"
ENVELOPE_TANGENT = "tangential"
ENVELOPE_EMPTY = "radius-slope-exceeds-speed"
ENVELOPE_UNDEFINED = "radius-slope-undefined"


def envelope_circle_family(fam: CircleFamily, t: float):
    """Envelope points of the family at parameter t, in closed form.

    Solves circle(t) intersect { P : (P - c) . c' = -r r' }: splitting
    P - c into tangent and normal components gives the tangent component
    alpha = -r r' / |c'| and the normal component +-sqrt(r^2 - alpha^2).
    Returns (points, code) with 2, 1 or 0 points.
    """
    c = fam.center
    cx, cy = c.point(t)
    vx, vy = c.velocity(t)
    v = math.hypot(vx, vy)
    if v <= SPEED_FLOOR:
        raise DegeneratePointError(f"family center speed below floor at t={t!r}")
    if not fam.radius_slope_defined(t):
        return [], ENVELOPE_UNDEFINED
    r = float(fam.radius(t))
    rp = fam.radius_slope(t)
    alpha = -r * rp / v
    disc = r * r - alpha * alpha
    tx, ty = vx / v, vy / v
    nx, ny = -ty, tx
    if disc < 0.0:
        return [], ENVELOPE_EMPTY
    if disc == 0.0 or math.sqrt(disc) <= 1e-15 * max(1.0, r):
        return [(cx + alpha * tx, cy + alpha * ty)], ENVELOPE_TANGENT
    beta = math.sqrt(disc)
    p_left = (cx + alpha * tx + beta * nx, cy + alpha * ty + beta * ny)
    p_right = (cx + alpha * tx - beta * nx, cy + alpha * ty - beta * ny)
    return [p_left, p_right], ENVELOPE_TWO


def sample_envelope(fam: CircleFamily, t_range: tuple, n: int) -> Polyline:
    """Envelope point sets on a uniform grid, one arc per side of the family."""
    ts = np.linspace(float(t_range[0]), float(t_range[1]), int(n))
    left_pts, left_ts, right_pts, right_ts = [], [], [], []
    for t in ts:
        if not fam.center.contains(float(t)):
            continue
        try:
            pts, code = envelope_circle_family(fam, float(t))
        except DegeneratePointError:
            continue
        if code == ENVELOPE_TWO:
            left_pts.append(pts[0])
            left_ts.append(t)
            right_pts.append(pts[1])
            right_ts.append(t)
    poly = Polyline()
    if left_pts:
        poly.arcs.append(Arc(points=np.asarray(left_pts), params=np.asarray(left_ts), side=SIDE_LEFT))
    if right_pts:
        poly.arcs.append(Arc(points=np.asarray(right_pts), params=np.asarray(right_ts), side=SIDE_RIGHT))
    return poly


# -- region labels (postprocessing only) --------------------------------------


def _inside_loop(pt: np.ndarray, loop: np.ndarray) -> bool:
    x, y = pt
    xs, ys = loop[:, 0], loop[:, 1]
    x2, y2 = np.roll(xs, -1), np.roll(ys, -1)
    crosses = ((ys > y) != (y2 > y)) & (x < xs + (y - ys) * (x2 - xs) / (y2 - ys))
    return bool(np.sum(crosses) % 2)


def label_offset_arcs(offset: Polyline, progenitor: Polyline) -> list:
    """Classify each offset arc as external/internal to the sampled progenitor.

    Majority vote of point-in-loop tests against the progenitor's sampled
    loops.  Callers skip this for figure-eight progenitors, where
    inside/outside is ambiguous at the node.
    """
    loops = [a.points for a in progenitor.arcs if len(a) >= 3]
    labels = []
    for arc in offset.arcs:
        probe = arc.points[:: max(1, len(arc) // 16)]
        inside = sum(1 for p in probe if any(_inside_loop(p, lp) for lp in loops))
        labels.append("internal" if inside * 2 > len(probe) else "external")
    return labels
