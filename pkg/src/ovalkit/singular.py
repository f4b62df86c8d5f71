"""Cusps and crunodes of offset curves.

Cusps are found by two independent methods that tests cross validate:
roots of 1 + k(t) d_signed (the offset speed factor) and stationary
points of the offset's x coordinate filtered by speed collapse.  Crunodes
are seeded by brute-force polyline intersection and refined with a damped
two-dimensional Newton iteration on offsetA(s) - offsetB(t) = 0; no
hand-chosen solve ranges are needed, although a SearchRange can still
restrict the hunt for reproducing specific figures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .curves import ParametricCurve, curvature_grid
from .errors import DegeneratePointError, OvalkitError
from .offsets import (
    OffsetSpec,
    _eval_vec,
    offset_grid,
    offset_point,
    offset_velocity,
    sample_offset,
)
from .polyline import Polyline

KIND_CUSP = "cusp"
KIND_CRUNODE = "crunode"
KIND_TANGENTIAL = "tangential"

METHOD_CURVATURE = "curvature-equation"
METHOD_STATIONARY = "stationary-derivative"
METHOD_ORACLE = "polyline-oracle"
METHOD_NEWTON = "newton-refined"

CUSP_TOL = 1e-9          # on |1 + k d_signed| at a reported cusp
SEP_TOL = 1e-6           # minimal |s - t| for a self-intersection
POINT_TOL = 1e-8         # plane-distance dedupe radius
SPEED_CUSP_TOL = 1e-6    # offset speed certifying a genuine cusp
ANGLE_TOL = 1e-3         # rad; below this a crossing counts as tangential
NEWTON_TOL = 1e-10       # on ||offsetA(s) - offsetB(t)||
_EDGE_EPS = 1e-9         # relative inset from domain-interval endpoints


@dataclass(frozen=True)
class SingularPoint:
    kind: str                  # cusp | crunode | tangential
    location: tuple            # (x, y)
    params: tuple              # (t,) for cusps, (s, t) for crunodes
    method: str
    residual: float

    def sort_key(self):
        return (round(self.location[0], 9), round(self.location[1], 9), self.params)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "location": [float(self.location[0]), float(self.location[1])],
            "params": [float(p) for p in self.params],
            "method": self.method,
            "residual": float(self.residual),
        }

    @staticmethod
    def from_dict(d: dict) -> "SingularPoint":
        return SingularPoint(
            kind=d["kind"],
            location=tuple(d["location"]),
            params=tuple(d["params"]),
            method=d["method"],
            residual=float(d["residual"]),
        )


@dataclass(frozen=True)
class SearchRange:
    """Parameter window(s) plus the sign-scan grid resolution per window."""

    intervals: tuple = ((0.0, 2.0 * math.pi),)
    resolution: int = 4096

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("SearchRange needs at least one interval")
        if self.resolution < 8:
            raise ValueError(f"resolution must be >= 8, got {self.resolution}")

    @property
    def s_interval(self) -> tuple:
        return self.intervals[0]

    @property
    def t_interval(self) -> tuple:
        return self.intervals[-1]


# -- scan helpers -------------------------------------------------------------


def _domain_windows(c: ParametricCurve, lo: float, hi: float) -> list:
    """Sub-intervals of [lo, hi] interior to the curve domain, split at
    singular parameters, slightly inset from every boundary."""
    windows = []
    if c.domain == ((-math.inf, math.inf),) or c.period is None:
        base = [(max(lo, d0), min(hi, d1)) for d0, d1 in c.domain]
    else:
        p = c.period
        k0 = math.floor(lo / p) - 1
        k1 = math.ceil(hi / p) + 1
        base = []
        for k in range(k0, k1 + 1):
            for d0, d1 in c.domain:
                base.append((max(lo, d0 + k * p), min(hi, d1 + k * p)))
    sing = []
    if c.singular_params:
        if c.period is None:
            sing = list(c.singular_params)
        else:
            p = c.period
            k0 = math.floor(lo / p) - 1
            k1 = math.ceil(hi / p) + 1
            sing = [s + k * p for k in range(k0, k1 + 1) for s in c.singular_params]
    for w_lo, w_hi in base:
        if w_hi <= w_lo:
            continue
        cuts = sorted([w_lo, w_hi] + [s for s in sing if w_lo < s < w_hi])
        for a, b in zip(cuts[:-1], cuts[1:]):
            pad = _EDGE_EPS * (b - a)
            if b - a > 4 * pad:
                windows.append((a + pad, b - pad))
    return windows


def _bisect_root(f, lo: float, hi: float) -> float:
    flo = f(lo)
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_roots(fgrid, fscalar, windows: list, resolution: int) -> list:
    """Sign-change scan on each window followed by bisection.

    Brackets that hit an evaluation failure (a degenerate point of the
    progenitor inside the bracket) are skipped rather than fatal.
    """
    roots = []
    for w_lo, w_hi in windows:
        ts = np.linspace(w_lo, w_hi, max(int(resolution), 8))
        with np.errstate(all="ignore"):
            vals = np.asarray(fgrid(ts), dtype=float)
        ok = np.isfinite(vals)
        for i in range(len(ts) - 1):
            if not (ok[i] and ok[i + 1]):
                continue
            if vals[i] == 0.0:
                roots.append(float(ts[i]))
            elif vals[i] * vals[i + 1] < 0.0:
                try:
                    roots.append(_bisect_root(fscalar, float(ts[i]), float(ts[i + 1])))
                except OvalkitError:
                    continue
        if ok[-1] and vals[-1] == 0.0:
            roots.append(float(ts[-1]))
    return roots


def _dedupe_points(points: list) -> list:
    out = []
    for p in sorted(points, key=lambda q: q.sort_key()):
        if all(
            math.hypot(p.location[0] - q.location[0], p.location[1] - q.location[1]) > POINT_TOL
            for q in out
        ):
            out.append(p)
    return out


# -- cusp finders -------------------------------------------------------------


def _offset_velocity_grid(spec: OffsetSpec, ts: np.ndarray):
    c = spec.progenitor
    with np.errstate(all="ignore"):
        vx = _eval_vec(c.dx, ts)
        vy = _eval_vec(c.dy, ts)
        ax = _eval_vec(c.ddx, ts)
        ay = _eval_vec(c.ddy, ts)
        v = np.hypot(vx, vy)
        dv = (vx * ax + vy * ay) / v
        sgn = 1.0 if spec.side == "left" else -1.0
        nxd = sgn * (-ay * v + vy * dv) / (v * v)
        nyd = sgn * (ax * v - vx * dv) / (v * v)
        return vx + spec.d * nxd, vy + spec.d * nyd


def _cusp_point(spec: OffsetSpec, t: float, method: str) -> SingularPoint:
    from .curves import curvature

    k = curvature(spec.progenitor, t)
    residual = abs(1.0 + k * spec.d_signed)
    return SingularPoint(
        kind=KIND_CUSP,
        location=offset_point(spec, t),
        params=(t,),
        method=method,
        residual=residual,
    )


def find_cusps_curvature(spec: OffsetSpec, srange: SearchRange) -> list:
    """Cusps as roots of 1 + k(t) d_signed = 0."""
    windows = _domain_windows(spec.progenitor, *srange.t_interval)

    def fgrid(ts):
        return 1.0 + curvature_grid(spec.progenitor, ts) * spec.d_signed

    def fscalar(t):
        from .curves import curvature

        return 1.0 + curvature(spec.progenitor, t) * spec.d_signed

    roots = _scan_roots(fgrid, fscalar, windows, srange.resolution)
    return _dedupe_points([_cusp_point(spec, t, METHOD_CURVATURE) for t in roots])


def find_cusps_stationary(spec: OffsetSpec, srange: SearchRange) -> list:
    """Cusps as stationary points of the offset's x coordinate.

    Every root of d/dt x_offset = 0 is either a cusp or a mere vertical
    tangent of the offset; requiring the full offset speed to collapse
    keeps only the cusps and needs no complex-root filtering because the
    scan is real from the start.
    """
    windows = _domain_windows(spec.progenitor, *srange.t_interval)

    def fgrid(ts):
        return _offset_velocity_grid(spec, np.asarray(ts, dtype=float))[0]

    def fscalar(t):
        return offset_velocity(spec, float(t))[0]

    roots = _scan_roots(fgrid, fscalar, windows, srange.resolution)
    points = []
    for t in roots:
        try:
            ovx, ovy = offset_velocity(spec, t)
        except DegeneratePointError:
            continue
        if math.hypot(ovx, ovy) <= SPEED_CUSP_TOL:
            points.append(_cusp_point(spec, t, METHOD_STATIONARY))
    return _dedupe_points(points)


# -- crunodes -----------------------------------------------------------------


def polyline_oracle(pa: Polyline, pb: Polyline, max_seeds: int = 100000) -> list:
    """All transversal segment-segment intersections between two polylines.

    O(n^2) with a bounding-box prefilter, chunked so the candidate mask
    never materialises at full size.  Adjacent segments of the same arc
    are excluded.  Returns (s, t, (x, y)) seeds with parameters linearly
    interpolated inside the hit segments.
    """
    same = pa is pb
    seeds = []
    for ai, arc_a in enumerate(pa.arcs):
        if len(arc_a) < 2 or arc_a.params is None:
            continue
        box_a = (arc_a.points.min(axis=0), arc_a.points.max(axis=0))
        for bi, arc_b in enumerate(pb.arcs):
            if same and bi < ai:
                continue
            if len(arc_b) < 2 or arc_b.params is None:
                continue
            box_b = (arc_b.points.min(axis=0), arc_b.points.max(axis=0))
            if np.any(box_a[0] > box_b[1]) or np.any(box_b[0] > box_a[1]):
                continue
            same_arc = same and ai == bi
            seeds.extend(
                _segment_hits(arc_a, arc_b, same_arc, arc_a.closed and same_arc)
            )
            if len(seeds) > max_seeds:
                raise MemoryError("polyline oracle seed explosion; refine the sampling")
    return seeds


def _segment_hits(arc_a, arc_b, same_arc: bool, closed: bool, chunk: int = 1024):
    a0, a1, ta = arc_a.points[:-1], arc_a.points[1:], arc_a.params
    b0, b1, tb = arc_b.points[:-1], arc_b.points[1:], arc_b.params
    na, nb = len(a0), len(b0)
    axmin = np.minimum(a0[:, 0], a1[:, 0])
    axmax = np.maximum(a0[:, 0], a1[:, 0])
    aymin = np.minimum(a0[:, 1], a1[:, 1])
    aymax = np.maximum(a0[:, 1], a1[:, 1])
    bxmin = np.minimum(b0[:, 0], b1[:, 0])
    bxmax = np.maximum(b0[:, 0], b1[:, 0])
    bymin = np.minimum(b0[:, 1], b1[:, 1])
    bymax = np.maximum(b0[:, 1], b1[:, 1])
    out = []
    for i0 in range(0, na, chunk):
        i1 = min(i0 + chunk, na)
        overlap = (
            (axmin[i0:i1, None] <= bxmax[None, :])
            & (axmax[i0:i1, None] >= bxmin[None, :])
            & (aymin[i0:i1, None] <= bymax[None, :])
            & (aymax[i0:i1, None] >= bymin[None, :])
        )
        if same_arc:
            ii = np.arange(i0, i1)[:, None]
            jj = np.arange(nb)[None, :]
            overlap &= jj > ii + 1
            if closed:
                overlap &= ~((ii == 0) & (jj == nb - 1))
        I, J = np.where(overlap)
        if len(I) == 0:
            continue
        I = I + i0
        r = a1[I] - a0[I]
        s = b1[J] - b0[J]
        qp = b0[J] - a0[I]
        den = r[:, 0] * s[:, 1] - r[:, 1] * s[:, 0]
        scale = np.linalg.norm(r, axis=1) * np.linalg.norm(s, axis=1)
        ok = np.abs(den) > 1e-14 * np.maximum(scale, 1e-300)
        tpar = np.where(ok, (qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]) / np.where(ok, den, 1.0), -1.0)
        upar = np.where(ok, (qp[:, 0] * r[:, 1] - qp[:, 1] * r[:, 0]) / np.where(ok, den, 1.0), -1.0)
        hit = ok & (tpar >= 0.0) & (tpar <= 1.0) & (upar >= 0.0) & (upar <= 1.0)
        for i, j, tp, up in zip(I[hit], J[hit], tpar[hit], upar[hit]):
            s_val = ta[i] + tp * (ta[i + 1] - ta[i])
            t_val = tb[j] + up * (tb[j + 1] - tb[j])
            pt = a0[i] + tp * (a1[i] - a0[i])
            out.append((float(s_val), float(t_val), (float(pt[0]), float(pt[1]))))
    return out


def _param_separation(c: ParametricCurve, s: float, t: float) -> float:
    d = abs(s - t)
    if c.period is not None:
        d = d % c.period
        d = min(d, c.period - d)
    return d


@dataclass
class CrunodeSearch:
    """Outcome of a crunode hunt: refined points plus full bookkeeping."""

    points: list = field(default_factory=list)
    tangential: list = field(default_factory=list)
    rejected: list = field(default_factory=list)   # (s, t, reason) triples
    seeds: list = field(default_factory=list)


def _newton_refine(spec_a: OffsetSpec, spec_b: OffsetSpec, s0: float, t0: float):
    """Damped Newton on G(s, t) = offsetA(s) - offsetB(t); returns
    (s, t, point, |G|) or raises ValueError with a reason."""

    def G(s, t):
        axp, ayp = offset_point(spec_a, s)
        bxp, byp = offset_point(spec_b, t)
        return np.array([axp - bxp, ayp - byp]), (axp, ayp), (bxp, byp)

    s, t = s0, t0
    g, pa, pb = G(s, t)
    gn = float(np.linalg.norm(g))
    for _ in range(60):
        if gn <= NEWTON_TOL:
            loc = (0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1]))
            return s, t, loc, gn
        vax, vay = offset_velocity(spec_a, s)
        vbx, vby = offset_velocity(spec_b, t)
        det = vax * (-vby) - (-vbx) * vay
        if abs(det) < 1e-300:
            raise ValueError("singular-jacobian")
        ds = (-vby * g[0] + vbx * g[1]) / det
        dt = (-vay * g[0] + vax * g[1]) / det
        lam = 1.0
        for _ in range(24):
            s_new, t_new = s - lam * ds, t - lam * dt
            if spec_a.progenitor.contains(s_new) and spec_b.progenitor.contains(t_new):
                try:
                    g_new, pa_new, pb_new = G(s_new, t_new)
                except Exception:
                    lam *= 0.5
                    continue
                gn_new = float(np.linalg.norm(g_new))
                if gn_new < gn:
                    s, t, g, gn, pa, pb = s_new, t_new, g_new, gn_new, pa_new, pb_new
                    break
            lam *= 0.5
        else:
            raise ValueError("step-stalled")
    if gn <= NEWTON_TOL:
        loc = (0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1]))
        return s, t, loc, gn
    raise ValueError("no-convergence")


def _crossing_angle(spec_a: OffsetSpec, spec_b: OffsetSpec, s: float, t: float) -> float:
    vax, vay = offset_velocity(spec_a, s)
    vbx, vby = offset_velocity(spec_b, t)
    na = math.hypot(vax, vay)
    nb = math.hypot(vbx, vby)
    if na == 0.0 or nb == 0.0:
        return 0.0
    cross = abs(vax * vby - vay * vbx) / (na * nb)
    dot = abs(vax * vbx + vay * vby) / (na * nb)
    return math.atan2(cross, dot)  # undirected angle in [0, pi/2]


def find_crunodes(
    spec_a: OffsetSpec,
    spec_b: OffsetSpec,
    srange: SearchRange,
    seeds: Optional[list] = None,
) -> CrunodeSearch:
    """Self- or cross-intersections of two offsets of a shared progenitor.

    Stage 1 seeds from dense polyline intersections (unless ``seeds`` is
    given), stage 2 refines each seed with damped Newton.  Trivial s = t
    solutions (same spec on both slots) are rejected by SEP_TOL; nearly
    parallel crossings are reported as tangential rather than crunodes.
    Divergent seeds land in ``rejected`` with a reason, never dropped.
    """
    same = spec_a == spec_b
    result = CrunodeSearch()
    if seeds is None:
        pa = sample_offset(spec_a, srange.s_interval, srange.resolution)
        pb = pa if same else sample_offset(spec_b, srange.t_interval, srange.resolution)
        seeds = polyline_oracle(pa, pb)
    result.seeds = list(seeds)
    for s0, t0, _pt in seeds:
        try:
            s, t, loc, gn = _newton_refine(spec_a, spec_b, s0, t0)
        except ValueError as exc:
            result.rejected.append((s0, t0, str(exc)))
            continue
        if same and _param_separation(spec_a.progenitor, s, t) < SEP_TOL:
            result.rejected.append((s0, t0, "trivial-parameter-pair"))
            continue
        if same and s > t:
            s, t = t, s
        angle = _crossing_angle(spec_a, spec_b, s, t)
        kind = KIND_CRUNODE if angle >= ANGLE_TOL else KIND_TANGENTIAL
        point = SingularPoint(kind=kind, location=loc, params=(s, t), method=METHOD_NEWTON, residual=gn)
        if kind == KIND_CRUNODE:
            result.points.append(point)
        else:
            result.tangential.append(point)
    result.points = _dedupe_points(result.points)
    result.tangential = _dedupe_points(result.tangential)
    return result


def find_all_crunodes(specs: list, srange: SearchRange) -> CrunodeSearch:
    """Crunodes over every unordered pair (including self pairs) of specs."""
    polylines = [sample_offset(sp, srange.t_interval, srange.resolution) for sp in specs]
    merged = CrunodeSearch()
    for i in range(len(specs)):
        for j in range(i, len(specs)):
            seeds = polyline_oracle(polylines[i], polylines[j])
            sub = find_crunodes(specs[i], specs[j], srange, seeds=seeds)
            merged.points.extend(sub.points)
            merged.tangential.extend(sub.tangential)
            merged.rejected.extend(sub.rejected)
            merged.seeds.extend(sub.seeds)
    merged.points = _dedupe_points(merged.points)
    merged.tangential = _dedupe_points(merged.tangential)
    return merged


def complete_x_symmetry(points: list, tol: float = POINT_TOL) -> list:
    """Add the (x, -y) mirror of any singular point whose mirror is missing.

    For x-axis-symmetric progenitor families the mirrored parameters are
    the same pair on the branch-swapped curves, so they are kept verbatim.
    """
    out = list(points)
    for p in points:
        mx, my = p.location[0], -p.location[1]
        if all(math.hypot(q.location[0] - mx, q.location[1] - my) > tol for q in out):
            out.append(
                SingularPoint(
                    kind=p.kind,
                    location=(mx, my),
                    params=p.params,
                    method=p.method,
                    residual=p.residual,
                )
            )
    return sorted(out, key=lambda q: q.sort_key())
