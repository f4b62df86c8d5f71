"""The bifocal oval family: harmonic mean of focal distances held constant.

Foci sit at (+a, 0) and (-a, 0); the level value is b.  The family is
available in two forms that every consumer cross validates against each
other: an exact degree-8 implicit polynomial and a trigonometric
parametrization of the external loop.  The ratio e = b/a controls the
topology (two loops, figure-eight, non-convex oval, convex oval).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from .curves import ParametricCurve
from .errors import PoleError
from .implicit import ImplicitPolynomial

# Resolution of the sign scan that locates the parameter domain.
_DOMAIN_SCAN = 20001


@dataclass(frozen=True)
class CayleyParams:
    """Half focal distance a and harmonic-mean level b, both positive."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"need a > 0 and b > 0, got a={self.a!r} b={self.b!r}")

    @property
    def e(self):
        """Shape ratio b/a; exact when both inputs are rational."""
        if isinstance(self.a, Rational) and isinstance(self.b, Rational):
            return Fraction(self.b) / Fraction(self.a)
        return self.b / self.a

    @property
    def foci(self) -> tuple:
        return ((float(self.a), 0.0), (-float(self.a), 0.0))


class ShapeClass(Enum):
    TWO_LOOPS = "TwoLoops"
    LEMNISCATE = "Lemniscate"
    NON_CONVEX_OVAL = "NonConvexOval"
    CONVEX_OVAL = "ConvexOval"


def classify_shape(p: CayleyParams) -> ShapeClass:
    """Topology class from e = b/a; the e = sqrt(3) boundary counts as convex."""
    e = p.e
    if isinstance(e, Fraction):
        if e < 1:
            return ShapeClass.TWO_LOOPS
        if e == 1:
            return ShapeClass.LEMNISCATE
        return ShapeClass.NON_CONVEX_OVAL if e * e < 3 else ShapeClass.CONVEX_OVAL
    e = float(e)
    if abs(e - 1.0) <= 1e-12:
        return ShapeClass.LEMNISCATE
    if e < 1.0:
        return ShapeClass.TWO_LOOPS
    return ShapeClass.NON_CONVEX_OVAL if e * e < 3.0 - 1e-12 else ShapeClass.CONVEX_OVAL


def cayley_implicit(p: CayleyParams) -> ImplicitPolynomial:
    """Degree-8 implicit polynomial of the full locus, exact coefficients.

    The zero set contains the true oval plus spurious interior loops that
    squaring introduced; ``bifocal_residual`` tells the two apart.
    """
    a2 = Fraction(p.a) ** 2
    b2 = Fraction(p.b) ** 2
    a4, a6, a8 = a2 * a2, a2 ** 3, a2 ** 4
    b4 = b2 * b2
    return ImplicitPolynomial.from_terms(
        [
            (0, 0, 16 * a8 - 16 * a6 * b2),
            (2, 0, -64 * a6 + 16 * a4 * b2 + 16 * a2 * b4),
            (0, 2, 64 * a6 - 48 * a4 * b2),
            (4, 0, 96 * a4 + 16 * a2 * b2),
            (2, 2, -64 * a4 - 32 * a2 * b2),
            (0, 4, 96 * a4 - 48 * a2 * b2),
            (6, 0, -64 * a2 - 16 * b2),
            (4, 2, -64 * a2 - 48 * b2),
            (2, 4, 64 * a2 - 48 * b2),
            (0, 6, 64 * a2 - 16 * b2),
            (8, 0, 16),
            (6, 2, 64),
            (4, 4, 96),
            (2, 6, 64),
            (0, 8, 16),
        ]
    )


def bifocal_residual(point, p: CayleyParams):
    """1/dist(F1) + 1/dist(F2) - 2/b; zero exactly on the true oval.

    Scalar input at a focus raises PoleError.  Array input returns +inf at
    poles so grid filters can keep going.
    """
    x, y = point
    a = float(p.a)
    if np.ndim(x) == 0 and np.ndim(y) == 0:
        r1 = math.hypot(float(x) + a, float(y))
        r2 = math.hypot(float(x) - a, float(y))
        if r1 == 0.0 or r2 == 0.0:
            raise PoleError(f"point {point!r} coincides with a focus")
        return 1.0 / r1 + 1.0 / r2 - 2.0 / float(p.b)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r1 = np.hypot(x + a, y)
    r2 = np.hypot(x - a, y)
    with np.errstate(divide="ignore"):
        return 1.0 / r1 + 1.0 / r2 - 2.0 / float(p.b)


# -- parametrization of the external loop -----------------------------------
#
#   x(t) = (b^2/a) cos 2t / sin^4 2t
#   y(t) = +-sqrt(b^2 / (4 cos^4 t) - (x(t) - a)^2)
#
# Everything has period pi, and t -> pi - t retraces the same points, so one
# traversal of the external loop's half (one y sign) lives in (0, pi/2).
# The radicand fixes the admissible t; its simple zeros are the oval's
# x-axis crossings and (for e = 1) its interior double zero is the node.


def _cayley_raw(a: float, b: float):
    c = b * b / a

    def x(t):
        t = np.asarray(t, dtype=float)
        s = np.sin(2.0 * t)
        return c * np.cos(2.0 * t) / s ** 4

    def dx(t):
        t = np.asarray(t, dtype=float)
        s = np.sin(2.0 * t)
        co = np.cos(2.0 * t)
        return c * (-2.0 / s ** 3 - 8.0 * co ** 2 / s ** 5)

    def ddx(t):
        t = np.asarray(t, dtype=float)
        s = np.sin(2.0 * t)
        co = np.cos(2.0 * t)
        return c * (44.0 * co / s ** 4 + 80.0 * co ** 3 / s ** 6)

    def rad(t):
        t = np.asarray(t, dtype=float)
        return b * b / (4.0 * np.cos(t) ** 4) - (x(t) - a) ** 2

    def drad(t):
        t = np.asarray(t, dtype=float)
        return b * b * np.sin(t) / np.cos(t) ** 5 - 2.0 * (x(t) - a) * dx(t)

    def ddrad(t):
        t = np.asarray(t, dtype=float)
        co = np.cos(t)
        return (
            b * b * (1.0 / co ** 4 + 5.0 * np.sin(t) ** 2 / co ** 6)
            - 2.0 * dx(t) ** 2
            - 2.0 * (x(t) - a) * ddx(t)
        )

    return x, dx, ddx, rad, drad, ddrad


def _bisect(f, lo: float, hi: float, iters: int = 90) -> float:
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if (f(mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=64)
def _cayley_domain(a: float, b: float):
    """Open intervals in (0, pi/2) where the radicand is positive, plus
    interior double-zero parameters (the node of the e = 1 case)."""
    _, _, _, rad, drad, _ = _cayley_raw(a, b)
    half = math.pi / 2.0
    ts = np.linspace(0.0, half, _DOMAIN_SCAN)[1:-1]
    vals = rad(ts)
    pos = vals > 0
    idx = np.where(pos)[0]
    if len(idx) == 0:
        return (), ()
    breaks = np.where(np.diff(idx) > 1)[0]
    step = ts[1] - ts[0]
    scale = max(float(np.max(vals[idx])), 1e-30)
    bounds = []
    nodes = []
    for grp in np.split(idx, breaks + 1):
        lo_t, hi_t = ts[grp[0]], ts[grp[-1]]
        lo_t = _bisect(rad, max(lo_t - step, ts[0]), lo_t) if rad(max(lo_t - step, ts[0])) < 0 else lo_t
        hi_t = _bisect(rad, hi_t, min(hi_t + step, ts[-1])) if rad(min(hi_t + step, ts[-1])) < 0 else hi_t
        bounds.append([lo_t, hi_t])
        # interior near-zero minimum = tangential contact with the x axis
        sub = np.linspace(lo_t + step, hi_t - step, 2001)
        if len(sub) > 2:
            sv = rad(sub)
            k = int(np.argmin(sv))
            if 0 < k < len(sub) - 1 and sv[k] < 1e-4 * scale:
                t_min = _bisect(drad, sub[k - 1], sub[k + 1])
                if rad(t_min) < 1e-10 * scale:
                    nodes.append(t_min)
    # a hairline negative gap between two runs is the same tangential touch,
    # just pushed below zero by rounding; merge it and keep the node
    merged = [bounds[0]]
    for lo_t, hi_t in bounds[1:]:
        gap_lo = merged[-1][1]
        if lo_t - gap_lo < 4 * step and rad(0.5 * (gap_lo + lo_t)) > -1e-10 * scale:
            nodes.append(_bisect(drad, gap_lo - step, lo_t + step))
            merged[-1][1] = hi_t
        else:
            merged.append([lo_t, hi_t])
    # enforce the exact t -> pi/2 - t mirror symmetry of the radicand
    flat = sorted(x for pair in merged for x in pair)
    mirrored = sorted(half - x for x in flat)
    sym = [0.5 * (u + v) for u, v in zip(flat, mirrored)]
    intervals = tuple((sym[i], sym[i + 1]) for i in range(0, len(sym), 2))
    return intervals, tuple(nodes)


def cayley_param(p: CayleyParams, branch: str = "upper") -> ParametricCurve:
    """One y-branch of the external loop as a ParametricCurve.

    ``branch`` selects the sign of the square root explicitly; there is no
    sign heuristic.  The domain is the empirically determined single-cover
    window inside (0, pi/2), repeated with period pi.
    """
    if branch not in ("upper", "lower"):
        raise ValueError(f"branch must be 'upper' or 'lower', got {branch!r}")
    sign = 1.0 if branch == "upper" else -1.0
    a, b = float(p.a), float(p.b)
    x, dx, ddx, rad, drad, ddrad = _cayley_raw(a, b)
    intervals, nodes = _cayley_domain(a, b)

    def y(t):
        return sign * np.sqrt(np.clip(rad(t), 0.0, None))

    def dy(t):
        r = np.clip(rad(t), 0.0, None)
        with np.errstate(all="ignore"):
            return sign * drad(t) / (2.0 * np.sqrt(r))

    def ddy(t):
        r = np.clip(rad(t), 0.0, None)
        d1 = drad(t)
        with np.errstate(all="ignore"):
            return sign * (ddrad(t) / (2.0 * np.sqrt(r)) - d1 * d1 / (4.0 * r ** 1.5))

    return ParametricCurve(
        x=x,
        y=y,
        dx=dx,
        dy=dy,
        ddx=ddx,
        ddy=ddy,
        domain=intervals,
        singular_params=tuple(sorted((0.0, math.pi / 2.0) + nodes)),
        period=math.pi,
        symmetric_x=False,
        name=f"cayley(a={a:g},b={b:g},{branch})",
    )


def cayley_branches(p: CayleyParams) -> tuple:
    """Both y-branches; together they trace the whole external loop."""
    return cayley_param(p, "upper"), cayley_param(p, "lower")
