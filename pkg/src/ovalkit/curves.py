"""Parametric plane curves with derivative access and explicit domains.

A curve is a pair of coordinate functions of a real parameter t together
with first and second derivatives (analytic when known, central finite
differences otherwise), a list of open domain intervals and the parameter
values excluded as singular.  All coordinate callables must accept both
floats and numpy arrays; every operation here is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegeneratePointError, DomainError

# Below this parametric speed a point is treated as degenerate.
SPEED_FLOOR = 1e-9

# Central-difference step; relative above |t| = 1.
FD_STEP = 1e-6


def fd_step(t: float) -> float:
    return max(FD_STEP, FD_STEP * abs(t))


def derivatives_fd(f: Callable[[float], float], t: float, h: Optional[float] = None):
    """Central-difference first and second derivatives of ``f`` at ``t``.

    f' = (f(t+h) - f(t-h)) / 2h,  f'' = (f(t+h) - 2 f(t) + f(t-h)) / h^2.
    Evaluation failures inside the stencil propagate to the caller.
    """
    if h is None:
        h = fd_step(t)
    fp = f(t + h)
    fm = f(t - h)
    f0 = f(t)
    d1 = (fp - fm) / (2.0 * h)
    d2 = (fp - 2.0 * f0 + fm) / (h * h)
    return d1, d2


def _fd1(f: Callable) -> Callable:
    def d(t):
        h = np.maximum(FD_STEP, FD_STEP * np.abs(t))
        return (f(t + h) - f(t - h)) / (2.0 * h)

    return d


def _fd2(f: Callable) -> Callable:
    def dd(t):
        h = np.maximum(FD_STEP, FD_STEP * np.abs(t))
        return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h)

    return dd


@dataclass(frozen=True)
class ParametricCurve:
    """A plane curve t -> (x(t), y(t)) on a union of open intervals.

    ``domain`` intervals are open; ``singular_params`` are excluded points
    (poles of the coordinate functions) given inside one period when the
    curve is periodic.  ``symmetric_x`` declares that the traced point set
    is symmetric about the x axis, which singularity searches may exploit.
    """

    x: Callable
    y: Callable
    dx: Optional[Callable] = None
    dy: Optional[Callable] = None
    ddx: Optional[Callable] = None
    ddy: Optional[Callable] = None
    domain: tuple = ((-math.inf, math.inf),)
    singular_params: tuple = ()
    period: Optional[float] = None
    symmetric_x: bool = False
    name: str = "curve"

    def __post_init__(self):
        object.__setattr__(self, "dx", self.dx or _fd1(self.x))
        object.__setattr__(self, "dy", self.dy or _fd1(self.y))
        object.__setattr__(self, "ddx", self.ddx or _fd2(self.x))
        object.__setattr__(self, "ddy", self.ddy or _fd2(self.y))

    # -- domain handling ---------------------------------------------------

    def _reduce(self, t):
        if self.period is None:
            return t
        return np.mod(t, self.period)

    def contains(self, t: float) -> bool:
        """True when ``t`` lies in an open domain interval, off singulars."""
        tr = self._reduce(t)
        for s in self.singular_params:
            if abs(tr - s) < 1e-12 or (self.period and abs(tr - s - self.period) < 1e-12):
                return False
        for lo, hi in self.domain:
            if lo < tr < hi:
                return True
        return False

    def contains_mask(self, ts: np.ndarray) -> np.ndarray:
        tr = self._reduce(np.asarray(ts, dtype=float))
        ok = np.zeros(tr.shape, dtype=bool)
        for lo, hi in self.domain:
            ok |= (tr > lo) & (tr < hi)
        for s in self.singular_params:
            ok &= np.abs(tr - s) >= 1e-12
            if self.period:
                ok &= np.abs(tr - s - self.period) >= 1e-12
        return ok

    def _require(self, t: float):
        if not self.contains(t):
            raise DomainError(f"t={t!r} outside domain of {self.name}")

    # -- evaluation --------------------------------------------------------

    def point(self, t: float) -> tuple:
        self._require(t)
        return float(self.x(t)), float(self.y(t))

    def velocity(self, t: float) -> tuple:
        self._require(t)
        return float(self.dx(t)), float(self.dy(t))

    def acceleration(self, t: float) -> tuple:
        self._require(t)
        return float(self.ddx(t)), float(self.ddy(t))

    def speed(self, t: float) -> float:
        vx, vy = self.velocity(t)
        return math.hypot(vx, vy)

    def reversed(self) -> "ParametricCurve":
        """The same point set traversed as t -> (x(-t), y(-t))."""
        x, y, dx, dy, ddx, ddy = self.x, self.y, self.dx, self.dy, self.ddx, self.ddy
        if self.period is None:
            dom = tuple(sorted((-hi, -lo) for lo, hi in self.domain))
            sing = tuple(sorted(-s for s in self.singular_params))
        else:
            p = self.period
            dom = tuple(sorted((p - hi, p - lo) for lo, hi in self.domain))
            sing = tuple(sorted((p - s) % p for s in self.singular_params))
        return ParametricCurve(
            x=lambda t: x(-t),
            y=lambda t: y(-t),
            dx=lambda t: -dx(-t),
            dy=lambda t: -dy(-t),
            ddx=lambda t: ddx(-t),
            ddy=lambda t: ddy(-t),
            domain=dom,
            singular_params=sing,
            period=self.period,
            symmetric_x=self.symmetric_x,
            name=self.name + "-reversed",
        )

    def default_range(self) -> tuple:
        if self.period is not None:
            return (0.0, self.period)
        lo = min(lo for lo, _ in self.domain)
        hi = max(hi for _, hi in self.domain)
        if math.isinf(lo) or math.isinf(hi):
            return (0.0, 2.0 * math.pi)
        return (lo, hi)


def curvature(c: ParametricCurve, t: float) -> float:
    """Signed curvature k = (x'y'' - x''y') / (x'^2 + y'^2)^(3/2)."""
    vx, vy = c.velocity(t)
    v2 = vx * vx + vy * vy
    if math.sqrt(v2) <= SPEED_FLOOR:
        raise DegeneratePointError(f"speed below floor at t={t!r}")
    ax, ay = c.acceleration(t)
    return (vx * ay - ax * vy) / v2 ** 1.5


def curvature_grid(c: ParametricCurve, ts: np.ndarray) -> np.ndarray:
    """Vectorised signed curvature; degenerate or out-of-domain t give NaN."""
    ts = np.asarray(ts, dtype=float)
    with np.errstate(all="ignore"):
        vx = np.asarray(c.dx(ts), dtype=float)
        vy = np.asarray(c.dy(ts), dtype=float)
        ax = np.asarray(c.ddx(ts), dtype=float)
        ay = np.asarray(c.ddy(ts), dtype=float)
        v2 = vx * vx + vy * vy
        k = (vx * ay - ax * vy) / v2 ** 1.5
    k = np.where(np.sqrt(v2) > SPEED_FLOOR, k, np.nan)
    k = np.where(c.contains_mask(ts), k, np.nan)
    return k


# -- stock curves ----------------------------------------------------------


def circle(radius: float = 1.0) -> ParametricCurve:
    r = float(radius)
    return ParametricCurve(
        x=lambda t: r * np.cos(t),
        y=lambda t: r * np.sin(t),
        dx=lambda t: -r * np.sin(t),
        dy=lambda t: r * np.cos(t),
        ddx=lambda t: -r * np.cos(t),
        ddy=lambda t: -r * np.sin(t),
        period=2.0 * math.pi,
        symmetric_x=True,
        name=f"circle(r={r:g})",
    )


def ellipse(a: float, b: float) -> ParametricCurve:
    a, b = float(a), float(b)
    return ParametricCurve(
        x=lambda t: a * np.cos(t),
        y=lambda t: b * np.sin(t),
        dx=lambda t: -a * np.sin(t),
        dy=lambda t: b * np.cos(t),
        ddx=lambda t: -a * np.cos(t),
        ddy=lambda t: -b * np.sin(t),
        period=2.0 * math.pi,
        symmetric_x=True,
        name=f"ellipse({a:g},{b:g})",
    )


def line(px: float, py: float, vx: float, vy: float) -> ParametricCurve:
    return ParametricCurve(
        x=lambda t: px + vx * np.asarray(t, dtype=float),
        y=lambda t: py + vy * np.asarray(t, dtype=float),
        dx=lambda t: vx * np.ones_like(np.asarray(t, dtype=float)),
        dy=lambda t: vy * np.ones_like(np.asarray(t, dtype=float)),
        ddx=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        ddy=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        name=f"line(({px:g},{py:g})+t({vx:g},{vy:g}))",
    )


def figure_eight() -> ParametricCurve:
    """(sin 2t, sin t): a figure-eight with a transversal crossing at the origin."""
    return ParametricCurve(
        x=lambda t: np.sin(2.0 * t),
        y=lambda t: np.sin(t),
        dx=lambda t: 2.0 * np.cos(2.0 * t),
        dy=lambda t: np.cos(t),
        ddx=lambda t: -4.0 * np.sin(2.0 * t),
        ddy=lambda t: -np.sin(t),
        period=2.0 * math.pi,
        symmetric_x=True,
        name="figure-eight",
    )


def pinched_loop() -> ParametricCurve:
    """(cos t, sin^3 t): a closed loop whose speed collapses at t = 0 and pi."""
    return ParametricCurve(
        x=lambda t: np.cos(t),
        y=lambda t: np.sin(t) ** 3,
        dx=lambda t: -np.sin(t),
        dy=lambda t: 3.0 * np.sin(t) ** 2 * np.cos(t),
        ddx=lambda t: -np.cos(t),
        ddy=lambda t: 6.0 * np.sin(t) * np.cos(t) ** 2 - 3.0 * np.sin(t) ** 3,
        singular_params=(0.0, math.pi),
        period=2.0 * math.pi,
        symmetric_x=True,
        name="pinched-loop",
    )


PRESETS: dict = {
    "circle": circle,
    "figure-eight": figure_eight,
    "pinched-loop": pinched_loop,
}
