"""Bivariate polynomials with exact rational coefficients.

Backs the implicit equations of the oval family and the reference octics
used for cross validation.  Evaluation is exact when called with ints or
Fractions and vectorised (float) when called with numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class ImplicitPolynomial:
    """Sum of coefficient * x^i * y^j monomials, no duplicate (i, j) keys."""

    terms: tuple  # ((i, j, Fraction), ...)

    @staticmethod
    def from_terms(terms: Iterable) -> "ImplicitPolynomial":
        merged: dict = {}
        for i, j, c in terms:
            key = (int(i), int(j))
            merged[key] = merged.get(key, Fraction(0)) + Fraction(c)
        cleaned = tuple(
            (i, j, c) for (i, j), c in sorted(merged.items()) if c != 0
        )
        return ImplicitPolynomial(cleaned)

    @property
    def degree(self) -> int:
        return max((i + j for i, j, _ in self.terms), default=0)

    @property
    def max_abs_coefficient(self) -> Fraction:
        return max((abs(c) for _, _, c in self.terms), default=Fraction(0))

    def coefficient(self, i: int, j: int) -> Fraction:
        for ti, tj, c in self.terms:
            if ti == i and tj == j:
                return c
        return Fraction(0)

    def __truediv__(self, k) -> "ImplicitPolynomial":
        k = Fraction(k)
        return ImplicitPolynomial(tuple((i, j, c / k) for i, j, c in self.terms))

    def __call__(self, x, y):
        """Evaluate; exact for Rational inputs, float/ndarray otherwise."""
        if isinstance(x, Rational) and isinstance(y, Rational):
            acc = Fraction(0)
            for i, j, c in self.terms:
                acc += c * Fraction(x) ** i * Fraction(y) ** j
            return acc
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        imax = max((i for i, _, _ in self.terms), default=0)
        jmax = max((j for _, j, _ in self.terms), default=0)
        xp = [np.ones_like(x)]
        for _ in range(imax):
            xp.append(xp[-1] * x)
        yp = [np.ones_like(y)]
        for _ in range(jmax):
            yp.append(yp[-1] * y)
        acc = np.zeros(np.broadcast(x, y).shape)
        for i, j, c in self.terms:
            acc += float(c) * xp[i] * yp[j]
        return acc if acc.shape else float(acc)

    def scaled_residual(self, x: float, y: float) -> float:
        """|P(x,y)| normalised by coefficient size and point magnitude."""
        scale = float(self.max_abs_coefficient) * max(1.0, abs(x), abs(y)) ** self.degree
        return abs(float(self(x, y))) / scale

    # symmetry queries: even powers only means sign flips are invisible
    def even_in_x(self) -> bool:
        return all(i % 2 == 0 for i, _, _ in self.terms)

    def even_in_y(self) -> bool:
        return all(j % 2 == 0 for _, j, _ in self.terms)
