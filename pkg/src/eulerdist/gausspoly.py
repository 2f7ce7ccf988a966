"""Gaussian-polynomial test functions.

A GaussPoly is poly(x) * exp(-sum_j (x_j - center_j)^2 / width^2) with a
rational polynomial, rational center and rational width, so that
differentiation and coordinate multiplication stay exact.  The class is
closed under both and is Schwartz by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp
from typing import Sequence

from .errors import DimensionError
from .poly import Polynomial, RationalLike


@dataclass(frozen=True)
class GaussPoly:
    poly: Polynomial
    center: tuple[Fraction, ...]
    width: Fraction

    def __post_init__(self):
        if len(self.center) != self.poly.dim:
            raise DimensionError(
                f"center has {len(self.center)} entries, poly dim {self.poly.dim}"
            )
        if self.width <= 0:
            raise ValueError(f"width must be positive, got {self.width}")

    @property
    def dim(self) -> int:
        return self.poly.dim

    @classmethod
    def gaussian(
        cls,
        dim: int = 1,
        center: RationalLike | Sequence[RationalLike] = 0,
        width: RationalLike = 1,
    ) -> "GaussPoly":
        """Plain Gaussian exp(-|x - center|^2 / width^2)."""
        if isinstance(center, (int, Fraction)):
            center = (center,) * dim
        return cls(
            Polynomial.constant(dim, 1),
            tuple(Fraction(c) for c in center),
            Fraction(width),
        )

    def with_poly(self, poly: Polynomial) -> "GaussPoly":
        return GaussPoly(poly, self.center, self.width)

    def value(self, x: Sequence[float]) -> float:
        if len(x) != self.dim:
            raise DimensionError(f"point has {len(x)} entries, dim {self.dim}")
        w2 = float(self.width) ** 2
        arg = sum((float(xi) - float(ci)) ** 2 for xi, ci in zip(x, self.center))
        p = 0.0
        for alpha, c in self.poly.terms.items():
            v = float(c)
            for xi, a in zip(x, alpha):
                if a:
                    v *= float(xi) ** a
            p += v
        return p * exp(-arg / w2)

    def derivative(self, j: int) -> "GaussPoly":
        """Exact partial derivative in coordinate j (1-based)."""
        if not 1 <= j <= self.dim:
            raise DimensionError(f"coordinate {j} out of range 1..{self.dim}")
        # d/dx_j [p e^g] = (dp/dx_j + p * (-2(x_j - c_j)/w^2)) e^g
        lin = (
            Polynomial.variable(self.dim, j)
            - Polynomial.constant(self.dim, self.center[j - 1])
        ).scale(Fraction(-2) / (self.width**2))
        return self.with_poly(self.poly.partial(j) + self.poly * lin)

    def times_coord(self, j: int) -> "GaussPoly":
        """Multiplication by x_j (1-based)."""
        return self.with_poly(self.poly * Polynomial.variable(self.dim, j))

    def reflected(self) -> "GaussPoly":
        """The function x -> f(-x)."""
        terms = {
            alpha: (c if sum(alpha) % 2 == 0 else -c)
            for alpha, c in self.poly.terms.items()
        }
        return GaussPoly(
            Polynomial(self.dim, terms),
            tuple(-c for c in self.center),
            self.width,
        )
