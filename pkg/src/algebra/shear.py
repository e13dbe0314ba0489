"""Shear transformations (y1, y2) = (x1, x2 - psi(x1)) and variable swaps."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict

from algebra.polynomial import BivariatePolynomial, Scalar


@dataclass(frozen=True)
class ShearMap:
    """
    A shear by a univariate polynomial psi(x1) without constant term.

    ``apply_shear`` substitutes x2 -> y2 + psi(y1); the inverse shear is the one by -psi.
    """

    psi: BivariatePolynomial = field(default_factory=BivariatePolynomial.zero)

    def __post_init__(self):
        for a, b in self.psi.support():
            if b != 0:
                raise ValueError(f"Shear psi must depend on x1 only, got term x1^{a}*x2^{b}")
            if a == 0:
                raise ValueError("Shear psi must have zero constant term")

    @classmethod
    def identity(cls) -> "ShearMap":
        return cls()

    @classmethod
    def monomial(cls, c: Scalar, m: int) -> "ShearMap":
        return cls(BivariatePolynomial.monomial(c, m, 0))

    @classmethod
    def linear(cls, c: Scalar) -> "ShearMap":
        return cls.monomial(c, 1)

    def is_identity(self) -> bool:
        return self.psi.is_zero()

    def inverse(self) -> "ShearMap":
        return ShearMap(-self.psi)

    def compose(self, other: "ShearMap") -> "ShearMap":
        """The shear equal to applying ``self`` and then ``other``."""
        return ShearMap(self.psi + other.psi)

    def coefficients(self) -> Dict[int, Fraction]:
        return {a: c for (a, _), c in self.psi.sorted_terms()}

    def to_text(self) -> str:
        return self.psi.to_text()


def apply_shear(p: BivariatePolynomial, s: ShearMap) -> BivariatePolynomial:
    """Return p(y1, y2 + psi(y1)) exactly."""
    if s.is_identity():
        return p
    return p.substitute(BivariatePolynomial.x1(), BivariatePolynomial.x2() + s.psi)


def swap_variables(p: BivariatePolynomial) -> BivariatePolynomial:
    """Transpose every exponent pair; an involution."""
    return p.swap()


def linear_change_x1(p: BivariatePolynomial, c: Scalar) -> BivariatePolynomial:
    """Return p(y1 + c*y2, y2), the transposed linear shear."""
    return swap_variables(apply_shear(swap_variables(p), ShearMap.linear(c)))

