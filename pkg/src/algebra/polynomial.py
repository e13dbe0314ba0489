"""Sparse bivariate polynomials with exact rational coefficients."""

import logging
from fractions import Fraction
from typing import Dict, FrozenSet, Mapping, NamedTuple, Optional, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class LatticePoint(NamedTuple):
    """A multi-index (t1, t2) of the Taylor support."""

    t1: int
    t2: int


class BivariatePolynomial:
    """
    Immutable sparse polynomial in x1, x2 over the rationals.

    Only nonzero coefficients are stored, so the key set is exactly the Taylor
    support. Instances are hashable and compare by their term map.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Tuple[int, int], Scalar]] = None):
        cleaned: Dict[LatticePoint, Fraction] = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"Negative exponent in term ({a}, {b})")
            c = Fraction(c)
            if c != 0:
                cleaned[LatticePoint(int(a), int(b))] = c
        self._terms = cleaned
        self._hash: Optional[int] = None

    # Construction helpers

    @classmethod
    def zero(cls) -> "BivariatePolynomial":
        return cls()

    @classmethod
    def constant(cls, c: Scalar) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: Scalar, a: int, b: int) -> "BivariatePolynomial":
        return cls({(a, b): c})

    @classmethod
    def x1(cls) -> "BivariatePolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def x2(cls) -> "BivariatePolynomial":
        return cls({(0, 1): 1})

    # Accessors

    @property
    def terms(self) -> Dict[LatticePoint, Fraction]:
        return dict(self._terms)

    def support(self) -> FrozenSet[LatticePoint]:
        return frozenset(self._terms)

    def coefficient(self, a: int, b: int) -> Fraction:
        return self._terms.get(LatticePoint(a, b), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((a + b for a, b in self._terms), default=0)

    def constant_term(self) -> Fraction:
        return self.coefficient(0, 0)

    def gradient_at_origin(self) -> Tuple[Fraction, Fraction]:
        return self.coefficient(1, 0), self.coefficient(0, 1)

    def linear_part(self) -> "BivariatePolynomial":
        return BivariatePolynomial({k: c for k, c in self._terms.items() if k.t1 + k.t2 == 1})

    def filter_terms(self, predicate) -> "BivariatePolynomial":
        return BivariatePolynomial({k: c for k, c in self._terms.items() if predicate(k)})

    # Arithmetic

    def __add__(self, other: Union["BivariatePolynomial", Scalar]) -> "BivariatePolynomial":
        other = _coerce(other)
        terms: Dict[Tuple[int, int], Fraction] = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return BivariatePolynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Union["BivariatePolynomial", Scalar]) -> "BivariatePolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: Scalar) -> "BivariatePolynomial":
        return _coerce(other) - self

    def __mul__(self, other: Union["BivariatePolynomial", Scalar]) -> "BivariatePolynomial":
        other = _coerce(other)
        terms: Dict[Tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return BivariatePolynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BivariatePolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Polynomial powers must be non-negative integers, got {exponent!r}")
        result = BivariatePolynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def substitute(self, x1_image: "BivariatePolynomial", x2_image: "BivariatePolynomial") -> "BivariatePolynomial":
        """Exact composition p(X1, X2) with X1, X2 polynomials in the new variables."""
        powers1: Dict[int, BivariatePolynomial] = {0: BivariatePolynomial.constant(1)}
        powers2: Dict[int, BivariatePolynomial] = {0: BivariatePolynomial.constant(1)}

        def power(cache: Dict[int, BivariatePolynomial], base: BivariatePolynomial, k: int) -> BivariatePolynomial:
            if k not in cache:
                top = max(cache)
                value = cache[top]
                for j in range(top + 1, k + 1):
                    value = value * base
                    cache[j] = value
            return cache[k]

        result = BivariatePolynomial.zero()
        for (a, b), c in sorted(self._terms.items()):
            result = result + power(powers1, x1_image, a) * power(powers2, x2_image, b) * c
        return result

    def swap(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(b, a): c for (a, b), c in self._terms.items()})

    # Evaluation

    def evaluate(self, x1: Scalar, x2: Scalar) -> Fraction:
        x1, x2 = Fraction(x1), Fraction(x2)
        return sum((c * x1**a * x2**b for (a, b), c in self._terms.items()), Fraction(0))

    def evaluate_array(self, x1, x2) -> np.ndarray:
        """Floating-point evaluation broadcast over numpy arrays."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        out = np.zeros(np.broadcast(x1, x2).shape, dtype=float)
        for (a, b), c in self._terms.items():
            out = out + float(c) * x1**a * x2**b
        return out

    # Printing and comparison

    def sorted_terms(self) -> list:
        return sorted(self._terms.items())

    def to_text(self, variables: Tuple[str, str] = ("x1", "x2")) -> str:
        """Canonical text: terms ordered by (t1, t2), explicit '*' and '^'."""
        if not self._terms:
            return "0"
        pieces = []
        for index, ((a, b), c) in enumerate(self.sorted_terms()):
            factors = []
            if a:
                factors.append(variables[0] if a == 1 else f"{variables[0]}^{a}")
            if b:
                factors.append(variables[1] if b == 1 else f"{variables[1]}^{b}")
            magnitude = abs(c)
            if not factors:
                body = _format_coefficient(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_format_coefficient(magnitude)] + factors)
            if index == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self.to_text()!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariatePolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == BivariatePolynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash


def _coerce(value: Union[BivariatePolynomial, Scalar]) -> BivariatePolynomial:
    if isinstance(value, BivariatePolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return BivariatePolynomial.constant(value)
    raise TypeError(f"Cannot combine polynomial with {type(value).__name__}")


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def face_series(p: BivariatePolynomial, face) -> BivariatePolynomial:
    """
    Restrict p to the terms lying on a face of its Newton polyhedron.

    Args:
        p: The polynomial
        face: A ``geometry.newton.Face`` of the Newton polyhedron of p

    Returns:
        The associated face series. For a compact edge the result is
        homogeneous of degree 1 with respect to the edge weight.

    Raises:
        FaceNotOnPolyhedronError: If ``face`` is not a face of the polyhedron of p
    """
    from errors import FaceNotOnPolyhedronError
    from geometry.newton import build_newton_polyhedron

    polyhedron = build_newton_polyhedron(p.support())
    if face not in polyhedron.faces():
        raise FaceNotOnPolyhedronError(f"{face} is not a face of the Newton polyhedron of {p.to_text()}")
    result = p.filter_terms(face.contains)
    if face.is_compact_edge() and not is_weighted_homogeneous(result, face.weight.k1, face.weight.k2):
        raise AssertionError(f"Face series {result} is not homogeneous for weight {face.weight}")
    return result


def is_weighted_homogeneous(p: BivariatePolynomial, k1: Fraction, k2: Fraction) -> bool:
    """True iff every term satisfies k1*t1 + k2*t2 = 1."""
    return all(k1 * a + k2 * b == 1 for a, b in p.support())
