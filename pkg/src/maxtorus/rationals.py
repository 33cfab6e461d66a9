"""Exact scalars: rationals, Gaussian rationals, and symbol-extended vectors.

Rationals are plain ``fractions.Fraction`` (arbitrary precision, always in
lowest terms with positive denominator).  Gaussian rationals add an exact
imaginary part.  A :class:`SymbolicVector` carries coordinates that are
Q-linear combinations of ``1`` and user-declared real constants assumed
Q-linearly independent; only Q-linear operations are supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction]


def rational(value) -> Fraction:
    return Fraction(value)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self) -> str:
        return f"({format_rational(self.re)}+{format_rational(self.im)}i)"


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(Fraction(value), Fraction(0))
    return NotImplemented


GAUSS_ZERO = GaussianRational()
GAUSS_ONE = GaussianRational(Fraction(1))
GAUSS_I = GaussianRational(Fraction(0), Fraction(1))


def gauss(re=0, im=0) -> GaussianRational:
    return GaussianRational(Fraction(re), Fraction(im))


class SymbolicVector:
    """Vector whose coordinates are Q-linear combinations of declared symbols.

    Symbol index 0 is the constant 1; indices 1..k are declared real constants
    treated as Q-linearly independent.  Coordinates are stored sparsely.
    """

    __slots__ = ("dimension", "coords")

    def __init__(self, dimension: int, coords: Sequence[Mapping[int, Fraction]]):
        if len(coords) != dimension:
            raise ValueError("coordinate count does not match dimension")
        self.dimension = dimension
        self.coords = tuple(
            tuple(sorted((int(s), Fraction(c)) for s, c in m.items() if Fraction(c)))
            for m in coords
        )

    @classmethod
    def from_rational(cls, vec: Iterable[Scalar]) -> "SymbolicVector":
        entries = [Fraction(v) for v in vec]
        return cls(len(entries), [{0: v} if v else {} for v in entries])

    def coefficient(self, j: int, symbol: int) -> Fraction:
        for s, c in self.coords[j]:
            if s == symbol:
                return c
        return Fraction(0)

    def symbols(self) -> set:
        return {s for coord in self.coords for s, _ in coord}

    def is_zero(self) -> bool:
        return all(not coord for coord in self.coords)

    def __add__(self, other: "SymbolicVector") -> "SymbolicVector":
        if self.dimension != other.dimension:
            raise ValueError("dimension mismatch")
        out = []
        for a, b in zip(self.coords, other.coords):
            m = dict(a)
            for s, c in b:
                m[s] = m.get(s, Fraction(0)) + c
            out.append(m)
        return SymbolicVector(self.dimension, out)

    def scale(self, k: Scalar) -> "SymbolicVector":
        k = Fraction(k)
        return SymbolicVector(
            self.dimension, [dict((s, c * k) for s, c in coord) for coord in self.coords]
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymbolicVector)
            and self.dimension == other.dimension
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.dimension, self.coords))

    def __repr__(self) -> str:
        return f"SymbolicVector({self.dimension}, {self.coords!r})"
