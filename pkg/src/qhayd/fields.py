"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields.

Scalars are either ``fractions.Fraction`` (over the rationals) or
``PrimeFieldElement`` (over F_p).  All arithmetic is exact; nothing in the
package touches floating point.  A computation lives in exactly one field;
mixing fields raises instead of coercing.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError, ShapeError

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "PrimeFieldElement",
    "QQ",
    "is_prime",
]


def is_prime(p: int) -> bool:
    """Deterministic trial division; intended moduli are small."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0 or p % 3 == 0:
        return False
    d = 5
    while d * d <= p:
        if p % d == 0 or p % (d + 2) == 0:
            return False
        d += 6
    return True


class Field:
    """Common interface of the two scalar fields."""

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    @property
    def characteristic(self) -> int:
        raise NotImplementedError


class RationalField(Field):
    """The rationals, realized by ``fractions.Fraction``.  Use the ``QQ`` singleton."""

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def parse(self, text: str) -> Fraction:
        text = text.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ShapeError(f"not a rational scalar: {text!r}") from exc

    def format(self, x) -> str:
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    @property
    def characteristic(self) -> int:
        return 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


class PrimeFieldElement:
    """An element of F_p.  Supports arithmetic with elements of the same field and ints."""

    __slots__ = ("residue", "field")

    def __init__(self, residue: int, field: "PrimeField"):
        self.residue = residue % field.p
        self.field = field

    def _lift(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.field.p != self.field.p:
                raise FieldMismatchError(
                    f"cannot mix F_{self.field.p} and F_{other.field.p}"
                )
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.field)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue + o.residue, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue - o.residue, self.field)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(o.residue - self.residue, self.field)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue * o.residue, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.residue == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.field.p}")
        inv = pow(o.residue, self.field.p - 2, self.field.p)
        return PrimeFieldElement(self.residue * inv, self.field)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.field)

    def __pow__(self, n: int):
        if n < 0:
            return (self.field.one() / self) ** (-n)
        return PrimeFieldElement(pow(self.residue, n, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.field.p == other.field.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.residue))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"{self.residue}"


class PrimeField(Field):
    """The prime field F_p.  Primality of p is checked at construction."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ShapeError(f"modulus {p} is not prime")
        self.p = p

    def zero(self) -> PrimeFieldElement:
        return PrimeFieldElement(0, self)

    def one(self) -> PrimeFieldElement:
        return PrimeFieldElement(1, self)

    def from_int(self, n: int) -> PrimeFieldElement:
        return PrimeFieldElement(n, self)

    def contains(self, x) -> bool:
        return isinstance(x, PrimeFieldElement) and x.field.p == self.p

    def parse(self, text: str) -> PrimeFieldElement:
        text = text.strip()
        try:
            return PrimeFieldElement(int(text), self)
        except ValueError as exc:
            raise ShapeError(f"not an F_{self.p} scalar: {text!r}") from exc

    def format(self, x) -> str:
        return str(x.residue)

    def elements(self):
        """All field elements in residue order 0..p-1."""
        return [PrimeFieldElement(i, self) for i in range(self.p)]

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))
