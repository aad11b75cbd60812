"""Exact scalar arithmetic: rationals and prime fields of odd characteristic.

Scalars are either `fractions.Fraction` (over Q) or `FpElement` (over F_p).
Plain ints promote into either field; everything else mixes only within its
own field.  Cross-field arithmetic raises TypeError, never coerces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FpElement:
    """Residue mod p.  Stored reduced to [0, p)."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def _lift(self, other):
        # ints promote; residues must share p; anything else is a type error
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldError(f"mixed prime fields F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElement(self.val + o.val, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElement(self.val - o.val, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElement(o.val - self.val, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElement(self.val * o.val, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.val == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(self.val * pow(o.val, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __pow__(self, k: int):
        return FpElement(pow(self.val, k, self.p), self.p)

    def __bool__(self):
        return self.val != 0

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.val)

    def __repr__(self):
        return f"{self.val}"


@dataclass(frozen=True)
class RationalField:
    """The rational numbers.  Scalars are Fraction values in lowest terms."""

    char = 0

    def scalar(self, n) -> Fraction:
        if isinstance(n, FpElement):
            raise FieldError("residue scalar used where a rational is required")
        return Fraction(n)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        raise FieldError(f"scalar {x!r} is not a rational")

    def to_json(self, x) -> str:
        return str(x)

    def from_json(self, v, strict: bool = True):
        """Decode a JSON scalar.  Returns (value, warning-or-None)."""
        if isinstance(v, str):
            try:
                q = Fraction(v)
            except (ValueError, ZeroDivisionError) as e:
                raise FieldError(f"bad rational literal {v!r}: {e}") from None
            if str(q) != v:
                msg = f"rational {v!r} not in canonical form (want {str(q)!r})"
                if strict:
                    raise FieldError(msg)
                return q, msg
            return q, None
        if isinstance(v, int) and not isinstance(v, bool):
            msg = f"rational written as bare int {v} (canonical form is a string)"
            if strict:
                raise FieldError(msg)
            return Fraction(v), msg
        raise FieldError(f"cannot read {v!r} as a rational")

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    """F_p for an odd prime p.  Characteristic 2 is rejected outright."""

    p: int

    def __post_init__(self):
        if self.p == 2:
            raise FieldError("characteristic 2 is not supported")
        if not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    char = property(lambda self: self.p)

    def scalar(self, n) -> FpElement:
        if isinstance(n, FpElement):
            if n.p != self.p:
                raise FieldError(f"residue mod {n.p} used in F_{self.p}")
            return n
        if isinstance(n, int) and not isinstance(n, bool):
            return FpElement(n, self.p)
        raise FieldError(f"scalar {n!r} is not an integer for F_{self.p}")

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.p)

    def contains(self, x) -> bool:
        if isinstance(x, FpElement):
            return x.p == self.p
        return isinstance(x, int) and not isinstance(x, bool)

    def coerce(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise FieldError(f"residue mod {x.p} used in F_{self.p}")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return FpElement(x, self.p)
        raise FieldError(f"scalar {x!r} does not lie in F_{self.p}")

    def elements(self):
        return [FpElement(v, self.p) for v in range(self.p)]

    def to_json(self, x) -> int:
        return x.val

    def from_json(self, v, strict: bool = True):
        if isinstance(v, int) and not isinstance(v, bool):
            if 0 <= v < self.p:
                return FpElement(v, self.p), None
            msg = f"residue {v} outside [0, {self.p})"
            if strict:
                raise FieldError(msg)
            return FpElement(v, self.p), msg
        raise FieldError(f"cannot read {v!r} as a residue mod {self.p}")

    def __repr__(self):
        return f"F{self.p}"


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def field_to_json(field: Field):
    if isinstance(field, RationalField):
        return "Q"
    return {"Fp": field.p}


def field_from_json(v) -> Field:
    if v == "Q":
        return QQ
    if isinstance(v, dict) and set(v) == {"Fp"}:
        p = v["Fp"]
        if not isinstance(p, int) or isinstance(p, bool):
            raise FieldError(f"bad prime field descriptor {v!r}")
        return PrimeField(p)
    raise FieldError(f"unknown scalar field descriptor {v!r}")
