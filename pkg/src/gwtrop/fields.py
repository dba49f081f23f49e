"""Base fields Q, R and F_p, and arithmetic of square classes over them.

Elements of Q and R are held as :class:`fractions.Fraction` (the reals only
ever see exact rational inputs); elements of F_p are ints in ``range(p)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Union

from .errors import FieldMismatch, UnsupportedField, ZeroElement

RATIONALS = "Q"
REALS = "R"
PRIME_FIELD = "F"

#: The archimedean place of Q, used as ``place`` argument of :func:`hilbert_symbol`.
REAL_PLACE = "real"

Q_INPUT_BOUND = 2**63
_TRIAL_BOUND = 10_000

Number = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind in (RATIONALS, REALS):
            if self.characteristic != 0:
                raise UnsupportedField(f"{self.kind} has characteristic 0")
        elif self.kind == PRIME_FIELD:
            p = self.characteristic
            if p == 2:
                raise UnsupportedField("characteristic 2 is not supported")
            if not is_prime(p):
                raise UnsupportedField(f"F{p}: {p} is not prime")
        else:
            raise UnsupportedField(f"unknown field kind {self.kind!r}")

    @property
    def name(self) -> str:
        if self.kind == PRIME_FIELD:
            return f"F{self.characteristic}"
        return self.kind

    def __str__(self):
        return self.name

    # -- element arithmetic -------------------------------------------------

    def element(self, x) -> Number:
        """Coerce an int, Fraction or string into an element of this field."""
        if isinstance(x, str):
            x = _parse_rational(x)
        if self.kind == PRIME_FIELD:
            p = self.characteristic
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise FieldMismatch(f"{x} has no image in {self.name}")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        return Fraction(x)

    def zero(self) -> Number:
        return self.element(0)

    def one(self) -> Number:
        return self.element(1)

    def is_zero(self, a: Number) -> bool:
        return a == 0

    def add(self, a: Number, b: Number) -> Number:
        if self.kind == PRIME_FIELD:
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a: Number, b: Number) -> Number:
        if self.kind == PRIME_FIELD:
            return (a - b) % self.characteristic
        return a - b

    def neg(self, a: Number) -> Number:
        if self.kind == PRIME_FIELD:
            return -a % self.characteristic
        return -a

    def mul(self, a: Number, b: Number) -> Number:
        if self.kind == PRIME_FIELD:
            return a * b % self.characteristic
        return a * b

    def inv(self, a: Number) -> Number:
        if a == 0:
            raise ZeroElement("0 is not invertible")
        if self.kind == PRIME_FIELD:
            return pow(a, -1, self.characteristic)
        return 1 / Fraction(a)

    def div(self, a: Number, b: Number) -> Number:
        return self.mul(a, self.inv(b))

    def power(self, a: Number, e: int) -> Number:
        if e < 0:
            return self.power(self.inv(a), -e)
        if self.kind == PRIME_FIELD:
            return pow(a, e, self.characteristic)
        return Fraction(a) ** e


def parse_field(text: str) -> FieldSpec:
    """Parse ``"Q"``, ``"R"`` or ``"F<p>"``."""
    text = text.strip()
    if text in (RATIONALS, REALS):
        return FieldSpec(text)
    m = re.fullmatch(r"F([0-9]+)", text)
    if not m:
        raise UnsupportedField(f"cannot parse field {text!r}")
    return FieldSpec(PRIME_FIELD, int(m.group(1)))


QQ = FieldSpec(RATIONALS)
RR = FieldSpec(REALS)


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FieldMismatch(f"not a rational number: {text!r}") from exc


# -- integer helpers --------------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` (n != 0)."""
    n = abs(n)
    if n == 0:
        raise ZeroElement("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f <= _TRIAL_BOUND and f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        if n < _TRIAL_BOUND**2:
            out[n] = out.get(n, 0) + 1
        else:
            from sympy import factorint

            for p, e in factorint(n).items():
                out[p] = out.get(p, 0) + e
    return out


def squarefree_part(n: int) -> int:
    """Signed squarefree integer in the square class of ``n``."""
    sign = -1 if n < 0 else 1
    s = 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
    return sign * s


def legendre(a: int, p: int) -> int:
    """Quadratic residue character of ``a`` modulo the odd prime ``p``."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    for a in range(2, p):
        if legendre(a, p) == -1:
            return a
    raise UnsupportedField(f"no nonresidue mod {p}")


# -- square classes ----------------------------------------------------------

@dataclass(frozen=True, order=True)
class SquareClass:
    """A unit of ``field`` modulo squares, stored by canonical representative.

    Q: signed squarefree integer. R: +1 or -1. F_p: 1 or the least nonresidue.
    """

    field: FieldSpec
    rep: int

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if not isinstance(other, SquareClass):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return square_class_reduce(self.rep * other.rep, self.field, bounded=False)

    def __neg__(self) -> "SquareClass":
        return square_class_reduce(-self.rep, self.field)

    @property
    def value(self) -> Number:
        """The representative as an element of the field."""
        return self.field.element(self.rep)

    def __str__(self):
        return str(self.rep)

    def __repr__(self):
        return f"<{self.rep}>_{self.field.name}"


def square_class_reduce(a, field: FieldSpec, bounded: bool = True) -> SquareClass:
    """Canonical square class of the unit ``a`` of ``field``.

    Rationals with numerator or denominator of 2^63 or more are rejected unless
    ``bounded`` is False; internal callers with large intermediate values
    (Gram diagonals) lift the cap and accept the factoring cost.
    """
    if isinstance(a, SquareClass):
        if a.field != field:
            raise FieldMismatch(f"{a!r} is not over {field}")
        return a
    if isinstance(a, str):
        a = _parse_rational(a)
    if field.kind == PRIME_FIELD:
        p = field.characteristic
        x = field.element(a)
        if x == 0:
            raise ZeroElement(f"{a} is zero in {field}")
        return SquareClass(field, 1 if legendre(x, p) == 1 else least_nonresidue(p))
    a = Fraction(a)
    if a == 0:
        raise ZeroElement("0 has no square class")
    if field.kind == REALS:
        return SquareClass(field, 1 if a > 0 else -1)
    num, den = a.numerator, a.denominator
    if bounded and (abs(num) >= Q_INPUT_BOUND or den >= Q_INPUT_BOUND):
        raise FieldMismatch(f"{a} exceeds the supported input size 2^63")
    return SquareClass(field, squarefree_part(num * den))


def unit(field: FieldSpec, a) -> SquareClass:
    return square_class_reduce(a, field)


# -- Hilbert symbols over Q ---------------------------------------------------

def _as_int(a) -> int:
    if isinstance(a, SquareClass):
        if a.field.kind != RATIONALS:
            raise UnsupportedField("Hilbert symbols are only implemented over Q")
        return a.rep
    a = Fraction(a)
    if a == 0:
        raise ZeroElement("Hilbert symbol of 0")
    return a.numerator * a.denominator


def _split(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol ``(a, b)_v`` over Q at an odd prime, 2, or :data:`REAL_PLACE`."""
    x, y = _as_int(a), _as_int(b)
    if place == REAL_PLACE:
        return -1 if x < 0 and y < 0 else 1
    p = int(place)
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime place")
    alpha, u = _split(x, p)
    beta, v = _split(y, p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2  # noqa: E731
        omega = lambda t: ((t * t - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def is_local_square(a, place) -> bool:
    """Whether the rational ``a`` is a square in the completion of Q at ``place``."""
    x = _as_int(a)
    if place == REAL_PLACE:
        return x > 0
    p = int(place)
    v, u = _split(x, p)
    if v % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def relevant_places(reps: Iterable[int]) -> list:
    """Real place, 2, and every prime dividing one of the integers ``reps``."""
    primes = {2}
    for r in reps:
        primes.update(factorize(r))
    return [REAL_PLACE] + sorted(primes)
