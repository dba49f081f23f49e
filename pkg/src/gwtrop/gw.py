"""The Grothendieck-Witt ring GW(k) for k = Q, R, F_p.

An element is kept as a multiset of rank-one classes plus a count of
hyperbolic planes. Equality is decided through the classical invariants
(rank, discriminant, signature, Hasse invariants), never by comparing the
stored presentation, which is not canonical.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import FieldMismatch, InputError, ZeroElement
from .fields import (
    PRIME_FIELD,
    RATIONALS,
    REAL_PLACE,
    REALS,
    FieldSpec,
    SquareClass,
    hilbert_symbol,
    is_local_square,
    parse_field,
    relevant_places,
    square_class_reduce,
)


def _normalize(field: FieldSpec, diag: Iterable[SquareClass], hyperbolics: int):
    counts = Counter(square_class_reduce(c, field) for c in diag)
    out: list[SquareClass] = []
    for c in sorted(counts):
        k = counts[c]
        if k == 0:
            continue
        neg = -c
        if neg == c:
            # -1 is a square: <c> + <c> = <c> + <-c> = h
            hyperbolics += k // 2
            counts[c] = k % 2
        elif counts.get(neg, 0):
            pairs = min(k, counts[neg])
            hyperbolics += pairs
            counts[c] -= pairs
            counts[neg] -= pairs
        out.extend([c] * counts[c])
    return tuple(sorted(out)), hyperbolics


@dataclass(frozen=True, eq=False)
class GWElement:
    """``<diag> + hyperbolics * h`` in GW(field).

    ``==`` means equality in GW(k) (see :func:`gw_equal`).
    """

    field: FieldSpec
    diag: tuple = ()
    hyperbolics: int = 0
    _normalized: bool = dc_field(default=False, repr=False)

    def __post_init__(self):
        if self.hyperbolics < 0:
            raise ValueError("hyperbolic count must be nonnegative")
        if not self._normalized:
            diag, hyp = _normalize(self.field, self.diag, self.hyperbolics)
            object.__setattr__(self, "diag", diag)
            object.__setattr__(self, "hyperbolics", hyp)
            object.__setattr__(self, "_normalized", True)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec) -> "GWElement":
        return cls(field)

    @classmethod
    def hyperbolic(cls, field: FieldSpec, n: int = 1) -> "GWElement":
        return cls(field, (), n)

    @classmethod
    def from_values(cls, field: FieldSpec, values: Iterable, hyperbolics: int = 0):
        """``<a_1, ..., a_s> + hyperbolics*h`` from raw field values."""
        return cls(field, tuple(square_class_reduce(v, field) for v in values), hyperbolics)

    # -- ring structure -------------------------------------------------------

    def _check(self, other: "GWElement"):
        if not isinstance(other, GWElement):
            raise TypeError(f"expected GWElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "GWElement") -> "GWElement":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return GWElement(self.field, self.diag + other.diag, self.hyperbolics + other.hyperbolics)

    __radd__ = __add__

    def __mul__(self, other) -> "GWElement":
        if isinstance(other, int):
            if other < 0:
                raise ValueError("GW elements are only scaled by nonnegative integers here")
            return GWElement(self.field, self.diag * other, self.hyperbolics * other)
        self._check(other)
        diag = tuple(a * b for a in self.diag for b in other.diag)
        # h * <a> = h, h * h = 2h
        hyp = (
            self.hyperbolics * len(other.diag)
            + other.hyperbolics * len(self.diag)
            + 2 * self.hyperbolics * other.hyperbolics
        )
        return GWElement(self.field, diag, hyp)

    __rmul__ = __mul__

    @property
    def rank(self) -> int:
        return len(self.diag) + 2 * self.hyperbolics

    def full_diagonal(self) -> list[SquareClass]:
        """Diagonal entries with every h expanded as <1, -1>."""
        one = square_class_reduce(1, self.field)
        return list(self.diag) + [one, -one] * self.hyperbolics

    def __eq__(self, other):
        if not isinstance(other, GWElement):
            return NotImplemented
        return gw_equal(self, other)

    __hash__ = None

    def __str__(self):
        parts = []
        if self.diag:
            parts.append("<" + ",".join(str(c.rep) for c in self.diag) + ">")
        if self.hyperbolics == 1:
            parts.append("h")
        elif self.hyperbolics:
            parts.append(f"{self.hyperbolics}·h")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"GWElement({self.field.name}: {self})"

    def to_json(self) -> dict:
        return {"diag": [c.rep for c in self.diag], "h": self.hyperbolics, "field": self.field.name}

    @classmethod
    def from_json(cls, data: dict) -> "GWElement":
        try:
            field = parse_field(data["field"])
            return cls.from_values(field, data["diag"], int(data["h"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad GW element {data!r}") from exc


def rank(x: GWElement) -> int:
    return x.rank


def gw_add(x: GWElement, y: GWElement) -> GWElement:
    return x + y


def gw_mul(x: GWElement, y: GWElement) -> GWElement:
    return x * y


_TEXT_TERM = re.compile(r"^(?:(\d+)\s*[·*]\s*)?h$")


def parse_gw(text: str, field: FieldSpec) -> GWElement:
    """Inverse of ``str(GWElement)``."""
    text = text.strip()
    if text == "0":
        return GWElement.zero(field)
    diag: list = []
    hyp = 0
    for term in (t.strip() for t in text.split(" + ")):
        if term.startswith("<") and term.endswith(">"):
            diag.extend(Fraction(v) for v in term[1:-1].split(",") if v.strip())
            continue
        m = _TEXT_TERM.match(term)
        if not m:
            raise InputError(f"cannot parse GW term {term!r}")
        hyp += int(m.group(1) or 1)
    return GWElement.from_values(field, diag, hyp)


# -- invariants ---------------------------------------------------------------

@dataclass(frozen=True)
class Invariants:
    rank: int
    discriminant: SquareClass
    signature: Optional[int]
    hasse: Optional[dict]


def _hasse(reps: list[int], place) -> int:
    s = 1
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            s *= hilbert_symbol(reps[i], reps[j], place)
    return s


def gw_invariants(x: GWElement, places: Optional[Iterable] = None) -> Invariants:
    """Rank, discriminant, signature (Q, R) and Hasse invariants (Q).

    The discriminant is the square class of the Gram determinant of the
    diagonal form, so ``h`` has discriminant -1.

    Hasse invariants use the convention prod_{i<j} (a_i, a_j)_v and are
    reported at the real place and every prime dividing 2 * (representatives),
    plus any extra ``places`` requested.
    """
    full = x.full_diagonal()
    r = len(full)
    disc_value = 1
    for c in full:
        disc_value *= c.rep
    disc = square_class_reduce(disc_value, x.field, bounded=False)
    signature = None
    hasse = None
    if x.field.kind in (RATIONALS, REALS):
        signature = sum(1 if c.rep > 0 else -1 for c in full)
    if x.field.kind == RATIONALS:
        reps = [c.rep for c in full]
        wanted = set(relevant_places(reps))
        if places is not None:
            wanted.update(places)
        ordered = [REAL_PLACE] + sorted(p for p in wanted if p != REAL_PLACE)
        hasse = {v: _hasse(reps, v) for v in ordered}
    return Invariants(r, disc, signature, hasse)


def gw_equal(x: GWElement, y: GWElement) -> bool:
    """Equality in GW(k), decided by a complete set of invariants."""
    x._check(y)
    if x.rank != y.rank:
        return False
    kind = x.field.kind
    if kind == REALS:
        return gw_invariants(x).signature == gw_invariants(y).signature
    if kind == PRIME_FIELD:
        return gw_invariants(x).discriminant == gw_invariants(y).discriminant
    places = set(relevant_places([c.rep for c in x.full_diagonal() + y.full_diagonal()]))
    ix = gw_invariants(x, places)
    iy = gw_invariants(y, places)
    return (
        ix.signature == iy.signature
        and ix.discriminant == iy.discriminant
        and ix.hasse == iy.hasse
    )


def witt_equal(x: GWElement, y: GWElement) -> bool:
    """Equality in the Witt ring W(k) = GW(k) / Z h."""
    x._check(y)
    dr = x.rank - y.rank
    if dr % 2:
        return False
    if dr > 0:
        y = y + GWElement.hyperbolic(y.field, dr // 2)
    elif dr < 0:
        x = x + GWElement.hyperbolic(x.field, -dr // 2)
    return gw_equal(x, y)


# -- anisotropic part -----------------------------------------------------------

def _local_anisotropic_rank(n: int, d: int, eps: int, p: int) -> int:
    # Serre, "A Course in Arithmetic", IV.2.2 with d = det, eps = prod_{i<j}(a_i,a_j)_p
    while n >= 5:
        eps *= hilbert_symbol(-d, -1, p)
        d = -d
        n -= 2
    if n == 0:
        return 0
    if n == 1:
        return 1
    if n == 2:
        return 0 if is_local_square(-d, p) else 2
    if n == 3:
        return 1 if hilbert_symbol(-1, -d, p) == eps else 3
    if is_local_square(d, p) and eps != hilbert_symbol(-1, -1, p):
        return 4
    return 0 if is_local_square(d, p) else 2


def anisotropic_rank(x: GWElement) -> int:
    """Rank of the anisotropic part of ``x``: x = (rank - r)/2 h + <a_1..a_r> with r minimal."""
    kind = x.field.kind
    inv = gw_invariants(x)
    if kind == REALS:
        return abs(inv.signature)
    if kind == PRIME_FIELD:
        if inv.rank % 2:
            return 1
        signed = inv.discriminant if (inv.rank // 2) % 2 == 0 else -inv.discriminant
        return 0 if signed.rep == 1 else 2
    full = [c.rep for c in x.full_diagonal()]
    n = len(full)
    if n == 0:
        return 0
    d = 1
    for a in full:
        d *= a
    best = abs(inv.signature)
    for place, eps in inv.hasse.items():
        if place == REAL_PLACE:
            continue
        best = max(best, _local_anisotropic_rank(n, d, eps, place))
    return best


# -- Puiseux leading terms --------------------------------------------------------

@dataclass(frozen=True)
class PuiseuxLeadingTerm:
    """Leading term ``coefficient * t^exponent`` of a Puiseux series."""

    coefficient: object
    exponent: Fraction = Fraction(0)

    def __post_init__(self):
        if self.coefficient == 0:
            raise ZeroElement("leading coefficient must be nonzero")


def in_map(x: PuiseuxLeadingTerm, field: FieldSpec) -> SquareClass:
    """Square class of a Puiseux series: the class of its leading coefficient."""
    return square_class_reduce(x.coefficient, field)
