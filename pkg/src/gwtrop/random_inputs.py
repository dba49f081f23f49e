"""Seeded random generators for harness runs and tests."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Callable, Optional, Sequence

from .errors import NonTransverse
from .fields import PRIME_FIELD, REALS, FieldSpec, square_class_reduce
from .intersect import IntersectionDatum
from .lattice import det, vsub
from .tropical import EnrichedHypersurface

MAX_ATTEMPTS = 50
LIFT_DENOMINATOR = 64


def unit_pool(field: FieldSpec) -> list:
    if field.kind == REALS:
        return [1, -1]
    if field.kind == PRIME_FIELD:
        return list(range(1, field.characteristic))
    return [1, -1, 2, -2, 3, -3, 5, -5, 6, 7]


def random_lift(rng: random.Random, spread: int = 8) -> Fraction:
    den = rng.randint(1, LIFT_DENOMINATOR)
    return Fraction(rng.randint(-spread * den, spread * den), den)


def simplex_support(n: int, d: int) -> list:
    return [e for e in product(range(d + 1), repeat=n) if sum(e) <= d]


def random_hypersurface(
    rng: random.Random, field: FieldSpec, support: Sequence[tuple], spread: int = 8
) -> EnrichedHypersurface:
    pool = unit_pool(field)
    return EnrichedHypersurface.build(
        field, [(e, random_lift(rng, spread), rng.choice(pool)) for e in support]
    )


def random_support(rng: random.Random, n: int, box: int, size: int) -> list:
    """``size`` distinct exponents in [0, box]^n, not all on one affine hyperplane through few points."""
    pts = list(product(range(box + 1), repeat=n))
    return sorted(rng.sample(pts, min(size, len(pts))))


def generic_configuration(
    rng: random.Random,
    field: FieldSpec,
    supports: Sequence[Sequence[tuple]],
    check: Callable[[list], object],
    attempts: int = MAX_ATTEMPTS,
):
    """Draw lifts and coefficients until ``check`` succeeds without NonTransverse.

    Returns (surfaces, check result); gives up loudly after ``attempts`` draws.
    """
    last: Optional[Exception] = None
    for _ in range(attempts):
        surfaces = [random_hypersurface(rng, field, s) for s in supports]
        try:
            return surfaces, check(surfaces)
        except NonTransverse as exc:
            last = exc
    raise NonTransverse(f"no transverse configuration in {attempts} attempts: {last}")


def random_datum(
    rng: random.Random, field: FieldSpec, n: int, max_m: int = 10, box: int = 3
) -> IntersectionDatum:
    """A random local binomial datum with 1 <= m <= max_m and char(field) not dividing m."""
    pool = unit_pool(field)
    p = field.characteristic
    while True:
        pairs = tuple(
            (
                tuple(rng.randint(-box, box) for _ in range(n)),
                tuple(rng.randint(-box, box) for _ in range(n)),
            )
            for _ in range(n)
        )
        m = abs(det([list(vsub(I, J)) for I, J in pairs]))
        if 1 <= m <= max_m and not (p and m % p == 0):
            break
    alphas = tuple(square_class_reduce(rng.choice(pool), field) for _ in range(n))
    betas = tuple(square_class_reduce(rng.choice(pool), field) for _ in range(n))
    return IntersectionDatum((Fraction(0),) * n, pairs, alphas, betas, m)
