"""Enriched intersection multiplicities from the combinatorics of mixed cells.

At a transverse point with edge vectors Delta^i = I^i - J^i and cell P, the
multiplicity is

    sum over odd corners v of P of <eps_P(v) * alpha_v>  +  (m - q)/2 * h

where q is the number of odd corners, alpha_v is the product of the
coefficients of the monomials K^i with v = K^1 + ... + K^n, and
eps_P(v) = (-1)^{#{i : K^i = J^i}} * sign det(Delta^1, ..., Delta^n).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import CharacteristicDividesMultiplicity, NotACorner
from .fields import FieldSpec, SquareClass, square_class_reduce
from .gw import GWElement, anisotropic_rank
from .intersect import (
    IntersectionDatum,
    classical_multiplicity,
    find_transverse_intersections,
    union_coefficient,
)
from .lattice import (
    Polytope,
    boundary_odd_points,
    det,
    minkowski_sum_all,
    mixed_volume,
    standard_simplex,
    vsub,
)
from .tropical import EnrichedHypersurface, newton_polytope


@dataclass(frozen=True)
class SignedOddCorner:
    vertex: tuple
    sign: int
    coeff: SquareClass
    decomposition: tuple  # K^1, ..., K^n

    def to_json(self) -> dict:
        return {
            "vertex": list(self.vertex),
            "sign": self.sign,
            "coeff": self.coeff.rep,
            "decomposition": [list(k) for k in self.decomposition],
        }


def odd_corners(d: IntersectionDatum) -> list:
    return sorted(v for v in d.corners() if all(x % 2 for x in v))


def _choice(d: IntersectionDatum, v: Sequence[int]) -> tuple:
    choice = d.corners().get(tuple(v))
    if choice is None:
        raise NotACorner(f"{tuple(v)} is not a corner of the cell")
    return choice


def sign_of_vertex(d: IntersectionDatum, v: Sequence[int]) -> int:
    flips = sum(_choice(d, v))
    s = 1 if d.determinant > 0 else -1
    return -s if flips % 2 else s


def geometric_sign(d: IntersectionDatum, v: Sequence[int]) -> int:
    """Sign of det(v - w_1, ..., v - w_n), w_i the neighbour of v along the i-th edge.

    Computed from the cell's geometry alone; agrees with :func:`sign_of_vertex`.
    """
    choice = _choice(d, v)
    rows = []
    for i in range(d.n):
        other = list(choice)
        other[i] = not other[i]
        rows.append(list(vsub(v, d.corner(other))))
    return 1 if det(rows) > 0 else -1


def signed_odd_corners(d: IntersectionDatum) -> list:
    out = []
    for v in odd_corners(d):
        choice = _choice(d, v)
        ks = tuple(J if use_j else I for (I, J), use_j in zip(d.pairs, choice))
        out.append(SignedOddCorner(v, sign_of_vertex(d, v), union_coefficient(d, choice), ks))
    return out


def enriched_multiplicity(d: IntersectionDatum, field: FieldSpec) -> GWElement:
    m = classical_multiplicity(d)
    p = field.characteristic
    if p and m % p == 0:
        raise CharacteristicDividesMultiplicity(f"characteristic {p} divides multiplicity {m}")
    corners = signed_odd_corners(d)
    q = len(corners)
    if (m - q) % 2:
        raise AssertionError(f"m - q = {m} - {q} is odd; the cell data is inconsistent")
    minus = square_class_reduce(-1, field)
    diag = [c.coeff if c.sign > 0 else minus * c.coeff for c in corners]
    return GWElement(field, tuple(diag), (m - q) // 2)


def total_enriched_count(surfaces: Sequence[EnrichedHypersurface], field: FieldSpec) -> GWElement:
    total = GWElement.zero(field)
    for d in find_transverse_intersections(surfaces, field):
        total = total + enriched_multiplicity(d, field)
    return total


def is_combinatorially_oriented(polys: Sequence[Polytope]) -> bool:
    return not boundary_odd_points(minkowski_sum_all(list(polys)))


def _simplex_degree(P: Polytope) -> Optional[int]:
    """d if P is the standard simplex Delta_d, else None."""
    top = max(max(v) for v in P.vertices)
    if top <= 0:
        return None
    return top if set(P.vertices) == set(standard_simplex(P.dim, top).vertices) else None


def non_orientable_bound_check(surfaces: Sequence[EnrichedHypersurface], field: FieldSpec) -> dict:
    """Compare the anisotropic rank r of the total count with the odd boundary points N."""
    total = total_enriched_count(surfaces, field)
    polys = [newton_polytope(f) for f in surfaces]
    N = len(boundary_odd_points(minkowski_sum_all(polys)))
    r = anisotropic_rank(total)
    report = {"r": r, "N": N, "ok": r <= N, "total": total}
    degrees = [_simplex_degree(P) for P in polys]
    if len(polys) == 2 and None not in degrees:
        report["min_degree"] = min(degrees)
        report["ok"] = report["ok"] and r <= min(degrees)
    return report


def mixed_volume_of(surfaces: Sequence[EnrichedHypersurface]) -> int:
    return mixed_volume(*[newton_polytope(f) for f in surfaces])
