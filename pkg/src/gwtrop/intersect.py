"""Transverse intersection points of n tropical hypersurfaces in R^n.

Every choice of one exponent pair per hypersurface gives a linear system
``(I^i - J^i) . y = a_J^i - a_I^i``. A solution is an intersection point when,
for every hypersurface, exactly its two chosen monomials attain the maximum.
Anything degenerate raises :class:`NonTransverse` instead of being resolved.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import (
    CharacteristicDividesMultiplicity,
    DimensionMismatch,
    DimensionUnsupported,
    NonTransverse,
)
from .fields import FieldSpec, SquareClass
from .lattice import Polytope, _row_echelon, convex_hull, det, dot, solve, vadd, vsub
from .tropical import EnrichedHypersurface, dual_subdivision, tropicalize

_PERTURB_HINT = "perturb the lifts to obtain a generic configuration"


@dataclass(frozen=True)
class IntersectionDatum:
    point: tuple
    pairs: tuple  # ((I^1, J^1), ..., (I^n, J^n))
    alphas: tuple  # coefficient class of I^i
    betas: tuple  # coefficient class of J^i
    m: int

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def deltas(self) -> tuple:
        return tuple(vsub(I, J) for I, J in self.pairs)

    @property
    def determinant(self) -> int:
        return det([list(d) for d in self.deltas])

    def corner(self, choice: Sequence[bool]) -> tuple:
        """The corner sum K^1 + ... + K^n; ``choice[i]`` is True when K^i = J^i."""
        v = (0,) * self.n
        for (I, J), use_j in zip(self.pairs, choice):
            v = vadd(v, J if use_j else I)
        return v

    def corners(self) -> dict:
        """Map corner -> choice tuple, over all 2^n choices."""
        return {self.corner(ch): ch for ch in product((False, True), repeat=self.n)}

    @property
    def cell(self) -> Polytope:
        return convex_hull(self.corners())

    def swapped(self, i: int) -> "IntersectionDatum":
        """The same datum with the roles of I^i and J^i exchanged."""
        pairs = list(self.pairs)
        alphas = list(self.alphas)
        betas = list(self.betas)
        pairs[i] = pairs[i][::-1]
        alphas[i], betas[i] = betas[i], alphas[i]
        return IntersectionDatum(self.point, tuple(pairs), tuple(alphas), tuple(betas), self.m)

    def to_json(self) -> dict:
        return {
            "point": [str(x) for x in self.point],
            "pairs": [[list(I), list(J)] for I, J in self.pairs],
            "m": self.m,
        }


@dataclass(frozen=True)
class LocalBinomialSystem:
    """alpha_i x^{I^i} + beta_i x^{J^i} = 0, i = 1..n, recorded through Delta^i = I^i - J^i."""

    deltas: tuple
    alphas: tuple
    betas: tuple
    anchor: tuple  # sum of the I^i

    @property
    def n(self) -> int:
        return len(self.deltas)


def classical_multiplicity(d: IntersectionDatum) -> int:
    return abs(d.determinant)


def union_coefficient(d: IntersectionDatum, choice: Sequence) -> SquareClass:
    """Coefficient class of the union's dual-subdivision vertex K^1 + ... + K^n.

    ``choice`` lists the K^i either as exponents or as booleans (True for J^i).
    """
    out = None
    for i, k in enumerate(choice):
        I, J = d.pairs[i]
        if isinstance(k, bool):
            use_j = k
        elif tuple(k) == tuple(I):
            use_j = False
        elif tuple(k) == tuple(J):
            use_j = True
        else:
            raise ValueError(f"{k} is neither exponent of pair {i}")
        c = d.betas[i] if use_j else d.alphas[i]
        out = c if out is None else out * c
    return out


def local_binomial_system(d: IntersectionDatum) -> LocalBinomialSystem:
    anchor = (0,) * d.n
    for I, _ in d.pairs:
        anchor = vadd(anchor, I)
    return LocalBinomialSystem(d.deltas, d.alphas, d.betas, anchor)


def _candidate_pairs(f: EnrichedHypersurface) -> list:
    """Exponent pairs (I, J), I > J lexicographically, lying in a common subdivision cell.

    Only such pairs can attain the maximum together, so the others are skipped.
    """
    pairs = set()
    for pts in dual_subdivision(f).cell_points:
        for P, Q in combinations(sorted(pts), 2):
            pairs.add((Q, P))
    return sorted(pairs)


def _strict_feasible(ineqs: list) -> bool:
    """Whether c + g . t > 0 holds simultaneously for all (c, g) in ``ineqs``.

    Fourier-Motzkin elimination; every derived inequality stays strict.
    """
    if not ineqs:
        return True
    k = len(ineqs[0][1])
    for var in range(k):
        pos, neg, rest = [], [], []
        for c, g in ineqs:
            (pos if g[var] > 0 else neg if g[var] < 0 else rest).append((c, g))
        for (c1, g1), (c2, g2) in product(pos, neg):
            s1, s2 = -g2[var], g1[var]
            rest.append((s1 * c1 + s2 * c2, tuple(s1 * x + s2 * y for x, y in zip(g1, g2))))
        ineqs = rest
    return all(c > 0 for c, _ in ineqs)


def _nullspace(rows: list, n: int) -> list:
    ech = _row_echelon(rows)
    pivots = []
    R = []
    for row in ech:
        col = next(j for j, x in enumerate(row) if x != 0)
        pivots.append(col)
        R.append([x / row[col] for x in row])
    # full reduction
    for i in range(len(R) - 1, -1, -1):
        for j in range(i):
            f = R[j][pivots[i]]
            if f:
                R[j] = [x - f * y for x, y in zip(R[j], R[i])]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fcol]
        basis.append(tuple(v))
    return basis


def _degenerate_overlap(surfaces, a_maps, choice) -> bool:
    """Whether a singular pair choice is realized on a positive-dimensional set."""
    n = len(surfaces)
    rows = [list(vsub(I, J)) for I, J in choice]
    rhs = [a_maps[i][J] - a_maps[i][I] for i, (I, J) in enumerate(choice)]
    aug = [r + [b] for r, b in zip(rows, rhs)]
    if len(_row_echelon(aug)) != len(_row_echelon(rows)):
        return False  # inconsistent
    # particular solution: least-squares-free approach via echelon on augmented rows
    ech = _row_echelon(aug)
    y0 = [Fraction(0)] * n
    for row in reversed(ech):
        col = next(j for j, x in enumerate(row[:n]) if x != 0)
        y0[col] = (row[n] - sum(row[j] * y0[j] for j in range(n) if j != col)) / row[col]
    N = _nullspace(rows, n)
    ineqs = []
    for i, (I, J) in enumerate(choice):
        a = a_maps[i]
        for K in a:
            if K in (I, J):
                continue
            # a_I + I.y > a_K + K.y with y = y0 + sum t_j N_j
            c = a[I] - a[K] + dot(vsub(I, K), y0)
            g = tuple(dot(vsub(I, K), v) for v in N)
            ineqs.append((c, g))
    return _strict_feasible(ineqs)


def find_transverse_intersections(
    surfaces: Sequence[EnrichedHypersurface], field: FieldSpec
) -> list:
    """All transverse intersection points, sorted by coordinates."""
    n = len(surfaces)
    if any(f.dim != n for f in surfaces):
        raise DimensionMismatch(f"need {n} hypersurfaces in R^{n}")
    if n > 3:
        raise DimensionUnsupported("intersections are supported up to dimension 3")
    a_maps = [tropicalize(f) for f in surfaces]
    cands = [_candidate_pairs(f) for f in surfaces]
    p = field.characteristic
    found: dict = {}
    for choice in product(*cands):
        rows = [list(vsub(I, J)) for I, J in choice]
        rhs = [a_maps[i][J] - a_maps[i][I] for i, (I, J) in enumerate(choice)]
        y = solve(rows, rhs)
        if y is None:
            if _degenerate_overlap(surfaces, a_maps, choice):
                raise NonTransverse(f"maximizing pairs {choice} overlap in positive dimension; {_PERTURB_HINT}")
            continue
        values = [[a[K] + dot(K, y) for K in a] for a in a_maps]
        if any(a_maps[i][I] + dot(I, y) != max(values[i]) for i, (I, _) in enumerate(choice)):
            continue
        for i, vals in enumerate(values):
            winners = vals.count(max(vals))
            if winners > 2:
                raise NonTransverse(
                    f"{winners} monomials of hypersurface {i + 1} attain the maximum at "
                    f"{tuple(str(t) for t in y)}; {_PERTURB_HINT}"
                )
        if y in found:
            raise NonTransverse(f"two pair choices meet at the same point {tuple(str(t) for t in y)}; {_PERTURB_HINT}")
        m = abs(det(rows))
        if p and m % p == 0:
            raise CharacteristicDividesMultiplicity(
                f"multiplicity {m} at {tuple(str(t) for t in y)} is divisible by the characteristic {p}"
            )
        alphas = tuple(surfaces[i].coefficient(I) for i, (I, _) in enumerate(choice))
        betas = tuple(surfaces[i].coefficient(J) for i, (_, J) in enumerate(choice))
        found[y] = IntersectionDatum(y, tuple(choice), alphas, betas, m)
    return [found[y] for y in sorted(found)]
