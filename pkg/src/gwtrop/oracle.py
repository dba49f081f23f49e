"""Brute-force trace-form oracle for enriched multiplicities.

For a local binomial system alpha_i x^{I^i} + beta_i x^{J^i} (i = 1..n) the
coordinate ring E = k[x^{+-1}] / (binomials) is spanned by the monomials
x^u with u running over Z^n / L, L the lattice spanned by the rows
Delta^i = I^i - J^i. In E, x^{Delta^i} = -beta_i / alpha_i, so any monomial
reduces to a scalar times a basis monomial. A Smith normal form
U * Delta * V = D makes the reduction explicit:

    w = u V,  c = w mod diag(D),  representative  u_bar = c V^{-1},
    u - u_bar = (q U) Delta  with  q = (w - c) / diag(D).

The enriched multiplicity is the trace form of the Jacobian unit
det(Delta) * prod(alpha_i) * x^{sum I^i - (1,...,1)}, diagonalized by congruence.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Optional, Sequence

from .errors import DegenerateForm, NonEtale, SingularSystem
from .fields import FieldSpec, square_class_reduce
from .gw import GWElement, gw_equal
from .intersect import IntersectionDatum, LocalBinomialSystem, local_binomial_system
from .lattice import SNFDecomposition, det, inverse_unimodular, snf, vadd, vsub


@dataclass(frozen=True)
class EtaleAlgebraPresentation:
    field: FieldSpec
    deltas: tuple
    alpha_values: tuple
    beta_values: tuple
    snf: SNFDecomposition
    basis: tuple
    ratios: tuple  # -beta_i / alpha_i, the value of x^{Delta^i}
    _v_inverse: tuple

    @property
    def m(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return len(self.deltas)

    def reduce(self, u: Sequence[int]):
        """(index of the basis representative of u, scalar c(u)) with x^u = c(u) x^{u_bar}."""
        n = self.n
        V = self.snf.V
        U = self.snf.U
        diag = self.snf.diagonal
        w = [sum(u[i] * V[i][j] for i in range(n)) for j in range(n)]
        c = tuple(w[j] % diag[j] for j in range(n))
        q = [(w[j] - c[j]) // diag[j] for j in range(n)]
        coeffs = [sum(q[j] * U[j][i] for j in range(n)) for i in range(n)]  # q U
        rep = tuple(sum(c[j] * self._v_inverse[j][i] for j in range(n)) for i in range(n))
        F = self.field
        scalar = F.one()
        for r, e in zip(self.ratios, coeffs):
            if e:
                scalar = F.mul(scalar, F.power(r, e))
        return self._index[rep], scalar

    @property
    def _index(self) -> dict:
        return {b: i for i, b in enumerate(self.basis)}

    def multiplication_matrix(self, c, w: Sequence[int]) -> list:
        """Matrix of y -> c x^w y in the monomial basis (column s = image of basis[s])."""
        F = self.field
        M = [[F.zero()] * self.m for _ in range(self.m)]
        for s, b in enumerate(self.basis):
            r, scalar = self.reduce(vadd(w, b))
            M[r][s] = F.add(M[r][s], F.mul(c, scalar))
        return M

    def element(self, c, w: Sequence[int]) -> list:
        """Coordinates of c x^w in the basis."""
        F = self.field
        r, scalar = self.reduce(w)
        out = [F.zero()] * self.m
        out[r] = F.mul(c, scalar)
        return out

    def multiply(self, x: list, y: list) -> list:
        F = self.field
        out = [F.zero()] * self.m
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                r, scalar = self.reduce(vadd(self.basis[i], self.basis[j]))
                out[r] = F.add(out[r], F.mul(F.mul(a, b), scalar))
        return out


def binomial_algebra(
    deltas: Sequence[Sequence[int]], alpha_values: Sequence, beta_values: Sequence, field: FieldSpec
) -> EtaleAlgebraPresentation:
    """E = k[x^{+-1}] / (alpha_i x^{Delta^i} + beta_i) for concrete field values alpha_i, beta_i."""
    rows = [list(map(int, d)) for d in deltas]
    m = abs(det(rows))
    if m == 0:
        raise SingularSystem("the edge vectors are linearly dependent")
    p = field.characteristic
    if p and m % p == 0:
        raise NonEtale(f"characteristic {p} divides the multiplicity {m}")
    F = field
    alphas = tuple(F.element(a) for a in alpha_values)
    betas = tuple(F.element(b) for b in beta_values)
    ratios = tuple(F.neg(F.div(b, a)) for a, b in zip(alphas, betas))
    S = snf(rows)
    Vinv = inverse_unimodular(S.V)
    n = len(rows)
    basis = []
    for c in product(*[range(d) for d in S.diagonal]):
        basis.append(tuple(sum(c[j] * Vinv[j][i] for j in range(n)) for i in range(n)))
    return EtaleAlgebraPresentation(
        F, tuple(tuple(r) for r in rows), alphas, betas, S, tuple(basis), ratios, tuple(map(tuple, Vinv))
    )


def build_algebra(sys: LocalBinomialSystem, field: FieldSpec) -> EtaleAlgebraPresentation:
    """The algebra of ``sys`` with each coefficient class instantiated by its canonical representative."""
    return binomial_algebra(sys.deltas, [a.rep for a in sys.alphas], [b.rep for b in sys.betas], field)


def trace_of_element(alg: EtaleAlgebraPresentation, c, w: Sequence[int]):
    F = alg.field
    M = alg.multiplication_matrix(F.element(c), w)
    t = F.zero()
    for i in range(alg.m):
        t = F.add(t, M[i][i])
    return t


@dataclass(frozen=True)
class GramForm:
    matrix: tuple
    coefficient: object
    exponent: tuple


def gram_of_unit(alg: EtaleAlgebraPresentation, c, w: Sequence[int]) -> GramForm:
    """G[r][s] = Tr(c x^w x^{b_r} x^{b_s}) over the monomial basis."""
    c = alg.field.element(c)
    rows = []
    for br in alg.basis:
        rows.append(tuple(trace_of_element(alg, c, vadd(vadd(w, br), bs)) for bs in alg.basis))
    return GramForm(tuple(rows), c, tuple(w))


def diagonalize_congruence(g, field: FieldSpec) -> GWElement:
    """GW class of a nonsingular symmetric matrix, by symmetric Gaussian elimination."""
    F = field
    A = [list(row) for row in (g.matrix if isinstance(g, GramForm) else g)]
    A = [[F.element(x) for x in row] for row in A]
    diag = []
    hyp = 0
    while A:
        size = len(A)
        piv = next((i for i in range(size) if A[i][i] != 0), None)
        if piv is not None:
            order = [piv] + [i for i in range(size) if i != piv]
            A = [[A[i][j] for j in order] for i in order]
            d = A[0][0]
            dinv = F.inv(d)
            diag.append(d)
            A = [
                [F.sub(A[i][j], F.mul(F.mul(A[i][0], A[0][j]), dinv)) for j in range(1, size)]
                for i in range(1, size)
            ]
            continue
        pair = next(((i, j) for i in range(size) for j in range(i + 1, size) if A[i][j] != 0), None)
        if pair is None:
            raise DegenerateForm("the form is degenerate")
        i, j = pair
        # zero diagonal: [[0, b], [b, 0]] is a hyperbolic plane; split it off
        b = A[i][j]
        binv = F.inv(b)
        rest = [k for k in range(size) if k not in (i, j)]
        new = []
        for r in rest:
            row = []
            for s in rest:
                # A_rest - C B^{-1} C^T with B^{-1} = [[0, 1/b], [1/b, 0]]
                corr = F.mul(F.add(F.mul(A[r][i], A[j][s]), F.mul(A[r][j], A[i][s])), binv)
                row.append(F.sub(A[r][s], corr))
            new.append(row)
        A = new
        hyp += 1
    return GWElement(field, tuple(square_class_reduce(x, field, bounded=False) for x in diag), hyp)


def jacobian_unit(sys: LocalBinomialSystem):
    """(coefficient, exponent) of det(Delta) prod(alpha_i) x^{sum I^i - e}, alphas as canonical reps."""
    c = det([list(d) for d in sys.deltas])
    for a in sys.alphas:
        c *= a.rep
    return c, vsub(sys.anchor, (1,) * sys.n)


def symbolic_jacobian(d: IntersectionDatum, field: FieldSpec) -> list:
    """Jacobian determinant of the binomials of ``d``, expanded inside E by Leibniz' formula.

    Debug path: the result must equal the basis coordinates of :func:`jacobian_unit`.
    """
    sys = local_binomial_system(d)
    alg = build_algebra(sys, field)
    F = field
    n = d.n
    zero = [F.zero()] * alg.m
    entries = []
    for (I, J), a, b in zip(d.pairs, sys.alphas, sys.betas):
        row = []
        for j in range(n):
            # d/dx_j (a x^I + b x^J) = a I_j x^{I - e_j} + b J_j x^{J - e_j}
            e_j = tuple(int(k == j) for k in range(n))
            v = list(zero)
            for coeff, K in ((a.rep, I), (b.rep, J)):
                if K[j]:
                    v = [F.add(x, y) for x, y in zip(v, alg.element(F.element(coeff * K[j]), vsub(K, e_j)))]
            row.append(v)
        entries.append(row)
    total = list(zero)
    for perm in permutations(range(n)):
        term = alg.element(F.one(), (0,) * n)
        for i in range(n):
            term = alg.multiply(term, entries[i][perm[i]])
        if _perm_sign(perm) < 0:
            term = [F.neg(x) for x in term]
        total = [F.add(x, y) for x, y in zip(total, term)]
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j = i
        length = 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def oracle_multiplicity(sys: LocalBinomialSystem, field: FieldSpec) -> GWElement:
    alg = build_algebra(sys, field)
    c, w = jacobian_unit(sys)
    return diagonalize_congruence(gram_of_unit(alg, c, w), field)


def verify_main_theorem(d: IntersectionDatum, field: FieldSpec, expected: Optional[GWElement] = None) -> bool:
    from .enriched import enriched_multiplicity

    if expected is None:
        expected = enriched_multiplicity(d, field)
    return gw_equal(oracle_multiplicity(local_binomial_system(d), field), expected)
