"""Exact lattice and polytope geometry.

Points are tuples of ints (or Fractions where rational points are needed).
Hulls and volumes are supported for affine dimension at most 3; the linear
algebra helpers (determinant, solving, Smith normal form) work in any
dimension. Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, DimensionUnsupported, SingularMatrix

Vector = tuple
Matrix = list


# -- small vector helpers -------------------------------------------------------

def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def cross(a: Sequence, b: Sequence) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def primitive(v: Sequence[int]) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g else tuple(v)


def lattice_length(v: Sequence[int]) -> int:
    """Number of lattice steps along the integer vector ``v``."""
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


# -- exact linear algebra ---------------------------------------------------------

def det(M: Sequence[Sequence]) -> object:
    """Determinant by fraction-free Bareiss elimination (exact for ints)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    if any(len(row) != n for row in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    cols = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in A]


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _row_echelon(rows: Sequence[Sequence]) -> list:
    A = [[Fraction(x) for x in row] for row in rows]
    out = []
    col = 0
    ncols = len(A[0]) if A else 0
    while A and col < ncols:
        piv = next((r for r in A if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        A.remove(piv)
        A = [[x - r[col] / piv[col] * y for x, y in zip(r, piv)] for r in A]
        out.append(piv)
        col += 1
    return out


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return len(_row_echelon(rows)) if rows else 0


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[tuple]:
    """Unique solution of ``A x = b`` over Q, or None if A is singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return None
        M[k], M[piv] = M[piv], M[k]
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k] / M[k][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return tuple(M[i][n] / M[i][i] for i in range(n))


# -- Smith normal form --------------------------------------------------------------

@dataclass(frozen=True)
class SNFDecomposition:
    """``U * source * V == D`` with U, V unimodular and D diagonal, d_1 | d_2 | ..."""

    U: tuple
    D: tuple
    V: tuple
    source: tuple

    @property
    def diagonal(self) -> tuple:
        return tuple(self.D[i][i] for i in range(len(self.D)))


def snf(M: Sequence[Sequence[int]]) -> SNFDecomposition:
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionMismatch("snf expects a square matrix")
    A = [list(map(int, row)) for row in M]
    U = identity(n)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for R in (A, U):
            R[dst] = [x + q * y for x, y in zip(R[dst], R[src])]

    def add_col(dst, src, q):
        for R in (A, V):
            for row in R:
                row[dst] += q * row[src]

    for t in range(n):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, n) if A[i][j]]
            if not entries:
                raise SingularMatrix("matrix is singular")
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            for i in range(t + 1, n):
                add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, n)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            U[t] = [-x for x in U[t]]
            A[t] = [-x for x in A[t]]
    freeze = lambda R: tuple(tuple(r) for r in R)  # noqa: E731
    return SNFDecomposition(freeze(U), freeze(A), freeze(V), freeze(M))


def inverse_unimodular(U: Sequence[Sequence[int]]) -> list:
    """Integer inverse of a unimodular matrix."""
    n = len(U)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for k in range(n):
        piv = next(i for i in range(k, n) if M[i][k] != 0)
        M[k], M[piv] = M[piv], M[k]
        M[k] = [x / M[k][k] for x in M[k]]
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    out = [[M[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in out for x in row):
        raise SingularMatrix("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


# -- affine frames -------------------------------------------------------------------

def _affine_frame(points: Sequence[tuple]):
    """(affine dimension, coordinate indices on which projection is injective)."""
    p0 = points[0]
    basis = _row_echelon([vsub(p, p0) for p in points[1:]])
    k = len(basis)
    n = len(p0)
    for S in combinations(range(n), k):
        if det([[row[i] for i in S] for row in basis]) != 0:
            return k, S
    raise AssertionError("unreachable: echelon basis has full rank")


def _hull2(points: list) -> list:
    """Counter-clockwise corners of the 2D hull (Andrew's monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull3_facets(points: list) -> list:
    """Facet planes ``(normal, offset)`` with normal . x <= offset, primitive integer normals.

    Incremental beneath-beyond construction over triangles, exact throughout.
    """
    pts = sorted(set(points))
    a = pts[0]
    b = next(p for p in pts if p != a)
    c = next(p for p in pts if cross(vsub(b, a), vsub(p, a)) != (0, 0, 0))
    nrm = cross(vsub(b, a), vsub(c, a))
    d = next(p for p in pts if dot(nrm, vsub(p, a)) != 0)
    inner = tuple(sum(q[i] for q in (a, b, c, d)) for i in range(3))  # 4 * centroid

    def oriented(x, y, z):
        n_ = cross(vsub(y, x), vsub(z, x))
        # outward iff the (scaled) centroid is on the negative side
        if dot(n_, vsub(inner, tuple(4 * t for t in x))) > 0:
            return (x, z, y)
        return (x, y, z)

    faces = {oriented(*tri) for tri in combinations((a, b, c, d), 3)}
    normals = {f: cross(vsub(f[1], f[0]), vsub(f[2], f[0])) for f in faces}
    for p in pts:
        visible = [f for f in faces if dot(normals[f], vsub(p, f[0])) > 0]
        if not visible:
            continue
        edges = set()
        for x, y, z in visible:
            edges.update(((x, y), (y, z), (z, x)))
        for f in visible:
            faces.discard(f)
            del normals[f]
        for x, y in edges:
            if (y, x) not in edges:
                f = (x, y, p)
                faces.add(f)
                normals[f] = cross(vsub(y, x), vsub(p, x))
    planes = set()
    for f, n_ in normals.items():
        n_ = primitive(n_)
        planes.add((n_, dot(n_, f[0])))
    return sorted(planes)


def _facet_polygon(normal: tuple, offset, points: Iterable[tuple]) -> list:
    """Cyclically ordered corners of the facet ``normal . x == offset``."""
    on = [p for p in points if dot(normal, p) == offset]
    drop = next(i for i, x in enumerate(normal) if x != 0)
    keep = [i for i in range(3) if i != drop]
    lookup = {tuple(p[i] for i in keep): p for p in on}
    return [lookup[q] for q in _hull2(list(lookup))]


# -- polytopes ------------------------------------------------------------------------

@dataclass(frozen=True)
class Polytope:
    """Convex lattice polytope given by its corner vertices.

    ``facets`` (normal, offset) pairs with normal . x <= offset are present
    when the polytope is full-dimensional in its ambient space.
    """

    dim: int
    vertices: tuple
    facets: Optional[tuple] = None

    @property
    def affine_dim(self) -> int:
        return _affine_frame(list(self.vertices))[0] if len(self.vertices) > 1 else 0

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def contains(self, x: Sequence) -> bool:
        if self.facets is not None:
            return all(dot(nrm, x) <= off for nrm, off in self.facets)
        verts = list(self.vertices)
        k, S = _affine_frame(verts)
        if matrix_rank([vsub(v, verts[0]) for v in verts[1:]] + [vsub(x, verts[0])]) != k:
            return False
        if k == 0:
            return tuple(x) == verts[0]
        sub = convex_hull([tuple(v[i] for i in S) for v in verts])
        return sub.contains(tuple(x[i] for i in S))

    def on_boundary(self, x: Sequence) -> bool:
        """Whether ``x`` lies in P but not in its interior (relative to the ambient space)."""
        if not self.contains(x):
            return False
        if self.facets is None:
            return True
        return any(dot(nrm, x) == off for nrm, off in self.facets)

    def bounding_box(self) -> list:
        return [(min(v[i] for v in self.vertices), max(v[i] for v in self.vertices)) for i in range(self.dim)]

    def lattice_points(self) -> list:
        box = [range(lo, hi + 1) for lo, hi in self.bounding_box()]
        return [p for p in product(*box) if self.contains(p)]

    def to_json(self) -> list:
        return [list(v) for v in self.vertices]


def convex_hull(points: Iterable[Sequence[int]]) -> Polytope:
    pts = sorted({tuple(p) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch("points of different dimensions")
    if len(pts) == 1:
        return Polytope(n, tuple(pts), None if n else ())
    k, S = _affine_frame(pts)
    if k > 3:
        raise DimensionUnsupported(f"hulls are supported up to dimension 3, got {k}")
    lookup = {tuple(p[i] for i in S): p for p in pts}
    proj = list(lookup)
    facets = None
    if k == 1:
        lo, hi = min(proj), max(proj)
        corners = [lookup[lo], lookup[hi]]
        if n == 1:
            facets = (((-1,), -lo[0]), ((1,), hi[0]))
    elif k == 2:
        ring = _hull2(proj)
        corners = [lookup[q] for q in ring]
        if n == 2:
            fs = []
            for a, b in zip(ring, ring[1:] + ring[:1]):
                nrm = primitive((b[1] - a[1], a[0] - b[0]))
                fs.append((nrm, dot(nrm, a)))
            facets = tuple(fs)
    else:
        planes = _hull3_facets(proj)
        seen = set()
        for nrm, off in planes:
            seen.update(_facet_polygon(nrm, off, proj))
        corners = [lookup[q] for q in sorted(seen)]
        if n == 3:
            facets = tuple(planes)
    return Polytope(n, tuple(corners), facets)


def standard_simplex(n: int, d: int) -> Polytope:
    """Delta_d = Conv{0, d e_1, ..., d e_n}, with facets, in any dimension."""
    origin = (0,) * n
    verts = [origin] + [tuple(d * int(i == j) for j in range(n)) for i in range(n)]
    if d == 0:
        return Polytope(n, (origin,), None)
    facets = [(tuple(-int(i == j) for j in range(n)), 0) for i in range(n)]
    facets.append(((1,) * n, d))
    return Polytope(n, tuple(verts), tuple(facets))


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.dim != Q.dim:
        raise DimensionMismatch(f"{P.dim} vs {Q.dim}")
    return convex_hull(vadd(p, q) for p in P.vertices for q in Q.vertices)


def minkowski_sum_all(polys: Sequence[Polytope]) -> Polytope:
    out = polys[0]
    for P in polys[1:]:
        out = minkowski_sum(out, P)
    return out


def volume(P: Polytope) -> Fraction:
    """Euclidean volume; 0 for polytopes that are not full-dimensional."""
    n = P.dim
    if n > 3:
        raise DimensionUnsupported(f"volume is supported up to dimension 3, got {n}")
    verts = list(P.vertices)
    if len(verts) <= n or not P.is_full_dimensional:
        return Fraction(0)
    if n == 1:
        return Fraction(max(v[0] for v in verts) - min(v[0] for v in verts))
    if n == 2:
        ring = _hull2(verts)
        twice = sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(ring, ring[1:] + ring[:1]))
        return Fraction(abs(twice), 2)
    facets = P.facets if P.facets is not None else convex_hull(verts).facets
    c = tuple(Fraction(sum(v[i] for v in verts), len(verts)) for i in range(3))
    total = Fraction(0)
    for nrm, off in facets:
        poly = _facet_polygon(nrm, off, verts)
        v0 = vsub(poly[0], c)
        for a, b in zip(poly[1:], poly[2:]):
            total += abs(det([v0, vsub(a, c), vsub(b, c)]))
    return total / 6


def mixed_volume(*polys: Polytope) -> int:
    """Coefficient of lambda_1 ... lambda_n in Vol(lambda_1 P_1 + ... + lambda_n P_n)."""
    if len(polys) == 1 and isinstance(polys[0], (list, tuple)):
        polys = tuple(polys[0])
    n = len(polys)
    if any(P.dim != n for P in polys):
        raise DimensionMismatch("mixed volume needs n polytopes in R^n")
    if n > 3:
        raise DimensionUnsupported("mixed volume is supported up to dimension 3")
    total = Fraction(0)
    for size in range(1, n + 1):
        for S in combinations(polys, size):
            total += (-1) ** (n - size) * volume(minkowski_sum_all(list(S)))
    if total.denominator != 1:
        raise AssertionError(f"non-integral mixed volume {total}")
    return int(total)


def boundary_odd_points(P: Polytope) -> list:
    """Lattice points on the boundary of P with every coordinate odd."""
    box = []
    for lo, hi in P.bounding_box():
        start = lo if lo % 2 else lo + 1
        box.append(range(start, hi + 1, 2))
    return [p for p in product(*box) if P.on_boundary(p)]


def interior_odd_points(P: Polytope) -> list:
    box = []
    for lo, hi in P.bounding_box():
        start = lo if lo % 2 else lo + 1
        box.append(range(start, hi + 1, 2))
    return [p for p in product(*box) if P.contains(p) and not P.on_boundary(p)]
