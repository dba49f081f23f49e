"""Enriched tropical hypersurfaces and their dual subdivisions.

Max-plus convention: the monomial ``alpha_I x^I t^phi(I)`` tropicalizes to
the affine function ``a_I + I . y`` with ``a_I = -phi(I)``, and the dual
subdivision is read off from the upper hull of the lifted points (I, a_I).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import DimensionMismatch, DimensionUnsupported, FieldError, InputError
from .fields import FieldSpec, SquareClass, square_class_reduce
from .lattice import (
    Polytope,
    _affine_frame,
    _hull2,
    convex_hull,
    dot,
    lattice_length,
    primitive,
    solve,
    vsub,
)


@dataclass(frozen=True)
class EnrichedMonomial:
    exponent: tuple
    lift: Fraction
    coeff: SquareClass


@dataclass(frozen=True)
class EnrichedHypersurface:
    """A Viro polynomial modulo squares: exponents with rational lifts and coefficient classes."""

    dim: int
    monomials: tuple
    field: FieldSpec

    def __post_init__(self):
        if len(self.monomials) < 2:
            raise InputError("a hypersurface needs at least two monomials")
        exps = [m.exponent for m in self.monomials]
        if any(len(e) != self.dim for e in exps):
            raise InputError(f"exponents must have length {self.dim}")
        if len(set(exps)) != len(exps):
            raise InputError("exponents must be pairwise distinct")

    @classmethod
    def build(cls, field: FieldSpec, terms: Sequence) -> "EnrichedHypersurface":
        """From ``(exponent, lift, coefficient)`` triples; coefficients are raw field values."""
        monos = []
        for exp, lift, coeff in terms:
            monos.append(EnrichedMonomial(tuple(int(x) for x in exp), Fraction(lift), square_class_reduce(coeff, field)))
        if not monos:
            raise InputError("empty hypersurface")
        return cls(len(monos[0].exponent), tuple(monos), field)

    @classmethod
    def from_json(cls, data: dict, field: FieldSpec) -> "EnrichedHypersurface":
        try:
            dim = int(data["dim"])
            terms = [(m["exp"], Fraction(str(m["lift"])), str(m["coeff"])) for m in data["monomials"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed hypersurface: {exc}") from exc
        try:
            f = cls.build(field, terms)
        except FieldError as exc:
            raise InputError(str(exc)) from exc
        if f.dim != dim:
            raise InputError(f"declared dim {dim} does not match exponents")
        return f

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "monomials": [
                {"exp": list(m.exponent), "lift": str(m.lift), "coeff": str(m.coeff.rep)}
                for m in self.monomials
            ],
        }

    @property
    def exponents(self) -> list:
        return [m.exponent for m in self.monomials]

    def coefficient(self, exponent: tuple) -> SquareClass:
        for m in self.monomials:
            if m.exponent == exponent:
                return m.coeff
        raise KeyError(exponent)

    def evaluate(self, y: Sequence) -> Fraction:
        """Tropical value max_I (a_I + I . y)."""
        return max(-m.lift + dot(m.exponent, y) for m in self.monomials)


def tropicalize(f: EnrichedHypersurface) -> dict:
    """Tropical coefficients a_I = -phi(I)."""
    return {m.exponent: -m.lift for m in f.monomials}


def newton_polytope(f: EnrichedHypersurface) -> Polytope:
    return convex_hull(f.exponents)


@dataclass(frozen=True)
class DualSubdivision:
    """Regular subdivision of NP(f) induced by the tropical coefficients.

    ``cells[i]`` is dual to the tropical vertex ``dual_points[i]`` (present when
    NP(f) is full-dimensional); ``cell_points[i]`` lists every exponent lying
    on the corresponding upper face.
    """

    newton: Polytope
    cells: tuple
    cell_points: tuple
    dual_points: Optional[tuple]
    vertex_coeffs: dict
    generic: bool


def _upper_cells(points: list, heights: list, k: int):
    """Top-dimensional cells of the upper-hull subdivision of ``points`` in R^k.

    Returns a list of (argmax index set, dual point y) pairs.
    """
    found = {}
    for sub in combinations(range(len(points)), k + 1):
        rows = [list(points[i]) + [-1] for i in sub]
        rhs = [-heights[i] for i in sub]
        sol = solve(rows, rhs)
        if sol is None:
            continue
        y, c = sol[:k], sol[k]
        vals = [heights[i] + dot(points[i], y) for i in range(len(points))]
        if max(vals) != c:
            continue
        arg = frozenset(i for i, v in enumerate(vals) if v == c)
        found.setdefault(arg, tuple(y))
    return sorted(found.items(), key=lambda kv: sorted(kv[0]))


def dual_subdivision(f: EnrichedHypersurface) -> DualSubdivision:
    if f.dim > 3:
        raise DimensionUnsupported("dual subdivisions are supported up to dimension 3")
    a = tropicalize(f)
    exps = f.exponents
    k, S = _affine_frame(exps)
    proj = [tuple(e[i] for i in S) for e in exps]
    cells = []
    cell_points = []
    duals = []
    generic = True
    for arg, y in _upper_cells(proj, [a[e] for e in exps], k):
        pts = [exps[i] for i in sorted(arg)]
        cell = convex_hull(pts)
        if len(cell.vertices) != k + 1:
            generic = False
        cells.append(cell)
        cell_points.append(tuple(pts))
        duals.append(y)
    coeffs = {}
    for cell in cells:
        for v in cell.vertices:
            coeffs[v] = f.coefficient(v)
    return DualSubdivision(
        newton_polytope(f),
        tuple(cells),
        tuple(cell_points),
        tuple(duals) if k == f.dim else None,
        coeffs,
        generic,
    )


# -- planar curves ----------------------------------------------------------------

@dataclass(frozen=True)
class CurveEdge:
    start: int
    end: int
    direction: tuple  # primitive vector from start towards end
    weight: int
    dual: tuple  # the dual subdivision edge (two exponents)


@dataclass(frozen=True)
class CurveRay:
    start: int
    direction: tuple
    weight: int
    dual: tuple


@dataclass(frozen=True)
class CurveLine:
    """A full line (through ``point`` along ``direction``), arising when NP(f) is a segment."""

    point: tuple
    direction: tuple
    weight: int


@dataclass(frozen=True)
class TropicalCurve:
    vertices: tuple
    edges: tuple
    rays: tuple
    lines: tuple = ()

    def balancing_defect(self, i: int) -> tuple:
        """Sum of weight * primitive outgoing direction at vertex ``i`` (zero when balanced)."""
        sx = sy = 0
        for e in self.edges:
            if e.start == i:
                sx += e.weight * e.direction[0]
                sy += e.weight * e.direction[1]
            if e.end == i:
                sx -= e.weight * e.direction[0]
                sy -= e.weight * e.direction[1]
        for r in self.rays:
            if r.start == i:
                sx += r.weight * r.direction[0]
                sy += r.weight * r.direction[1]
        return (sx, sy)


def _cell_boundary(cell: Polytope) -> list:
    ring = _hull2(list(cell.vertices))
    return list(zip(ring, ring[1:] + ring[:1]))


def curve_from_subdivision(ds: DualSubdivision, f: Optional[EnrichedHypersurface] = None) -> TropicalCurve:
    """The planar tropical curve dual to ``ds``.

    When NP(f) is a segment the curve is a union of parallel lines, which
    needs the tropical coefficients, so ``f`` must be passed in that case.
    """
    if ds.newton.dim != 2:
        raise DimensionMismatch("curves are planar")
    if ds.dual_points is None:
        if f is None:
            raise ValueError("a one-dimensional Newton polytope needs the polynomial")
        a = tropicalize(f)
        lines = []
        for pts in ds.cell_points:
            P, Q = min(pts), max(pts)
            d = vsub(Q, P)
            # a_P + P.y = a_Q + Q.y with y a multiple of d
            t = (a[P] - a[Q]) / Fraction(dot(d, d))
            lines.append(CurveLine((t * d[0], t * d[1]), primitive((-d[1], d[0])), lattice_length(d)))
        return TropicalCurve((), (), (), tuple(lines))
    owners: dict = {}
    for idx, cell in enumerate(ds.cells):
        ring = _hull2(list(cell.vertices))
        orient = 1 if len(ring) > 2 else 0
        for p, q in _cell_boundary(cell):
            # counter-clockwise ring: the outward normal of edge p->q is (dy, -dx)
            d = vsub(q, p)
            normal = primitive((d[1] * orient, -d[0] * orient))
            owners.setdefault(frozenset((p, q)), []).append((idx, normal, lattice_length(d), (p, q)))
    edges = []
    rays = []
    for key in sorted(owners, key=lambda s: sorted(s)):
        own = owners[key]
        if len(own) == 2:
            (i, n_i, w, dual), (j, _, _, _) = own
            edges.append(CurveEdge(i, j, n_i, w, tuple(sorted(dual))))
        else:
            (i, n_i, w, dual), = own
            rays.append(CurveRay(i, n_i, w, tuple(sorted(dual))))
    return TropicalCurve(tuple(ds.dual_points), tuple(edges), tuple(rays))
