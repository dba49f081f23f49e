import random
from fractions import Fraction

import pytest

from gwtrop.errors import DimensionMismatch, InputError
from gwtrop.fields import QQ
from gwtrop.lattice import convex_hull, volume
from gwtrop.random_inputs import random_hypersurface, random_support, simplex_support
from gwtrop.tropical import (
    EnrichedHypersurface,
    curve_from_subdivision,
    dual_subdivision,
    newton_polytope,
    tropicalize,
)

LINE = [(0, 0), (1, 0), (0, 1)]
CONIC = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def build(exps, lifts, coeffs=None):
    coeffs = coeffs or [1] * len(exps)
    return EnrichedHypersurface.build(QQ, list(zip(exps, lifts, coeffs)))


# -- documented examples -------------------------------------------------------

def test_tropicalize_examples():
    line = build(LINE, [0, 3, 3])
    assert tropicalize(line) == {(0, 0): 0, (1, 0): -3, (0, 1): -3}
    assert set(tropicalize(build(LINE, [0, 0, 0])).values()) == {0}
    conic = build(CONIC, [0, 0, 0, 4, 2, 4])
    assert [tropicalize(conic)[e] for e in CONIC] == [0, 0, 0, -4, -2, -4]


def test_subdivision_examples():
    line = dual_subdivision(build(LINE, [0, 3, 3]))
    assert len(line.cells) == 1 and set(line.cells[0].vertices) == set(LINE)
    conic = dual_subdivision(build(CONIC, [0, 0, 0, 4, 2, 4]))
    assert sorted(sorted(c.vertices) for c in conic.cells) == [
        [(0, 0), (0, 1), (1, 0)],
        [(0, 1), (0, 2), (1, 1)],
        [(0, 1), (1, 0), (1, 1)],
        [(1, 0), (1, 1), (2, 0)],
    ]
    flat = dual_subdivision(build([(0, 0), (2, 0), (0, 2), (2, 2)], [0, 0, 0, 0]))
    assert len(flat.cells) == 1 and not flat.generic


def test_curve_examples():
    line = curve_from_subdivision(dual_subdivision(build(LINE, [0, 3, 3])))
    assert line.vertices == ((3, 3),)
    assert sorted(r.direction for r in line.rays) == [(-1, 0), (0, -1), (1, 1)]
    conic = curve_from_subdivision(dual_subdivision(build(CONIC, [0, 0, 0, 4, 2, 4])))
    assert sorted(conic.vertices) == [(0, 0), (2, 2), (2, 4), (4, 2)]
    f = build([(0, 0), (2, 0)], [0, 0])
    binomial = curve_from_subdivision(dual_subdivision(f), f)
    assert len(binomial.lines) == 1
    ln = binomial.lines[0]
    assert ln.point[0] == 0 and ln.direction == (0, 1) and ln.weight == 2


def test_newton_polytope_examples():
    for d in (1, 2, 3):
        P = newton_polytope(build(simplex_support(2, d), [0] * len(simplex_support(2, d))))
        assert set(P.vertices) == {(0, 0), (d, 0), (0, d)}
    assert set(newton_polytope(build([(0, 0), (1, 1)], [0, 0])).vertices) == {(0, 0), (1, 1)}
    h = build([(0, 0), (2, 1), (1, 2)], [0, 0, 0])
    assert set(newton_polytope(h).vertices) == {(0, 0), (2, 1), (1, 2)}


# -- validation ---------------------------------------------------------------------------

def test_validation():
    with pytest.raises(InputError):
        build([(0, 0)], [0])
    with pytest.raises(InputError):
        build([(0, 0), (0, 0)], [0, 1])
    with pytest.raises(InputError):
        EnrichedHypersurface.from_json({"dim": 2, "monomials": [{"exp": [0, 0], "lift": "1/0", "coeff": "1"}]}, QQ)
    with pytest.raises(InputError):
        EnrichedHypersurface.from_json({"dim": 2, "monomials": [{"exp": [0, 0], "lift": "0", "coeff": "0"}, {"exp": [1, 0], "lift": "0", "coeff": "1"}]}, QQ)


def test_json_round_trip():
    f = build(CONIC, [0, Fraction(1, 3), 0, 4, 2, 4], [1, -2, 3, 5, 6, 7])
    g = EnrichedHypersurface.from_json(f.to_json(), QQ)
    assert g == f


def test_curve_with_weighted_edges():
    # lifts make the subdivision contain a segment of lattice length 2
    f = build([(0, 0), (2, 0), (0, 1), (2, 1)], [0, 0, 0, 1])
    curve = curve_from_subdivision(dual_subdivision(f))
    weights = sorted(e.weight for e in curve.edges) + sorted(r.weight for r in curve.rays)
    assert 2 in weights
    for i in range(len(curve.vertices)):
        assert curve.balancing_defect(i) == (0, 0)


def test_wrong_dimension_for_curves():
    f = EnrichedHypersurface.build(QQ, [((0, 0, 0), 0, 1), ((1, 0, 0), 0, 1), ((0, 1, 0), 0, 1), ((0, 0, 1), 0, 1)])
    with pytest.raises(DimensionMismatch):
        curve_from_subdivision(dual_subdivision(f))


# -- properties ---------------------------------------------------------------------------

def _random_planar(rng):
    while True:
        support = random_support(rng, 2, 3, rng.randint(3, 8))
        if convex_hull(support).is_full_dimensional:
            return random_hypersurface(rng, QQ, support)


def test_balancing_and_duality_on_random_curves():
    rng = random.Random(42)
    for _ in range(100):
        f = _random_planar(rng)
        ds = dual_subdivision(f)
        curve = curve_from_subdivision(ds)
        for i in range(len(curve.vertices)):
            assert curve.balancing_defect(i) == (0, 0)
        assert len(curve.vertices) == len(ds.cells)
        # every ray is dual to an edge on the boundary of NP(f)
        P = ds.newton
        for r in curve.rays:
            p, q = r.dual
            mid = tuple(Fraction(a + b, 2) for a, b in zip(p, q))
            assert P.on_boundary(mid)
        assert sum(volume(c) for c in ds.cells) == volume(ds.newton)


def test_affine_change_of_lifts_keeps_subdivision():
    rng = random.Random(7)
    for _ in range(30):
        f = _random_planar(rng)
        c0, c1, c2 = (Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(3))
        g = EnrichedHypersurface.build(
            QQ,
            [(m.exponent, m.lift + c0 + c1 * m.exponent[0] + c2 * m.exponent[1], m.coeff.rep) for m in f.monomials],
        )
        cells_f = sorted(sorted(c.vertices) for c in dual_subdivision(f).cells)
        cells_g = sorted(sorted(c.vertices) for c in dual_subdivision(g).cells)
        assert cells_f == cells_g


def test_three_dimensional_subdivision_tiles():
    rng = random.Random(3)
    for _ in range(5):
        f = random_hypersurface(rng, QQ, simplex_support(3, 2))
        ds = dual_subdivision(f)
        assert sum(volume(c) for c in ds.cells) == volume(ds.newton)
