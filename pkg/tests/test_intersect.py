import random
from fractions import Fraction

import pytest

from conftest import load_problem
from gwtrop.errors import CharacteristicDividesMultiplicity, DimensionMismatch, NonTransverse
from gwtrop.fields import QQ, parse_field, square_class_reduce
from gwtrop.intersect import (
    IntersectionDatum,
    classical_multiplicity,
    find_transverse_intersections,
    local_binomial_system,
    union_coefficient,
)
from gwtrop.lattice import mixed_volume, volume
from gwtrop.random_inputs import generic_configuration, random_datum, simplex_support
from gwtrop.tropical import EnrichedHypersurface, newton_polytope

LINE = [(0, 0), (1, 0), (0, 1)]


def sq(x, field=QQ):
    return square_class_reduce(x, field)


def datum(pairs, alphas=None, betas=None, field=QQ):
    n = len(pairs)
    alphas = tuple(sq(a, field) for a in (alphas or [1] * n))
    betas = tuple(sq(b, field) for b in (betas or [1] * n))
    d = IntersectionDatum((Fraction(0),) * n, tuple(pairs), alphas, betas, 0)
    return IntersectionDatum(d.point, d.pairs, alphas, betas, abs(d.determinant))


def test_two_lines():
    field, surfaces = load_problem("two_lines")
    (d,) = find_transverse_intersections(surfaces, field)
    assert d.point == (1, 3)
    assert d.pairs == (((0, 1), (0, 0)), ((1, 0), (0, 0)))
    assert d.m == 1


def test_cubic_conic_multiplicities():
    field, surfaces = load_problem("cubic_conic")
    data = find_transverse_intersections(surfaces, field)
    assert [(d.point, d.m) for d in data] == [
        ((-1, -1), 3),
        ((-1, 3), 1),
        ((Fraction(1, 2), 3), 2),
    ]
    assert sum(d.m for d in data) == 6


def test_two_conics_four_simple_points():
    field, surfaces = load_problem("two_conics")
    data = find_transverse_intersections(surfaces, field)
    assert [d.m for d in data] == [1, 1, 1, 1]


def test_identical_lines_are_not_transverse():
    f = EnrichedHypersurface.build(QQ, [(e, a, 1) for e, a in zip(LINE, [0, 3, 3])])
    with pytest.raises(NonTransverse):
        find_transverse_intersections([f, f], QQ)


def test_vertex_on_other_curve_is_not_transverse():
    f = EnrichedHypersurface.build(QQ, [(e, a, 1) for e, a in zip(LINE, [0, 3, 3])])
    # vertex (5, 3); its horizontal ray passes through f's vertex (3, 3)
    g = EnrichedHypersurface.build(QQ, [(e, a, 1) for e, a in zip(LINE, [0, 5, 3])])
    with pytest.raises(NonTransverse):
        find_transverse_intersections([f, g], QQ)


def test_characteristic_divides_multiplicity():
    F3 = parse_field("F3")
    _, surfaces = load_problem("cubic_conic")
    units = [EnrichedHypersurface.build(F3, [(m.exponent, m.lift, 1) for m in f.monomials]) for f in surfaces]
    with pytest.raises(CharacteristicDividesMultiplicity):
        find_transverse_intersections(units, F3)
    assert issubclass(CharacteristicDividesMultiplicity, NonTransverse)
    F5 = parse_field("F5")
    units5 = [EnrichedHypersurface.build(F5, [(m.exponent, m.lift, 1) for m in f.monomials]) for f in surfaces]
    assert [d.m for d in find_transverse_intersections(units5, F5)] == [3, 1, 2]


def test_dimension_checks():
    f = EnrichedHypersurface.build(QQ, [(e, 0, 1) for e in LINE])
    with pytest.raises(DimensionMismatch):
        find_transverse_intersections([f], QQ)


def test_classical_multiplicity_examples():
    assert classical_multiplicity(datum([((1, 0), (0, 0)), ((0, 1), (0, 0))])) == 1
    assert classical_multiplicity(datum([((2, 0), (0, 0)), ((0, 3), (0, 0))])) == 6
    assert classical_multiplicity(datum([((1, 1), (0, 0)), ((0, 0), (1, -1))])) == 2
    assert classical_multiplicity(datum([((3,), (0,))])) == 3


def test_union_coefficient_examples():
    d = datum([((1, 0), (0, 0)), ((0, 1), (0, 0))], alphas=[2, 3], betas=[5, 7])
    assert union_coefficient(d, [False, False]) == sq(6)
    assert union_coefficient(d, [True, False]) == sq(15)
    assert union_coefficient(d, [(1, 0), (0, 0)]) == sq(14)
    assert union_coefficient(d, [(0, 0), (0, 0)]) == sq(35)
    with pytest.raises(ValueError):
        union_coefficient(d, [(5, 5), (0, 0)])


def test_local_system_and_swap():
    d = datum([((2, 0), (0, 1)), ((0, 3), (1, 1))], alphas=[2, 3], betas=[5, 7])
    sys = local_binomial_system(d)
    assert sys.deltas == ((2, -1), (-1, 2))
    assert sys.anchor == (2, 3)
    s = d.swapped(0)
    assert s.pairs[0] == ((0, 1), (2, 0)) and s.alphas[0] == sq(5) and s.betas[0] == sq(2)
    assert s.determinant == -d.determinant and s.m == d.m
    assert s.swapped(0) == d
    assert set(s.corners()) == set(d.corners())


def test_cell_volume_equals_multiplicity():
    rng = random.Random(11)
    for n in (1, 2, 3):
        for _ in range(40):
            d = random_datum(rng, QQ, n, max_m=12)
            assert volume(d.cell) == d.m


def test_sum_of_multiplicities_is_mixed_volume():
    rng = random.Random(5)
    supports = [simplex_support(2, 2), simplex_support(2, 3)]
    for _ in range(10):
        _, data = generic_configuration(rng, QQ, supports, lambda s: find_transverse_intersections(s, QQ))
        assert sum(d.m for d in data) == 6
    supports = [[(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 0), (2, 0), (0, 1), (1, 2)]]
    polys = None
    for _ in range(10):
        surfaces, data = generic_configuration(rng, QQ, supports, lambda s: find_transverse_intersections(s, QQ))
        polys = [newton_polytope(f) for f in surfaces]
        assert sum(d.m for d in data) == mixed_volume(*polys)


def test_affine_perturbation_translates_points():
    field, surfaces = load_problem("cubic_conic")
    base = find_transverse_intersections(surfaces, field)
    shift = (Fraction(3, 7), Fraction(-2, 5))
    moved = [
        EnrichedHypersurface.build(
            field,
            [(m.exponent, m.lift - m.exponent[0] * shift[0] - m.exponent[1] * shift[1], m.coeff.rep) for m in f.monomials],
        )
        for f in surfaces
    ]
    data = find_transverse_intersections(moved, field)
    # a_I = -lift picks up +I.shift, so points move by -shift
    assert [d.point for d in data] == [(p[0] - shift[0], p[1] - shift[1]) for p in (b.point for b in base)]
    assert [d.pairs for d in data] == [b.pairs for b in base]
