import random
from fractions import Fraction

import pytest

from gwtrop.enriched import enriched_multiplicity
from gwtrop.errors import DegenerateForm, NonEtale, SingularSystem
from gwtrop.fields import QQ, RR, parse_field
from gwtrop.gw import GWElement, gw_equal, gw_invariants, parse_gw
from gwtrop.intersect import local_binomial_system
from gwtrop.lattice import det
from gwtrop.oracle import (
    binomial_algebra,
    build_algebra,
    diagonalize_congruence,
    gram_of_unit,
    jacobian_unit,
    oracle_multiplicity,
    symbolic_jacobian,
    trace_of_element,
    verify_main_theorem,
)
from gwtrop.random_inputs import random_datum

F5 = parse_field("F5")


def test_one_dimensional_basis():
    alg = binomial_algebra([[3]], [1], [-2], QQ)
    assert alg.m == 3
    assert sorted(alg.basis) == [(0,), (1,), (2,)]
    # x^3 = 2, so x^4 = 2 x
    assert alg.reduce((4,)) == (alg.basis.index((1,)), 2)
    assert alg.reduce((-1,)) == (alg.basis.index((2,)), Fraction(1, 2))


def test_diagonal_lattice():
    alg = binomial_algebra([[2, 0], [0, 3]], [1, 1], [-1, -1], QQ)
    assert alg.m == 6
    assert alg.snf.diagonal == (1, 6)
    for b in alg.basis:
        assert alg.reduce(b) == (alg.basis.index(b), 1)


def test_reduction_is_consistent():
    rng = random.Random(1)
    for _ in range(30):
        d = random_datum(rng, QQ, rng.choice([1, 2, 3]))
        alg = build_algebra(local_binomial_system(d), QQ)
        assert alg.m == d.m
        for i, b in enumerate(alg.basis):
            assert alg.reduce(b) == (i, 1)
        for delta, ratio in zip(alg.deltas, alg.ratios):
            assert alg.reduce(delta) == (alg.basis.index((0,) * d.n), ratio)


def test_trace_examples():
    alg = binomial_algebra([[3]], [1], [-7], QQ)
    assert trace_of_element(alg, 1, (0,)) == 3
    assert trace_of_element(alg, 1, (1,)) == 0
    assert trace_of_element(alg, 1, (2,)) == 0
    assert trace_of_element(alg, 5, (0,)) == 15
    assert trace_of_element(alg, 1, (3,)) == 21


def test_gram_of_square_root():
    # E = Q[x]/(x^2 - D): Tr(1) = 2, Tr(x) = 0, Tr(x^2) = 2D
    alg = binomial_algebra([[2]], [1], [-5], QQ)
    g = gram_of_unit(alg, 1, (0,))
    basis = [b[0] for b in alg.basis]
    expected = [[2 * 5 ** ((r + s) // 2) if (r + s) % 2 == 0 else 0 for s in basis] for r in basis]
    assert [list(row) for row in g.matrix] == expected
    assert gw_equal(diagonalize_congruence(g, QQ), parse_gw("<2, 10>", QQ))


def test_diagonalize_examples():
    assert diagonalize_congruence([[0, 1], [1, 0]], QQ) == GWElement.hyperbolic(QQ, 1)
    assert diagonalize_congruence([[2, 0], [0, 8]], QQ) == parse_gw("<2, 2>", QQ)
    assert diagonalize_congruence([[1, 2], [2, 1]], QQ) == parse_gw("<1, -3>", QQ)
    with pytest.raises(DegenerateForm):
        diagonalize_congruence([[1, 1], [1, 1]], QQ)
    with pytest.raises(DegenerateForm):
        diagonalize_congruence([[0, 0], [0, 0]], QQ)


def test_diagonalize_preserves_discriminant_over_f5():
    rng = random.Random(2)
    checked = 0
    while checked < 50:
        size = rng.randint(1, 5)
        A = [[0] * size for _ in range(size)]
        for i in range(size):
            for j in range(i, size):
                A[i][j] = A[j][i] = rng.randrange(5)
        dA = det(A) % 5
        if dA == 0:
            continue
        x = diagonalize_congruence(A, F5)
        assert x.rank == size
        assert gw_invariants(x).discriminant == gw_invariants(GWElement.from_values(F5, [dA])).discriminant
        checked += 1


def test_gram_is_symmetric():
    rng = random.Random(3)
    for _ in range(20):
        d = random_datum(rng, QQ, rng.choice([2, 3]), max_m=6)
        sys = local_binomial_system(d)
        alg = build_algebra(sys, QQ)
        c, w = jacobian_unit(sys)
        G = gram_of_unit(alg, c, w).matrix
        assert all(G[i][j] == G[j][i] for i in range(len(G)) for j in range(len(G)))


def test_symbolic_jacobian_matches_closed_form():
    rng = random.Random(4)
    for field in (QQ, F5, parse_field("F7")):
        for _ in range(30):
            d = random_datum(rng, field, rng.choice([1, 2, 3]), max_m=8)
            sys = local_binomial_system(d)
            alg = build_algebra(sys, field)
            c, w = jacobian_unit(sys)
            assert symbolic_jacobian(d, field) == alg.element(field.element(c), w)


def test_oracle_agrees_and_is_swap_invariant():
    rng = random.Random(5)
    for field in (QQ, RR, parse_field("F3"), F5):
        for _ in range(25):
            d = random_datum(rng, field, rng.choice([1, 2, 3]))
            assert verify_main_theorem(d, field)
            base = oracle_multiplicity(local_binomial_system(d), field)
            assert gw_equal(base, enriched_multiplicity(d, field))
            i = rng.randrange(d.n)
            assert gw_equal(oracle_multiplicity(local_binomial_system(d.swapped(i)), field), base)


def test_errors():
    with pytest.raises(SingularSystem):
        binomial_algebra([[1, 2], [2, 4]], [1, 1], [1, 1], QQ)
    with pytest.raises(NonEtale):
        binomial_algebra([[5]], [1], [1], F5)
