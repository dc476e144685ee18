import itertools

import pytest
from hypothesis import given, strategies as st

from crossring.cohomology import (
    BilinearCocycle,
    Coboundary,
    antisymmetrize,
    class_representative,
    extension_family,
    is_cohomologous,
)
from crossring.factor_systems import validate_on_ball
from crossring.groups import FreeAbelian, Pair, commutator, heisenberg_semidirect
from crossring.oracles import grp_iso_check, semidirect_decompose, semidirect_generators

HEIS_B = BilinearCocycle([[0, 1], [0, 0]])
ZERO2 = BilinearCocycle([[0, 0], [0, 0]])

matrices2 = st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=2, max_size=2)


def test_antisymmetrize_examples():
    assert antisymmetrize(HEIS_B) == ((0, 1), (-1, 0))
    assert antisymmetrize(BilinearCocycle([[2, 3], [3, -1]])) == ((0, 0), (0, 0))
    B = [[1, 4], [-2, 0]]
    Bt = [[1, -2], [4, 0]]
    A, At = antisymmetrize(BilinearCocycle(B)), antisymmetrize(BilinearCocycle(Bt))
    assert At == tuple(tuple(-x for x in row) for row in A)


def test_self_cohomologous_with_zero_witness():
    v = is_cohomologous(HEIS_B, HEIS_B)
    assert v.cohomologous and v.witness.is_zero()


def test_square_cocycle_on_z_is_coboundary():
    c = BilinearCocycle([[1]])
    v = is_cohomologous(c, BilinearCocycle([[0]]), window_radius=5)
    assert v.cohomologous
    b = v.witness
    for x in range(-5, 6):
        assert b((x,)) == -x * (x - 1) // 2
    for x, y in itertools.product(range(-5, 6), repeat=2):
        assert b.delta((x,), (y,)) == x * y


def test_heisenberg_cocycle_not_a_coboundary():
    v = is_cohomologous(HEIS_B, ZERO2)
    assert not v.cohomologous and v.witness is None
    x, y = v.obstruction
    assert HEIS_B(x, y) != HEIS_B(y, x)


def test_rank_mismatch():
    with pytest.raises(ValueError, match="rank"):
        is_cohomologous(HEIS_B, BilinearCocycle([[1]]))


def test_non_square_matrix_rejected():
    with pytest.raises(ValueError):
        BilinearCocycle([[1, 2]])


@given(matrices2, matrices2)
def test_classification_matches_antisymmetrization(B1, B2):
    c1, c2 = BilinearCocycle(B1), BilinearCocycle(B2)
    v = is_cohomologous(c1, c2, window_radius=2)
    assert v.cohomologous == (antisymmetrize(c1)[0][1] == antisymmetrize(c2)[0][1])
    if v.cohomologous:
        for x, y in itertools.product(FreeAbelian(2).ball(3), repeat=2):
            assert v.witness.delta(x, y) == c1(x, y) - c2(x, y)


@given(matrices2, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_symmetric_shift_stays_in_class(B, a, b, c):
    shifted = [[B[0][0] + a, B[0][1] + b], [B[1][0] + b, B[1][1] + c]]
    assert is_cohomologous(BilinearCocycle(B), BilinearCocycle(shifted)).cohomologous


@given(st.integers(-5, 5))
def test_class_representative_realizes_parameter(a):
    rep = class_representative([[0, a], [-a, 0]])
    assert antisymmetrize(rep) == ((0, a), (-a, 0))


def test_class_parameter_must_be_antisymmetric():
    with pytest.raises(ValueError, match="antisymmetric"):
        class_representative([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        extension_family(2, [[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        extension_family(3, [[0, 1], [-1, 0]])


def test_family_class_zero_is_abelian():
    G = extension_family(2, [[0, 0], [0, 0]])
    Z3 = FreeAbelian(3)
    gens = {f"e{i}": (g1, g2) for i, (g1, g2) in enumerate([
        (Pair((1,), (0, 0)), (1, 0, 0)), (Pair((0,), (1, 0)), (0, 1, 0)), (Pair((0,), (0, 1)), (0, 0, 1))])}
    decompose = lambda x: [("e0", x[0][0]), ("e1", x[1][0]), ("e2", x[1][1])]  # noqa: E731
    assert grp_iso_check(G, Z3, gens, decompose, G.ball(2)).passed


def test_family_class_one_is_heisenberg():
    G = extension_family(2, [[0, 1], [-1, 0]])
    rep = grp_iso_check(heisenberg_semidirect(), G, semidirect_generators(), semidirect_decompose,
                        heisenberg_semidirect().ball(2))
    assert rep.passed


def test_family_class_two_has_doubled_commutator():
    G = extension_family(2, [[0, 2], [-2, 0]])
    c = commutator(G, Pair((0,), (1, 0)), Pair((0,), (0, 1)))
    assert c == Pair((2,), (0, 0))
    for g in G.ball(2):
        assert G.mul(c, g) == G.mul(g, c)


@given(st.integers(-3, 3))
def test_family_members_validate(a):
    G = extension_family(2, [[0, a], [-a, 0]])
    assert validate_on_ball(G.fs, 1).passed


def test_coboundary_delta_of_cross_term():
    b = Coboundary((0, 0), ((0, 1, -1),))
    # delta(-x1 x2) = x1 y2 + x2 y1
    assert b.delta((1, 2), (3, 4)) == 1 * 4 + 2 * 3
