import math
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crossring.group_ring import (
    GroupRingElement,
    NotInvertibleError,
    gr_add,
    gr_convolve,
    gr_involute,
    gr_is_trivial_unit,
    gr_one_norm,
)
from crossring.groups import FiniteCyclic, FreeAbelian, heisenberg_semidirect
from crossring.scalars import Cyc

from conftest import C2, Z1, Z2, group_ring_elements, z_elements

I = Cyc.gaussian(0, 1)
HEIS = heisenberg_semidirect()


def laurent(f):
    """Coefficients of an element of C[Z] as Gaussian pairs (re, im)."""
    return {k[0]: c.coeffs for k, c in f.terms.items()}


def laurent_mul(p, q):
    # independent oracle: Gaussian-rational Laurent polynomial product
    out = {}
    for i, (a, b) in p.items():
        for j, (c, d) in q.items():
            re, im = out.get(i + j, (0, 0))
            out[i + j] = (re + a * c - b * d, im + a * d + b * c)
    return {k: v for k, v in out.items() if v != (0, 0)}


def d(G, g, c=1):
    return GroupRingElement.delta(G, g, c)


def test_add_examples():
    assert len(gr_add(d(Z1, (0,)), d(Z1, (1,)))) == 2
    f = d(Z1, (0,), 2) + d(Z1, (1,))
    assert gr_add(f, f.scale(-1)).is_zero()
    assert gr_add(f, d(Z1, (0,), -2)) == d(Z1, (1,))


def test_convolution_examples():
    assert gr_convolve(d(Z1, (1,)) + d(Z1, (0,)), d(Z1, (1,)) - d(Z1, (0,))) == d(Z1, (2,)) - d(Z1, (0,))
    assert gr_convolve(d(C2, 0) + d(C2, 1), d(C2, 0) - d(C2, 1)).is_zero()
    one = GroupRingElement.one(Z1)
    f = d(Z1, (3,), I) + d(Z1, (-1,), 2)
    assert one * f == f == f * one


def test_involution_example():
    assert gr_involute(d(Z1, (1,), I)) == d(Z1, (-1,), -I)


def test_one_norm_examples():
    assert gr_one_norm(d(Z1, (5,))).exact == 1
    zero = gr_one_norm(GroupRingElement.zero(Z1))
    assert zero.exact == 0 and zero.terms == 0
    n = gr_one_norm(d(Z1, (0,), 3) + d(Z1, (1,), -4 * I))
    assert n.exact == 7
    assert n.squared_moduli == (Cyc.rational(9), Cyc.rational(16))


def test_one_norm_irrational_modulus_bound():
    n = gr_one_norm(d(Z1, (0,), Cyc.gaussian(1, 1)) + d(Z1, (2,), 1))
    assert n.exact is None
    assert n.upper_bound >= Decimal(math.sqrt(2) + 1 - 1e-12)
    assert n.upper_bound < Decimal("2.4143")


def test_one_norm_bound_for_non_gaussian_scalar():
    z = Cyc.zeta(5)
    f = GroupRingElement(Z1, {(0,): z + Cyc.rational(1, 5)}, order=5)
    n = gr_one_norm(f)
    true = abs(1 + complex(math.cos(2 * math.pi / 5), math.sin(2 * math.pi / 5)))
    assert n.upper_bound >= Decimal(true)


def test_trivial_units():
    assert gr_is_trivial_unit(d(Z1, (3,), 5)) == (Cyc.rational(5), (3,))
    assert gr_is_trivial_unit(d(Z1, (0,)) + d(Z1, (1,))) is None
    assert gr_is_trivial_unit(GroupRingElement.zero(Z1)) is None


def test_inverse_of_trivial_unit_only():
    u = d(HEIS, HEIS.parse("([1,2];[1])"), 2 * I)
    assert u * u.inverse() == GroupRingElement.one(HEIS) == u.inverse() * u
    with pytest.raises(NotInvertibleError, match="cannot certify"):
        (d(Z1, (0,)) + d(Z1, (1,))).inverse()


def test_mismatches_rejected():
    with pytest.raises(ValueError):
        d(Z1, (0,)) + d(Z2, (0, 0))
    with pytest.raises(ValueError):
        d(Z1, (0,)) * GroupRingElement.delta(Z1, (0,), 1, order=3)
    with pytest.raises(ValueError):
        GroupRingElement(Z1, {(0, 1): 1})


def test_zero_coefficients_pruned():
    f = GroupRingElement(Z1, {(0,): 0, (1,): Fraction(1, 2)})
    assert f.support() == [(1,)]
    assert (f - f).terms == {}


@given(group_ring_elements(Z1, z_elements(1)), group_ring_elements(Z1, z_elements(1)))
def test_convolution_matches_laurent_oracle(f, g):
    assert laurent(f * g) == laurent_mul(laurent(f), laurent(g))


@given(st.data())
def test_ring_axioms_heisenberg(data):
    elems = st.sampled_from(HEIS.ball(1))
    f, g, h = (data.draw(group_ring_elements(HEIS, elems, 3)) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h
    assert f + g == g + f


@given(st.data())
def test_involution_properties(data):
    elems = st.sampled_from(HEIS.ball(1))
    f, g = (data.draw(group_ring_elements(HEIS, elems, 3)) for _ in range(2))
    assert f.star().star() == f
    assert (f * g).star() == g.star() * f.star()
    assert (f + g).star() == f.star() + g.star()


@given(st.data())
def test_support_grading(data):
    elems = st.sampled_from(HEIS.ball(1))
    f, g = (data.draw(group_ring_elements(HEIS, elems, 3)) for _ in range(2))
    products = {HEIS.mul(a, b) for a in f.support() for b in g.support()}
    assert set((f * g).support()) <= products


@given(group_ring_elements(Z2, z_elements(2, 2)), group_ring_elements(Z2, z_elements(2, 2)))
def test_submultiplicative_one_norm(f, g):
    nf, ng, nfg = gr_one_norm(f), gr_one_norm(g), gr_one_norm(f * g)
    assert nfg.upper_bound <= nf.upper_bound * ng.upper_bound + Decimal("1e-9")
    if nf.exact is not None and ng.exact is not None and nfg.exact is not None:
        assert nfg.exact <= nf.exact * ng.exact


def test_cyclic_group_ring_has_nontrivial_idempotent():
    e = GroupRingElement(C2, {0: Fraction(1, 2), 1: Fraction(1, 2)})
    assert e * e == e
    assert e != GroupRingElement.one(C2)


def test_embed_changes_order_not_value():
    f = d(Z1, (1,), I)
    g = f.embed(12)
    assert g.order == 12 and g.coeff((1,)) == I
    assert FiniteCyclic(3).identity == 0
