import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crossring.scalars import (
    Cyc,
    common_order,
    cyc_add,
    cyc_conj,
    cyc_inverse,
    cyc_mul,
    cyclotomic_polynomial,
    totient,
)

from conftest import cyc, small_fractions


def numeric(c: Cyc) -> complex:
    # independent route: evaluate the power-basis polynomial at exp(2 pi i / q)
    z = cmath.exp(2j * cmath.pi / c.order)
    return sum(float(a) * z**k for k, a in enumerate(c.coeffs))


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9 * max(1.0, abs(a), abs(b))


I = Cyc.gaussian(0, 1)
Z3 = Cyc.zeta(3)


@pytest.mark.parametrize("n, phi", [(1, 1), (2, 1), (3, 2), (4, 2), (5, 4), (6, 2), (8, 4), (12, 4), (30, 8)])
def test_totient(n, phi):
    assert totient(n) == phi


@pytest.mark.parametrize("q, poly", [
    (1, (-1, 1)), (2, (1, 1)), (3, (1, 1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomials(q, poly):
    assert cyclotomic_polynomial(q) == poly


def test_gaussian_sum():
    assert cyc_add(Cyc.gaussian(1), Cyc.gaussian(0, 1)) == Cyc.gaussian(1, 1)


def test_zeta3_plus_square_is_minus_one():
    assert Z3 + Z3 * Z3 == Cyc.rational(-1, 3)


def test_i_squared():
    assert cyc_mul(I, I) == Cyc.gaussian(-1)


def test_zeta3_square_reduces():
    assert Z3 * Z3 == Cyc(3, [-1, -1])


def test_conj_examples():
    assert cyc_conj(I) == Cyc.gaussian(0, -1)
    assert cyc_conj(Cyc.rational(Fraction(3, 2))) == Cyc.rational(Fraction(3, 2))


def test_inverse_examples():
    assert cyc_inverse(I) == Cyc.gaussian(0, -1)
    assert cyc_inverse(Cyc.rational(2)) == Cyc.rational(Fraction(1, 2))
    assert cyc_inverse(Cyc.rational(1, 3) + Z3) == -Z3


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroDivisionError, match="not invertible"):
        Cyc.rational(0, 5).inverse()


def test_order_mismatch_rejected():
    with pytest.raises(ValueError):
        cyc_add(I, Z3)
    with pytest.raises(ValueError):
        cyc_mul(I, Z3)


def test_embedding_into_common_order():
    q = common_order(3, 4)
    assert q == 12
    s = I.embed(q) + Z3.embed(q)
    assert close(numeric(s), 1j + cmath.exp(2j * cmath.pi / 3))


def test_equality_across_orders():
    assert Cyc.rational(5, 3) == Cyc.rational(5, 4)
    assert Cyc.zeta(8, 2) == I
    assert hash(Cyc.zeta(8, 2)) == hash(I)


def test_zeta_powers_wrap():
    assert Cyc.zeta(5, 5) == Cyc.rational(1, 5)
    assert Cyc.zeta(5, -1) == Cyc.zeta(5, 4)


@given(cyc(), st.data())
def test_field_axioms(a, data):
    b = data.draw(cyc(a.order))
    c = data.draw(cyc(a.order))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Cyc.rational(0, a.order) == a
    assert a * Cyc.rational(1, a.order) == a
    assert a - a == Cyc.rational(0, a.order)


@given(cyc(), st.data())
def test_arithmetic_matches_complex_evaluation(a, data):
    b = data.draw(cyc(a.order))
    assert close(numeric(a + b), numeric(a) + numeric(b))
    assert close(numeric(a * b), numeric(a) * numeric(b))
    assert close(numeric(a.conj()), numeric(a).conjugate())


@given(cyc())
def test_inverse(a):
    if not a:
        return
    inv = a.inverse()
    assert a * inv == Cyc.rational(1, a.order)
    assert close(numeric(inv), 1 / numeric(a))


@given(cyc(), st.data())
def test_conj_is_involutive_homomorphism(a, data):
    b = data.draw(cyc(a.order))
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@given(cyc())
def test_abs2_is_nonnegative_real(a):
    v = numeric(a.abs2())
    assert abs(v.imag) < 1e-9 and v.real > -1e-9


@given(small_fractions, small_fractions, small_fractions, small_fractions)
def test_gaussian_rationals_closed(a, b, c, d):
    x, y = Cyc.gaussian(a, b), Cyc.gaussian(c, d)
    assert (x * y).coeffs == (a * c - b * d, a * d + b * c)
    assert (x + y).coeffs == (a + c, b + d)
    assert x.conj().coeffs == (a, -b)


@given(cyc(), st.sampled_from([2, 3]))
def test_embed_preserves_value(a, k):
    assert close(numeric(a.embed(a.order * k)), numeric(a))
    assert a.embed(a.order * k) == a


def test_rational_helpers():
    x = Cyc.rational(Fraction(-7, 3), 5)
    assert x.is_rational() and x.to_fraction() == Fraction(-7, 3)
    assert not I.is_rational()
    with pytest.raises(ValueError):
        I.to_fraction()
