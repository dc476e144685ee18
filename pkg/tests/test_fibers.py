import cmath
import random

import pytest
from hypothesis import given, strategies as st

from crossring.factor_systems import trivial_factor_system
from crossring.fibers import (
    Character,
    TwistedAlgebra,
    all_characters,
    evaluate_fiber,
    fiber_idempotent_scan,
    pushforward,
    twisted_mul,
)
from crossring.group_ring import GroupRingElement
from crossring.groups import ExtensionGroup, FiniteCyclic, FreeAbelian, Pair, heisenberg_central, heisenberg_semidirect
from crossring.scalars import Cyc
from crossring.selftest import random_group_ring

G = heisenberg_central()
I = Cyc.gaussian(0, 1)
CHI_I = Character(4, (1,))
chars = st.sampled_from([chi for q in (1, 2, 3, 4, 6) for chi in all_characters(1, q)])
seeds = st.integers(0, 2**32)


def delta(text, c=1):
    return GroupRingElement.delta(G, G.parse(text), c)


def test_character_values():
    chi = Character(6, (5,))
    assert chi((2,)) == Cyc.zeta(6, 10)
    assert chi((0,)) == Cyc.rational(1, 6)
    assert Character(4, (5, -1)).exponents == (1, 3)
    assert Character.trivial(2).is_trivial()
    assert len(all_characters(2, 3)) == 9


@given(st.sampled_from([1, 2, 3, 4, 5, 6]), st.integers(0, 11), st.integers(-9, 9), st.integers(-9, 9))
def test_character_is_homomorphism(q, a, z, w):
    chi = Character(q, (a,))
    assert chi((z + w,)) == chi((z,)) * chi((w,))
    value = sum(float(c) * cmath.exp(2j * cmath.pi * k / q) for k, c in enumerate(chi((z,)).coeffs))
    assert abs(value - cmath.exp(2j * cmath.pi * a * z / q)) < 1e-9


def test_noncommutative_torus_relation():
    u1 = evaluate_fiber(delta("([0];[1,0])"), CHI_I)
    u2 = evaluate_fiber(delta("([0];[0,1])"), CHI_I)
    A = u1.algebra
    assert u1 * u2 == A.u((1, 1), I)
    assert u2 * u1 == A.u((1, 1))


def test_central_dirac_evaluates_to_character_value():
    y = evaluate_fiber(delta("([3];[0,0])"), CHI_I)
    assert y == y.algebra.u((0, 0), -I)


def test_trivial_character_is_pushforward():
    x = delta("([2];[1,0])", 3) + delta("([-1];[1,0])", I) + delta("([0];[0,1])")
    y = evaluate_fiber(x, Character.trivial(1))
    assert y.underlying() == pushforward(x)
    assert pushforward(x).coeff((1, 0)) == 3 + I


@given(seeds, chars)
def test_fiber_map_is_multiplicative(seed, chi):
    rng = random.Random(seed)
    f, g = random_group_ring(G, rng, 4), random_group_ring(G, rng, 4)
    assert evaluate_fiber(f * g, chi) == evaluate_fiber(f, chi) * evaluate_fiber(g, chi)
    assert evaluate_fiber(f + g, chi) == evaluate_fiber(f, chi) + evaluate_fiber(g, chi)


@given(seeds, chars)
def test_fiber_map_respects_involution(seed, chi):
    f = random_group_ring(G, random.Random(seed), 4)
    assert evaluate_fiber(f.star(), chi) == evaluate_fiber(f, chi).star()


@given(chars)
def test_fiber_map_is_unital(chi):
    y = evaluate_fiber(GroupRingElement.one(G), chi)
    assert y == y.algebra.one()


@given(seeds, chars)
def test_twisted_algebra_associative(seed, chi):
    rng = random.Random(seed)
    A = TwistedAlgebra(G.fs, chi, 12)
    xs = [A.element({FreeAbelian(2).random_element(rng, 2): Cyc.zeta(12, rng.randrange(12))
                     for _ in range(3)}) for _ in range(3)]
    a, b, c = xs
    assert (a * b) * c == a * (b * c)
    assert A.one() * a == a == a * A.one()


def test_untwisted_algebra_is_group_ring():
    fs = trivial_factor_system(FreeAbelian(1), FreeAbelian(2))
    A = TwistedAlgebra(fs, CHI_I, 4)
    a = A.element({(1, 0): I, (0, 1): Cyc.gaussian(2)})
    b = A.element({(1, 1): Cyc.gaussian(1, 1)})
    assert twisted_mul(a, b).underlying() == a.underlying() * b.underlying()


def test_twisted_algebra_mismatch():
    A, B = TwistedAlgebra(G.fs, CHI_I, 4), TwistedAlgebra(G.fs, Character(2, (1,)), 4)
    with pytest.raises(ValueError):
        A.one() * B.one()
    with pytest.raises(ValueError):
        TwistedAlgebra(G.fs, Character(3, (1,)), 4)


def test_scan_identity_and_zero():
    for x in [GroupRingElement.one(G), GroupRingElement.zero(G)]:
        rep = fiber_idempotent_scan(x, [1, 2, 3, 4])
        assert rep.ok and len(rep.entries) == 10


def test_scan_flags_non_idempotent():
    x = delta("([0];[1,0])")
    rep = fiber_idempotent_scan(x, [1, 2])
    assert not rep.ok
    assert rep.first_flag.character == Character(1, (0,))
    assert rep.first_flag.verdict == "not-idempotent"


def test_scan_reports_fiberwise_idempotents():
    # (1 + delta_z)/2 maps to 1 at chi(z) = 1 and to 0 at chi(z) = -1, to neither elsewhere
    x = GroupRingElement(G, {G.identity: Cyc.rational("1/2"), Pair((1,), (0, 0)): Cyc.rational("1/2")})
    verdicts = [e.verdict for e in fiber_idempotent_scan(x, [2, 4]).entries]
    assert verdicts == ["trivial-idempotent", "trivial-idempotent", "trivial-idempotent",
                        "not-idempotent", "trivial-idempotent", "not-idempotent"]


def test_nontrivial_fiber_idempotent_detected():
    # torsion in H: (1/2)(u_0 + u_1) is a genuine idempotent of every fiber over Z x Z/2
    E = ExtensionGroup(trivial_factor_system(FreeAbelian(1), FiniteCyclic(2)))
    half = Cyc.rational("1/2")
    x = GroupRingElement(E, {Pair((0,), 0): half, Pair((0,), 1): half})
    assert x * x == x
    rep = fiber_idempotent_scan(x, [1, 2, 3])
    assert [e.verdict for e in rep.entries] == ["nontrivial-idempotent"] * 6
    assert rep.first_flag.character == Character(1, (0,))


def test_requires_central_extension():
    with pytest.raises(ValueError, match="central"):
        evaluate_fiber(GroupRingElement.one(heisenberg_semidirect()), CHI_I)
    with pytest.raises(ValueError, match="rank"):
        evaluate_fiber(GroupRingElement.one(G), Character(4, (1, 1)))
