import itertools
import random

import pytest

from crossring.factor_systems import (
    CrossedSystem,
    FactorSystemError,
    RingAutomorphism,
    central_bilinear_factor_system,
    central_linear_factor_system,
    derive_factor_system,
    extension_of,
    heisenberg_matrix_extension,
    lift_to_crossed_system,
    mat_inverse,
    restrict_crossed_system,
    semidirect_factor_system,
    trivial_factor_system,
    validate_crossed_system,
    validate_factor_system,
    validate_on_ball,
)
from crossring.group_ring import GroupRingElement
from crossring.groups import (
    HEISENBERG_ACTION,
    HEISENBERG_COCYCLE,
    ExtensionGroup,
    FreeAbelian,
    Pair,
    heisenberg_central,
    heisenberg_semidirect,
)

Z1, Z2 = FreeAbelian(1), FreeAbelian(2)
K_PLUS_LPRIME = central_linear_factor_system((1, 0), (0, 1))


def cocycle_sides(fs, x, y, z):
    # direct evaluation of omega(x,y) omega(xy,z) vs S(x)(omega(y,z)) omega(x,yz) for central Z-valued omega
    H, w = fs.H, fs.omega
    return w(x, y)[0] + w(H.mul(x, y), z)[0], w(y, z)[0] + w(x, H.mul(y, z))[0]


@pytest.mark.parametrize("G", [heisenberg_semidirect(), heisenberg_central()], ids=["semidirect", "central"])
def test_presets_validate_on_radius_three(G):
    rep = validate_on_ball(G.fs, 3)
    assert rep.passed
    assert rep.checks["cocycle condition"] == len(G.H.ball(3)) ** 3


def test_trivial_factor_system_validates():
    assert validate_on_ball(trivial_factor_system(Z2, Z1), 2).passed


def test_k_plus_lprime_fails_with_witness():
    rep = validate_on_ball(K_PLUS_LPRIME, 2)
    assert not rep.passed
    bad = [v for v in rep.violations if v.kind == "cocycle condition"]
    assert bad
    for v in bad[:20]:
        lhs, rhs = cocycle_sides(K_PLUS_LPRIME, *v.witness)
        assert lhs != rhs and (lhs,) == v.lhs and (rhs,) == v.rhs


def test_k_plus_lprime_explicit_violation():
    # LHS - RHS = x1 - z2, so x = (1,0), y = z = 0 gives 2 vs 1
    assert cocycle_sides(K_PLUS_LPRIME, (1, 0), (0, 0), (0, 0)) == (2, 1)
    rep = validate_factor_system(K_PLUS_LPRIME, [(1, 0), (0, 0)], Z1.ball(1))
    assert ((1, 0), (0, 0), (0, 0)) in [v.witness for v in rep.violations if v.kind == "cocycle condition"]


def test_k_plus_lprime_balanced_triple_is_not_a_witness():
    # x1 = z2 = 1 makes both sides equal, so this triple cannot certify failure
    assert cocycle_sides(K_PLUS_LPRIME, (1, 0), (0, 0), (0, 1)) == (3, 3)


def test_k_plus_lprime_is_not_normalized():
    rep = validate_factor_system(K_PLUS_LPRIME, [(1, 0)], [(0,)])
    kinds = {v.kind for v in rep.violations}
    assert "normalization omega(h,e)" in kinds


def test_bilinear_replacement_validates():
    assert validate_on_ball(central_bilinear_factor_system(HEISENBERG_COCYCLE), 2).passed


def test_noncommuting_action_detected():
    fs = semidirect_factor_system([((1, 1), (0, 1)), ((1, 0), (1, 1))])
    rep = validate_on_ball(fs, 1)
    assert any(v.kind == "action condition" for v in rep.violations)


def test_non_unimodular_matrix_rejected():
    with pytest.raises(FactorSystemError):
        mat_inverse(((2, 0), (0, 1)))
    with pytest.raises(FactorSystemError):
        semidirect_factor_system([((1, 2), (3, 4))])


def test_validation_needs_windows():
    with pytest.raises(ValueError):
        validate_factor_system(trivial_factor_system(Z1, Z1), [], [(0,)])


@pytest.mark.parametrize("fs", [heisenberg_semidirect().fs, heisenberg_central().fs], ids=["semidirect", "central"])
def test_validated_system_gives_associative_group(fs):
    G = ExtensionGroup(fs)
    ball = G.ball(1)
    for x, y, z in itertools.product(ball, repeat=3):
        assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))


def test_derive_from_trivial_extension():
    G = ExtensionGroup(trivial_factor_system(Z2, Z1))
    ext = extension_of(G)
    fs = derive_factor_system(ext, lambda h: Pair(Z2.identity, h), Z1.ball(3))
    for h in Z1.ball(3):
        for n in Z2.ball(2):
            assert fs.S(h)(n) == n
        for k in Z1.ball(3):
            assert fs.omega(h, k) == (0, 0)


def test_derive_from_heisenberg_matrices_recovers_action():
    ext = heisenberg_matrix_extension()
    fs = derive_factor_system(ext, lambda h: (0, h[0], 0), Z1.ball(3))
    for (k,) in Z1.ball(3):
        for m, n in Z2.ball(3):
            assert fs.S((k,))((m, n)) == (m, k * m + n)
        for (l,) in Z1.ball(3):
            assert fs.omega((k,), (l,)) == (0, 0)
    assert validate_on_ball(fs, 2).passed


def test_derive_from_central_extension_recovers_cocycle():
    G = heisenberg_central()
    fs = derive_factor_system(extension_of(G), lambda h: Pair((0,), h), Z2.ball(2))
    for x, y in itertools.product(Z2.ball(2), repeat=2):
        assert fs.omega(x, y) == (x[0] * y[1],)
        assert fs.S(x)((5,)) == (5,)


def test_derive_rejects_bad_sections():
    ext = heisenberg_matrix_extension()
    with pytest.raises(FactorSystemError, match="normalized"):
        derive_factor_system(ext, lambda h: (1, h[0], 0), Z1.ball(1))
    with pytest.raises(FactorSystemError, match="right inverse"):
        derive_factor_system(ext, lambda h: (0, 2 * h[0], 0), Z1.ball(1))


def test_derive_rejects_omega_outside_n():
    # a restriction map that never recognizes N
    G = heisenberg_central()
    ext = extension_of(G)
    bad = type(ext)(ext.G, ext.N, ext.H, ext.include, lambda g: None, ext.project)
    with pytest.raises(FactorSystemError, match="does not lie in N"):
        derive_factor_system(bad, lambda h: Pair((0,), h), Z2.ball(1))


def test_lift_heisenberg_action():
    cs = lift_to_crossed_system(heisenberg_semidirect().fs)
    d10 = GroupRingElement.delta(cs.N, (1, 0))
    assert cs.ring_S((1,))(d10) == GroupRingElement.delta(cs.N, (1, 1))
    assert cs.ring_S((1,)).inverse(GroupRingElement.delta(cs.N, (1, 1))) == d10


def test_lift_trivial():
    cs = lift_to_crossed_system(trivial_factor_system(Z2, Z1))
    f = GroupRingElement(Z2, {(1, 0): 2, (0, 1): 3})
    assert cs.ring_S((4,))(f) == f
    assert cs.ring_omega((1,), (2,)) == cs.unit()


@pytest.mark.parametrize("G", [heisenberg_semidirect(), heisenberg_central()], ids=["semidirect", "central"])
def test_lifted_omega_is_dirac(G):
    cs = lift_to_crossed_system(G.fs)
    rng = random.Random(3)
    for _ in range(50):
        h, k = G.H.random_element(rng, 3), G.H.random_element(rng, 3)
        c, n = cs.ring_omega(h, k).trivial_unit()
        assert c == 1 and n == G.fs.omega(h, k)


@pytest.mark.parametrize("G", [heisenberg_semidirect(), heisenberg_central()], ids=["semidirect", "central"])
def test_lifted_system_satisfies_crossed_axioms(G):
    cs = lift_to_crossed_system(G.fs)
    rng = random.Random(11)
    samples = [GroupRingElement(G.N, {G.N.random_element(rng, 2): rng.randint(-2, 2) for _ in range(3)})
               for _ in range(4)]
    rep = validate_crossed_system(cs, G.H.ball(1), samples)
    assert rep.passed, rep.violations[:3]


def test_lift_then_restrict_round_trip():
    fs = heisenberg_semidirect().fs
    back = restrict_crossed_system(lift_to_crossed_system(fs), Z1.ball(2), Z2.ball(2))
    assert back is not None
    for h in Z1.ball(2):
        for n in Z2.ball(2):
            assert back.S(h)(n) == fs.S(h)(n)
        for k in Z1.ball(2):
            assert back.omega(h, k) == fs.omega(h, k)


def _abstract(ring_S, ring_omega):
    return CrossedSystem(Z2, Z1, ring_S, ring_omega)


def test_restrict_rejects_non_unit_coefficient_omega():
    ident = RingAutomorphism(lambda f: f, lambda f: f)
    cs = _abstract(lambda h: ident, lambda h, k: GroupRingElement.delta(Z2, (0, 0), 2))
    assert restrict_crossed_system(cs, Z1.ball(1), Z2.ball(1)) is None


def test_restrict_rejects_non_monomial_action():
    def spread(f):
        return f + f.map_support(lambda n: (n[0] + 1, n[1]))

    aut = RingAutomorphism(spread, spread)
    cs = _abstract(lambda h: aut, lambda h, k: GroupRingElement.one(Z2))
    assert restrict_crossed_system(cs, Z1.ball(1), Z2.ball(1)) is None


def test_descriptors_and_equality():
    a = semidirect_factor_system([HEISENBERG_ACTION])
    b = semidirect_factor_system([[[1, 0], [1, 1]]])
    assert a == b and hash(a) == hash(b)
    assert a.descriptor() == {"kind": "semidirect", "matrix_action": [[[1, 0], [1, 1]]]}
    assert a != heisenberg_central().fs
    assert lift_to_crossed_system(a) == lift_to_crossed_system(b)
    assert lift_to_crossed_system(a) != lift_to_crossed_system(b, order=3)
