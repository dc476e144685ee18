"""Factor systems (S, omega) and their ring-level lifts.

A factor system for groups N and H is a map ``S`` from H to automorphisms of
N together with ``omega: H x H -> N`` such that

    S(h) S(h') = C_N(omega(h, h')) S(hh')                          (action)
    omega(h, h') omega(hh', h'') = S(h)(omega(h', h'')) omega(h, h'h'')  (cocycle)

Both identities quantify over all of H, so :func:`validate_factor_system`
checks them on finite windows supplied by the caller.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable

from .group_ring import GroupRingElement, NotInvertibleError
from .groups import FreeAbelian, Group
from .scalars import DEFAULT_ORDER


class FactorSystemError(ValueError):
    pass


# integer matrices as tuples of row tuples

def mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def mat_vec(a, v):
    return tuple(sum(r * x for r, x in zip(row, v)) for row in a)


def mat_identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_inverse(a):
    """Inverse of a unimodular integer matrix (raises otherwise)."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise FactorSystemError(f"matrix {a} is singular")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                c = m[r][col]
                m[r] = [x - c * y for x, y in zip(m[r], m[col])]
    inv = [row[n:] for row in m]
    if any(x.denominator != 1 for row in inv for x in row):
        raise FactorSystemError(f"matrix {a} is not invertible over Z")
    return tuple(tuple(int(x) for x in row) for row in inv)


def mat_power(a, k):
    if k < 0:
        a, k = mat_inverse(a), -k
    result = mat_identity(len(a))
    while k:
        if k & 1:
            result = mat_mul(result, a)
        a = mat_mul(a, a)
        k >>= 1
    return result


@dataclass(frozen=True, eq=False)
class Automorphism:
    """A group automorphism given by forward and inverse evaluation maps.

    ``matrix`` is the integer matrix when the automorphism is one of Z^n.
    """

    forward: Callable
    inverse: Callable
    matrix: tuple | None = None

    def __call__(self, n):
        return self.forward(n)


class FactorSystem:
    def __init__(
        self,
        N: Group,
        H: Group,
        S: Callable[[Any], Automorphism],
        omega: Callable[[Any, Any], Any],
        *,
        name: str | None = None,
        descriptor: dict | None = None,
        central: bool = False,
    ):
        self.N = N
        self.H = H
        self._S = lru_cache(maxsize=4096)(S)
        self._omega = lru_cache(maxsize=65536)(omega)
        self.name = name or (descriptor or {}).get("kind", "custom")
        self._descriptor = descriptor
        self._key = json.dumps(descriptor, sort_keys=True) if descriptor else None
        # S is trivial and omega lands in the center of N
        self.central = central

    def S(self, h) -> Automorphism:
        return self._S(h)

    def omega(self, h, k):
        return self._omega(h, k)

    def descriptor(self) -> dict:
        if self._descriptor is None:
            raise ValueError(f"factor system {self.name!r} has no textual descriptor")
        return self._descriptor

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FactorSystem) or self._key is None:
            return False
        return self._key == other._key

    def __hash__(self):
        return hash(self._key) if self._key is not None else id(self)

    def __repr__(self):
        return f"FactorSystem({self.name}: {self.N} by {self.H})"


def _identity_aut():
    ident = lambda n: n  # noqa: E731
    return Automorphism(ident, ident)


def trivial_factor_system(N: Group, H: Group, name: str = "trivial") -> FactorSystem:
    aut = _identity_aut()
    e = N.identity
    desc = None
    try:
        desc = {"kind": "trivial", "N": N.descriptor(), "H": H.descriptor()}
    except (NotImplementedError, ValueError):
        pass
    return FactorSystem(
        N, H, lambda h: aut, lambda h, k: e, name=name, descriptor=desc, central=True
    )


def matrix_automorphism(matrix) -> Automorphism:
    matrix = tuple(tuple(int(x) for x in row) for row in matrix)
    inv = mat_inverse(matrix)
    return Automorphism(
        lambda v: mat_vec(matrix, v), lambda v: mat_vec(inv, v), matrix=matrix
    )


def semidirect_factor_system(matrices, name: str | None = None) -> FactorSystem:
    """Z^r semidirect Z^k, where generator i of Z^k acts by ``matrices[i]``.

    S(h) is the product of matrices[i]^h_i; the matrices should commute, which
    validation will detect if they do not.
    """
    mats = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in matrices)
    if not mats:
        raise FactorSystemError("need at least one action matrix")
    r = len(mats[0])
    for m in mats:
        if len(m) != r or any(len(row) != r for row in m):
            raise FactorSystemError(f"action matrices must all be {r}x{r}")
        mat_inverse(m)
    N, H = FreeAbelian(r), FreeAbelian(len(mats))

    def S(h):
        acc = mat_identity(r)
        for m, k in zip(mats, h):
            acc = mat_mul(acc, mat_power(m, k))
        return matrix_automorphism(acc)

    e = N.identity
    desc = {
        "kind": "semidirect",
        "matrix_action": [[list(row) for row in m] for m in mats],
    }
    return FactorSystem(N, H, S, lambda h, k: e, name=name or "semidirect", descriptor=desc)


def central_bilinear_factor_system(matrix, name: str | None = None) -> FactorSystem:
    """Central extension of Z^m by Z with omega(x, y) = x^T B y."""
    B = tuple(tuple(int(x) for x in row) for row in matrix)
    m = len(B)
    if any(len(row) != m for row in B):
        raise FactorSystemError("bilinear cocycle matrix must be square")
    N, H = FreeAbelian(1), FreeAbelian(m)
    aut = _identity_aut()

    def omega(x, y):
        return (sum(x[i] * B[i][j] * y[j] for i in range(m) for j in range(m)),)

    desc = {"kind": "central_bilinear", "matrix": [list(row) for row in B]}
    return FactorSystem(
        N, H, lambda h: aut, omega, name=name or "central_bilinear",
        descriptor=desc, central=True,
    )


def central_linear_factor_system(left, right, name: str | None = None) -> FactorSystem:
    """omega(x, y) = left.x + right.y with trivial action, e.g. k + l'.

    Such an omega is generally neither normalized nor a cocycle; it exists so
    the failure can be exhibited.
    """
    left = tuple(int(x) for x in left)
    right = tuple(int(x) for x in right)
    if len(left) != len(right):
        raise FactorSystemError("left and right coefficient vectors differ in length")
    N, H = FreeAbelian(1), FreeAbelian(len(left))
    aut = _identity_aut()

    def omega(x, y):
        return (sum(a * v for a, v in zip(left, x)) + sum(b * v for b, v in zip(right, y)),)

    desc = {"kind": "central_linear", "left": list(left), "right": list(right)}
    return FactorSystem(
        N, H, lambda h: aut, omega, name=name or "central_linear",
        descriptor=desc, central=True,
    )


# validation

@dataclass
class Violation:
    kind: str
    witness: tuple
    lhs: Any
    rhs: Any

    def as_dict(self, fmt=repr) -> dict:
        return {"kind": self.kind, "witness": [fmt(w) for w in self.witness],
                "lhs": fmt(self.lhs), "rhs": fmt(self.rhs)}


@dataclass
class ValidationReport:
    checks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def count(self, kind: str, ok: bool, witness=(), lhs=None, rhs=None):
        self.checks[kind] = self.checks.get(kind, 0) + 1
        if not ok:
            self.violations.append(Violation(kind, tuple(witness), lhs, rhs))

    @property
    def total_checks(self) -> int:
        return sum(self.checks.values())


def validate_factor_system(fs: FactorSystem, h_window, n_window) -> ValidationReport:
    """Check normalization, automorphism, action and cocycle identities on
    every pair / triple drawn from the windows.  Violations are data."""
    h_window, n_window = list(h_window), list(n_window)
    if not h_window or not n_window:
        raise ValueError("validation windows must be nonempty")
    N, H = fs.N, fs.H
    eN, eH = N.identity, H.identity
    rep = ValidationReport()

    S_e = fs.S(eH)
    for n in n_window:
        rep.count("normalization S(e)", S_e(n) == n, (n,), S_e(n), n)
    for h in h_window:
        rep.count("normalization omega(h,e)", fs.omega(h, eH) == eN, (h, eH), fs.omega(h, eH), eN)
        rep.count("normalization omega(e,h)", fs.omega(eH, h) == eN, (eH, h), fs.omega(eH, h), eN)

    for h in h_window:
        s = fs.S(h)
        for n in n_window:
            img = s(n)
            rep.count("automorphism inverse", s.inverse(img) == n and s(s.inverse(n)) == n,
                      (h, n), s.inverse(img), n)
            for n2 in n_window:
                lhs, rhs = s(N.mul(n, n2)), N.mul(img, s(n2))
                rep.count("automorphism multiplicative", lhs == rhs, (h, n, n2), lhs, rhs)

    for h, h2 in itertools.product(h_window, repeat=2):
        w = fs.omega(h, h2)
        winv = N.inv(w)
        s, s2, s12 = fs.S(h), fs.S(h2), fs.S(H.mul(h, h2))
        for n in n_window:
            lhs = s(s2(n))
            rhs = N.mul(N.mul(w, s12(n)), winv)
            rep.count("action condition", lhs == rhs, (h, h2, n), lhs, rhs)

    for h, h2, h3 in itertools.product(h_window, repeat=3):
        lhs = N.mul(fs.omega(h, h2), fs.omega(H.mul(h, h2), h3))
        rhs = N.mul(fs.S(h)(fs.omega(h2, h3)), fs.omega(h, H.mul(h2, h3)))
        rep.count("cocycle condition", lhs == rhs, (h, h2, h3), lhs, rhs)
    return rep


def validate_on_ball(fs: FactorSystem, radius: int) -> ValidationReport:
    return validate_factor_system(fs, fs.H.ball(radius), fs.N.ball(radius))


# deriving a factor system from an extension with a section

@dataclass(frozen=True, eq=False)
class Extension:
    """1 -> N -> G -> H -> 1 presented concretely.

    ``restrict`` sends a G-element lying in (the image of) N back to N and
    returns None otherwise.
    """

    G: Group
    N: Group
    H: Group
    include: Callable
    restrict: Callable
    project: Callable


def extension_of(G) -> Extension:
    """The extension structure of an ExtensionGroup, N = {(n, e)}."""
    from .groups import Pair

    eH = G.H.identity
    return Extension(
        G, G.N, G.H,
        include=lambda n: Pair(n, eH),
        restrict=lambda g: g[0] if g[1] == eH else None,
        project=lambda g: g[1],
    )


def heisenberg_matrix_extension() -> Extension:
    """H3 as matrices, N = {b = 0} identified with Z^2 by (m, n) -> (m, 0, -n)
    and q reading off the b entry."""
    from .groups import HeisenbergMatrices

    return Extension(
        HeisenbergMatrices(), FreeAbelian(2), FreeAbelian(1),
        include=lambda v: (v[0], 0, -v[1]),
        restrict=lambda x: (x[0], -x[2]) if x[1] == 0 else None,
        project=lambda x: (x[1],),
    )


def derive_factor_system(ext: Extension, sigma: Callable, h_window) -> FactorSystem:
    """S := C_N o sigma and omega(h, h') = sigma(h) sigma(h') sigma(hh')^-1.

    ``sigma`` must be a normalized section of the projection; this and the
    claim that omega lands in N are checked on ``h_window``.
    """
    G, N, H = ext.G, ext.N, ext.H
    if sigma(H.identity) != G.identity:
        raise FactorSystemError("section is not normalized: sigma(e) != e")
    h_window = list(h_window)
    for h in h_window:
        if ext.project(sigma(h)) != h:
            raise FactorSystemError(f"section is not a right inverse of q at {h!r}")

    def to_N(g, what):
        n = ext.restrict(g)
        if n is None:
            raise FactorSystemError(f"{what} = {g!r} does not lie in N")
        return n

    def S(h):
        s = sigma(h)
        sinv = G.inv(s)
        return Automorphism(
            lambda n: to_N(G.mul(G.mul(s, ext.include(n)), sinv), "conjugate"),
            lambda n: to_N(G.mul(G.mul(sinv, ext.include(n)), s), "conjugate"),
        )

    def omega(h, k):
        g = G.mul(G.mul(sigma(h), sigma(k)), G.inv(sigma(H.mul(h, k))))
        return to_N(g, f"omega({h!r}, {k!r})")

    fs = FactorSystem(N, H, S, omega, name="derived")
    for h, k in itertools.product(h_window, repeat=2):
        fs.omega(h, k)
    return fs


# ring level

@dataclass(frozen=True, eq=False)
class RingAutomorphism:
    forward: Callable
    inverse: Callable

    def __call__(self, f):
        return self.forward(f)


class CrossedSystem:
    """A (C[N], H)-crossed system: ring automorphisms ``ring_S(h)`` of C[N]
    and invertible ``ring_omega(h, h')`` in C[N].

    When built by :func:`lift_to_crossed_system` the originating factor
    system is kept in ``factor_system``.
    """

    def __init__(self, N: Group, H: Group, ring_S, ring_omega, *,
                 order: int = DEFAULT_ORDER, factor_system: FactorSystem | None = None,
                 name: str | None = None):
        self.N = N
        self.H = H
        self._ring_S = lru_cache(maxsize=4096)(ring_S)
        self._ring_omega = lru_cache(maxsize=65536)(ring_omega)
        self.order = order
        self.factor_system = factor_system
        self.name = name or (factor_system.name if factor_system else "abstract")

    def ring_S(self, h) -> RingAutomorphism:
        return self._ring_S(h)

    def ring_omega(self, h, k) -> GroupRingElement:
        return self._ring_omega(h, k)

    def ring_omega_inverse(self, h, k) -> GroupRingElement:
        return self.ring_omega(h, k).inverse()

    def unit(self) -> GroupRingElement:
        return GroupRingElement.one(self.N, self.order)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CrossedSystem):
            return False
        return (
            self.factor_system is not None
            and self.factor_system == other.factor_system
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.factor_system, self.order)) if self.factor_system else id(self)

    def __repr__(self):
        return f"CrossedSystem({self.name}, order={self.order})"


def lift_to_crossed_system(fs: FactorSystem, order: int = DEFAULT_ORDER) -> CrossedSystem:
    """ring_S(h)(sum f_n d_n) = sum f_n d_{S(h)(n)}, ring_omega = delta_omega."""
    N = fs.N

    def ring_S(h):
        s = fs.S(h)
        return RingAutomorphism(
            lambda f: f.map_support(s.forward), lambda f: f.map_support(s.inverse)
        )

    def ring_omega(h, k):
        return GroupRingElement.delta(N, fs.omega(h, k), 1, order)

    return CrossedSystem(N, fs.H, ring_S, ring_omega, order=order, factor_system=fs)


def validate_crossed_system(cs: CrossedSystem, h_window, samples) -> ValidationReport:
    """Check the crossed-system axioms on H-windows and sample elements of C[N].

    ring_omega values must be certifiable units (trivial units of C[N]).
    """
    h_window, samples = list(h_window), list(samples)
    H = cs.H
    eH = H.identity
    one = cs.unit()
    rep = ValidationReport()

    for f in samples:
        rep.count("normalization S(e)", cs.ring_S(eH)(f) == f, (f,), cs.ring_S(eH)(f), f)
    for h in h_window:
        rep.count("normalization omega(h,e)", cs.ring_omega(h, eH) == one, (h,), cs.ring_omega(h, eH), one)
        rep.count("normalization omega(e,h)", cs.ring_omega(eH, h) == one, (h,), cs.ring_omega(eH, h), one)

    for h in h_window:
        s = cs.ring_S(h)
        rep.count("automorphism unital", s(one) == one, (h,), s(one), one)
        for f in samples:
            rep.count("automorphism inverse", s.inverse(s(f)) == f, (h, f), s.inverse(s(f)), f)
            for g in samples:
                lhs, rhs = s(f * g), s(f) * s(g)
                rep.count("automorphism multiplicative", lhs == rhs, (h, f, g), lhs, rhs)

    for h, k in itertools.product(h_window, repeat=2):
        w = cs.ring_omega(h, k)
        try:
            winv = w.inverse()
        except NotInvertibleError:
            rep.count("omega invertible", False, (h, k), w, None)
            continue
        rep.count("omega invertible", True)
        s, s2, s12 = cs.ring_S(h), cs.ring_S(k), cs.ring_S(H.mul(h, k))
        for f in samples:
            lhs = s(s2(f))
            rhs = w * s12(f) * winv
            rep.count("action condition", lhs == rhs, (h, k, f), lhs, rhs)

    for h, k, l in itertools.product(h_window, repeat=3):
        lhs = cs.ring_omega(h, k) * cs.ring_omega(H.mul(h, k), l)
        rhs = cs.ring_S(h)(cs.ring_omega(k, l)) * cs.ring_omega(h, H.mul(k, l))
        rep.count("cocycle condition", lhs == rhs, (h, k, l), lhs, rhs)
    return rep


def restrict_crossed_system(cs: CrossedSystem, h_window, n_window) -> FactorSystem | None:
    """Recover (S, omega) when ring_S preserves Dirac monomials over N and
    ring_omega takes coefficient-1 Dirac values, on the given windows.

    Returns None when either condition fails somewhere on the windows.
    """
    N, H = cs.N, cs.H
    order = cs.order
    h_window, n_window = list(h_window), list(n_window)

    def dirac_exponent(f):
        tu = f.trivial_unit()
        if tu is None or tu[0] != 1:
            return None
        return tu[1]

    for h in h_window:
        s = cs.ring_S(h)
        for n in n_window:
            d = GroupRingElement.delta(N, n, 1, order)
            if dirac_exponent(s(d)) is None or dirac_exponent(s.inverse(d)) is None:
                return None
    for h, k in itertools.product(h_window, repeat=2):
        if dirac_exponent(cs.ring_omega(h, k)) is None:
            return None

    def S(h):
        s = cs.ring_S(h)
        return Automorphism(
            lambda n: dirac_exponent(s(GroupRingElement.delta(N, n, 1, order))),
            lambda n: dirac_exponent(s.inverse(GroupRingElement.delta(N, n, 1, order))),
        )

    def omega(h, k):
        return dirac_exponent(cs.ring_omega(h, k))

    return FactorSystem(N, H, S, omega, name=f"restricted({cs.name})")
