"""The crossed product C[N] x_(S, omega) H.

Elements are finite sums ``sum_h f_h d_h`` with ``f_h`` in C[N].  On
homogeneous elements the product is

    f d_h * f' d_h' = f . S(h)(f') . omega(h, h') d_{hh'}

with S and omega the ring-level maps of a :class:`CrossedSystem`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Rational

from .factor_systems import CrossedSystem
from .group_ring import GroupRingElement, NotInvertibleError
from .groups import ExtensionGroup, Pair
from .scalars import Cyc


class CrossedProductElement:
    __slots__ = ("cs", "terms", "_hash")

    def __init__(self, cs: CrossedSystem, terms=None):
        clean = {}
        for h, f in (terms or {}).items():
            cs.H.check(h)
            if not isinstance(f, GroupRingElement):
                raise TypeError("crossed-product coefficients must be GroupRingElements over N")
            if f.group != cs.N or f.order != cs.order:
                raise ValueError("coefficient is not an element of C[N] at the system's scalar order")
            if f:
                clean[h] = f
        self._init(cs, clean)

    def _init(self, cs, terms):
        self.cs = cs
        self.terms = terms
        self._hash = None

    @classmethod
    def _make(cls, cs, terms) -> CrossedProductElement:
        obj = object.__new__(cls)
        obj._init(cs, terms)
        return obj

    @classmethod
    def zero(cls, cs) -> CrossedProductElement:
        return cls._make(cs, {})

    @classmethod
    def one(cls, cs) -> CrossedProductElement:
        return cls._make(cs, {cs.H.identity: cs.unit()})

    @classmethod
    def homogeneous(cls, cs, f: GroupRingElement, h) -> CrossedProductElement:
        """f d_h."""
        return cls(cs, {h: f})

    @classmethod
    def d(cls, cs, h) -> CrossedProductElement:
        return cls._make(cs, {h: cs.unit()})

    @classmethod
    def monomial(cls, cs, n, h, coeff=1) -> CrossedProductElement:
        """coeff * delta_n d_h."""
        return cls(cs, {h: GroupRingElement.delta(cs.N, n, coeff, cs.order)})

    def support(self) -> list:
        return list(self.terms)

    def coeff(self, h) -> GroupRingElement:
        f = self.terms.get(h)
        return f if f is not None else GroupRingElement.zero(self.cs.N, self.cs.order)

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if not (self.cs is other.cs or self.cs == other.cs):
            raise ValueError(f"crossed-system mismatch: {self.cs} vs {other.cs}")

    def __add__(self, other):
        if not isinstance(other, CrossedProductElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for h, f in other.terms.items():
            s = terms[h] + f if h in terms else f
            if s:
                terms[h] = s
            else:
                terms.pop(h, None)
        return CrossedProductElement._make(self.cs, terms)

    def __neg__(self):
        return CrossedProductElement._make(self.cs, {h: -f for h, f in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CrossedProductElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> CrossedProductElement:
        terms = {h: f.scale(c) for h, f in self.terms.items()}
        return CrossedProductElement._make(self.cs, {h: f for h, f in terms.items() if f})

    def __mul__(self, other):
        if isinstance(other, CrossedProductElement):
            return cp_mul(self, other)
        if isinstance(other, (Cyc, int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Cyc, int, Rational)):
            return self.scale(other)
        return NotImplemented

    def star(self) -> CrossedProductElement:
        return cp_involute(self)

    def __eq__(self, other):
        if not isinstance(other, CrossedProductElement):
            return NotImplemented
        return (self.cs is other.cs or self.cs == other.cs) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        fmt = self.cs.H.format
        return " + ".join(f"[{f!r}] d{fmt(h)}" for h, f in sorted(self.terms.items(), key=lambda t: repr(t[0])))


def cp_mul(x: CrossedProductElement, y: CrossedProductElement) -> CrossedProductElement:
    x._check(y)
    cs = x.cs
    Hmul = cs.H.mul
    acc = {}
    for h, f in x.terms.items():
        s = cs.ring_S(h)
        for k, g in y.terms.items():
            v = f * s(g) * cs.ring_omega(h, k)
            hk = Hmul(h, k)
            acc[hk] = acc[hk] + v if hk in acc else v
    return CrossedProductElement._make(cs, {h: f for h, f in acc.items() if f})


def cp_involute(x: CrossedProductElement) -> CrossedProductElement:
    """(f d_h)* = omega(h^-1, h)^-1 . S(h^-1)(f*) d_{h^-1}, extended additively."""
    cs = x.cs
    Hinv = cs.H.inv
    acc = {}
    for h, f in x.terms.items():
        hinv = Hinv(h)
        v = cs.ring_omega_inverse(hinv, h) * cs.ring_S(hinv)(f.star())
        acc[hinv] = acc[hinv] + v if hinv in acc else v
    return CrossedProductElement._make(cs, {h: f for h, f in acc.items() if f})


def _extension_group(cs: CrossedSystem) -> ExtensionGroup:
    if cs.factor_system is None:
        raise ValueError("crossed system was not lifted from a factor system")
    return ExtensionGroup(cs.factor_system)


def cp_phi(f: GroupRingElement, cs: CrossedSystem) -> CrossedProductElement:
    """C[G] -> C[N] x H for G = N x_(S, omega) H with sigma(h) = (e, h):
    delta_(n, h) = delta_n * delta_sigma(h) maps to delta_n d_h."""
    G = _extension_group(cs)
    if f.group != G:
        raise ValueError(f"element lives in {f.group}, expected {G}")
    if f.order != cs.order:
        raise ValueError("scalar order mismatch")
    parts: dict = {}
    for (n, h), c in f.terms.items():
        parts.setdefault(h, {})[n] = c
    return CrossedProductElement._make(
        cs, {h: GroupRingElement._make(cs.N, cs.order, t) for h, t in parts.items()}
    )


def cp_phi_inv(x: CrossedProductElement) -> GroupRingElement:
    G = _extension_group(x.cs)
    terms = {}
    for h, f in x.terms.items():
        for n, c in f.terms.items():
            terms[Pair(n, h)] = c
    return GroupRingElement._make(G, x.cs.order, terms)


def cp_invert_homogeneous(cs: CrossedSystem, f: GroupRingElement, h) -> CrossedProductElement:
    """(f d_h)^-1 = omega(h^-1, h)^-1 . S(h^-1)(f^-1) d_{h^-1}.

    Only trivial units f = c delta_n are certified invertible.  Both one-sided
    products are checked against d_e before returning.
    """
    try:
        finv = f.inverse()
    except NotInvertibleError:
        raise NotInvertibleError("cannot certify invertibility") from None
    hinv = cs.H.inv(h)
    coeff = cs.ring_omega_inverse(hinv, h) * cs.ring_S(hinv)(finv)
    inv = CrossedProductElement._make(cs, {hinv: coeff})
    u = CrossedProductElement.homogeneous(cs, f, h)
    one = CrossedProductElement.one(cs)
    if inv * u != one or u * inv != one:
        raise ArithmeticError(f"inverse formula failed verification for {u!r}")
    return inv


def cp_conjugate(x: CrossedProductElement, f: GroupRingElement, h) -> CrossedProductElement:
    """(f d_h) x (f d_h)^-1."""
    u = CrossedProductElement.homogeneous(x.cs, f, h)
    return u * x * cp_invert_homogeneous(x.cs, f, h)


def cp_is_homogeneous(x: CrossedProductElement):
    """(h, f_h) when x is supported on a single degree, else None."""
    if len(x.terms) != 1:
        return None
    ((h, f),) = x.terms.items()
    return h, f


@dataclass
class RelationReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def cp_idempotent_relations(x: CrossedProductElement) -> RelationReport:
    """Evaluate the coefficientwise identities that x = x* = x.x forces:

    1. f_h = sum_k f_k . S(k)(f_{k^-1 h}) . omega(k, k^-1 h)
    2. f_{h^-1} = omega(h^-1, h)^-1 . S(h^-1)(f_h*)

    over the degrees where either side can be nonzero.
    """
    cs = x.cs
    H = cs.H
    supp = list(x.terms)
    rep = RelationReport()

    degrees = set(supp)
    degrees.update(H.mul(a, b) for a in supp for b in supp)
    for h in sorted(degrees, key=repr):
        rhs = GroupRingElement.zero(cs.N, cs.order)
        for k in supp:
            rest = H.mul(H.inv(k), h)
            if rest in x.terms:
                rhs = rhs + x.terms[k] * cs.ring_S(k)(x.terms[rest]) * cs.ring_omega(k, rest)
        lhs = x.coeff(h)
        rep.checked += 1
        if lhs != rhs:
            rep.violations.append(("square", h, lhs, rhs))

    degrees = set(supp) | {H.inv(h) for h in supp}
    for h in sorted(degrees, key=repr):
        hinv = H.inv(h)
        lhs = x.coeff(hinv)
        rhs = cs.ring_omega_inverse(hinv, h) * cs.ring_S(hinv)(x.coeff(h).star())
        rep.checked += 1
        if lhs != rhs:
            rep.violations.append(("adjoint", h, lhs, rhs))
    return rep


def d_degree_range(x: CrossedProductElement) -> tuple[int, int]:
    """Lowest and highest d-degree of a nonzero x when H = Z."""
    if not x.terms:
        raise ValueError("zero has no degree")
    ks = [h[0] for h in x.terms]
    return min(ks), max(ks)
