"""Character fibers of group rings of central extensions.

For G a central extension of Z^k by H with cocycle omega and a character chi
of Z^k, the map

    sum f_(z, h) delta_(z, h)  ->  sum chi(z) f_(z, h) u_h

lands in the twisted group algebra of H with u_h u_h' = chi(omega(h, h')) u_hh'.
Only finite-order characters chi(z) = zeta_q^(a . z) are representable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm

from .group_ring import GroupRingElement
from .groups import ExtensionGroup, FreeAbelian, Group
from .scalars import Cyc


@dataclass(frozen=True)
class Character:
    order: int
    exponents: tuple

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("character order must be positive")
        object.__setattr__(self, "exponents", tuple(int(a) % self.order for a in self.exponents))

    @property
    def center_rank(self) -> int:
        return len(self.exponents)

    @classmethod
    def trivial(cls, rank: int) -> Character:
        return cls(1, (0,) * rank)

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def __call__(self, z) -> Cyc:
        return Cyc.zeta(self.order, sum(a * x for a, x in zip(self.exponents, z)))

    def descriptor(self) -> dict:
        return {"order": self.order, "exponents": list(self.exponents)}


def all_characters(rank: int, order: int) -> list[Character]:
    return [Character(order, e) for e in itertools.product(range(order), repeat=rank)]


def _central_group(G) -> ExtensionGroup:
    if not (isinstance(G, ExtensionGroup) and G.fs.central and isinstance(G.N, FreeAbelian)):
        raise ValueError(f"{G} is not a central extension of a free abelian group")
    return G


class TwistedAlgebra:
    """C[H] twisted by the scalar cocycle chi o omega, over Q(zeta_order)."""

    def __init__(self, fs, chi: Character, order: int):
        if order % chi.order:
            raise ValueError("scalar order must be a multiple of the character order")
        self.fs = fs
        self.H: Group = fs.H
        self.chi = chi
        self.order = order
        self._cocycle = lru_cache(maxsize=65536)(
            lambda h, k: chi(fs.omega(h, k)).embed(order)
        )

    def cocycle(self, h, k) -> Cyc:
        return self._cocycle(h, k)

    def element(self, terms) -> TwistedAlgebraElement:
        return TwistedAlgebraElement(self, {h: c for h, c in terms.items() if c})

    def u(self, h, coeff=1) -> TwistedAlgebraElement:
        return self.element({h: Cyc.rational(coeff, self.order) if not isinstance(coeff, Cyc) else coeff})

    def one(self) -> TwistedAlgebraElement:
        return self.u(self.H.identity)

    def zero(self) -> TwistedAlgebraElement:
        return self.element({})

    def __eq__(self, other):
        return (
            isinstance(other, TwistedAlgebra)
            and self.fs == other.fs
            and self.chi == other.chi
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.fs, self.chi, self.order))


class TwistedAlgebraElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: TwistedAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def _check(self, other):
        if self.algebra != other.algebra:
            raise ValueError("twisted algebra mismatch")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for h, c in other.terms.items():
            terms[h] = terms[h] + c if h in terms else c
        return self.algebra.element(terms)

    def __mul__(self, other):
        return twisted_mul(self, other)

    def star(self) -> TwistedAlgebraElement:
        """(a u_h)* = conj(a) conj(chi(omega(h^-1, h))) u_{h^-1}."""
        A = self.algebra
        terms = {}
        for h, c in self.terms.items():
            hinv = A.H.inv(h)
            terms[hinv] = c.conj() * A.cocycle(hinv, h).conj()
        return A.element(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def underlying(self, H: Group | None = None) -> GroupRingElement:
        """The coefficient vector as an element of the untwisted C[H]."""
        return GroupRingElement._make(H or self.algebra.H, self.algebra.order, dict(self.terms))

    def __eq__(self, other):
        if not isinstance(other, TwistedAlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        fmt = self.algebra.H.format
        return " + ".join(f"({c})*u{fmt(h)}" for h, c in sorted(self.terms.items(), key=lambda t: repr(t[0])))


def twisted_mul(a: TwistedAlgebraElement, b: TwistedAlgebraElement) -> TwistedAlgebraElement:
    a._check(b)
    A = a.algebra
    Hmul = A.H.mul
    acc = {}
    for h, x in a.terms.items():
        for k, y in b.terms.items():
            hk = Hmul(h, k)
            v = x * y * A.cocycle(h, k)
            acc[hk] = acc[hk] + v if hk in acc else v
    return A.element(acc)


def evaluate_fiber(x: GroupRingElement, chi: Character) -> TwistedAlgebraElement:
    G = _central_group(x.group)
    if chi.center_rank != G.N.rank:
        raise ValueError(f"character has rank {chi.center_rank}, center has rank {G.N.rank}")
    order = lcm(x.order, chi.order)
    A = TwistedAlgebra(G.fs, chi, order)
    acc = {}
    for (z, h), c in x.terms.items():
        v = chi(z).embed(order) * c.embed(order)
        acc[h] = acc[h] + v if h in acc else v
    return A.element(acc)


def pushforward(x: GroupRingElement) -> GroupRingElement:
    """Image of x under C[G] -> C[H] induced by q(z, h) = h."""
    G = _central_group(x.group)
    acc = {}
    for (z, h), c in x.terms.items():
        acc[h] = acc[h] + c if h in acc else c
    return GroupRingElement._make(G.H, x.order, {h: c for h, c in acc.items() if c})


@dataclass
class FiberVerdict:
    character: Character
    verdict: str  # "trivial-idempotent", "nontrivial-idempotent" or "not-idempotent"


@dataclass
class ScanReport:
    entries: list = field(default_factory=list)

    @property
    def flagged(self) -> list:
        return [e for e in self.entries if e.verdict != "trivial-idempotent"]

    @property
    def first_flag(self):
        flagged = self.flagged
        return flagged[0] if flagged else None

    @property
    def ok(self) -> bool:
        return not self.flagged


def fiber_idempotent_scan(x: GroupRingElement, orders) -> ScanReport:
    """Check every fiber image of x for idempotency, over all characters of
    each listed order."""
    G = _central_group(x.group)
    rep = ScanReport()
    for q in orders:
        for chi in all_characters(G.N.rank, q):
            y = evaluate_fiber(x, chi)
            if y * y != y:
                verdict = "not-idempotent"
            elif y.is_zero() or y == y.algebra.one():
                verdict = "trivial-idempotent"
            else:
                verdict = "nontrivial-idempotent"
            rep.entries.append(FiberVerdict(chi, verdict))
    return rep
