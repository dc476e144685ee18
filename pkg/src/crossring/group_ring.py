"""The complex group ring C[G] over an exact cyclotomic coefficient field."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import ceil, isqrt
from numbers import Rational

from .groups import Group
from .scalars import DEFAULT_ORDER, Cyc


class NotInvertibleError(ValueError):
    pass


def _same_group(g1: Group, g2: Group) -> bool:
    return g1 is g2 or g1 == g2


class GroupRingElement:
    """A finitely supported map G -> Q(zeta_order), the element sum f_g delta_g.

    Zero coefficients are never stored.  ``*`` is convolution between group
    ring elements and scalar multiplication otherwise.
    """

    __slots__ = ("group", "order", "terms", "_hash")

    def __init__(self, group: Group, terms=None, order: int = DEFAULT_ORDER):
        clean = {}
        for g, c in (terms or {}).items():
            group.check(g)
            c = _as_scalar(c, order)
            if c:
                clean[g] = clean.get(g, Cyc.rational(0, order)) + c
        self._init(group, order, {g: c for g, c in clean.items() if c})

    def _init(self, group, order, terms):
        self.group = group
        self.order = order
        self.terms = terms
        self._hash = None

    @classmethod
    def _make(cls, group, order, terms) -> GroupRingElement:
        obj = object.__new__(cls)
        obj._init(group, order, terms)
        return obj

    @classmethod
    def delta(cls, group: Group, g, coeff=1, order: int = DEFAULT_ORDER) -> GroupRingElement:
        return cls(group, {g: coeff}, order)

    @classmethod
    def zero(cls, group: Group, order: int = DEFAULT_ORDER) -> GroupRingElement:
        return cls._make(group, order, {})

    @classmethod
    def one(cls, group: Group, order: int = DEFAULT_ORDER) -> GroupRingElement:
        return cls._make(group, order, {group.identity: Cyc.rational(1, order)})

    # basic accessors

    def support(self) -> list:
        return list(self.terms)

    def coeff(self, g) -> Cyc:
        return self.terms.get(g, Cyc.rational(0, self.order))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _check(self, other: GroupRingElement):
        if not _same_group(self.group, other.group):
            raise ValueError(f"group mismatch: {self.group} vs {other.group}")
        if self.order != other.order:
            raise ValueError(f"scalar order mismatch: {self.order} vs {other.order}")

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            s = terms[g] + c if g in terms else c
            if s:
                terms[g] = s
            else:
                del terms[g]
        return GroupRingElement._make(self.group, self.order, terms)

    def __neg__(self):
        return GroupRingElement._make(
            self.group, self.order, {g: -c for g, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> GroupRingElement:
        c = _as_scalar(c, self.order)
        if not c:
            return GroupRingElement.zero(self.group, self.order)
        return GroupRingElement._make(
            self.group, self.order, {g: c * x for g, x in self.terms.items()}
        )

    def convolve(self, other: GroupRingElement) -> GroupRingElement:
        self._check(other)
        mul = self.group.mul
        acc = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = mul(a, b)
                v = x * y
                acc[k] = acc[k] + v if k in acc else v
        return GroupRingElement._make(
            self.group, self.order, {g: c for g, c in acc.items() if c}
        )

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            return self.convolve(other)
        if isinstance(other, (Cyc, int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Cyc, int, Rational)):
            return self.scale(other)
        return NotImplemented

    def star(self) -> GroupRingElement:
        """The involution sum conj(f_g) delta_{g^-1}."""
        inv = self.group.inv
        return GroupRingElement._make(
            self.group, self.order, {inv(g): c.conj() for g, c in self.terms.items()}
        )

    def map_support(self, fn) -> GroupRingElement:
        """Push coefficients along a bijection of the group."""
        terms = {}
        for g, c in self.terms.items():
            k = fn(g)
            terms[k] = terms[k] + c if k in terms else c
        return GroupRingElement._make(
            self.group, self.order, {g: c for g, c in terms.items() if c}
        )

    def trivial_unit(self):
        """(c, g) if this is c * delta_g with c != 0, else None."""
        if len(self.terms) != 1:
            return None
        ((g, c),) = self.terms.items()
        return c, g

    def inverse(self) -> GroupRingElement:
        """Inverse of a trivial unit; anything else cannot be certified."""
        tu = self.trivial_unit()
        if tu is None:
            raise NotInvertibleError("cannot certify invertibility: not a trivial unit")
        c, g = tu
        return GroupRingElement._make(
            self.group, self.order, {self.group.inv(g): c.inverse()}
        )

    def embed(self, order: int) -> GroupRingElement:
        return GroupRingElement._make(
            self.group, order, {g: c.embed(order) for g, c in self.terms.items()}
        )

    def one_norm(self) -> OneNorm:
        return one_norm(self)

    # comparison

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (
            _same_group(self.group, other.group)
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        fmt = self.group.format
        parts = [f"({c})*d{fmt(g)}" for g, c in sorted(self.terms.items(), key=lambda t: repr(t[0]))]
        return " + ".join(parts)


def _as_scalar(c, order: int) -> Cyc:
    if isinstance(c, Cyc):
        if c.order != order:
            raise ValueError(f"scalar order mismatch: {c.order} vs {order}")
        return c
    return Cyc.rational(c, order)


@dataclass(frozen=True)
class OneNorm:
    """Exact data for the 1-norm sum |f_g|.

    ``squared_moduli`` holds |f_g|^2 exactly per term; ``exact`` is the norm
    when every modulus is rational; ``upper_bound`` is a certified decimal
    upper bound on the norm.
    """

    squared_moduli: tuple
    terms: int
    exact: Fraction | None
    upper_bound: Decimal


def _sqrt_fraction(r: Fraction) -> Fraction | None:
    a, b = isqrt(r.numerator), isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


def _ceil_sqrt_scaled(r: Fraction, digits: int) -> int:
    t = r * 10 ** (2 * digits)
    u = isqrt(ceil(t))
    while u * u < t:
        u += 1
    return u


def one_norm(f: GroupRingElement, digits: int = 12) -> OneNorm:
    squares, exact_parts, bound = [], [], 0
    for c in f.terms.values():
        s = c.abs2()
        squares.append(s)
        if s.is_rational():
            r = s.to_fraction()
            root = _sqrt_fraction(r)
            exact_parts.append(root)
            bound += _ceil_sqrt_scaled(r, digits)
        else:
            # |sum a_k zeta^k| <= sum |a_k|
            exact_parts.append(None)
            bound += ceil(sum(abs(a) for a in c.coeffs) * 10**digits)
    exact = None
    if all(p is not None for p in exact_parts):
        exact = sum(exact_parts, Fraction(0))
    return OneNorm(
        squared_moduli=tuple(squares),
        terms=len(squares),
        exact=exact,
        upper_bound=Decimal(bound).scaleb(-digits),
    )


def gr_add(f: GroupRingElement, g: GroupRingElement) -> GroupRingElement:
    return f + g


def gr_convolve(f: GroupRingElement, g: GroupRingElement) -> GroupRingElement:
    return f.convolve(g)


def gr_involute(f: GroupRingElement) -> GroupRingElement:
    return f.star()


def gr_one_norm(f: GroupRingElement) -> OneNorm:
    return one_norm(f)


def gr_is_trivial_unit(f: GroupRingElement):
    return f.trivial_unit()
