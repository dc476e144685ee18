"""Exact scalars: elements of the cyclotomic field Q(zeta_q).

A value is stored as an integer coefficient vector over a common positive
denominator, in the power basis 1, zeta, ..., zeta^(phi(q)-1) reduced modulo
the q-th cyclotomic polynomial.  Order 4 gives the Gaussian rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from numbers import Rational

DEFAULT_ORDER = 4


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _mobius(n: int) -> int:
    sign, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    if n > 1:
        sign = -sign
    return sign


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(q: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_q, lowest degree first."""
    if q < 1:
        raise ValueError(f"cyclotomic order must be positive, got {q}")
    poly = [-1] + [0] * (q - 1) + [1]
    for d in range(1, q):
        if q % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(q: int) -> tuple[tuple[int, ...], ...]:
    # row k = reduction of x^k mod Phi_q, for k up to max(q, 2*phi - 1)
    phi = totient(q)
    cyc = cyclotomic_polynomial(q)
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(max(q, 2 * phi - 1)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * cyc[i] for i, c in enumerate(cur)]
    return tuple(rows)


@lru_cache(maxsize=None)
def _traces(q: int) -> tuple[int, ...]:
    # Tr(zeta_q^k) over Q is the Ramanujan sum c_q(k)
    out = []
    for k in range(totient(q)):
        g = gcd(q, k)
        m = q // g
        out.append(_mobius(m) * totient(q) // totient(m))
    return tuple(out)


class Cyc:
    """An exact element of Q(zeta_order).

    Instances are immutable.  Binary arithmetic requires equal orders; use
    :meth:`embed` to move values into a common field first.  Plain ints and
    Fractions are accepted as operands and promoted to the other operand's
    order.
    """

    __slots__ = ("order", "_nums", "_den", "_hash")

    def __init__(self, order: int, coeffs=None):
        phi = totient(order)
        if coeffs is None:
            coeffs = [0] * phi
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != phi:
            raise ValueError(
                f"order {order} needs {phi} coefficients, got {len(coeffs)}"
            )
        den = reduce(lcm, (c.denominator for c in coeffs), 1)
        nums = tuple(int(c * den) for c in coeffs)
        self._set(order, nums, den)

    def _set(self, order, nums, den):
        g = reduce(gcd, nums, den)
        if g != 1:
            nums = tuple(n // g for n in nums)
            den //= g
        self.order = order
        self._nums = nums
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, order: int, nums, den: int) -> Cyc:
        obj = object.__new__(cls)
        if den < 0:
            nums, den = tuple(-n for n in nums), -den
        obj._set(order, tuple(nums), den)
        return obj

    # constructors

    @classmethod
    def rational(cls, value, order: int = DEFAULT_ORDER) -> Cyc:
        value = Fraction(value)
        nums = (value.numerator,) + (0,) * (totient(order) - 1)
        return cls._raw(order, nums, value.denominator)

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> Cyc:
        return cls._raw(order, _power_table(order)[power % order], 1)

    @classmethod
    def gaussian(cls, re, im=0) -> Cyc:
        """re + im*i in Q(i) (order 4)."""
        return cls(4, [re, im])

    # accessors

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._nums)

    @property
    def phi(self) -> int:
        return len(self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._nums[0], self._den)

    def trace(self) -> Fraction:
        """Field trace down to Q."""
        tr = _traces(self.order)
        return Fraction(sum(n * t for n, t in zip(self._nums, tr)), self._den)

    # arithmetic

    def _coerce(self, other) -> Cyc:
        if isinstance(other, Cyc):
            if other.order != self.order:
                raise ValueError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return Cyc.rational(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        return Cyc._raw(
            self.order,
            tuple(a * d2 + b * d1 for a, b in zip(self._nums, other._nums)),
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self) -> Cyc:
        return Cyc._raw(self.order, tuple(-n for n in self._nums), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._nums, other._nums
        phi = len(a)
        if phi == 1:
            return Cyc._raw(self.order, (a[0] * b[0],), self._den * other._den)
        raw = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    raw[i + j] += x * y
        table = _power_table(self.order)
        out = list(raw[:phi])
        for k in range(phi, 2 * phi - 1):
            c = raw[k]
            if c:
                row = table[k]
                for i in range(phi):
                    out[i] += c * row[i]
        return Cyc._raw(self.order, tuple(out), self._den * other._den)

    __rmul__ = __mul__

    def conj(self) -> Cyc:
        """Complex conjugation, zeta -> zeta^-1."""
        q = self.order
        if self.phi == 1:
            return self
        table = _power_table(q)
        out = [0] * self.phi
        for k, c in enumerate(self._nums):
            if c:
                row = table[(-k) % q]
                for i in range(self.phi):
                    out[i] += c * row[i]
        return Cyc._raw(q, tuple(out), self._den)

    def inverse(self) -> Cyc:
        if self.is_zero():
            raise ZeroDivisionError("not invertible: zero scalar")
        if self.phi == 1:
            return Cyc._raw(self.order, (self._den,), self._nums[0])
        s = _poly_inverse_mod(list(self.coeffs), list(cyclotomic_polynomial(self.order)))
        return Cyc(self.order, s)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int) -> Cyc:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Cyc.rational(1, self.order), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def abs2(self) -> Cyc:
        """|z|^2 as an element of the same field (real, possibly irrational)."""
        return self * self.conj()

    def embed(self, order: int) -> Cyc:
        """Image of this value in Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into {order}")
        step = order // self.order
        table = _power_table(order)
        phi = totient(order)
        out = [0] * phi
        for k, c in enumerate(self._nums):
            if c:
                row = table[(k * step) % order]
                for i in range(phi):
                    out[i] += c * row[i]
        return Cyc._raw(order, tuple(out), self._den)

    # comparison

    def __eq__(self, other):
        if isinstance(other, Cyc):
            if other.order != self.order:
                m = lcm(self.order, other.order)
                return self.embed(m) == other.embed(m)
            return self._den == other._den and self._nums == other._nums
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self._nums[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._nums[0], self._den))
            else:
                # normalized traces are invariant under field embeddings
                phi = self.phi
                self._hash = hash(
                    (self.trace() / phi, self.abs2().trace() / phi)
                )
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyc({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            base = "i" if self.order == 4 else f"z{self.order}" + (f"^{k}" if k > 1 else "")
            if c == 1:
                parts.append(base)
            elif c == -1:
                parts.append("-" + base)
            else:
                parts.append(f"{c}*{base}")
        if not parts:
            return "0"
        return "+".join(parts).replace("+-", "-")


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a, m):
    """s with s*a = 1 mod m, by the extended Euclidean algorithm over Q[x]."""
    r0, r1 = [Fraction(c) for c in m], _poly_trim([Fraction(c) for c in a])
    s0, s1 = [], [Fraction(1)]
    while r1:
        quot, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1))
    # r0 is the gcd; Phi_q is irreducible so it is a nonzero constant
    if len(r0) != 1:
        raise ZeroDivisionError("not invertible")
    inv = [c / r0[0] for c in s0]
    _, inv = _poly_divmod(inv, [Fraction(c) for c in m])
    phi = len(m) - 1
    return inv + [Fraction(0)] * (phi - len(inv))


def common_order(*orders: int) -> int:
    return reduce(lcm, orders, 1)


def cyc_add(a: Cyc, b: Cyc) -> Cyc:
    return a + b


def cyc_mul(a: Cyc, b: Cyc) -> Cyc:
    return a * b


def cyc_conj(a: Cyc) -> Cyc:
    return a.conj()


def cyc_inverse(a: Cyc) -> Cyc:
    return a.inverse()
