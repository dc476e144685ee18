"""Groups with canonical-form elements.

Elements are plain hashable values and carry no reference to their group:

* ``FreeAbelian(n)``: tuples of ``n`` ints, e.g. ``(1, -2)``.
* ``FiniteCyclic(m)``: an int residue in ``range(m)``.
* ``ExtensionGroup(fs)``: a :class:`Pair` ``(n, h)`` of an N-element and an
  H-element, multiplied through the factor system ``fs``.

Methods on a group (``G.mul`` etc.) do no membership checking, since they sit
on the convolution hot path; the module-level ``grp_mul`` / ``grp_inv`` check.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Any, NamedTuple


class Pair(NamedTuple):
    n: Any
    h: Any


class Group:
    torsion_free: bool = True

    @property
    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def power(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        result = self.identity
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def ball(self, radius: int) -> list:
        raise NotImplementedError

    def random_element(self, rng, radius: int):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def check(self, a):
        if not self.contains(a):
            raise ValueError(f"{a!r} is not an element of {self}")
        return a


@dataclass(frozen=True)
class FreeAbelian(Group):
    rank: int

    torsion_free = True

    @property
    def identity(self):
        return (0,) * self.rank

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def power(self, a, k):
        return tuple(k * x for x in a)

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == self.rank
            and all(type(x) is int for x in a)
        )

    def ball(self, radius):
        """Elements of word length (l1 norm) at most ``radius``, sorted."""
        rng = range(-radius, radius + 1)
        return sorted(
            v for v in itertools.product(rng, repeat=self.rank)
            if sum(map(abs, v)) <= radius
        )

    def random_element(self, rng, radius):
        return tuple(rng.randint(-radius, radius) for _ in range(self.rank))

    def generators(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def format(self, a):
        return "[" + ",".join(str(x) for x in a) + "]"

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"expected [..] for a Z^{self.rank} element, got {text!r}")
        body = text[1:-1].strip()
        vals = tuple(int(x) for x in body.split(",")) if body else ()
        if len(vals) != self.rank:
            raise ValueError(f"expected {self.rank} entries, got {len(vals)} in {text!r}")
        return vals

    def descriptor(self):
        return {"type": "free_abelian", "rank": self.rank}

    def __str__(self):
        return f"Z^{self.rank}"


@dataclass(frozen=True)
class FiniteCyclic(Group):
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")

    @property
    def torsion_free(self):
        return self.modulus == 1

    @property
    def identity(self):
        return 0

    def mul(self, a, b):
        return (a + b) % self.modulus

    def inv(self, a):
        return (-a) % self.modulus

    def contains(self, a):
        return type(a) is int and 0 <= a < self.modulus

    def ball(self, radius):
        return list(range(self.modulus))

    def random_element(self, rng, radius):
        return rng.randrange(self.modulus)

    def format(self, a):
        return f"{a} mod {self.modulus}"

    _SYNTAX = re.compile(r"^\s*(-?\d+)\s+mod\s+(\d+)\s*$")

    def parse(self, text):
        m = self._SYNTAX.match(text)
        if not m:
            raise ValueError(f"expected 'r mod m', got {text!r}")
        if int(m.group(2)) != self.modulus:
            raise ValueError(f"modulus {m.group(2)} does not match Z/{self.modulus}")
        return int(m.group(1)) % self.modulus

    def descriptor(self):
        return {"type": "cyclic", "modulus": self.modulus}

    def __str__(self):
        return f"Z/{self.modulus}"


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


class ExtensionGroup(Group):
    """N x_(S, omega) H: pairs (n, h) with the factor-system multiplication."""

    def __init__(self, fs):
        self.fs = fs
        self.N = fs.N
        self.H = fs.H

    def __eq__(self, other):
        return isinstance(other, ExtensionGroup) and self.fs == other.fs

    def __hash__(self):
        return hash(("ext", self.fs))

    @property
    def torsion_free(self):
        # sufficient condition only
        return self.N.torsion_free and self.H.torsion_free

    @property
    def identity(self):
        return Pair(self.N.identity, self.H.identity)

    def mul(self, a, b):
        N, fs = self.N, self.fs
        n = N.mul(N.mul(a[0], fs.S(a[1])(b[0])), fs.omega(a[1], b[1]))
        return Pair(n, self.H.mul(a[1], b[1]))

    def inv(self, a):
        N, H, fs = self.N, self.H, self.fs
        hinv = H.inv(a[1])
        n = N.mul(N.inv(fs.omega(hinv, a[1])), fs.S(hinv)(N.inv(a[0])))
        return Pair(n, hinv)

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and self.N.contains(a[0])
            and self.H.contains(a[1])
        )

    def ball(self, radius):
        return [Pair(n, h) for h in self.H.ball(radius) for n in self.N.ball(radius)]

    def random_element(self, rng, radius):
        return Pair(self.N.random_element(rng, radius), self.H.random_element(rng, radius))

    def format(self, a):
        return f"({self.N.format(a[0])};{self.H.format(a[1])})"

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"expected (n;h) for an extension element, got {text!r}")
        parts = _split_top(text[1:-1], ";")
        if len(parts) != 2:
            raise ValueError(f"expected exactly one top-level ';' in {text!r}")
        return Pair(self.N.parse(parts[0]), self.H.parse(parts[1]))

    def descriptor(self):
        return {"type": "extension", "factor_system": self.fs.descriptor()}

    def __str__(self):
        return f"{self.N} x_{self.fs.name} {self.H}"

    __repr__ = __str__


class HeisenbergMatrices(Group):
    """Integer upper unitriangular 3x3 matrices [[1,a,c],[0,1,b],[0,0,1]],
    stored as (a, b, c)."""

    def __eq__(self, other):
        return isinstance(other, HeisenbergMatrices)

    def __hash__(self):
        return hash("H3-matrices")

    @property
    def identity(self):
        return (0, 0, 0)

    def mul(self, x, y):
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])

    def inv(self, x):
        return (-x[0], -x[1], x[0] * x[1] - x[2])

    def contains(self, x):
        return isinstance(x, tuple) and len(x) == 3 and all(type(v) is int for v in x)

    def ball(self, radius):
        return FreeAbelian(3).ball(radius)

    def random_element(self, rng, radius):
        return FreeAbelian(3).random_element(rng, radius)

    def format(self, x):
        return "[" + ",".join(map(str, x)) + "]"

    def parse(self, text):
        return FreeAbelian(3).parse(text)

    def descriptor(self):
        return {"type": "heisenberg_matrices"}

    def __str__(self):
        return "H3(matrices)"


def grp_mul(G: Group, a, b):
    return G.mul(G.check(a), G.check(b))


def grp_inv(G: Group, a):
    return G.inv(G.check(a))


def commutator(G: Group, a, b):
    return G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))


# The two realizations of the discrete Heisenberg group.
HEISENBERG_ACTION = ((1, 0), (1, 1))  # S(k).(m, n) = (m, k*m + n)
HEISENBERG_COCYCLE = ((0, 1), (0, 0))  # beta((k, k'), (l, l')) = k * l'


def heisenberg_semidirect() -> ExtensionGroup:
    """Z^2 semidirect Z with S(k).(m, n) = (m, km + n)."""
    from .factor_systems import semidirect_factor_system

    fs = semidirect_factor_system([HEISENBERG_ACTION], name="heisenberg_semidirect")
    return ExtensionGroup(fs)


def heisenberg_central() -> ExtensionGroup:
    """Central extension of Z^2 by Z with cocycle beta(x, y) = x1 * y2."""
    from .factor_systems import central_bilinear_factor_system

    fs = central_bilinear_factor_system(HEISENBERG_COCYCLE, name="heisenberg_central")
    return ExtensionGroup(fs)


# Matrix correspondences, (a, b, c) as in HeisenbergMatrices.

def semidirect_to_matrix(x) -> tuple[int, int, int]:
    (m, n), (k,) = x
    return (m, k, m * k - n)


def central_to_matrix(x) -> tuple[int, int, int]:
    (z,), (k, l) = x
    return (k, l, z)
