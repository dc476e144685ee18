"""Brute-force verification: exhaustive zero-divisor, unit and idempotent
searches over finite windows, plus cross-model checks for the Heisenberg
group.

A search enumerates every element with support inside ``support_window``,
at most ``max_support_size`` terms, and nonzero coefficients from
``coefficient_grid``.  Products of basis monomials come from the algebra
engine once per window pair; coefficient arithmetic is then vectorized
over all coefficient assignments in exact integer form (each grid scalar is
scaled to an integer vector in the power basis of Q(zeta_q)).  Every
witness is recomputed with the engine before it is reported.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from math import comb, lcm

import numpy as np

from .crossed_product import CrossedProductElement, cp_is_homogeneous
from .factor_systems import CrossedSystem
from .group_ring import GroupRingElement
from .groups import Group, Pair, heisenberg_central, heisenberg_semidirect
from .groups import central_to_matrix, semidirect_to_matrix
from .scalars import DEFAULT_ORDER, Cyc

GRID_DEFAULT = "default"
GRID_GAUSSIAN = "gaussian"
GRID_ACCEPTANCE = "gaussian_halves"


def grid_preset(name: str) -> tuple[Cyc, ...]:
    half = Cyc.rational
    presets = {
        GRID_DEFAULT: [half(-1), half(-1) / 2, half(0), half(1) / 2, half(1)],
        GRID_GAUSSIAN: [Cyc.gaussian(0), Cyc.gaussian(1), Cyc.gaussian(-1),
                        Cyc.gaussian(0, 1), Cyc.gaussian(0, -1)],
        GRID_ACCEPTANCE: [Cyc.gaussian(0), Cyc.gaussian(1), Cyc.gaussian(-1),
                          Cyc.gaussian(0, 1), Cyc.gaussian(0, -1),
                          Cyc.gaussian("1/2"), Cyc.gaussian("-1/2")],
        "signs": [half(-1), half(0), half(1)],
    }
    if name not in presets:
        raise KeyError(f"unknown grid preset {name!r}; known: {sorted(presets)}")
    return tuple(presets[name])


@dataclass(frozen=True)
class SearchSpace:
    """``ring`` is a Group (search in C[G]) or a CrossedSystem, in which case
    window entries are pairs (n, h) standing for delta_n d_h."""

    ring: object
    support_window: tuple
    coefficient_grid: tuple
    max_support_size: int

    def __post_init__(self):
        object.__setattr__(self, "support_window", tuple(self.support_window))
        object.__setattr__(self, "coefficient_grid", tuple(self.coefficient_grid))
        if len(set(self.support_window)) != len(self.support_window):
            raise ValueError("support window has repeated elements")
        if self.max_support_size < 0:
            raise ValueError("max_support_size must be nonnegative")

    @property
    def is_crossed(self) -> bool:
        return isinstance(self.ring, CrossedSystem)

    @property
    def order(self) -> int:
        if self.is_crossed:
            return self.ring.order
        if not self.coefficient_grid:
            return DEFAULT_ORDER
        return reduce(lcm, (c.order for c in self.coefficient_grid))

    @property
    def nonzero_grid(self) -> tuple:
        """Distinct nonzero grid values, embedded at the space's order."""
        seen, out = set(), []
        order = self.order
        for c in self.coefficient_grid:
            c = c.embed(order)
            if c and c not in seen:
                seen.add(c)
                out.append(c)
        return tuple(out)

    def candidate_count(self) -> int:
        """sum over s <= max of C(|window|, s) * |nonzero grid|^s (s = 0 is
        the zero element)."""
        w, g = len(self.support_window), len(self.nonzero_grid)
        top = min(self.max_support_size, w)
        return sum(comb(w, s) * g**s for s in range(top + 1))

    def monomial(self, label, coeff=1):
        if self.is_crossed:
            n, h = label
            return CrossedProductElement.monomial(self.ring, n, h, coeff)
        return GroupRingElement.delta(self.ring, label, coeff, self.order)

    def zero(self):
        if self.is_crossed:
            return CrossedProductElement.zero(self.ring)
        return GroupRingElement.zero(self.ring, self.order)

    def one(self):
        if self.is_crossed:
            return CrossedProductElement.one(self.ring)
        return GroupRingElement.one(self.ring, self.order)

    def identity_label(self):
        if self.is_crossed:
            return (self.ring.N.identity, self.ring.H.identity)
        return self.ring.identity

    def element(self, support, coeffs):
        x = self.zero()
        for idx, a in zip(support, coeffs):
            x = x + self.monomial(self.support_window[idx], self.nonzero_grid[a])
        return x

    def descriptor(self) -> dict:
        from .formats import dump_element_label, dump_scalar, ring_descriptor

        return {
            "ring": ring_descriptor(self.ring),
            "support_window": [dump_element_label(self.ring, x) for x in self.support_window],
            "coefficient_grid": [dump_scalar(c) for c in self.coefficient_grid],
            "max_support_size": self.max_support_size,
        }


@dataclass
class SearchReport:
    kind: str
    space: dict
    candidate_count: int
    expected_count: int
    pairs_checked: int
    witnesses: list
    verdict: str
    violations: bool
    elapsed: float = 0.0
    found: list = field(default_factory=list, repr=False)

    @property
    def complete(self) -> bool:
        return self.candidate_count == self.expected_count

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "kind": self.kind,
            "space": self.space,
            "candidate_count": self.candidate_count,
            "expected_count": self.expected_count,
            "pairs_checked": self.pairs_checked,
            "witnesses": self.witnesses,
            "verdict": self.verdict,
            "violations": self.violations,
        }
        if timing:
            d["elapsed"] = round(self.elapsed, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=1)


class _Tables:
    """Monomial product table and integer-encoded scalar products."""

    def __init__(self, space: SearchSpace):
        self.space = space
        window = space.support_window
        self.w = len(window)
        grid = space.nonzero_grid
        self.g = len(grid)
        self.labels = {lab: i for i, lab in enumerate(window)}
        self.prod = [[self._product_index(a, b) for b in window] for a in window]
        e = space.identity_label()
        self.e_idx = self.labels.get(e, -1)

        den = reduce(lcm, (c.denominator for v in grid for c in v.coeffs), 1)
        phi = grid[0].phi if grid else 1
        enc = [[int(c * den) for c in v.coeffs] for v in grid]
        P = [[[int(c * den * den) for c in (u * v).coeffs] for v in grid] for u in grid]
        big = max((abs(x) for row in P for vec in row for x in vec), default=0)
        dtype = np.int64 if big * max(1, space.max_support_size) ** 2 < 2**62 else object
        self.P = np.array(P, dtype=dtype).reshape(self.g, self.g, phi)
        self.E2 = np.array([[x * den for x in v] for v in enc], dtype=dtype).reshape(self.g, phi)
        one = [0] * phi
        one[0] = den * den
        self.one = np.array(one, dtype=dtype)
        self.phi = phi

    def _product_index(self, a, b):
        sp = self.space
        x = sp.monomial(a) * sp.monomial(b)
        if len(x.terms) != 1:
            raise ValueError("basis products must be monomials")
        if sp.is_crossed:
            ((h, f),) = x.terms.items()
            ((n, c),) = f.terms.items()
            lab = (n, h)
        else:
            ((lab, c),) = x.terms.items()
        if c != 1:
            raise ValueError("basis products must have coefficient 1")
        if lab not in self.labels:
            self.labels[lab] = len(self.labels)
        return self.labels[lab]

    def contributions(self, Sf, Sg, reverse=False):
        outs: dict = {}
        for a, i in enumerate(Sf):
            for b, j in enumerate(Sg):
                k = self.prod[j][i] if reverse else self.prod[i][j]
                outs.setdefault(k, []).append((a, b))
        return outs

    def products(self, A, B, pairs):
        acc = None
        for a, b in pairs:
            t = self.P[A[:, a][:, None], B[:, b][None, :]]
            acc = t if acc is None else acc + t
        return acc


def _supports(w: int, max_size: int):
    return [c for s in range(1, min(max_size, w) + 1) for c in itertools.combinations(range(w), s)]


def _combos(g: int, s: int):
    return np.array(list(itertools.product(range(g), repeat=s)), dtype=np.intp).reshape(-1, s)


def _partition(supports, workers):
    # chunk by leading support element
    groups: dict = {}
    for S in supports:
        groups.setdefault(S[0], []).append(S)
    return [groups[k] for k in sorted(groups)]


def _run_pairs(space, tables, predicate, workers):
    supports = _supports(tables.w, space.max_support_size)
    combos = {s: _combos(tables.g, s) for s in range(1, space.max_support_size + 1)}

    def chunk(Sfs):
        hits, checked = [], 0
        for Sf in Sfs:
            A = combos[len(Sf)]
            for Sg in supports:
                B = combos[len(Sg)]
                checked += len(A) * len(B)
                mask = predicate(tables, Sf, Sg, A, B)
                if mask is not None and mask.any():
                    for fa, gb in np.argwhere(mask):
                        hits.append((Sf, tuple(A[fa]), Sg, tuple(B[gb])))
        return hits, checked

    parts = _partition(supports, workers)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(chunk, parts))
    else:
        results = [chunk(p) for p in parts]
    hits = [h for r in results for h in r[0]]
    checked = sum(r[1] for r in results)
    hits.sort()
    return hits, checked


def _zero_product_mask(t, Sf, Sg, A, B):
    mask = None
    for pairs in t.contributions(Sf, Sg).values():
        z = ~t.products(A, B, pairs).any(axis=2)
        mask = z if mask is None else mask & z
        if not mask.any():
            break
    return mask


def _one_mask(t, Sf, Sg, A, B, reverse):
    outs = t.contributions(Sf, Sg, reverse)
    if t.e_idx not in outs:
        return None
    mask = None
    for k, pairs in outs.items():
        acc = t.products(A, B, pairs)
        if k == t.e_idx:
            z = (acc == t.one).all(axis=2)
        else:
            z = ~acc.any(axis=2)
        mask = z if mask is None else mask & z
        if not mask.any():
            break
    return mask


def _unit_mask(t, Sf, Sg, A, B):
    left = _one_mask(t, Sf, Sg, A, B, reverse=False)
    if left is None or not left.any():
        return None
    right = _one_mask(t, Sf, Sg, A, B, reverse=True)
    if right is None:
        return None
    return left & right


def _dump(space, x):
    from .formats import dump_any

    return dump_any(x)


def _finish(kind, space, t, pairs_checked, witnesses, found, verdict, violations, start):
    count = 1 + sum(len(_combos(t.g, len(S))) for S in _supports(t.w, space.max_support_size))
    witnesses = sorted(witnesses, key=lambda w: json.dumps(w, sort_keys=True))
    return SearchReport(
        kind=kind,
        space=space.descriptor(),
        candidate_count=count,
        expected_count=space.candidate_count(),
        pairs_checked=pairs_checked,
        witnesses=witnesses,
        verdict=verdict,
        violations=violations,
        elapsed=time.perf_counter() - start,
        found=found,
    )


def zero_divisor_search(space: SearchSpace, workers: int = 1) -> SearchReport:
    """All ordered pairs (f, g) of nonzero candidates with f g = 0."""
    start = time.perf_counter()
    t = _Tables(space)
    hits, checked = _run_pairs(space, t, _zero_product_mask, workers) if t.g else ([], 0)
    witnesses, found = [], []
    for Sf, ca, Sg, cb in hits:
        f, g = space.element(Sf, ca), space.element(Sg, cb)
        if f * g != space.zero():
            raise AssertionError(f"zero-divisor witness failed recomputation: {f!r}, {g!r}")
        found.append((f, g))
        witnesses.append({"f": _dump(space, f), "g": _dump(space, g), "product_recomputed": "0"})
    verdict = "zero divisors found" if hits else "no zero divisors in window"
    return _finish("zero_divisors", space, t, checked, witnesses, found, verdict, bool(hits), start)


def _classify_unit(space, f) -> str:
    if space.is_crossed:
        return "homogeneous" if cp_is_homogeneous(f) is not None else "non-homogeneous"
    return "trivial" if f.trivial_unit() is not None else "non-trivial"


def unit_search(space: SearchSpace, workers: int = 1) -> SearchReport:
    """All pairs (f, g) in the space with f g = g f = 1, each f classified."""
    start = time.perf_counter()
    t = _Tables(space)
    hits, checked = _run_pairs(space, t, _unit_mask, workers) if t.g else ([], 0)
    witnesses, found, bad = [], [], 0
    one = space.one()
    for Sf, ca, Sg, cb in hits:
        f, g = space.element(Sf, ca), space.element(Sg, cb)
        if f * g != one or g * f != one:
            raise AssertionError(f"unit witness failed recomputation: {f!r}, {g!r}")
        cls = _classify_unit(space, f)
        bad += cls.startswith("non")
        found.append((f, g, cls))
        witnesses.append({"unit": _dump(space, f), "inverse": _dump(space, g), "class": cls})
    good = "homogeneous" if space.is_crossed else "trivial"
    verdict = f"non-{good} units found" if bad else f"all {len(hits)} units {good}"
    return _finish("units", space, t, checked, witnesses, found, verdict, bool(bad), start)


def idempotent_search(space: SearchSpace, workers: int = 1) -> SearchReport:
    """All candidates f with f f = f; non-trivial ones (not 0, not 1) flagged."""
    start = time.perf_counter()
    t = _Tables(space)
    supports = _supports(t.w, space.max_support_size) if t.g else []
    hits, checked = [((), ())], 1  # the zero element
    for S in supports:
        A = _combos(t.g, len(S))
        checked += len(A)
        outs = t.contributions(S, S)
        mask = np.ones(len(A), dtype=bool)
        own = {i: a for a, i in enumerate(S)}  # window index -> position in S
        for k in sorted(set(outs) | set(own)):
            if k in outs:
                acc = sum(t.P[A[:, a], A[:, b]] for a, b in outs[k])
            else:
                acc = np.zeros((len(A), t.phi), dtype=t.P.dtype)
            target = t.E2[A[:, own[k]]] if k in own else np.zeros_like(acc)
            mask &= (acc == target).all(axis=1)
            if not mask.any():
                break
        for fa in np.flatnonzero(mask):
            hits.append((S, tuple(A[fa])))
    witnesses, found, bad = [], [], 0
    one = space.one()
    for S, ca in sorted(hits):
        f = space.element(S, ca)
        if f * f != f:
            raise AssertionError(f"idempotent witness failed recomputation: {f!r}")
        trivial = (not f) or f == one
        bad += not trivial
        found.append((f, trivial))
        witnesses.append({"idempotent": _dump(space, f), "trivial": trivial})
    verdict = "non-trivial idempotents found" if bad else f"only trivial idempotents ({len(hits)})"
    return _finish("idempotents", space, t, checked, witnesses, found, verdict, bool(bad), start)


# cross-model checks for the Heisenberg group

@dataclass
class OracleReport:
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _matrix(a, b, c):
    return np.array([[1, a, c], [0, 1, b], [0, 0, 1]], dtype=np.int64)


def heisenberg_word_models():
    """(group, generator a, generator b, map to (a, b, c) matrix entries)."""
    G1, G2 = heisenberg_semidirect(), heisenberg_central()
    return [
        (G1, Pair((1, 0), (0,)), Pair((0, 0), (1,)), semidirect_to_matrix),
        (G2, Pair((0,), (1, 0)), Pair((0,), (0, 1)), central_to_matrix),
    ]


def matrix_oracle_check(count: int, seed: int, max_len: int = 12) -> OracleReport:
    """Multiply random words in a, b and their inverses abstractly in both
    Heisenberg presets and as 3x3 integer matrices; report disagreements."""
    rng = random.Random(seed)
    A, B = _matrix(1, 0, 0), _matrix(0, 1, 0)
    Ainv, Binv = _matrix(-1, 0, 0), _matrix(0, -1, 0)
    mats = {"a": A, "A": Ainv, "b": B, "B": Binv}
    models = heisenberg_word_models()
    rep = OracleReport()
    for _ in range(count):
        word = "".join(rng.choice("aAbB") for _ in range(rng.randint(0, max_len)))
        M = np.eye(3, dtype=np.int64)
        for ch in word:
            M = M @ mats[ch]
        for G, a, b, to_matrix in models:
            gens = {"a": a, "A": G.inv(a), "b": b, "B": G.inv(b)}
            x = G.identity
            for ch in word:
                x = G.mul(x, gens[ch])
            ea, eb, ec = to_matrix(x)
            rep.checked += 1
            if not np.array_equal(_matrix(ea, eb, ec), M):
                rep.mismatches.append((str(G), word, x, M.tolist()))
    return rep


@dataclass
class IsoReport:
    checked_pairs: int = 0
    hom_failures: list = field(default_factory=list)
    injectivity_failures: list = field(default_factory=list)
    decomposition_failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.hom_failures or self.injectivity_failures or self.decomposition_failures)


def grp_iso_check(G1: Group, G2: Group, gen_map: dict, decompose, window) -> IsoReport:
    """Check the map induced by generator images on a finite window.

    ``gen_map`` sends a generator name to (element of G1, image in G2);
    ``decompose(x)`` writes x in G1 as [(name, exponent), ...].  The map is
    x -> prod image^exponent.  Checks: decompositions reproduce x, products
    are preserved on all window pairs, and the map is injective on the window.
    """
    for name, (g1, g2) in gen_map.items():
        if not G1.contains(g1):
            raise ValueError(f"generator {name} = {g1!r} is not in {G1}")
        if not G2.contains(g2):
            raise ValueError(f"image of generator {name} = {g2!r} is not in {G2}")

    def evaluate(G, word, side):
        x = G.identity
        for name, k in word:
            x = G.mul(x, G.power(gen_map[name][side], k))
        return x

    def phi(x):
        return evaluate(G2, decompose(x), 1)

    window = list(window)
    rep = IsoReport()
    images = {}
    for x in window:
        if evaluate(G1, decompose(x), 0) != x:
            rep.decomposition_failures.append(x)
        y = phi(x)
        if y in images:
            rep.injectivity_failures.append((images[y], x))
        images[y] = x
    for x, y in itertools.product(window, repeat=2):
        rep.checked_pairs += 1
        lhs, rhs = phi(G1.mul(x, y)), G2.mul(phi(x), phi(y))
        if lhs != rhs:
            rep.hom_failures.append((x, y, lhs, rhs))
    return rep


def semidirect_generators() -> dict:
    """a, b and c = aba^-1b^-1 of the semidirect preset, mapped onto the
    central preset."""
    return {
        "a": (Pair((1, 0), (0,)), Pair((0,), (1, 0))),
        "b": (Pair((0, 0), (1,)), Pair((0,), (0, 1))),
        "c": (Pair((0, -1), (0,)), Pair((1,), (0, 0))),
    }


def semidirect_decompose(x) -> list:
    """((m, n); k) = a^m c^-n b^k."""
    (m, n), (k,) = x
    return [("a", m), ("c", -n), ("b", k)]


def free_abelian_decompose(x) -> list:
    return [(f"e{i}", v) for i, v in enumerate(x)]
