"""JSON formats for scalars, groups, factor systems and ring elements.

Scalar           {"order": q, "coeffs": [[num, den], ...]}          (phi(q) pairs)
Group            {"type": "free_abelian", "rank": n}
                 {"type": "cyclic", "modulus": m}
                 {"type": "extension", "factor_system": <factor system>}
                 {"type": "heisenberg_matrices"}
Factor system    {"kind": "trivial", "N": <group>, "H": <group>}
                 {"kind": "semidirect", "matrix_action": [[[..]], ...]}   (N = Z^r, H = Z^k)
                 {"kind": "central_bilinear", "matrix": [[..]]}          (N = Z, H = Z^m)
                 {"kind": "central_linear", "left": [..], "right": [..]} (N = Z, H = Z^m)
Crossed system   {"factor_system": <factor system>, "order": q}
Group-ring elt   {"group": <group>, "order": q, "terms": [{"elem": <elem>, "coeff": <scalar>}]}
Crossed elt      {"crossed_system": <crossed system>,
                  "terms": [{"h": <elem>, "coeff_ring_elem": <group-ring elt over N>}]}
Character        {"order": q, "exponents": [..]}
Cocycle          {"rank": m, "matrix": [[..]]}

Element syntax inside strings: Z^n "[1,-2]", Z/m "3 mod 5", extension
pairs "([1,0];[2])" (components in their own syntax, nesting allowed).
"""

from __future__ import annotations

from fractions import Fraction

from .cohomology import BilinearCocycle
from .crossed_product import CrossedProductElement
from .factor_systems import (
    CrossedSystem,
    FactorSystem,
    central_bilinear_factor_system,
    central_linear_factor_system,
    lift_to_crossed_system,
    semidirect_factor_system,
    trivial_factor_system,
)
from .fibers import Character, TwistedAlgebraElement
from .group_ring import GroupRingElement
from .groups import ExtensionGroup, FiniteCyclic, FreeAbelian, Group, HeisenbergMatrices
from .scalars import DEFAULT_ORDER, Cyc, totient


class FormatError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '<root>'}: {message}")
        self.path = path


def _get(d, key, path, kind=None):
    if not isinstance(d, dict):
        raise FormatError(path, f"expected an object, got {type(d).__name__}")
    if key not in d:
        raise FormatError(path, f"missing key {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise FormatError(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return v


def _int_list(v, path):
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise FormatError(path, "expected a list of integers")
    return v


def _int_matrix(v, path):
    if not isinstance(v, list) or not v:
        raise FormatError(path, "expected a nonempty list of integer rows")
    return [_int_list(row, f"{path}[{i}]") for i, row in enumerate(v)]


# scalars

def dump_scalar(c: Cyc) -> dict:
    return {"order": c.order, "coeffs": [[x.numerator, x.denominator] for x in c.coeffs]}


def load_scalar(d, path="") -> Cyc:
    order = _get(d, "order", path, int)
    coeffs = _get(d, "coeffs", path, list)
    if order < 1:
        raise FormatError(f"{path}.order", "must be positive")
    if len(coeffs) != totient(order):
        raise FormatError(f"{path}.coeffs", f"order {order} needs {totient(order)} coefficients")
    vals = []
    for i, pair in enumerate(coeffs):
        p = f"{path}.coeffs[{i}]"
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) for x in pair)):
            raise FormatError(p, "expected [numerator, denominator]")
        if pair[1] <= 0:
            raise FormatError(p, "denominator must be positive")
        vals.append(Fraction(pair[0], pair[1]))
    return Cyc(order, vals)


# groups and factor systems

def load_group(d, path="") -> Group:
    t = _get(d, "type", path, str)
    if t == "free_abelian":
        rank = _get(d, "rank", path, int)
        if rank < 0:
            raise FormatError(f"{path}.rank", "must be nonnegative")
        return FreeAbelian(rank)
    if t == "cyclic":
        m = _get(d, "modulus", path, int)
        if m < 1:
            raise FormatError(f"{path}.modulus", "must be positive")
        return FiniteCyclic(m)
    if t == "extension":
        return ExtensionGroup(load_factor_system(_get(d, "factor_system", path), f"{path}.factor_system"))
    if t == "heisenberg_matrices":
        return HeisenbergMatrices()
    raise FormatError(f"{path}.type", f"unknown group type {t!r}")


def load_factor_system(d, path="") -> FactorSystem:
    kind = _get(d, "kind", path, str)
    try:
        if kind == "trivial":
            return trivial_factor_system(
                load_group(_get(d, "N", path), f"{path}.N"),
                load_group(_get(d, "H", path), f"{path}.H"),
            )
        if kind == "semidirect":
            action = _get(d, "matrix_action", path, list)
            # a single matrix is accepted for H = Z
            if action and isinstance(action[0], list) and action[0] and isinstance(action[0][0], int):
                action = [action]
            mats = [_int_matrix(m, f"{path}.matrix_action[{i}]") for i, m in enumerate(action)]
            return semidirect_factor_system(mats)
        if kind == "central_bilinear":
            return central_bilinear_factor_system(_int_matrix(_get(d, "matrix", path), f"{path}.matrix"))
        if kind == "central_linear":
            return central_linear_factor_system(
                _int_list(_get(d, "left", path), f"{path}.left"),
                _int_list(_get(d, "right", path), f"{path}.right"),
            )
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(path, str(exc)) from None
    raise FormatError(f"{path}.kind", f"unknown factor system kind {kind!r}")


def crossed_system_descriptor(cs: CrossedSystem) -> dict:
    if cs.factor_system is None:
        raise ValueError("only lifted crossed systems have a textual form")
    return {"factor_system": cs.factor_system.descriptor(), "order": cs.order}


def load_crossed_system(d, path="") -> CrossedSystem:
    fs = load_factor_system(_get(d, "factor_system", path), f"{path}.factor_system")
    order = d.get("order", DEFAULT_ORDER)
    if not isinstance(order, int) or order < 1:
        raise FormatError(f"{path}.order", "must be a positive integer")
    return lift_to_crossed_system(fs, order)


def ring_descriptor(ring) -> dict:
    if isinstance(ring, CrossedSystem):
        return {"crossed_system": crossed_system_descriptor(ring)}
    return {"group": ring.descriptor()}


def load_ring(d, path=""):
    if isinstance(d, dict) and "crossed_system" in d:
        return load_crossed_system(d["crossed_system"], f"{path}.crossed_system")
    if isinstance(d, dict) and "group" in d:
        return load_group(d["group"], f"{path}.group")
    if isinstance(d, dict) and "kind" in d:
        return lift_to_crossed_system(load_factor_system(d, path))
    raise FormatError(path, "expected {'group': ...}, {'crossed_system': ...} or a factor system")


def dump_element_label(ring, x):
    if isinstance(ring, CrossedSystem):
        return {"n": ring.N.format(x[0]), "h": ring.H.format(x[1])}
    return ring.format(x)


def parse_element(G: Group, text, path=""):
    if not isinstance(text, str):
        raise FormatError(path, "group elements are written as strings")
    try:
        return G.parse(text)
    except ValueError as exc:
        raise FormatError(path, str(exc)) from None


# ring elements

def dump_group_ring(f: GroupRingElement) -> dict:
    G = f.group
    terms = sorted(
        ({"elem": G.format(g), "coeff": dump_scalar(c)} for g, c in f.terms.items()),
        key=lambda t: t["elem"],
    )
    return {"group": G.descriptor(), "order": f.order, "terms": terms}


def load_group_ring(d, path="", group: Group | None = None) -> GroupRingElement:
    G = group if group is not None else load_group(_get(d, "group", path), f"{path}.group")
    terms = _get(d, "terms", path, list)
    parsed = []
    for i, t in enumerate(terms):
        p = f"{path}.terms[{i}]"
        g = parse_element(G, _get(t, "elem", p), f"{p}.elem")
        parsed.append((g, load_scalar(_get(t, "coeff", p), f"{p}.coeff")))
    order = d.get("order")
    if order is None:
        order = parsed[0][1].order if parsed else DEFAULT_ORDER
    out = GroupRingElement.zero(G, order)
    for i, (g, c) in enumerate(parsed):
        if c.order != order:
            try:
                c = c.embed(order)
            except ValueError as exc:
                raise FormatError(f"{path}.terms[{i}].coeff", str(exc)) from None
        out = out + GroupRingElement.delta(G, g, c, order)
    return out


def dump_crossed(x: CrossedProductElement) -> dict:
    H = x.cs.H
    terms = sorted(
        ({"h": H.format(h), "coeff_ring_elem": dump_group_ring(f)} for h, f in x.terms.items()),
        key=lambda t: t["h"],
    )
    return {"crossed_system": crossed_system_descriptor(x.cs), "terms": terms}


def load_crossed(d, path="") -> CrossedProductElement:
    cs = load_crossed_system(_get(d, "crossed_system", path), f"{path}.crossed_system")
    out = CrossedProductElement.zero(cs)
    for i, t in enumerate(_get(d, "terms", path, list)):
        p = f"{path}.terms[{i}]"
        h = parse_element(cs.H, _get(t, "h", p), f"{p}.h")
        f = load_group_ring(_get(t, "coeff_ring_elem", p), f"{p}.coeff_ring_elem", group=cs.N)
        if f.order != cs.order:
            f = f.embed(cs.order)
        out = out + CrossedProductElement.homogeneous(cs, f, h)
    return out


def dump_character(chi: Character) -> dict:
    return chi.descriptor()


def load_character(d, path="") -> Character:
    order = _get(d, "order", path, int)
    if order < 1:
        raise FormatError(f"{path}.order", "must be positive")
    return Character(order, tuple(_int_list(_get(d, "exponents", path), f"{path}.exponents")))


def dump_twisted(y: TwistedAlgebraElement) -> dict:
    A = y.algebra
    terms = sorted(
        ({"h": A.H.format(h), "coeff": dump_scalar(c)} for h, c in y.terms.items()),
        key=lambda t: t["h"],
    )
    return {
        "factor_system": A.fs.descriptor(),
        "character": dump_character(A.chi),
        "order": A.order,
        "terms": terms,
    }


def load_cocycle(d, path="") -> BilinearCocycle:
    rank = _get(d, "rank", path, int)
    matrix = _int_matrix(_get(d, "matrix", path), f"{path}.matrix")
    if len(matrix) != rank or any(len(r) != rank for r in matrix):
        raise FormatError(f"{path}.matrix", f"expected a {rank}x{rank} matrix")
    return BilinearCocycle(matrix)


def dump_any(x):
    if isinstance(x, GroupRingElement):
        return dump_group_ring(x)
    if isinstance(x, CrossedProductElement):
        return dump_crossed(x)
    if isinstance(x, TwistedAlgebraElement):
        return dump_twisted(x)
    if isinstance(x, Cyc):
        return dump_scalar(x)
    if isinstance(x, Character):
        return dump_character(x)
    if isinstance(x, BilinearCocycle):
        return x.descriptor()
    raise TypeError(f"no serialization for {type(x).__name__}")


def load_element(d, path=""):
    """A group-ring or crossed-product element, by its top-level key."""
    if isinstance(d, dict) and "crossed_system" in d:
        return load_crossed(d, path)
    if isinstance(d, dict) and "group" in d:
        return load_group_ring(d, path)
    raise FormatError(path, "expected a group-ring element ('group') or crossed-product element ('crossed_system')")
