"""Command-line front end.

Every command writes one JSON report (stdout or ``--out``) carrying the
tool version and an echo of the configuration.  Exit status: 0 verified,
1 violations found, 2 input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cohomology import is_cohomologous
from .crossed_product import (
    CrossedProductElement,
    cp_idempotent_relations,
    cp_invert_homogeneous,
    cp_is_homogeneous,
    cp_phi,
)
from .factor_systems import CrossedSystem, lift_to_crossed_system, validate_factor_system
from .fibers import evaluate_fiber, fiber_idempotent_scan
from .formats import (
    FormatError,
    dump_any,
    dump_element_label,
    load_character,
    load_cocycle,
    load_element,
    load_factor_system,
    load_ring,
    load_scalar,
)
from .group_ring import GroupRingElement, NotInvertibleError
from .groups import ExtensionGroup
from .oracles import SearchSpace, grid_preset, idempotent_search, unit_search, zero_divisor_search

DEFAULT_SEED = 42
EXIT_OK, EXIT_VIOLATIONS, EXIT_INPUT = 0, 1, 2
MAX_LISTED_VIOLATIONS = 50


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _load(path: str, loader):
    data = _read_json(path)
    try:
        return loader(data)
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _grid(spec: str):
    try:
        return grid_preset(spec)
    except KeyError:
        pass
    if not Path(spec).exists():
        raise InputError(f"--grid: {spec!r} is neither a preset nor a file")

    def loader(data):
        if not isinstance(data, list):
            raise FormatError("", "a grid file holds a list of scalars")
        return tuple(load_scalar(d, f"[{i}]") for i, d in enumerate(data))

    return _load(spec, loader)


def _orders(text: str):
    try:
        orders = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--orders: expected comma-separated integers, got {text!r}") from None
    if not orders or any(q < 1 for q in orders):
        raise InputError("--orders: need at least one positive order")
    return orders


# commands; each returns (status, result dict)

def cmd_validate_fs(args):
    fs = _load(args.input, load_factor_system)
    n_radius = args.n_window if args.n_window is not None else args.window
    rep = validate_factor_system(fs, fs.H.ball(args.window), fs.N.ball(n_radius))
    result = {
        "factor_system": fs.descriptor(),
        "checks": rep.checks,
        "total_checks": rep.total_checks,
        "violation_count": len(rep.violations),
        "violations": [v.as_dict(str) for v in rep.violations[:MAX_LISTED_VIOLATIONS]],
        "verdict": "valid on window" if rep.passed else "violations found",
    }
    return (EXIT_OK if rep.passed else EXIT_VIOLATIONS), result


def _pair(args):
    x, y = _load(args.left, load_element), _load(args.right, load_element)
    if type(x) is not type(y):
        raise InputError("operands live in different kinds of ring")
    return x, y


def cmd_multiply(args):
    x, y = _pair(args)
    try:
        z = x * y
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK, {"product": dump_any(z)}


def cmd_phi(args):
    f = _load(args.input, load_element)
    if not isinstance(f, GroupRingElement) or not isinstance(f.group, ExtensionGroup):
        raise InputError(f"{args.input}: phi needs a group-ring element over an extension group")
    cs = lift_to_crossed_system(f.group.fs, f.order)
    return EXIT_OK, {"image": dump_any(cp_phi(f, cs))}


def cmd_involute(args):
    x = _load(args.input, load_element)
    return EXIT_OK, {"involution": dump_any(x.star())}


def cmd_invert(args):
    x = _load(args.input, load_element)
    if isinstance(x, GroupRingElement):
        try:
            return EXIT_OK, {"inverse": dump_any(x.inverse())}
        except NotInvertibleError as exc:
            return EXIT_VIOLATIONS, {"error": str(exc)}
    hom = cp_is_homogeneous(x)
    if hom is None:
        raise InputError(f"{args.input}: only homogeneous elements f d_h can be inverted")
    h, f = hom
    try:
        inv = cp_invert_homogeneous(x.cs, f, h)
    except NotInvertibleError as exc:
        return EXIT_VIOLATIONS, {"error": str(exc)}
    return EXIT_OK, {"inverse": dump_any(inv), "verified": ["left", "right"]}


def cmd_idempotent_relations(args):
    x = _load(args.input, load_element)
    if not isinstance(x, CrossedProductElement):
        raise InputError(f"{args.input}: expected a crossed-product element")
    rep = cp_idempotent_relations(x)
    H = x.cs.H
    result = {
        "checked": rep.checked,
        "violations": [
            {"relation": kind, "h": H.format(h), "lhs": dump_any(lhs), "rhs": dump_any(rhs)}
            for kind, h, lhs, rhs in rep.violations[:MAX_LISTED_VIOLATIONS]
        ],
        "violation_count": len(rep.violations),
        "verdict": "relations hold" if rep.ok else "relations violated",
    }
    return (EXIT_OK if rep.ok else EXIT_VIOLATIONS), result


def _space(args) -> SearchSpace:
    ring = _load(args.input, load_ring)
    grid = _grid(args.grid)
    if isinstance(ring, CrossedSystem):
        n_radius = args.n_window if args.n_window is not None else args.window
        window = [(n, h) for h in ring.H.ball(args.window) for n in ring.N.ball(n_radius)]
    else:
        window = ring.ball(args.window)
    return SearchSpace(ring, window, grid, args.max_support)


def _search(fn):
    def run(args):
        space = _space(args)
        rep = fn(space, workers=args.workers)
        return (EXIT_VIOLATIONS if rep.violations else EXIT_OK), rep.to_dict(timing=not args.no_timing)
    return run


def cmd_cohomology_class(args):
    c1, c2 = _load(args.left, load_cocycle), _load(args.right, load_cocycle)
    if c1.rank != c2.rank:
        raise InputError(f"rank mismatch: {c1.rank} vs {c2.rank}")
    v = is_cohomologous(c1, c2, args.window)
    result = {"cohomologous": v.cohomologous, "pairs_checked": v.checked}
    if v.witness is not None:
        result["coboundary"] = {
            "diag": list(v.witness.diag),
            "cross": [list(t) for t in v.witness.cross],
            "formula": "b(x) = sum_i diag[i] C(x_i, 2) + sum cross[k] x_i x_j",
        }
    if v.obstruction is not None:
        result["obstruction"] = {"x": list(v.obstruction[0]), "y": list(v.obstruction[1]),
                                 "reason": "(c1 - c2)(x, y) != (c1 - c2)(y, x)"}
    return EXIT_OK, result


def _central_element(path):
    x = _load(path, load_element)
    if not isinstance(x, GroupRingElement) or not isinstance(x.group, ExtensionGroup) or not x.group.fs.central:
        raise InputError(f"{path}: expected a group-ring element over a central extension")
    return x


def cmd_fiber_eval(args):
    x = _central_element(args.input)
    chi = _load(args.character, load_character)
    try:
        y = evaluate_fiber(x, chi)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK, {"fiber": dump_any(y)}


def cmd_fiber_scan(args):
    x = _central_element(args.input)
    rep = fiber_idempotent_scan(x, _orders(args.orders))
    result = {
        "entries": [{"character": e.character.descriptor(), "verdict": e.verdict} for e in rep.entries],
        "flagged": len(rep.flagged),
        "first_flag": rep.first_flag.character.descriptor() if rep.first_flag else None,
    }
    return (EXIT_OK if rep.ok else EXIT_VIOLATIONS), result


def cmd_selftest(args):
    from . import selftest

    numbers = set(_orders(args.only)) if args.only else None
    lines = []
    outcomes = selftest.run_all(numbers, echo=lambda s: (lines.append(s), print(s, file=sys.stderr)))
    result = {
        "criteria": [
            {"number": o.criterion.number, "title": o.criterion.title, "passed": o.passed,
             "in_time": o.in_time, "detail": o.detail, "limit_s": o.criterion.limit}
            | ({} if args.no_timing else {"elapsed": round(o.elapsed, 3)})
            for o in outcomes
        ],
        "passed": all(o.ok for o in outcomes),
    }
    return (EXIT_OK if result["passed"] else EXIT_VIOLATIONS), result


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crossring", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--no-timing", action="store_true", help="omit elapsed times for byte-identical reports")
        return sp

    sp = common(sub.add_parser("validate-fs", help="check a factor system on finite windows"))
    sp.add_argument("input")
    sp.add_argument("--window", type=int, default=2, help="radius of the H window")
    sp.add_argument("--n-window", type=int, help="radius of the N window (default: --window)")
    sp.set_defaults(run=cmd_validate_fs)

    sp = common(sub.add_parser("multiply", help="product of two elements"))
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(run=cmd_multiply)

    for name, fn, helptext in [
        ("phi", cmd_phi, "map C[G] into the crossed product"),
        ("involute", cmd_involute, "apply the involution"),
        ("invert", cmd_invert, "invert a homogeneous unit"),
        ("idempotent-relations", cmd_idempotent_relations, "evaluate the self-adjoint idempotent relations"),
    ]:
        sp = common(sub.add_parser(name, help=helptext))
        sp.add_argument("input")
        sp.set_defaults(run=fn)

    for name, fn in [
        ("search-zero-divisors", zero_divisor_search),
        ("search-units", unit_search),
        ("search-idempotents", idempotent_search),
    ]:
        sp = common(sub.add_parser(name, help=f"exhaustive {name[7:].replace('-', ' ')} search"))
        sp.add_argument("input", help="ring file: {'group': ...}, {'crossed_system': ...} or a factor system")
        sp.add_argument("--window", type=int, default=1, help="support radius (H radius for crossed products)")
        sp.add_argument("--n-window", type=int, help="N radius for crossed products (default: --window)")
        sp.add_argument("--grid", default="default", help="grid preset name or JSON file of scalars")
        sp.add_argument("--max-support", type=int, default=2)
        sp.add_argument("--workers", type=int, default=1)
        sp.set_defaults(run=_search(fn))

    sp = common(sub.add_parser("cohomology-class", help="decide whether two bilinear cocycles are cohomologous"))
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--window", type=int, default=3, help="radius on which the witness is verified")
    sp.set_defaults(run=cmd_cohomology_class)

    sp = common(sub.add_parser("fiber-eval", help="image of an element in one character fiber"))
    sp.add_argument("input")
    sp.add_argument("character")
    sp.set_defaults(run=cmd_fiber_eval)

    sp = common(sub.add_parser("fiber-scan", help="idempotency of an element in every fiber of given orders"))
    sp.add_argument("input")
    sp.add_argument("--orders", default="1,2,3,4,6")
    sp.set_defaults(run=cmd_fiber_scan)

    sp = common(sub.add_parser("selftest", help="run the acceptance suite"))
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.set_defaults(run=cmd_selftest)
    return p


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "run"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = {"tool": "crossring", "version": __version__, "config": _config(args)}
    try:
        status, result = args.run(args)
        report["result"] = result
    except InputError as exc:
        print(f"crossring: error: {exc}", file=sys.stderr)
        status = EXIT_INPUT
        report["error"] = str(exc)
    report["exit_status"] = status
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
