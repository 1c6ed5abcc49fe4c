"""
Command-line front end.  Every subcommand prints one report, as a JSON object
(--format json) or a human-readable text block, and exits 0 when all checks
in the report passed, 1 when a mathematical check failed, 2 on usage errors.

All randomness flows from --seed through one generator, so identical argv and
seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import enumerate as en
from . import liealg as la
from . import rootdata as rd
from . import weyl
from .bruhat import Strategy, bruhat, parabolic_membership
from .fields import FieldError, PrimeField, QQ, Scalar, parse_field
from .group import (ChevalleyGroup, GroupError, WordAtom, commutator_expand,
                    verify_commutator)
from .halloracle import ORACLE_TYPES, hall_table
from .rootcat import Ind, ladder

USAGE_EXIT = 2
CHECK_FAILED_EXIT = 1


class UsageError(Exception):
    pass


def _parse_root(spec: str, datum) -> tuple:
    """Parse a root like "a1", "-a2", "a1+a2", "2a1+a2", "-(a1+a2)"."""
    s = spec.strip().replace("α", "a").replace(" ", "")
    sign = 1
    if s.startswith("-(") and s.endswith(")"):
        sign, s = -1, s[2:-1]
    vec = [0] * datum.m
    term = ""
    terms = []
    for ch in s:
        if ch in "+-" and term:
            terms.append(term)
            term = ch if ch == "-" else ""
        elif ch == "-" and not term:
            term = "-"
        elif ch != "+":
            term += ch
    if term:
        terms.append(term)
    for t in terms:
        tsign = sign
        if t.startswith("-"):
            tsign, t = -sign, t[1:]
        if "a" not in t:
            raise UsageError(f"bad root term {t!r} in {spec!r}")
        coef, idx = t.split("a", 1)
        c = int(coef) if coef else 1
        i = int(idx) - 1
        if not (0 <= i < datum.m):
            raise UsageError(f"root index out of range in {spec!r}")
        vec[i] += tsign * c
    root = tuple(vec)
    if not datum.is_root(root):
        raise UsageError(f"{spec!r} = {root} is not a root of {datum.type_name}")
    return root


def _format_root(root) -> str:
    terms = []
    for i, c in enumerate(root):
        if c == 0:
            continue
        mag = abs(c)
        body = f"a{i + 1}" if mag == 1 else f"{mag}a{i + 1}"
        terms.append(("-" if c < 0 else "+" if terms else "") + body)
    return "".join(terms) if terms else "0"


def _parse_scalar(text: str, field) -> Scalar:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return field.scalar(Fraction(int(num), int(den)))
    return field.scalar(int(text))


def _parse_word(text: str, datum, field) -> tuple:
    atoms = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"bad word atom {chunk!r}; want kind:root[:param]")
        kind = parts[0]
        if kind not in ("E", "h", "n"):
            raise UsageError(f"bad atom kind {kind!r}")
        root = _parse_root(parts[1], datum)
        t = _parse_scalar(parts[2], field) if len(parts) == 3 else field.one
        atoms.append(WordAtom(kind, root, t))
    if not atoms:
        raise UsageError("empty word")
    return tuple(atoms)


def _scalar_str(s: Scalar) -> str:
    return repr(s)


def _report(args, command, inputs, results, checks):
    payload = {
        "command": command,
        "inputs": inputs,
        "results": results,
        "checks": [{"name": n, "passed": bool(p)} for n, p in checks],
    }
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(f"== {command} ==")
        for k in sorted(inputs):
            print(f"  {k}: {inputs[k]}")
        _print_text(results, indent="  ")
        for item in payload["checks"]:
            mark = "PASS" if item["passed"] else "FAIL"
            print(f"  [{mark}] {item['name']}")
    return 0 if all(p for _, p in checks) else CHECK_FAILED_EXIT


def _print_text(obj, indent=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)):
                print(f"{indent}{k}:")
                _print_text(v, indent + "  ")
            else:
                print(f"{indent}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            _print_text(v, indent)
    else:
        print(f"{indent}{obj}")


def _datum(args):
    orientation = getattr(args, "orientation", None) or "default"
    try:
        return rd.build_root_datum(args.type, orientation)
    except rd.RootDataError as e:
        raise UsageError(str(e))


def _lie(args, datum=None):
    datum = datum or _datum(args)
    scheme = getattr(args, "scheme", None) or "auto"
    if scheme == "cocycle":
        scheme = "euler_cocycle"
    return la.build_lie(datum, scheme)


# -- subcommand implementations ----------------------------------------------


def cmd_order(args):
    datum = _datum(args)
    predicted = rd.predicted_order(datum, args.q)
    results = {
        "order": str(predicted),
        "divisor": str(rd.cartan_divisor(datum, args.q)),
        "exponents": list(rd.exponents(datum)),
        "num_positive_roots": datum.num_positive,
    }
    from .fields import is_prime
    checks = []
    if not args.no_bfs and is_prime(args.q) and predicted <= en.BFS_GUARD:
        eg = en.enumerate_group(_lie(args, datum), args.q)
        results["bfs_order"] = str(eg.order)
        checks.append(("bfs_matches_formula", eg.order == predicted))
    return _report(args, "order", {"type": args.type, "q": args.q}, results, checks)


def cmd_enumerate(args):
    datum = _datum(args)
    L = _lie(args, datum)
    eg = en.enumerate_group(L, args.q)
    results = {"order": str(eg.order), "generators": len(eg.gen_mats),
               "dimension": eg.group.dim}
    checks = [("order_matches_formula", eg.order == rd.predicted_order(datum, args.q))]
    return _report(args, "enumerate", {"type": args.type, "q": args.q}, results, checks)


def cmd_bruhat(args):
    datum = _datum(args)
    field = parse_field(args.field) if args.field else PrimeField(args.q)
    L = _lie(args, datum)
    G = ChevalleyGroup(L, field)
    word = _parse_word(args.word, datum, field)
    g = G.element_from_word(word)
    form = bruhat(G, g)
    alt = bruhat(G, g, Strategy(tiebreak_seed=args.seed + 1, word_pick="max"))
    results = {
        "u_prime": [{"root": _format_root(r), "t": _scalar_str(t)} for r, t in form.u_prime],
        "torus": [_scalar_str(t) for t in form.torus],
        "weyl_word": [i + 1 for i in form.weyl_word],
        "u_minus": [{"root": _format_root(r), "t": _scalar_str(t)} for r, t in form.u_minus],
    }
    checks = [("reassembly", True), ("strategy_invariance", form == alt)]
    return _report(args, "bruhat",
                   {"type": args.type, "field": repr(field), "word": args.word},
                   results, checks)


def cmd_commutator(args):
    datum = _datum(args)
    L = _lie(args, datum)
    x = _parse_root(args.x, datum)
    y = _parse_root(args.y, datum)
    try:
        terms = commutator_expand(L, x, y)
    except GroupError as e:
        raise UsageError(str(e))
    rng = random.Random(args.seed)
    G5 = ChevalleyGroup(L, PrimeField(5))
    GQ = ChevalleyGroup(L, QQ)
    ok5 = verify_commutator(G5, x, y, 4, rng)
    okq = verify_commutator(GQ, x, y, 2, rng)
    results = {"terms": [{"root": _format_root(r), "C": c, "i": i, "j": j}
                         for r, c, i, j in terms]}
    checks = [("matrix_identity_F5", ok5), ("matrix_identity_Q", okq)]
    return _report(args, "commutator",
                   {"type": args.type, "x": args.x, "y": args.y}, results, checks)


def cmd_constants(args):
    L = _lie(args)
    rows = []
    for (a, b), g in sorted(L.gamma.items()):
        rows.append({"x_root": list(a), "y_root": list(b),
                     "l_root": [ai + bi for ai, bi in zip(a, b)], "gamma": g})
    results = {"scheme": L.scheme, "table": rows}
    return _report(args, "constants", {"type": args.type}, results, [])


def cmd_info(args):
    datum = _datum(args)
    results = {
        "cartan": [list(r) for r in datum.cartan],
        "symmetrizers": list(datum.d),
        "orientation": [[t + 1, h + 1] for t, h in datum.orientation],
        "num_roots": len(datum.roots),
        "height_histogram": list(rd.height_histogram(datum)),
        "exponents": list(rd.exponents(datum)),
    }
    if args.x and args.y:
        X = Ind(datum, _parse_root(args.x, datum))
        Y = Ind(datum, _parse_root(args.y, datum))
        lad = ladder(X, Y)
        results["ladder"] = {
            "grid": [[int(lad.exists[i][j]) for j in range(4)] for i in range(4)],
            "p": lad.p, "q": lad.q, "rank2_type": lad.rank2_type(),
        }
    return _report(args, "info", {"type": args.type}, results, [])


def cmd_check(args):
    rng = random.Random(args.seed)
    if args.what == "jacobi":
        L = _lie(args)
        bad = la.jacobi_check(L, limit=5)
        return _report(args, "check jacobi", {"type": args.type, "scheme": L.scheme},
                       {"violations": [list(t) for t in bad]},
                       [("jacobi", not bad)])
    if args.what == "steinberg":
        datum = _datum(args)
        field = parse_field(args.field) if args.field else PrimeField(7)
        G = ChevalleyGroup(_lie(args, datum), field)
        ok = en.steinberg_check(G, rng, trials=2)
        results = {"center_order": None}
        if field.size is not None:
            results["center_order"] = str(en.steinberg_center_order(datum, field.size))
        return _report(args, "check steinberg",
                       {"type": args.type, "field": repr(field)},
                       results, [("relations_1_to_4", ok)])
    if args.what == "poincare":
        datum = _datum(args)
        res = weyl.poincare_identity(datum, args.q)
        return _report(args, "check poincare", {"type": args.type, "q": args.q},
                       {"lhs": str(res["lhs"]), "rhs": str(res["rhs"])},
                       [("poincare_identity", res["equal"])])
    if args.what == "hall":
        datum = _datum(args)
        if datum.type_name not in ORACLE_TYPES:
            raise UsageError(f"hall oracle supports {ORACLE_TYPES}")
        L = la.build_lie(datum, "euler_cocycle")
        rows = []
        all_match = True
        for a, b, s, g in hall_table(datum):
            match = (g == L.gamma[(a, b)])
            all_match &= match
            rows.append({"pair": [_format_root(a), _format_root(b)],
                         "gamma_oracle": g, "gamma_cocycle": L.gamma[(a, b)],
                         "matches_cocycle": match})
        return _report(args, "check hall", {"type": args.type},
                       {"table": rows}, [("oracle_matches_cocycle", all_match)])
    if args.what == "simplicity":
        datum = _datum(args)
        L = _lie(args, datum)
        eg = en.enumerate_group(L, args.q)
        sc = en.structure_checks(eg)
        expected_simple = (datum.type_name, args.q) not in (
            ("A1", 2), ("A1", 3), ("B2", 2), ("G2", 2))
        results = {"order": str(eg.order), "simple": sc["simple"],
                   "derived_is_whole": sc["derived_is_whole"],
                   "center_trivial": sc["center_trivial"],
                   "expected_simple": expected_simple}
        checks = [("matches_expected_simplicity", sc["simple"] == expected_simple),
                  ("center_trivial", sc["center_trivial"])]
        return _report(args, "check simplicity", {"type": args.type, "q": args.q},
                       results, checks)
    raise UsageError(f"unknown check {args.what!r}")


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("text", "json"), default="text")
    shared.add_argument("--seed", type=int, default=0)
    top = argparse.ArgumentParser(
        prog="rootchev", parents=[shared],
        description="Chevalley groups from Dynkin quivers, in exact arithmetic.")
    sub = top.add_subparsers(dest="cmd", required=True)

    def common(p, q=False, orientation=True, scheme=False):
        p.add_argument("--type", required=True, help="A1..A8, B2..B4, C3, C4, D4, D5, E6..E8, F4, G2")
        if orientation:
            p.add_argument("--orientation", default=None,
                           help='comma list of directed edges "i>j" (1-based)')
        if q:
            p.add_argument("--q", type=int, required=True)
        if scheme:
            p.add_argument("--scheme", choices=("cocycle", "extraspecial"), default=None)

    p = sub.add_parser("order", parents=[shared], help="order formula, cross-checked by BFS when small")
    common(p, q=True)
    p.add_argument("--no-bfs", action="store_true")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("enumerate", parents=[shared], help="breadth-first enumeration oracle")
    common(p, q=True, scheme=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("bruhat", parents=[shared], help="Bruhat normal form of a generator word")
    common(p, scheme=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--field", default=None, help='for example "Q" or "F5"')
    p.add_argument("--word", required=True,
                   help='comma list of atoms "E:a1:1,n:a2,E:-a1:2"')
    p.set_defaults(func=cmd_bruhat)

    p = sub.add_parser("commutator", parents=[shared], help="Chevalley commutator expansion of a pair")
    common(p, scheme=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_commutator)

    p = sub.add_parser("constants", parents=[shared], help="dump the structure constant table")
    common(p, scheme=True)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("info", parents=[shared], help="datum summary; with --x/--y also a ladder grid")
    common(p)
    p.add_argument("--x", default=None)
    p.add_argument("--y", default=None)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("check", parents=[shared], help="run a named verification")
    p.add_argument("what", choices=("jacobi", "steinberg", "poincare", "hall", "simplicity"))
    common(p, scheme=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--field", default=None)
    p.set_defaults(func=cmd_check)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE_EXIT if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UsageError, FieldError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_EXIT
    except (rd.RootDataError, la.LieAlgebraError, GroupError, en.EnumerationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return CHECK_FAILED_EXIT


if __name__ == "__main__":
    sys.exit(main())
