"""Command line interface: ``betaz <verb> [options]``.

Exit status is 0 on success, 1 when the library rejects the input on
mathematical grounds, 2 on usage errors (bad options, syntax, sorts).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .. import decomp, filters, smooth, windows
from ..errors import BetazError, DslError
from ..seqalg.bounds import DEFAULT_TOL, seminorm
from ..seqalg.gaussian import frac_str
from ..setalg import DefinableSet
from . import syntax
from .lower import lower, lower_numeric, parse_point, parse_scalar, parse_seq, parse_set


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _source(args) -> str:
    if args.expr is not None and args.file is not None:
        raise UsageError("give --expr or --file, not both")
    if args.expr is not None:
        return args.expr
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                return fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e.strerror}") from None
    raise UsageError("an expression is required (--expr or --file)")


def _emit(args, data: dict, human: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(human)


# -- verbs ---------------------------------------------------------------


def cmd_parse(args):
    node = syntax.parse(_source(args), args.grammar)
    if args.grammar == "seq" and syntax.is_numeric_only(node):
        lower_numeric(node)
        value, value_dict = "(numeric-only expression)", None
    else:
        v = lower(node)
        value = str(v)
        value_dict = v.to_dict()
    data = {"grammar": args.grammar, "pretty": syntax.pretty(node), "value": value_dict}
    _emit(args, data, f"{syntax.pretty(node)}\n  = {value}")


def cmd_classify(args):
    rep = smooth.classify(parse_seq(_source(args)))
    d = rep.to_dict()
    lines = [f"{k:>17}: {'yes' if v else 'no'}" for k, v in rep.flags().items()]
    if rep.witness is not None:
        w = rep.witness
        lines.append(f"non-smooth at {w.point}: d={w.degree}, n^d(phi - limit) -> {w.limit_value}")
    _emit(args, d, "\n".join(lines))


def cmd_decompose(args):
    phi = parse_seq(_source(args))
    if args.levels:
        exp = decomp.level_decompose(phi)
        human = "\n".join(f"{c} on {s}" for c, s in exp.terms) or "0"
    else:
        exp = decomp.dyadic_decompose(phi, args.dyadic)
        lines = [f"2^-{q}: {s}" for q, (_, s) in enumerate(exp.levels, 1)]
        lines.append(f"remainder sup <= {frac_str(exp.remainder_bound)}")
        human = "\n".join(lines)
    _emit(args, exp.to_dict(), human)


def cmd_limit(args):
    phi = parse_seq(_source(args))
    pt = parse_point(args.at)
    v = filters.limit_at(phi, pt, auto=args.auto)
    _emit(args, {"point": pt.to_dict(), "limit": str(v), "value": v.to_dict()}, str(v))


def cmd_smoothcheck(args):
    phi = parse_seq(_source(args))
    if args.at is None:
        if args.reference is not None:
            raise UsageError("--reference needs --at")
        v = smooth.is_smooth(phi)
    else:
        ref = parse_scalar(args.reference) if args.reference is not None else None
        v = smooth.smooth_at(phi, parse_point(args.at), reference=ref)
    if v.smooth:
        human = "smooth"
    else:
        human = (
            f"not smooth at {v.point}: d={v.degree}, n^d(phi - ({v.reference})) -> {v.limit_value}\n"
            + "\n".join(f"  n^{v.sample_degree}(phi(n) - ({v.reference})) = {x} at n={n}" for n, x in v.samples)
        )
    _emit(args, v.to_dict(), human)


def cmd_seminorm(args):
    phi = parse_seq(_source(args))
    tol = Fraction(args.tol)
    if args.sup:
        s = seminorm("sup", phi, 0, tol)
    else:
        s = seminorm("schwartz", phi, args.d, tol)
    _emit(args, s.to_dict(), str(s))


def _load_spec(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON: {e}") from None
    if not isinstance(raw, list):
        raise UsageError("spec must be a JSON array of {c, set}")
    spec = []
    for item in raw:
        if not isinstance(item, dict) or "c" not in item or "set" not in item:
            raise UsageError("spec entries need keys 'c' and 'set'")
        s = item["set"]
        s = parse_set(s) if isinstance(s, str) else DefinableSet.from_dict(s)
        spec.append((Fraction(str(item["c"])), s))
    return spec


def cmd_cert(args):
    cert = smooth.prop26_certificate(_load_spec(args.spec), Fraction(args.c0), args.dmax)
    lines = [f"U_{i} = {u}" for i, u in enumerate(cert.chain, 1)]
    for d, n, q, v in cert.witnesses:
        lines.append(f"d={d}: n={n} in S_{q}, |n^d (c_q - c0)| = {frac_str(v)} >= {n ** (d - 1)} >= 1")
    lines.append(f"non-smooth at {cert.direction}")
    _emit(args, cert.to_dict(), "\n".join(lines))


def cmd_check(args):
    if args.what == "ideals":
        reps = [
            smooth.structure_checks("schwartz_ideal", args.samples, args.seed),
            smooth.structure_checks("unital_not_ideal", 1, args.seed),
        ]
        data = {"reports": [r.to_dict() for r in reps], "ok": all(r.ok for r in reps)}
        human = "\n".join(f"{r.kind}: {'pass' if r.ok else 'FAIL'} ({r.passed}/{r.samples})" for r in reps)
        _emit(args, data, human)
        return 0 if data["ok"] else 1
    if args.point is not None and args.base:
        raise UsageError("give --point or --base, not both")
    if args.point is not None:
        target = parse_point(args.point)
    elif args.base:
        target = filters.filter_from_base([parse_set(b) for b in args.base])
    else:
        raise UsageError("check axioms needs --point or --base")
    reps = filters.check_filter_axioms(target, args.samples, args.seed)
    ok = all(r.ok for r in reps)
    data = {"reports": [r.to_dict() for r in reps], "ok": ok}
    human = "\n".join(f"{r.axiom}: {'pass' if r.ok else 'FAIL'} ({r.passed}/{r.samples})" for r in reps)
    _emit(args, data, human)
    return 0 if ok else 1


def _window_source(args):
    if args.builtin == "inv_n2_plus_1":
        if args.expr is not None or args.file is not None:
            raise UsageError("inv_n2_plus_1 takes no expression")
        return windows.inv_n2_plus_1()
    text = _source(args)
    if args.builtin == "exp_i_schwartz":
        return windows.exp_i_schwartz(parse_seq(text), args.scale)
    node = syntax.parse(text, "seq")
    if syntax.is_numeric_only(node):
        return lower_numeric(node)
    return lower(node)


def cmd_window(args):
    w = windows.window_eval(_window_source(args), args.N)
    if args.mode == "eval":
        if args.csv:
            sys.stdout.write(w.to_csv())
            return 0
        human = "\n".join(f"{n:>6} {v.real:.17g} {v.imag:+.17g}i" for n, v in zip(w.ns, w.values))
        _emit(args, w.to_dict(), human)
        return 0
    sign = 1 if args.direction == "+inf" else -1
    prof = windows.empirical_profile(
        w, sign, args.d, complex(args.limit.replace("i", "j")) if args.limit else 0,
        args.modulus, args.residue,
    )
    if args.csv:
        sys.stdout.write(prof.to_csv())
        return 0
    human = f"trend: {prof.trend} (d={prof.d}, {args.direction} mod {args.modulus} == {args.residue}; diagnostic only)"
    _emit(args, prof.to_dict(), human)
    return 0


# -- argument parsing ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # the verb-level flag must not reset a --json given before the verb
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    def with_expr(p):
        p.add_argument("--expr", help="inline expression")
        p.add_argument("--file", help="read the expression from a file")

    root = _Parser(prog="betaz", description=__doc__.splitlines()[0])
    root.add_argument("--json", action="store_true", help="machine-readable output")
    sub = root.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", parents=[common], help="parse and pretty-print an expression")
    with_expr(p)
    p.add_argument("--grammar", choices=syntax.GRAMMARS, default="seq")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("classify", parents=[common], help="function-space memberships")
    with_expr(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", parents=[common], help="dyadic or level expansion")
    with_expr(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--dyadic", type=int, metavar="N", help="greedy dyadic expansion of depth N")
    g.add_argument("--levels", action="store_true", help="disjoint level form of a step function")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("limit", parents=[common], help="value of the extension at a point")
    with_expr(p)
    p.add_argument("--at", required=True, help="point, e.g. '+inf mod 2 == 0' or 'n=5'")
    p.add_argument("--auto", action="store_true", help="refine a coarse point automatically")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("smoothcheck", parents=[common], help="smoothness at a point or everywhere")
    with_expr(p)
    p.add_argument("--at", help="point; omit to check every point")
    p.add_argument("--reference", help="claimed limit value to test against")
    p.set_defaults(func=cmd_smoothcheck)

    p = sub.add_parser("seminorm", parents=[common], help="certified sup or weighted sup")
    with_expr(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--d", type=int, help="weight exponent of sup |n^d phi(n)|")
    g.add_argument("--sup", action="store_true", help="plain sup norm")
    p.add_argument("--tol", default=str(DEFAULT_TOL), help="interval width (rational)")
    p.set_defaults(func=cmd_seminorm)

    p = sub.add_parser("cert", parents=[common], help="certificates")
    p.add_argument("which", choices=["prop26"])
    p.add_argument("--spec", required=True, help="JSON array of {c, set}")
    p.add_argument("--c0", default="0", help="common limit of the constants")
    p.add_argument("--dmax", type=int, default=smooth.DEFAULT_DMAX)
    p.set_defaults(func=cmd_cert)

    p = sub.add_parser("check", parents=[common], help="randomized structure checks")
    p.add_argument("what", choices=["ideals", "axioms"])
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--point", help="point whose ultrafilter is checked (axioms)")
    p.add_argument("--base", action="append", default=[], help="filter base set (axioms, repeatable)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("window", parents=[common], help="numeric windows (diagnostic)")
    p.add_argument("mode", choices=["eval", "profile"])
    with_expr(p)
    p.add_argument("--builtin", choices=["exp_i_schwartz", "inv_n2_plus_1"])
    p.add_argument("--scale", type=float, default=1.0, help="exp_i_schwartz phase scale")
    p.add_argument("--N", type=int, default=100, help="half-width")
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--limit", help="candidate limit, e.g. 1 or 0.5+1i")
    p.add_argument("--direction", choices=["+inf", "-inf"], default="+inf")
    p.add_argument("--modulus", type=int, default=1)
    p.add_argument("--residue", type=int, default=0)
    p.add_argument("--csv", action="store_true", help="CSV rows instead of a table")
    p.set_defaults(func=cmd_window)
    return root


def _fail(want_json: bool, code: int, data: dict) -> int:
    if want_json:
        print(json.dumps({"error": data, "exit": code}, sort_keys=True))
    else:
        where = f" (line {data['line']}, col {data['col']})" if "line" in data else ""
        print(f"error: {data['message']}{where}", file=sys.stderr)
    return code


_VALUE_OPTS = ("--at", "--direction", "--limit", "--reference", "--c0")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-inf" or "-1/2" after an option as another option
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "samples", 1) < 1:
            raise UsageError("--samples must be at least 1")
        if getattr(args, "N", 1) < 1:
            raise UsageError("--N must be at least 1")
        rc = args.func(args)
        return rc or 0
    except UsageError as e:
        return _fail(want_json, 2, {"kind": "usage", "message": str(e)})
    except DslError as e:
        return _fail(want_json, 2, e.to_dict())
    except BetazError as e:
        return _fail(want_json, 1, e.to_dict())
    except (ValueError, ZeroDivisionError) as e:
        # malformed option values such as --tol abc
        return _fail(want_json, 2, {"kind": "usage", "message": str(e)})


if __name__ == "__main__":
    sys.exit(main())
