"""Command line interface: ``hhgabber check|groebner|charideal|hkr|bracket``.

Exit codes: 0 involutive / success, 1 violation, 2 input error,
3 unsupported.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._parallel import pmap
from .errors import HHGabberError, ParseError, UnsupportedError
from .hochhom import hkr_basis_map, hkr_compare, koszul_tor, polyvector_rank
from .idealkit import Ideal, groebner_basis
from .pipeline import CLI_STRATEGIES, EXIT_CODES, GabberReport, check_problem, problem_bivector, report_render
from .poissoncalc import bracket_eval
from .polyarith import MonomialOrder, parse_polynomial
from .stanza import parse_input
from .weylalg import DModulePresentation, characteristic_ideal, format_operator, weyl_groebner


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(payload: dict, as_json: bool, text_lines):
    if as_json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _fail(msg, code=2):
    sys.stderr.write(f"hhgabber: {msg}\n")
    return code


def cmd_check(args):
    def run(path):
        try:
            problem = parse_input(_read(path))
        except ParseError as err:
            return GabberReport("", "error", message=f"{path}: {err}")
        except OSError as err:
            return GabberReport("", "error", message=str(err))
        try:
            return check_problem(problem, args.radical_strategy)
        except HHGabberError as err:
            return GabberReport(problem.echo(), "error", message=str(err))

    reports = pmap(run, args.files)
    fmt = "json" if args.json else "text"
    if len(reports) == 1:
        sys.stdout.write(report_render(reports[0], fmt))
    elif args.json:
        sys.stdout.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    else:
        for path, r in zip(args.files, reports):
            sys.stdout.write(f"== {path}\n" + report_render(r, "text"))
    return max(r.exit_code for r in reports)


def _load(path):
    return parse_input(_read(path))


def cmd_groebner(args):
    problem = _load(args.file)
    try:
        order = MonomialOrder.from_spec(args.order)
    except ValueError as err:
        return _fail(str(err))
    if order.kind == "weighted" and len(order.weight) != problem.ring.arity:
        return _fail(f"weight vector has {len(order.weight)} entries, ring has {problem.ring.arity} variables")
    name, gens = problem.ideal(args.ideal)
    gb = groebner_basis(Ideal(problem.ring, gens), order)
    payload = {
        "ideal": name,
        "order": order.spec(),
        "generators": [str(g) for g in gens],
        "basis": [str(g) for g in gb],
    }
    _emit(payload, args.json, [f"ideal {name} [{order.spec()}]"] + [f"  {g}" for g in payload["basis"]])
    return 0


def cmd_charideal(args):
    problem = _load(args.file)
    name, ops = problem.dmodule(args.dmodule)
    pres = DModulePresentation(problem.ring.npairs, ops)
    gb = weyl_groebner(pres)
    J = characteristic_ideal(pres, problem.ring)
    base = problem.base_names
    payload = {
        "dmodule": name,
        "generators": [format_operator(op, base) for op in ops],
        "weyl_groebner": [format_operator(op, base) for op in gb],
        "char_ideal": [str(g) for g in groebner_basis(J)],
    }
    lines = [f"dmodule {name}", "  weyl groebner basis:"] + [f"    {s}" for s in payload["weyl_groebner"]]
    lines += ["  characteristic ideal:"] + [f"    {s}" for s in payload["char_ideal"]]
    _emit(payload, args.json, lines)
    return 0


def cmd_hkr(args):
    n, k = args.vars, args.degree
    if n < 1 or k < 0:
        return _fail("--vars must be positive and --degree non-negative")
    tor = koszul_tor(n, k)
    payload = {
        "n": n,
        "degree": k,
        "koszul_rank": tor.rank,
        "koszul_basis": tor.basis,
        "omega_rank": len(hkr_basis_map(n, k)) if k <= n else 0,
        "polyvector_rank": polyvector_rank(n, k),
        "hkr_agrees": hkr_compare(n, k),
        "basis_map": hkr_basis_map(n, k) if k <= n else {},
    }
    lines = [
        f"Tor_{k} of the diagonal in A^{n}: rank {tor.rank}",
        f"Omega^{k} rank: {payload['omega_rank']}   Lambda^{k} T rank: {payload['polyvector_rank']}",
        f"HKR agrees: {payload['hkr_agrees']}",
    ]
    _emit(payload, args.json, lines)
    return 0


def cmd_bracket(args):
    problem = _load(args.file)
    theta = problem_bivector(problem)
    f = parse_polynomial(args.eval[0], problem.ring)
    g = parse_polynomial(args.eval[1], problem.ring)
    b = bracket_eval(theta, f, g)
    payload = {"f": str(f), "g": str(g), "bracket": str(b)}
    _emit(payload, args.json, [f"{{{f}, {g}}} = {b}"])
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="hhgabber", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="involutivity check for a D-module or an ideal")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.add_argument("--radical-strategy", choices=sorted(CLI_STRATEGIES), default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("groebner", help="reduced Groebner basis of an ideal")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--order", default="grevlex", help="lex | grevlex | weight:W1,W2,...")
    p.add_argument("--ideal", default=None, help="ideal name (default: first declared)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("charideal", help="characteristic ideal of a D-module")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--dmodule", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_charideal)

    p = sub.add_parser("hkr", help="Koszul Tor ranks against forms")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hkr)

    p = sub.add_parser("bracket", help="evaluate the declared bracket")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--eval", nargs=2, metavar=("F", "G"), required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bracket)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, LookupError, OSError) as err:
        return _fail(str(err), EXIT_CODES["error"])
    except HHGabberError as err:
        code = EXIT_CODES["unsupported"] if isinstance(err, UnsupportedError) else EXIT_CODES["error"]
        return _fail(str(err), code)


if __name__ == "__main__":
    sys.exit(main())
