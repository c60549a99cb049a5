"""Command-line front end.

Exit codes: 0 success, 1 error, 2 refused (spherical), 3 no cover found.
"""

import argparse
import json
import sys

from . import cover as cv
from . import descent as ds
from . import local_model as lm
from .errors import CoverNotFound, SeifertError
from .perm import format_perm
from .pipeline import SCHEMA_VERSION, render_descent, render_text, run_pipeline
from .symbol import (
    base_orbifold,
    euler_number,
    format_orbifold,
    format_rational,
    geometry_of,
    normalize,
    orbifold_euler_characteristic,
    parse_orbifold,
    parse_symbol,
)

EXIT_OK, EXIT_ERROR, EXIT_REFUSED, EXIT_NOT_FOUND = 0, 1, 2, 3


def _emit(args, payload, text):
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, ensure_ascii=False))
    else:
        print(text)


def classify_symbol(symbol_text):
    s = normalize(parse_symbol(symbol_text))
    o = base_orbifold(s)
    return s, orbifold_euler_characteristic(o), euler_number(s), geometry_of(s)


def cmd_classify(args):
    s, chi, e, geom = classify_symbol(args.symbol)
    payload = {"symbol": str(s), "base": format_orbifold(base_orbifold(s)),
               "chi": format_rational(chi), "e": format_rational(e), "geometry": geom.value}
    _emit(args, payload, f"{s}\nchi = {format_rational(chi)}\ne = {format_rational(e)}\ngeometry = {geom.value}")
    return EXIT_OK


def cmd_cover(args):
    o = parse_orbifold(args.orbifold)
    try:
        cert = cv.smooth_cover_search(o, args.max_mult, args.seed, args.node_limit)
    except CoverNotFound as exc:
        _emit(args, {"orbifold": format_orbifold(o), "status": "NotFound", "exhausted": exc.exhausted,
                     "truncated_degrees": list(exc.truncated_degrees)}, str(exc))
        return EXIT_NOT_FOUND
    verdict = cv.verify_certificate(o, cert)
    payload = {"orbifold": format_orbifold(o), "certificate": cert.to_dict(), "verified": verdict.ok}
    lines = [f"orbifold: {o.describe()}", f"degree {cert.degree}, cover genus {cert.cover_genus}"]
    lines += _perm_lines(cert)
    lines.append(f"verified: {verdict.reason}")
    if args.galois:
        closure = cv.galois_closure(cert)
        payload["galois_closure"] = closure.to_dict()
        payload["galois_closure_verified"] = cv.verify_certificate(o, closure).ok
        lines.append(f"Galois closure: degree {closure.degree}, cover genus {closure.cover_genus}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if verdict else EXIT_ERROR


def _perm_lines(cert):
    out = []
    for i, (a, b) in enumerate(cert.handle_perms, 1):
        out.append(f"  a{i} = {format_perm(a)}    b{i} = {format_perm(b)}")
    for i, x in enumerate(cert.crosscap_perms, 1):
        out.append(f"  x{i} = {format_perm(x)}")
    for i, c in enumerate(cert.cone_perms, 1):
        out.append(f"  c{i} = {format_perm(c)}")
    return out


def cmd_descent(args):
    s = normalize(parse_symbol(args.symbol))
    report = ds.descent_report(s, args.degree)
    _emit(args, {"symbol": str(s), "descent": report.to_dict()},
          f"{s}\npulled-back Euler number: {report.pullback_euler}\n{render_descent(report)}")
    return EXIT_OK


def cmd_verify_local_model(args):
    m = lm.ModelParams(args.p, args.q)
    worst = lm.run_battery(m, args.samples, seed=args.seed, exact=args.exact)
    tol = 0.0 if args.exact else lm.EPS_ROUND
    ok = all(v <= tol for v in worst.values())
    payload = {"p": m.p, "q": m.q, "samples": args.samples, "exact": args.exact,
               "tolerance": tol, "max_residuals": worst, "ok": ok}
    text = "\n".join([f"p={m.p} q={m.q} samples={args.samples} {'exact' if args.exact else 'float'}"]
                     + [f"  {k:24s} {v:.3e}" for k, v in worst.items()]
                     + [f"all within {tol:g}: {ok}"])
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_ERROR


def cmd_pipeline(args):
    report = run_pipeline(args.symbol, args.max_mult, args.seed, args.node_limit)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
    else:
        print(render_text(report))
    return report.exit_code


def _global_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=default(False), help="emit JSON")
    parser.add_argument("--seed", type=int, default=default(0), help="seed for randomized stages")
    parser.add_argument("--max-mult", type=int, default=default(cv.DEFAULT_MAX_MULT),
                        help="cover degrees range over lcm(cone orders) times 1..K")
    parser.add_argument("--node-limit", type=int, default=default(cv.DEFAULT_NODE_LIMIT),
                        help="search nodes per degree before giving up on it")


def build_parser():
    parser = argparse.ArgumentParser(prog="seifertkit", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="chi, e and geometry of a Seifert symbol")
    p.add_argument("--symbol", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cover", parents=[common], help="find a smooth finite cover of a 2-orbifold")
    p.add_argument("--orbifold", required=True, help='e.g. "g=0 o cones=2,2,3,3"')
    p.add_argument("--galois", action="store_true", help="also report the Galois closure")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("descent", parents=[common], help="fiber exponents, twist and degree bookkeeping")
    p.add_argument("--symbol", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_descent)

    p = sub.add_parser("verify-local-model", parents=[common], help="run the local-model identity battery")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--exact", action="store_true", help="use exact cyclotomic arithmetic")
    p.set_defaults(func=cmd_verify_local_model)

    p = sub.add_parser("pipeline", parents=[common], help="run the full chain on a Seifert symbol")
    p.add_argument("--symbol", required=True)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SeifertError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
