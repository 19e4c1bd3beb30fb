"""Command-line front end. JSON goes to stdout (or --output), diagnostics to stderr.

Exit codes: 0 success, 1 a checked property failed, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .designs import design_to_json, rs_design, verify_design
from .exceptions import ParameterError, ResourceError
from .experiments import degenerate, gadget_report, generator_map, image_equations, pit_experiment
from .generators import build_F, check_succinctness, coeff_vector_of_F, truncate_F
from .polynomials import DEFAULT_TERM_CAP

log = logging.getLogger("succinct_hsg")


def _cmd_design(args) -> tuple[dict, bool]:
    d = rs_design(args.p, args.a)
    report = verify_design(d)
    return {"design": design_to_json(d), "report": report}, report["valid"]


def _cmd_gadgets(args) -> tuple[dict, bool]:
    report = gadget_report(args.p, args.a, args.n, b=args.b, term_cap=args.term_cap)
    return report, report["holds"]


def _cmd_build_f(args) -> tuple[dict, bool]:
    F = build_F(args.n, args.a, args.p)
    out = {}
    if args.d is not None:
        F = truncate_F(F, args.d)
        out["coeff_vector"] = coeff_vector_of_F(F, args.d).to_json()
    out["F"] = F.to_json()
    return out, True


def _cmd_check_succinct(args) -> tuple[dict, bool]:
    report = check_succinctness(args.n, args.d, args.p)
    return report, report["holds"]


def _cmd_find_equations(args) -> tuple[dict, bool]:
    G = generator_map(args.n, args.d, args.p)
    if args.degenerate:
        G = degenerate(G)
    report = image_equations(G, args.D, args.samples, args.seed)
    report.update(n=args.n, d=args.d, p=args.p, seed=args.seed, degenerate=args.degenerate)
    return report, report["sound"]


def _cmd_pit(args) -> tuple[dict, bool]:
    G = generator_map(args.n, args.d, args.p)
    report = pit_experiment(
        G, args.trials, args.seed, max_size=args.max_size, max_vars=args.max_vars,
        term_cap=args.term_cap,
    )
    report.update(n=args.n, d=args.d, p=args.p, seed=args.seed, N=len(G))
    return report, report["holds"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="succinct-hsg",
        description="Build and verify succinct hitting-set-generator constructions.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--output", "-o", help="write JSON here instead of stdout")
        p.add_argument("--term-cap", type=int, default=DEFAULT_TERM_CAP)
        return p

    p = add("design", _cmd_design, "emit the Reed-Solomon design and its verification")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", type=int, required=True)

    p = add("gadgets", _cmd_gadgets, "cross-check Mon, Sel and RS-Design")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--b", type=int, default=None, help="Sel interpolation nodes (default p^3)")

    p = add("build-f", _cmd_build_f, "emit F_{n,a,p}, optionally truncated to degree d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, default=None)

    p = add("check-succinct", _cmd_check_succinct,
            "compare the coefficient vector of F with the KI generator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = add("find-equations", _cmd_find_equations,
            "sample the generator image and search for vanishing equations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--D", type=int, required=True, help="equation degree bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None,
                   help="number of image points (default C(N+D, D) + 5)")
    p.add_argument("--degenerate", action="store_true",
                   help="duplicate the first generator entry into the second")

    p = add("pit", _cmd_pit, "random-circuit hitting experiment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100, help="number of nonzero circuits")
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--max-vars", type=int, default=4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.term_cap < 1:
        parser.error("--term-cap must be positive")
    try:
        payload, ok = args.func(args)
    except (ParameterError, ResourceError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not ok:
        log.warning("%s: checked property does not hold", args.command)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
