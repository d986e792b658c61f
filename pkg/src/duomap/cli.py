"""Command-line front end.

Exit codes: 0 success, 1 suite failures, 2 usage (argparse), 3 I/O,
4 instance validation, 5 solver budget exceeded.
"""

import argparse
import os
import sys

from .dot import export_dot
from .errors import BudgetError, ParseError, ValidationError
from .instance import format_instance, parse_instance, validate
from .mis import SolverConfig
from .oracle import GeneratorConfig, counterexample_files, gen_random_instance, run_property_suite
from .pipeline import approx_solve, report, strip_timing

EXIT_OK = 0
EXIT_SUITE_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VALIDATION = 4
EXIT_BUDGET = 5

_BACKEND_FLAG = {"exact": "exact", "greedy": "greedy", "local": "local_search"}


def _read_instance(path, mode, k=2):
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), mode=mode, k=k)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _solver_config(args):
    return SolverConfig(
        backend=_BACKEND_FLAG[args.backend] if args.backend else None,
        exact_vertex_limit=args.exact_limit,
        local_search_swap_size=args.swap,
        time_budget=args.time_budget,
        rng_seed=args.seed,
    )


def _add_instance_flags(p):
    p.add_argument("instance", help="instance file (two lines, '#' comments)")
    p.add_argument("--mode", choices=("char", "token"), default="char")


def _add_solver_flags(p):
    p.add_argument("--backend", choices=("exact", "greedy", "local"), default=None)
    p.add_argument("--exact-limit", type=int, default=60, dest="exact_limit")
    p.add_argument("--swap", type=int, choices=(2, 3), default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-budget", type=float, default=None, dest="time_budget")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="duomap",
        description="2-Max-Duo solver (duo-preservation string mapping)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the approximation pipeline")
    _add_instance_flags(p)
    _add_solver_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock time (breaks byte determinism)")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="validate an instance file")
    _add_instance_flags(p)
    p.add_argument("--k", type=int, default=2)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bias", type=float, default=0.5)
    p.add_argument("--mode", choices=("char", "token"), default="char")
    p.add_argument("--out", default=None)

    p = sub.add_parser("export-dot", help="dump a pipeline stage as DOT")
    _add_instance_flags(p)
    p.add_argument("--stage", choices=("H", "G", "G1", "G2"), default="G")
    p.add_argument("--out", default=None)

    p = sub.add_parser("suite", help="run the property suite on random instances")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n-max", type=int, default=14, dest="n_max")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--bias", type=float, default=0.9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None,
                   help="directory for the report and counterexample files")
    return parser


def _cmd_solve(args):
    inst = _read_instance(args.instance, args.mode)
    sol = approx_solve(inst, _solver_config(args))
    if not args.timing:
        sol = strip_timing(sol)
    _emit(report(sol, fmt=args.format), args.out)
    return EXIT_OK


def _cmd_verify(args):
    inst = _read_instance(args.instance, args.mode, k=args.k)
    violations = validate(inst, args.k)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"ok: n={inst.n}, k<={args.k}")
    return EXIT_OK


def _cmd_gen(args):
    cfg = GeneratorConfig(
        n=args.n,
        k=args.k,
        alphabet_size=args.alphabet,
        seed=args.seed,
        duplication_bias=args.bias,
    )
    inst = gen_random_instance(cfg)
    header = f"# generated: n={args.n} k={args.k} alphabet={args.alphabet} seed={args.seed} bias={args.bias}\n"
    _emit(header + format_instance(inst, mode=args.mode), args.out)
    return EXIT_OK


def _cmd_export_dot(args):
    inst = _read_instance(args.instance, args.mode)
    violations = validate(inst, 2)
    if violations:
        raise ValidationError(violations)
    _emit(export_dot(inst, args.stage), args.out)
    return EXIT_OK


def _cmd_suite(args):
    cfg = GeneratorConfig(k=args.k, seed=args.seed, duplication_bias=args.bias)
    rep = run_property_suite(args.count, cfg, n_max=args.n_max)
    text = rep.to_json() if args.format == "json" else rep.summary()
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "suite_report.json"), "w", encoding="utf-8") as fh:
            fh.write(rep.to_json())
        for fname, content in counterexample_files(rep).items():
            path = os.path.join(args.out, fname)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(content)
            print(f"counterexample written: {path}", file=sys.stderr)
        sys.stdout.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if rep.failure_count == 0 else EXIT_SUITE_FAIL


_COMMANDS = {
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
    "export-dot": _cmd_export_dot,
    "suite": _cmd_suite,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        for v in exc.violations:
            print(f"validation: {v}", file=sys.stderr)
        return EXIT_VALIDATION
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
