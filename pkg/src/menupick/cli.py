"""Command-line front end.

Subcommands: ``gen`` (emit a random instance file), ``solve`` (run a
solver on an instance file), ``compare`` (solve plus oracle cross-check),
and ``bound`` (tabulate the sampled-solver expectation-bound factors).

Reports go to stdout (or ``--out`` via an atomic write-then-rename);
diagnostics go to stderr. Exit codes: 0 on success, 1 when a ``compare``
guarantee check fails, 2 on usage or parse errors, 3 when a request
exceeds an enumeration budget. Budgets can be overridden per run with
repeated ``--budget name=value`` flags or the ``MENUPICK_BUDGET``
environment variable (comma-separated ``name=value`` pairs; flags win).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, replace
from typing import Optional

from . import __version__
from .errors import BudgetError, MenupickError, PreconditionError, SchemaError
from .files import (
    InstanceDoc,
    dumps_canonical,
    instance_payload,
    load_instance,
    report_payload,
    write_atomic,
)
from .generate import FAMILIES, generate_instance
from .maximize import EXACT_SET_BUDGET, InnerSolver
from .oracle import ORACLE_TUPLE_BUDGET, exact_multi_solve, exact_p1_solve, exact_pair_solve
from .personalize import (
    DEFAULT_EPS,
    MULTI_PARTITION_BUDGET,
    PARTITION_CAP,
    VACUOUS_EPS,
    SolveReport,
    enumeration_solve,
    gamma_bound,
    gamma_factor,
    multi_enumeration_solve,
    sampling_solve,
)

TOLERANCE = 1e-9
BUDGET_ENV_VAR = "MENUPICK_BUDGET"


@dataclass(frozen=True)
class Budgets:
    exact_sets: int = EXACT_SET_BUDGET
    oracle_tuples: int = ORACLE_TUPLE_BUDGET
    partition_cap: int = PARTITION_CAP
    multi_partitions: int = MULTI_PARTITION_BUDGET


_BUDGET_NAMES = {
    "exact-sets": "exact_sets",
    "oracle-tuples": "oracle_tuples",
    "partition-cap": "partition_cap",
    "multi-partitions": "multi_partitions",
}


def _parse_budget_items(items, source: str) -> dict:
    overrides = {}
    for item in items:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in _BUDGET_NAMES:
            raise SchemaError(
                f"{source}: expected NAME=VALUE with NAME in {sorted(_BUDGET_NAMES)}, got {item!r}"
            )
        try:
            parsed = int(value)
        except ValueError:
            raise SchemaError(f"{source}: budget {name!r} needs an integer, got {value!r}") from None
        if parsed < 1:
            raise SchemaError(f"{source}: budget {name!r} must be positive")
        overrides[_BUDGET_NAMES[name]] = parsed
    return overrides


def resolve_budgets(flag_items) -> Budgets:
    budgets = Budgets()
    env = os.environ.get(BUDGET_ENV_VAR, "").strip()
    if env:
        budgets = replace(budgets, **_parse_budget_items(env.split(","), BUDGET_ENV_VAR))
    if flag_items:
        budgets = replace(budgets, **_parse_budget_items(flag_items, "--budget"))
    return budgets


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _instance_summary(doc: InstanceDoc) -> dict:
    inst = doc.instance
    summary: dict = {"n": inst.n, "k": inst.k, "m": inst.m}
    if doc.provenance is not None:
        summary["provenance"] = doc.provenance
    return summary


def _run_solver(doc: InstanceDoc, args, budgets: Budgets) -> tuple[SolveReport, dict]:
    inst = doc.instance
    if args.inner == "exact":
        inner = InnerSolver.exact(budgets.exact_sets)
    else:
        inner = InnerSolver.greedy()
    eps = args.eps if args.eps is not None else list(DEFAULT_EPS)

    if args.algo == "enum":
        report = enumeration_solve(inst, inner, cap=budgets.partition_cap, workers=args.workers)
    elif args.algo == "sample":
        report = sampling_solve(
            inst, args.T, args.seed, inner, eps=eps, workers=args.workers
        )
    else:
        report = multi_enumeration_solve(
            inst,
            args.l,
            inner,
            max_partitions=budgets.multi_partitions,
            cap=budgets.partition_cap,
            workers=args.workers,
        )
    if doc.warnings:
        report = replace(report, warnings=tuple(doc.warnings) + report.warnings)
    solver_block = {
        "algorithm": args.algo,
        "inner": args.inner,
        "T": args.T if args.algo == "sample" else None,
        "l": args.l if args.algo == "multi" else None,
        "seed": args.seed if args.algo == "sample" else None,
        "eps": eps if args.algo == "sample" else None,
        "workers": args.workers,
    }
    return report, solver_block


def _check_solver_args(parser: argparse.ArgumentParser, args) -> None:
    if args.algo == "sample":
        if args.T is None or args.seed is None:
            parser.error("--algo sample requires --T and --seed")
    if args.algo == "multi" and args.l is None:
        parser.error("--algo multi requires --l")
    if args.workers < 1:
        parser.error("--workers must be at least 1")


def cmd_gen(args) -> int:
    doc = generate_instance(
        args.family,
        args.n,
        args.k,
        args.m,
        args.seed,
        density=args.density,
        universe=args.universe,
        clients=args.clients,
        exponent=args.exponent,
    )
    _emit(dumps_canonical(instance_payload(doc)), args.out)
    return 0


def cmd_solve(args, parser) -> int:
    _check_solver_args(parser, args)
    budgets = resolve_budgets(args.budget)
    doc = load_instance(args.instance)
    started = time.perf_counter()
    report, solver_block = _run_solver(doc, args, budgets)
    solve_seconds = time.perf_counter() - started
    print(f"solve wall time: {solve_seconds:.3f}s", file=sys.stderr)
    timings = {"solve_s": solve_seconds} if args.timings else None
    payload = report_payload(solver_block, _instance_summary(doc), report, timings=timings)
    _emit(dumps_canonical(payload), args.out)
    return 0


def cmd_compare(args, parser) -> int:
    _check_solver_args(parser, args)
    budgets = resolve_budgets(args.budget)
    doc = load_instance(args.instance)
    inst = doc.instance

    started = time.perf_counter()
    report, solver_block = _run_solver(doc, args, budgets)
    solve_seconds = time.perf_counter() - started

    started = time.perf_counter()
    pair = exact_pair_solve(inst, budget=budgets.oracle_tuples)
    relaxation = exact_p1_solve(inst, budget=budgets.oracle_tuples)
    menu = exact_multi_solve(inst, args.l, budget=budgets.oracle_tuples) if args.algo == "multi" else None
    oracle_seconds = time.perf_counter() - started
    print(f"solve wall time: {solve_seconds:.3f}s, oracle wall time: {oracle_seconds:.3f}s", file=sys.stderr)

    opt0, opt1 = pair.opt_value, relaxation.opt_value
    oracle_block: dict = {
        "opt0": opt0,
        "opt1": opt1,
        "achieved_ratio": report.objective / opt0 if opt0 > 0 else None,
        "p1_over_p0": opt1 / opt0 if opt0 > 0 else None,
    }
    target = opt0
    if menu is not None:
        oracle_block["opt_l"] = menu.opt_value
        oracle_block["achieved_ratio_l"] = report.objective / menu.opt_value if menu.opt_value > 0 else None
        target = menu.opt_value

    failures = []
    if report.objective < report.certified_ratio * target - TOLERANCE:
        failures.append(
            f"objective {report.objective!r} below the certified fraction "
            f"{report.certified_ratio!r} of the optimum {target!r}"
        )
    if opt1 < opt0 - TOLERANCE:
        failures.append(f"partition relaxation value {opt1!r} below the pair optimum {opt0!r}")

    timings = {"solve_s": solve_seconds, "oracle_s": oracle_seconds} if args.timings else None
    payload = report_payload(
        solver_block, _instance_summary(doc), report, oracle=oracle_block, timings=timings
    )
    _emit(dumps_canonical(payload), args.out)
    if failures:
        for failure in failures:
            print(f"guarantee check failed: {failure}", file=sys.stderr)
        return 1
    return 0


def cmd_bound(args) -> int:
    lines = []
    for rounds in args.T:
        for eps in args.eps:
            gamma = gamma_factor(rounds, eps)
            term = gamma * (0.5 + eps / args.m**0.5)
            factor = gamma_bound(rounds, eps, args.m, args.alpha)
            lines.append(
                f"T={rounds} eps={eps:g} gamma={gamma:.9f} term={term:.9f} factor={factor:.9f}"
            )
            if eps >= VACUOUS_EPS:
                print(
                    f"eps={eps:g} is at or above {VACUOUS_EPS:.6f}; the expectation bound is "
                    "vacuous and only the alpha/2 floor applies",
                    file=sys.stderr,
                )
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="menupick",
        description="Pick a menu of candidate item sets so every utility function "
        "gets the best set on the menu.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="generate a random instance file")
    gen.add_argument("--family", choices=FAMILIES, required=True)
    gen.add_argument("--n", type=int, required=True, help="ground set size")
    gen.add_argument("--k", type=int, required=True, help="cardinality bound per candidate")
    gen.add_argument("--m", type=int, required=True, help="number of functions")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--density", type=float, default=0.3, help="coverage inclusion probability")
    gen.add_argument("--universe", type=int, default=None, help="coverage universe size (default n)")
    gen.add_argument("--clients", type=int, default=None, help="facility client count (default n)")
    gen.add_argument("--exponent", type=float, default=0.5, help="concave family exponent")
    gen.add_argument("--out", default=None, help="write here instead of stdout")
    gen.set_defaults(handler=lambda args: cmd_gen(args))

    def add_solver_args(sub):
        sub.add_argument("instance", help="path to an instance file")
        sub.add_argument("--algo", choices=("enum", "sample", "multi"), required=True)
        sub.add_argument("--inner", choices=("greedy", "exact"), required=True)
        sub.add_argument("--T", type=int, default=None, help="rounds (sample only)")
        sub.add_argument("--l", type=int, default=None, help="menu size (multi only)")
        sub.add_argument("--seed", type=int, default=None, help="sampling seed (sample only)")
        sub.add_argument(
            "--eps",
            type=_float_list,
            default=None,
            help="comma-separated eps values for the expectation bound (sample only)",
        )
        sub.add_argument("--budget", action="append", default=[], metavar="NAME=VALUE")
        sub.add_argument("--workers", type=int, default=1)
        sub.add_argument("--timings", action="store_true", help="embed wall-clock timings in the report")
        sub.add_argument("--out", default=None, help="write the report here instead of stdout")

    solve = commands.add_parser("solve", help="run a solver on an instance file")
    add_solver_args(solve)
    solve.set_defaults(handler=lambda args: cmd_solve(args, solve))

    compare = commands.add_parser("compare", help="solve, then cross-check against the oracles")
    add_solver_args(compare)
    compare.set_defaults(handler=lambda args: cmd_compare(args, compare))

    bound = commands.add_parser("bound", help="tabulate sampled-solver bound factors")
    bound.add_argument("--T", type=_int_list, required=True, help="comma-separated round counts")
    bound.add_argument("--eps", type=_float_list, required=True, help="comma-separated eps values")
    bound.add_argument("--m", type=int, required=True, help="number of functions")
    bound.add_argument("--alpha", type=float, default=1.0, help="inner solver ratio")
    bound.add_argument("--out", default=None)
    bound.set_defaults(handler=lambda args: cmd_bound(args))

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MenupickError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
