"""Command-line front end.

Subcommands: ``exact`` (enumerated success report for one protocol), ``scan``
(the advantage staircase as a table, CSV, or JSON), ``oracle`` (exhaustive
classical search, or evaluation of a strategy file), ``simulate`` (seeded
Monte Carlo), and ``verify`` (closed-form versus enumeration cross-checks).

Output is deterministic: fields appear in a fixed order, probabilities are
rendered with 7 significant digits in text and CSV (JSON carries full double
precision), files end every line with LF, and reports carry no timestamps.
JSON reports include a provenance block recording the tool version, the
parameters, and whether each value came from a closed form or an enumeration.

Exit status: 0 on success, 1 on failed verification, 2 on invalid arguments,
3 when the oracle search size exceeds its budget.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__, advantage, classical, montecarlo, quantum

OUTPUT_DIR_ENV = "RACSIM_OUTPUT_DIR"

_EXIT_VERIFY_FAILED = 1
_EXIT_BAD_ARGS = 2
_EXIT_INFEASIBLE = 3


def _fmt(x: float) -> str:
    return format(x, ".7g")


def _provenance(command: str, parameters: dict, values: dict) -> dict:
    return {
        "tool": "racsim",
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "values": values,
    }


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    directory = os.environ.get(OUTPUT_DIR_ENV)
    if directory and not os.path.isabs(output):
        output = os.path.join(directory, output)
    with open(output, "w", newline="\n") as handle:
        handle.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ----------------------------------------------------------------- exact ---


def _build_spec(args: argparse.Namespace) -> quantum.ProtocolSpec:
    if args.task == "full":
        return quantum.ProtocolSpec.full(args.d)
    if args.dprime is None:
        raise ValueError("--dprime is required for the restricted task")
    return quantum.ProtocolSpec(args.d, args.dprime, quantum.GatingVariant(args.variant))


def cmd_exact(args: argparse.Namespace) -> int:
    spec = _build_spec(args)
    report = quantum.exact_success(spec)
    closed = quantum.closed_form_restricted(spec.d, spec.r)
    parameters = {
        "task": args.task,
        "d": spec.d,
        "dprime": spec.d_prime,
        "variant": spec.variant.value,
    }
    rows = [
        (x1, x2, y, report.per_input[x1, x2, y - 1])
        for x1 in range(spec.d)
        for x2 in range(spec.d)
        for y in (1, 2)
    ]
    if args.format == "json":
        payload = {
            "provenance": _provenance(
                "exact",
                parameters,
                {
                    "average": "enumerated",
                    "worst_case": "enumerated",
                    "per_input": "enumerated",
                    "closed_form": "formula",
                },
            ),
            "average": report.average,
            "worst_case": report.worst_case,
            "closed_form": closed,
            "per_input": [[x1, x2, y, p] for x1, x2, y, p in rows],
        }
        _emit(_json_text(payload), args.output)
    else:
        lines = [
            f"task: {args.task}",
            f"d: {spec.d}",
            f"dprime: {spec.d_prime}",
            f"variant: {spec.variant.value}",
            f"average: {_fmt(report.average)}",
            f"worst_case: {_fmt(report.worst_case)}",
            f"closed_form: {_fmt(closed)}",
            "per-input success (x1 x2 y p):",
        ]
        lines += [f"{x1} {x2} {y} {_fmt(p)}" for x1, x2, y, p in rows]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


# ------------------------------------------------------------------ scan ---

_SCAN_COLUMNS = (
    "d",
    "dprime",
    "r_max",
    "p_classical",
    "p_quantum_full",
    "p_quantum_restricted",
    "ratio",
)


def cmd_scan(args: argparse.Namespace) -> int:
    rows = advantage.scan(args.dmin, args.dmax)
    parameters = {"dmin": args.dmin, "dmax": args.dmax}
    values = {
        "r_max": "strict-inequality search",
        "p_classical": "formula",
        "p_quantum_full": "formula",
        "p_quantum_restricted": f"formula, enumeration-verified for d <= {advantage.VERIFY_DMAX}",
    }
    if args.format == "csv":
        lines = [",".join(_SCAN_COLUMNS)]
        for row in rows:
            lines.append(
                f"{row.d},{row.d_prime},{row.r_max},{_fmt(row.p_classical)},"
                f"{_fmt(row.p_quantum_full)},{_fmt(row.p_quantum_restricted)},{_fmt(row.ratio)}"
            )
        _emit("\n".join(lines) + "\n", args.output)
    elif args.format == "json":
        payload = {
            "provenance": _provenance("scan", parameters, values),
            "rows": [
                {
                    "d": row.d,
                    "dprime": row.d_prime,
                    "r_max": row.r_max,
                    "p_classical": row.p_classical,
                    "p_quantum_full": row.p_quantum_full,
                    "p_quantum_restricted": row.p_quantum_restricted,
                    "ratio": row.ratio,
                }
                for row in rows
            ],
        }
        _emit(_json_text(payload), args.output)
    else:
        header = f"{'d':>4} {'dprime':>6} {'r_max':>5} {'classical':>11} {'full':>11} {'restricted':>11} {'ratio':>11}"
        lines = [header]
        for row in rows:
            lines.append(
                f"{row.d:>4} {row.d_prime:>6} {row.r_max:>5} {_fmt(row.p_classical):>11} "
                f"{_fmt(row.p_quantum_full):>11} {_fmt(row.p_quantum_restricted):>11} {_fmt(row.ratio):>11}"
            )
        _emit("\n".join(lines) + "\n", args.output)
    return 0


# ---------------------------------------------------------------- oracle ---


def _strategy_payload(strategy: classical.DeterministicStrategy) -> dict:
    return {
        "n": strategy.n,
        "d": strategy.d,
        "encoder": list(strategy.encoder),
        "decoders": [list(table) for table in strategy.decoders],
    }


def cmd_oracle(args: argparse.Namespace) -> int:
    if args.evaluate is not None:
        with open(args.evaluate) as handle:
            strategy = classical.strategy_from_text(handle.read())
        task = classical.ClassicalTask(strategy.n, strategy.d)
        report = classical.evaluate_strategy(task, strategy)
        parameters = {"evaluate": args.evaluate, "n": task.n, "d": task.d}
        if args.format == "json":
            payload = {
                "provenance": _provenance(
                    "oracle", parameters, {"average": "enumerated", "worst_case": "enumerated"}
                ),
                "average": report.average,
                "worst_case": report.worst_case,
                "strategy": _strategy_payload(strategy),
            }
            _emit(_json_text(payload), args.output)
        else:
            lines = [
                f"n: {task.n}",
                f"d: {task.d}",
                f"average: {_fmt(report.average)}",
                f"worst_case: {_fmt(report.worst_case)}",
            ]
            _emit("\n".join(lines) + "\n", args.output)
        return 0

    if args.n is None or args.d is None:
        raise ValueError("oracle needs --n and --d (or --evaluate <path>)")
    task = classical.ClassicalTask(args.n, args.d)
    result = classical.optimal_classical_bruteforce(
        task, max_tuples=args.max_tuples, allow_large=args.allow_large
    )
    if args.witness_out is not None:
        _emit(classical.strategy_to_text(result.witness), args.witness_out)
    closed = classical.closed_form_classical(args.n, args.d) if args.n in (2, 3) else None
    parameters = {
        "n": args.n,
        "d": args.d,
        "max_tuples": args.max_tuples,
        "allow_large": args.allow_large,
    }
    if args.format == "json":
        payload = {
            "provenance": _provenance(
                "oracle",
                parameters,
                {"optimum": "exhaustive search", "closed_form": "formula"},
            ),
            "optimum": result.optimum,
            "closed_form": closed,
            "strategies_examined": result.strategies_examined,
            "witness": _strategy_payload(result.witness),
        }
        _emit(_json_text(payload), args.output)
    else:
        lines = [
            f"n: {args.n}",
            f"d: {args.d}",
            f"optimum: {_fmt(result.optimum)}",
            f"strategies_examined: {result.strategies_examined}",
        ]
        if closed is not None:
            lines.append(f"closed_form: {_fmt(closed)}")
        lines.append("witness:")
        lines.append(classical.strategy_to_text(result.witness).rstrip("\n"))
        _emit("\n".join(lines) + "\n", args.output)
    return 0


# -------------------------------------------------------------- simulate ---


def cmd_simulate(args: argparse.Namespace) -> int:
    config = montecarlo.TrialConfig(trials=args.trials, seed=args.seed)
    if args.strategy is not None:
        with open(args.strategy) as handle:
            protocol = classical.strategy_from_text(handle.read())
        parameters = {"strategy": args.strategy, "n": protocol.n, "d": protocol.d}
    elif args.d is None:
        raise ValueError("--d is required unless --strategy is given")
    elif args.task == "majority":
        if args.n is None:
            raise ValueError("--n is required for the majority task")
        protocol = classical.majority_identity_strategy(classical.ClassicalTask(args.n, args.d))
        parameters = {"task": "majority", "n": args.n, "d": args.d}
    else:
        spec = _build_spec(args)
        protocol = spec
        parameters = {
            "task": args.task,
            "d": spec.d,
            "dprime": spec.d_prime,
            "variant": spec.variant.value,
        }
    parameters.update({"trials": args.trials, "seed": args.seed})
    estimate = montecarlo.simulate(protocol, config)
    if args.format == "json":
        payload = {
            "provenance": _provenance(
                "simulate", parameters, {"mean": "sampled", "stderr": "binomial formula"}
            ),
            "mean": estimate.mean,
            "stderr": estimate.stderr,
            "trials": estimate.trials,
        }
        _emit(_json_text(payload), args.output)
    else:
        lines = [
            f"trials: {estimate.trials}",
            f"seed: {args.seed}",
            f"mean: {_fmt(estimate.mean)}",
            f"stderr: {_fmt(estimate.stderr)}",
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


# ---------------------------------------------------------------- verify ---


def _verify_checks() -> list[tuple[str, bool, str]]:
    tol = 1e-12
    checks: list[tuple[str, bool, str]] = []

    worst = 0.0
    for d in range(2, 33):
        err = abs(
            quantum.exact_success(quantum.ProtocolSpec.full(d)).average
            - quantum.closed_form_full(d)
        )
        worst = max(worst, err)
    checks.append(("full protocol vs closed form, d=2..32", worst <= tol, f"max err {worst:.2e}"))

    worst = 0.0
    for d in range(2, 33):
        for r in range(1, d - 1):
            err = abs(
                quantum.exact_success(quantum.ProtocolSpec(d, d - r)).average
                - quantum.closed_form_restricted(d, r)
            )
            worst = max(worst, err)
    checks.append(
        ("restricted protocol vs closed form, d=2..32, 1<=r<d-1", worst <= tol, f"max err {worst:.2e}")
    )

    worst = 0.0
    for n in (2, 3):
        for d in range(2, 65):
            task = classical.ClassicalTask(n, d)
            got = classical.evaluate_strategy(task, classical.majority_identity_strategy(task))
            worst = max(worst, abs(got.average - classical.closed_form_classical(n, d)))
    checks.append(
        ("majority-identity vs classical closed forms, n=2,3, d=2..64", worst <= tol, f"max err {worst:.2e}")
    )

    ok = True
    detail = []
    for n, d in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        res = classical.optimal_classical_bruteforce(classical.ClassicalTask(n, d))
        target = classical.closed_form_classical(n, d)
        if abs(res.optimum - target) > tol:
            ok = False
            detail.append(f"({n},{d}) {res.optimum}!={target}")
    checks.append(
        ("oracle optimum vs classical closed forms", ok, "; ".join(detail) or "all sizes agree")
    )

    expected_bands = {**{d: 0 for d in range(2, 6)}, **{d: 1 for d in range(6, 12)},
                      **{d: 2 for d in range(12, 20)}, **{d: 3 for d in range(20, 30)},
                      **{d: 4 for d in range(30, 42)}, **{d: 5 for d in range(42, 51)}}
    rows = advantage.scan(2, 50)
    bad = [row.d for row in rows if expected_bands[row.d] != row.r_max]
    checks.append(("staircase bands, d=2..50", not bad, f"mismatches at {bad}" if bad else "bands match"))

    ties_ok = True
    for d, r in [(5, 1), (11, 2)]:
        exact = advantage.restricted_exact_value(d, r)
        if exact != Fraction(d + 1, 2 * d):
            ties_ok = False
    checks.append(("boundary ties are exact rational equalities", ties_ok, "(5,1) and (11,2)"))

    arg = advantage.ratio_argmax(2, 1000)
    checks.append(("full/classical ratio maximized at d=6", arg == 6, f"argmax {arg}"))

    literal = quantum.exact_success(
        quantum.ProtocolSpec(6, 5, quantum.GatingVariant.BOTH_OR_NOTHING)
    ).average
    analytic = (13.5 + 12.5 / math.sqrt(5)) / 36.0
    ordered = literal < classical.closed_form_classical(2, 6) < quantum.closed_form_restricted(6, 1)
    checks.append(
        (
            "literal gating regression at d=6, r=1",
            abs(literal - analytic) <= tol and ordered,
            f"value {literal:.10f}",
        )
    )
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    checks = _verify_checks()
    lines = []
    for name, ok, detail in checks:
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
    failed = sum(1 for _, ok, _ in checks if not ok)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    _emit("\n".join(lines) + "\n", args.output)
    return _EXIT_VERIFY_FAILED if failed else 0


# ------------------------------------------------------------------ main ---


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="racsim",
        description="Exact simulator and verification toolkit for d-level random access codes",
    )
    parser.add_argument("--version", action="version", version=f"racsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument(
            "--output",
            help=f"write the report to this path instead of stdout; relative paths "
            f"resolve under ${OUTPUT_DIR_ENV} when it is set",
        )

    def add_task(p: argparse.ArgumentParser, tasks: tuple[str, ...], d_required: bool = True) -> None:
        p.add_argument("--task", choices=tasks, default=tasks[0])
        p.add_argument("--d", type=int, required=d_required, help="alphabet size")
        p.add_argument("--dprime", type=int, help="quantum dimension (restricted task)")
        p.add_argument(
            "--variant",
            choices=[v.value for v in quantum.GatingVariant],
            default=quantum.GatingVariant.INDEPENDENT.value,
            help="gating rule for the restricted task",
        )

    p = sub.add_parser("exact", help="enumerate a protocol and print its success report")
    add_task(p, ("full", "restricted"))
    add_common(p, ("text", "json"))
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("scan", help="tabulate the dimensional-advantage staircase")
    p.add_argument("--dmin", type=int, default=2)
    p.add_argument("--dmax", type=int, default=50)
    add_common(p, ("text", "csv", "json"))
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", help="exhaustive classical search, or evaluate a strategy file")
    p.add_argument("--n", type=int, help="string length")
    p.add_argument("--d", type=int, help="alphabet size")
    p.add_argument(
        "--max-tuples",
        type=int,
        default=classical.DEFAULT_TUPLE_BUDGET,
        help="decoder-tuple budget for the plain search",
    )
    p.add_argument(
        "--allow-large",
        action="store_true",
        help="run over-budget sizes with message-relabeling symmetry reduction",
    )
    p.add_argument("--evaluate", metavar="PATH", help="evaluate a strategy table file instead")
    p.add_argument(
        "--witness-out", metavar="PATH", help="also write the witness as a standalone strategy table"
    )
    add_common(p, ("text", "json"))
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of a protocol's success rate")
    add_task(p, ("full", "restricted", "majority"), d_required=False)
    p.add_argument("--n", type=int, help="string length (majority task)")
    p.add_argument("--strategy", metavar="PATH", help="simulate a strategy table file")
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    add_common(p, ("text", "json"))
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="cross-check every closed form against enumeration")
    add_common(p, ("text",))
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except classical.InfeasibleSearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INFEASIBLE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
