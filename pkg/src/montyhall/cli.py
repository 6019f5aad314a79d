"""Command-line surface: exact analytics, simulations, sweeps, and the
session service launcher.

Commands print human-readable text by default; ``--format json`` emits one
top-level object ``{command, inputs, results, exact, verdict}`` and
``--format csv`` emits RFC-4180 rows with a mandatory header (column
layouts documented in the README). Exit codes: 0 success, 1 runtime or
self-check failure, 2 usage error.

The seed resolution order is: ``--seed`` flag, then the MONTY_SEED
environment variable, then the built-in default.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from fractions import Fraction
from typing import Any

from . import serialize
from .analytics import (
    INFINITE,
    enumerate_sample_space,
    game_two_win,
    posterior_given_opened,
)
from .model import BoxLabel, Decision
from .simulation import (
    SimulationConfig,
    Strategy,
    exact_rates,
    run,
    self_check,
    sweep_bias,
)

DEFAULT_SEED = 1729
DEFAULT_TRIALS = 100_000

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# argument helpers


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("MONTY_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as err:
            raise ValueError(f"MONTY_SEED must be an integer, got {env!r}") from err
    return DEFAULT_SEED


def _parse_strategy(name: str, p_switch: str | None) -> Strategy:
    kind = name.strip().lower()
    if kind == "mixed":
        if p_switch is None:
            raise ValueError("--strategy mixed requires --p-switch")
        return Strategy("mixed", serialize.parse_bias(p_switch, name="p-switch"))
    if p_switch is not None:
        raise ValueError("--p-switch only applies to --strategy mixed")
    return Strategy(kind)


def _parse_grid(spec: str) -> list[Fraction]:
    """A bias grid, either "start:stop:step" (inclusive) or a comma list."""
    text = spec.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid range must be start:stop:step, got {spec!r}")
        start, stop, step = (serialize.parse_bias(p, name="grid") for p in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        grid = []
        value = start
        while value <= stop:
            grid.append(value)
            value += step
        return grid
    return [serialize.parse_bias(part, name="grid") for part in text.split(",")]


def _fmt_rational(value: Fraction) -> str:
    return f"{value} (~{float(value):.6g})" if value.denominator != 1 else str(value)


def _fmt_ratio(value: Any) -> str:
    return "infinite" if value is INFINITE else _fmt_rational(value)


def _print_json(command: str, inputs: dict, results: Any, exact: Any = None, verdict: str | None = None) -> None:
    payload = {
        "command": command,
        "inputs": inputs,
        "results": results,
        "exact": exact,
        "verdict": verdict,
    }
    print(serialize.dumps(payload))


def _csv_writer():
    # csv's default dialect already gives RFC-4180 quoting and line endings.
    return csv.writer(sys.stdout)


def _rational_cells(value: Any) -> list:
    if value is INFINITE:
        return ["", "", "inf"]
    return [value.numerator, value.denominator, float(value)]


# ---------------------------------------------------------------------------
# commands


def cmd_exact(args: argparse.Namespace) -> int:
    bias = serialize.parse_bias(args.q)
    opened = serialize.parse_door(args.opened)
    report = posterior_given_opened(bias, opened)
    if args.format == "json":
        _print_json(
            "exact",
            {"q": serialize.rational_json(bias), "opened": opened.value},
            serialize.posterior_json(report),
        )
    elif args.format == "csv":
        writer = _csv_writer()
        writer.writerow(["q", "opened", "field", "num", "den", "approx"])
        for name, value in (
            ("p_switch_win", report.p_switch_win),
            ("p_stay_win", report.p_stay_win),
            ("bayes_ratio", report.bayes_ratio),
        ):
            writer.writerow([str(bias), opened.value, name] + _rational_cells(value))
    else:
        print(f"host bias q = {_fmt_rational(bias)}, host opened {opened.value}")
        print(f"P(win | switch) = {_fmt_rational(report.p_switch_win)}")
        print(f"P(win | stay)   = {_fmt_rational(report.p_stay_win)}")
        print(f"switch:stay odds = {_fmt_ratio(report.bayes_ratio)}")
    return EXIT_OK


def cmd_game2(args: argparse.Namespace) -> int:
    decision = serialize.parse_decision(args.decision)
    report = game_two_win(decision)
    if args.format == "json":
        _print_json("game2", {"decision": decision.value}, serialize.game_two_json(report))
    elif args.format == "csv":
        writer = _csv_writer()
        writer.writerow(["decision", "field", "num", "den", "approx"])
        writer.writerow([decision.value, "p_win_switch"] + _rational_cells(report.p_win_switch))
        writer.writerow([decision.value, "p_win_stay"] + _rational_cells(report.p_win_stay))
        for box, value in report.per_placement.items():
            writer.writerow([decision.value, f"p_win_given_car_{box.value}"] + _rational_cells(value))
    else:
        chosen = report.p_win_switch if decision is Decision.SWITCH else report.p_win_stay
        print(f"commit-then-reveal game, decision = {decision.value}")
        print(f"P(win) = {_fmt_rational(chosen)}  (bias never enters)")
        for box, value in report.per_placement.items():
            print(f"  P(win | car at {box.value}) = {_fmt_rational(value)}")
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    bias = serialize.parse_bias(args.q)
    atoms = enumerate_sample_space(bias)
    if args.format == "json":
        _print_json(
            "enumerate",
            {"q": serialize.rational_json(bias)},
            {"atoms": serialize.atoms_json(atoms)},
        )
    elif args.format == "csv":
        writer = _csv_writer()
        writer.writerow(["q", "car", "switch_target", "result", "num", "den", "approx"])
        for atom in atoms:
            writer.writerow(
                [str(bias), atom.car.value, atom.switch_target.value, atom.result.value]
                + _rational_cells(atom.probability)
            )
    else:
        print(f"sample space at q = {_fmt_rational(bias)} (car, switch target, result):")
        for atom in atoms:
            print(
                f"  car={atom.car.value}  switch->{atom.switch_target.value}  "
                f"{atom.result.value:4s}  p = {_fmt_rational(atom.probability)}"
            )
        print(f"  total = {_fmt_rational(sum(a.probability for a in atoms))}")
    return EXIT_OK


def _build_config(args: argparse.Namespace) -> SimulationConfig:
    return SimulationConfig(
        variant=serialize.parse_variant(args.variant),
        bias=serialize.parse_bias(args.q),
        strategy=_parse_strategy(args.strategy, args.p_switch),
        trials=args.trials,
        seed=_resolve_seed(args.seed),
        batch_size=args.batch_size,
    ).validate()


def _simulate_csv(result, exact) -> None:
    writer = _csv_writer()
    writer.writerow(["metric", "empirical", "exact_num", "exact_den", "exact_approx", "delta", "games"])
    writer.writerow(
        ["unconditional", result.empirical_rate]
        + _rational_cells(exact.unconditional)
        + [result.empirical_rate - float(exact.unconditional), result.config.trials]
    )
    for door, tally in result.wins_given_opened.items():
        rate = result.conditional_rates[door]
        cells = _rational_cells(exact.conditional[door])
        delta = "" if rate is None else rate - float(exact.conditional[door])
        writer.writerow([f"conditional_{door.value}", "" if rate is None else rate] + cells + [delta, tally.games])
        writer.writerow(
            [f"open_fraction_{door.value}", tally.games / result.config.trials]
            + _rational_cells(exact.open_fraction[door])
            + [tally.games / result.config.trials - float(exact.open_fraction[door]), result.config.trials]
        )


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _build_config(args)
    result = run(config)
    exact = exact_rates(config)
    check = self_check(result)
    verdict = "pass" if check.passed else "fail"

    if args.format == "json":
        _print_json(
            "simulate",
            serialize.config_json(config),
            serialize.result_json(result),
            serialize.exact_rates_json(exact),
            verdict,
        )
    elif args.format == "csv":
        _simulate_csv(result, exact)
    else:
        print(
            f"variant {config.variant.value}, q = {_fmt_rational(config.bias)}, "
            f"strategy = {config.strategy.kind}, trials = {config.trials}, seed = {config.seed}"
        )
        lo, hi = result.empirical_ci95
        print(
            f"wins {result.wins_total}/{config.trials}: rate {result.empirical_rate:.6f} "
            f"[{lo:.6f}, {hi:.6f}]  exact {_fmt_rational(exact.unconditional)}"
        )
        for door, tally in result.wins_given_opened.items():
            rate = result.conditional_rates[door]
            if rate is None:
                print(f"  opened {door.value}: no games, rate undefined")
                continue
            clo, chi = result.conditional_ci95[door]
            print(
                f"  opened {door.value}: {tally.wins}/{tally.games} rate {rate:.6f} "
                f"[{clo:.6f}, {chi:.6f}]  exact {_fmt_rational(exact.conditional[door])}"
            )
        print(f"elapsed {result.elapsed:.3f}s")
        if check.passed:
            print("self-check: PASS (empirical rates within 3 sigma of exact)")
        else:
            print("self-check: FAIL")
            for failure in check.failures:
                print(f"  {failure}")
    return EXIT_OK if check.passed else EXIT_RUNTIME


def cmd_sweep(args: argparse.Namespace) -> int:
    grid = _parse_grid(args.grid)
    base = SimulationConfig(
        variant=serialize.parse_variant(args.variant),
        bias=Fraction(1, 2),  # replaced per grid point
        strategy=_parse_strategy(args.strategy, args.p_switch),
        trials=args.trials,
        seed=_resolve_seed(args.seed),
        batch_size=args.batch_size,
    )
    rows = sweep_bias(grid, base)

    if args.format == "json":
        _print_json(
            "sweep",
            {
                "grid": [serialize.rational_json(q) for q in grid],
                "variant": base.variant.value,
                "strategy": serialize.strategy_json(base.strategy),
                "trials": base.trials,
                "seed": base.seed,
            },
            [
                {
                    "q": serialize.rational_json(row.bias),
                    "seed": row.seed,
                    "result": serialize.result_json(row.result),
                    "exact": serialize.exact_rates_json(row.exact),
                }
                for row in rows
            ],
        )
    elif args.format == "csv":
        writer = _csv_writer()
        writer.writerow(
            ["q_num", "q_den", "q", "metric", "empirical", "exact_num", "exact_den", "exact", "delta", "games", "seed"]
        )
        for row in rows:
            q = row.bias
            head = [q.numerator, q.denominator, float(q)]
            writer.writerow(
                head
                + ["unconditional", row.result.empirical_rate]
                + _rational_cells(row.exact.unconditional)[0:2]
                + [float(row.exact.unconditional), row.delta_unconditional(), row.result.config.trials, row.seed]
            )
            for door, tally in row.result.wins_given_opened.items():
                rate = row.result.conditional_rates[door]
                delta = row.delta_conditional(door)
                writer.writerow(
                    head
                    + [
                        f"conditional_{door.value}",
                        "" if rate is None else rate,
                        row.exact.conditional[door].numerator,
                        row.exact.conditional[door].denominator,
                        float(row.exact.conditional[door]),
                        "" if delta is None else delta,
                        tally.games,
                        row.seed,
                    ]
                )
    else:
        print(
            f"bias sweep, variant {base.variant.value}, strategy {base.strategy.kind}, "
            f"{base.trials} trials per point"
        )
        print(f"{'q':>8} {'cond R':>10} {'exact':>10} {'cond L':>10} {'exact':>10} {'uncond':>10} {'exact':>8}")
        for row in rows:
            rate_r = row.result.conditional_rates[BoxLabel.R]
            rate_l = row.result.conditional_rates[BoxLabel.L]
            print(
                f"{str(row.bias):>8} "
                f"{'-' if rate_r is None else f'{rate_r:10.6f}'} "
                f"{float(row.exact.conditional[BoxLabel.R]):10.6f} "
                f"{'-' if rate_l is None else f'{rate_l:10.6f}'} "
                f"{float(row.exact.conditional[BoxLabel.L]):10.6f} "
                f"{row.result.empirical_rate:10.6f} "
                f"{float(row.exact.unconditional):8.4f}"
            )
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        default_bias=serialize.parse_bias(args.q_default, name="q-default"),
        cors_origins=args.cors_origin or ["*"],
        transcript_log=args.transcript_log,
        rng_seed=args.session_seed,
    )
    try:
        uvicorn.run(app, host=args.bind, port=args.port, log_level="warning")
    except SystemExit as exc:  # uvicorn exits 3 on startup failures like a taken port
        return EXIT_RUNTIME if exc.code else EXIT_OK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("human", "json", "csv"), default="human", help="output format"
    )


def _add_simulation_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--variant", default="I", help="game variant: I (reveal first) or II (commit first)")
    parser.add_argument(
        "--strategy",
        default="switch",
        help="contestant policy: switch, stay, mixed, bias-aware",
    )
    parser.add_argument("--p-switch", default=None, help="switch probability for --strategy mixed")
    parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="number of games")
    parser.add_argument(
        "--seed", type=int, default=None, help=f"64-bit seed (default MONTY_SEED or {DEFAULT_SEED})"
    )
    parser.add_argument("--batch-size", type=int, default=0, help="work-unit size (never affects results)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monty",
        description="Exact analytics and Monte Carlo verification for the biased-host three-box game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="posterior win probabilities after a reveal")
    p.add_argument("--q", required=True, help="host bias as a/b or decimal")
    p.add_argument("--opened", required=True, help="door the host opened: L or R")
    _add_format(p)
    p.set_defaults(handler=cmd_exact)

    p = sub.add_parser("game2", help="commit-then-reveal win probabilities")
    p.add_argument("--decision", required=True, help="switch or stay")
    _add_format(p)
    p.set_defaults(handler=cmd_game2)

    p = sub.add_parser("enumerate", help="the four-atom sample space at a given bias")
    p.add_argument("--q", required=True, help="host bias as a/b or decimal")
    _add_format(p)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("simulate", help="seeded Monte Carlo run with exact self-check")
    p.add_argument("--q", required=True, help="host bias as a/b or decimal")
    _add_simulation_flags(p)
    _add_format(p)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("sweep", help="one run per bias over a grid")
    p.add_argument("--grid", required=True, help='biases: "0:1:1/4" (inclusive) or "0,1/2,1"')
    _add_simulation_flags(p)
    _add_format(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("serve", help="run the live session HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--q-default", default="1/2", help="bias for sessions that do not specify one")
    p.add_argument(
        "--cors-origin",
        action="append",
        default=None,
        help="allowed browser origin (repeatable; default *)",
    )
    p.add_argument("--transcript-log", default=None, help="append-only JSONL of resolved sessions")
    p.add_argument("--session-seed", type=int, default=None, help="seed the session RNG (demos/tests)")
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
