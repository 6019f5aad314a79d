"""JSON encoding and parsing shared by the CLI and the HTTP service.

Schema conventions:

* every exact rational is the object ``{"num": int, "den": int, "approx": float}``;
* an infinite odds ratio is the JSON string ``"inf"`` (a ratio is not a
  rational, so it gets its own representation);
* enums serialize to their short string values ("I"/"II", "L"/"R"/"T",
  "switch"/"stay", "win"/"lose");
* undefined empirical rates (zero qualifying games) are ``null``.

Every ``*_json`` builder has a matching ``parse_*`` so printed reports
round-trip exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .analytics import (
    INFINITE,
    GameIIReport,
    PosteriorReport,
    Ratio,
    SampleSpaceAtom,
)
from .model import (
    BoxLabel,
    Decision,
    GameTranscript,
    GameVariant,
    Outcome,
)
from .simulation import (
    DoorTally,
    ExactRates,
    SimulationConfig,
    SimulationResult,
    Strategy,
)

_DOORS = (BoxLabel.L, BoxLabel.R)


# ---------------------------------------------------------------------------
# scalars


def rational_json(value: Fraction) -> dict[str, Any]:
    return {"num": value.numerator, "den": value.denominator, "approx": float(value)}


def parse_rational(payload: dict[str, Any]) -> Fraction:
    return Fraction(payload["num"], payload["den"])


def ratio_json(value: Ratio) -> dict[str, Any] | str:
    return "inf" if value is INFINITE else rational_json(value)


def parse_ratio(payload: dict[str, Any] | str) -> Ratio:
    return INFINITE if payload == "inf" else parse_rational(payload)


def parse_bias(value: str | int | float, name: str = "q") -> Fraction:
    """Parse a host bias given as "a/b", a decimal string, or a number.

    Floats convert through their shortest decimal representation, so a
    shell or JSON literal like 0.25 means exactly 1/4.
    """
    try:
        if isinstance(value, bool):
            raise ValueError("boolean is not a bias")
        if isinstance(value, (int, Fraction)):
            bias = Fraction(value)
        elif isinstance(value, float):
            bias = Fraction(str(value))
        elif isinstance(value, str):
            bias = Fraction(value.strip())
        else:
            raise ValueError(f"unsupported type {type(value).__name__}")
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"{name} must be a rational like 1/2 or 0.25: {value!r}") from err
    if not 0 <= bias <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {bias}")
    return bias


def parse_variant(value: str) -> GameVariant:
    normalized = str(value).strip().lower().removeprefix("game").strip()
    if normalized in ("1", "i"):
        return GameVariant.GAME_I
    if normalized in ("2", "ii"):
        return GameVariant.GAME_II
    raise ValueError(f"variant must be I or II (accepts 1/2/gameI/gameII), got {value!r}")


def parse_decision(value: str) -> Decision:
    normalized = str(value).strip().lower()
    if normalized == "switch":
        return Decision.SWITCH
    if normalized == "stay":
        return Decision.STAY
    raise ValueError(f"decision must be 'switch' or 'stay', got {value!r}")


def parse_door(value: str, name: str = "opened") -> BoxLabel:
    normalized = str(value).strip().upper()
    if normalized in ("L", "R"):
        return BoxLabel(normalized)
    raise ValueError(f"{name} must be L or R, got {value!r}")


# ---------------------------------------------------------------------------
# analytics reports


def posterior_json(report: PosteriorReport) -> dict[str, Any]:
    return {
        "opened": report.opened.value,
        "p_switch_win": rational_json(report.p_switch_win),
        "p_stay_win": rational_json(report.p_stay_win),
        "bayes_ratio": ratio_json(report.bayes_ratio),
    }


def parse_posterior(payload: dict[str, Any]) -> PosteriorReport:
    return PosteriorReport(
        opened=BoxLabel(payload["opened"]),
        p_switch_win=parse_rational(payload["p_switch_win"]),
        p_stay_win=parse_rational(payload["p_stay_win"]),
        bayes_ratio=parse_ratio(payload["bayes_ratio"]),
    )


def atoms_json(atoms: list[SampleSpaceAtom]) -> list[dict[str, Any]]:
    return [
        {
            "car": atom.car.value,
            "switch_target": atom.switch_target.value,
            "result": atom.result.value,
            "probability": rational_json(atom.probability),
        }
        for atom in atoms
    ]


def parse_atoms(payload: list[dict[str, Any]]) -> list[SampleSpaceAtom]:
    return [
        SampleSpaceAtom(
            car=BoxLabel(entry["car"]),
            switch_target=BoxLabel(entry["switch_target"]),
            result=Outcome(entry["result"]),
            probability=parse_rational(entry["probability"]),
        )
        for entry in payload
    ]


def game_two_json(report: GameIIReport) -> dict[str, Any]:
    return {
        "p_win_switch": rational_json(report.p_win_switch),
        "p_win_stay": rational_json(report.p_win_stay),
        "per_placement": {
            box.value: rational_json(p) for box, p in report.per_placement.items()
        },
    }


def parse_game_two(payload: dict[str, Any]) -> GameIIReport:
    return GameIIReport(
        p_win_switch=parse_rational(payload["p_win_switch"]),
        p_win_stay=parse_rational(payload["p_win_stay"]),
        per_placement={
            BoxLabel(box): parse_rational(p) for box, p in payload["per_placement"].items()
        },
    )


# ---------------------------------------------------------------------------
# simulation


def strategy_json(strategy: Strategy) -> dict[str, Any]:
    payload: dict[str, Any] = {"kind": strategy.kind}
    if strategy.p_switch is not None:
        payload["p_switch"] = rational_json(strategy.p_switch)
    return payload


def parse_strategy(payload: dict[str, Any]) -> Strategy:
    p_switch = payload.get("p_switch")
    return Strategy(
        kind=payload["kind"],
        p_switch=None if p_switch is None else parse_rational(p_switch),
    )


def config_json(config: SimulationConfig) -> dict[str, Any]:
    return {
        "variant": config.variant.value,
        "q": rational_json(config.bias),
        "strategy": strategy_json(config.strategy),
        "trials": config.trials,
        "seed": config.seed,
        "batch_size": config.batch_size,
    }


def parse_config(payload: dict[str, Any]) -> SimulationConfig:
    return SimulationConfig(
        variant=GameVariant(payload["variant"]),
        bias=parse_rational(payload["q"]),
        strategy=parse_strategy(payload["strategy"]),
        trials=payload["trials"],
        seed=payload["seed"],
        batch_size=payload["batch_size"],
    )


def _interval_json(interval: tuple[float, float] | None) -> list[float] | None:
    return None if interval is None else [interval[0], interval[1]]


def result_json(result: SimulationResult) -> dict[str, Any]:
    return {
        "config": config_json(result.config),
        "wins_total": result.wins_total,
        "wins_given_opened": {
            door.value: {"wins": tally.wins, "games": tally.games}
            for door, tally in result.wins_given_opened.items()
        },
        "empirical_rate": result.empirical_rate,
        "empirical_ci95": _interval_json(result.empirical_ci95),
        "conditional_rates": {
            door.value: result.conditional_rates[door] for door in _DOORS
        },
        "conditional_ci95": {
            door.value: _interval_json(result.conditional_ci95[door]) for door in _DOORS
        },
        "elapsed": result.elapsed,
    }


def parse_result(payload: dict[str, Any]) -> SimulationResult:
    def interval(value: list[float] | None) -> tuple[float, float] | None:
        return None if value is None else (value[0], value[1])

    return SimulationResult(
        config=parse_config(payload["config"]),
        wins_total=payload["wins_total"],
        wins_given_opened={
            BoxLabel(door): DoorTally(wins=entry["wins"], games=entry["games"])
            for door, entry in payload["wins_given_opened"].items()
        },
        empirical_rate=payload["empirical_rate"],
        empirical_ci95=interval(payload["empirical_ci95"]),
        conditional_rates={
            BoxLabel(door): rate for door, rate in payload["conditional_rates"].items()
        },
        conditional_ci95={
            BoxLabel(door): interval(ci) for door, ci in payload["conditional_ci95"].items()
        },
        elapsed=payload["elapsed"],
    )


def exact_rates_json(exact: ExactRates) -> dict[str, Any]:
    return {
        "unconditional": rational_json(exact.unconditional),
        "conditional": {door.value: rational_json(exact.conditional[door]) for door in _DOORS},
        "open_fraction": {
            door.value: rational_json(exact.open_fraction[door]) for door in _DOORS
        },
    }


def transcript_json(transcript: GameTranscript) -> dict[str, Any]:
    return {
        "variant": transcript.variant.value,
        "car": transcript.car.value,
        "q": rational_json(transcript.bias),
        "host_opened": transcript.host_opened.value,
        "decision": transcript.decision.value,
        "outcome": transcript.outcome.value,
        "seed_index": transcript.seed_index,
        "decision_before_reveal": transcript.decision_before_reveal,
    }


def dumps(payload: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent."""
    return json.dumps(payload, indent=2, sort_keys=True)
