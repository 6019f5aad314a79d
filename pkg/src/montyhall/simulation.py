"""Seeded Monte Carlo engine for both game variants.

A run plays ``trials`` games under a fixed (variant, bias, strategy). All
randomness is counter-based (see ``rng``): trial i reads its car-placement
and host draws from slots (i, CAR_SLOT) and (i, HOST_SLOT), so results are
independent of batch partitioning and identical between the vectorized
default engine and the scalar reference engine that routes every trial
through ``model.play``. The test suite holds the two engines to exact
agreement.

Exact expectations come from the analytics module; this layer only ever
introduces floating point in the empirical estimates and their intervals.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from . import rng
from .analytics import door_open_probability, posterior_given_opened
from .model import (
    BoxLabel,
    Decision,
    GameTranscript,
    GameVariant,
    host_choose,
    play,
    validate_bias,
)

# Car placement decodes a draw index 0, 1, 2 to a box in this order.
CAR_ORDER = (BoxLabel.T, BoxLabel.L, BoxLabel.R)

DEFAULT_BATCH_SIZE = 1 << 16


@dataclass(frozen=True)
class Strategy:
    """Contestant policy.

    kind is one of "stay", "switch", "mixed", "bias-aware". Mixed switches
    with the exact probability ``p_switch`` (an independent draw per trial).
    Bias-aware switches exactly when the posterior for the door actually
    opened is at least 1/2 (ties switch); it conditions on the reveal, so
    it is only valid in Game I.
    """

    kind: str
    p_switch: Fraction | None = None


ALWAYS_STAY = Strategy("stay")
ALWAYS_SWITCH = Strategy("switch")
BIAS_AWARE = Strategy("bias-aware")


def mixed(p_switch: Fraction) -> Strategy:
    return Strategy("mixed", p_switch)


_STRATEGY_KINDS = ("stay", "switch", "mixed", "bias-aware")


@dataclass(frozen=True)
class SimulationConfig:
    variant: GameVariant
    bias: Fraction
    strategy: Strategy
    trials: int
    seed: int
    batch_size: int = 0  # 0 means min(trials, DEFAULT_BATCH_SIZE)

    def __post_init__(self) -> None:
        if self.batch_size == 0 and isinstance(self.trials, int) and self.trials >= 1:
            object.__setattr__(self, "batch_size", min(self.trials, DEFAULT_BATCH_SIZE))

    def validate(self) -> "SimulationConfig":
        validate_bias(self.bias)
        rng.validate_seed(self.seed)
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if not 1 <= self.batch_size <= self.trials:
            raise ValueError(
                f"batch_size must lie in [1, trials], got {self.batch_size} for {self.trials} trials"
            )
        if self.strategy.kind not in _STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind {self.strategy.kind!r}")
        if self.strategy.kind == "mixed":
            p = self.strategy.p_switch
            if not isinstance(p, Fraction) or not 0 <= p <= 1:
                raise ValueError(f"mixed strategy needs an exact p_switch in [0, 1], got {p!r}")
        elif self.strategy.p_switch is not None:
            raise ValueError("p_switch only applies to the mixed strategy")
        if self.strategy.kind == "bias-aware" and self.variant is not GameVariant.GAME_I:
            raise ValueError("bias-aware strategy conditions on the opened door; Game I only")
        return self


@dataclass(frozen=True)
class ExactRates:
    """Exact counterparts of a run's empirical estimates."""

    unconditional: Fraction
    conditional: dict[BoxLabel, Fraction]
    open_fraction: dict[BoxLabel, Fraction]


def _switch_probability_by_door(config: SimulationConfig) -> dict[BoxLabel, Fraction]:
    """P(strategy switches | host opened door), exact."""
    kind = config.strategy.kind
    if kind == "switch":
        p = {door: Fraction(1) for door in (BoxLabel.L, BoxLabel.R)}
    elif kind == "stay":
        p = {door: Fraction(0) for door in (BoxLabel.L, BoxLabel.R)}
    elif kind == "mixed":
        p = {door: config.strategy.p_switch for door in (BoxLabel.L, BoxLabel.R)}
    else:  # bias-aware
        p = {
            door: Fraction(1)
            if posterior_given_opened(config.bias, door).p_switch_win >= Fraction(1, 2)
            else Fraction(0)
            for door in (BoxLabel.L, BoxLabel.R)
        }
    return p


def exact_rates(config: SimulationConfig) -> ExactRates:
    """What the empirical rates converge to, from the closed forms."""
    switch_p = _switch_probability_by_door(config)
    conditional: dict[BoxLabel, Fraction] = {}
    open_fraction: dict[BoxLabel, Fraction] = {}
    for door in (BoxLabel.L, BoxLabel.R):
        report = posterior_given_opened(config.bias, door)
        s = switch_p[door]
        conditional[door] = s * report.p_switch_win + (1 - s) * report.p_stay_win
        open_fraction[door] = door_open_probability(config.bias, door)
    unconditional = sum(open_fraction[d] * conditional[d] for d in conditional)
    return ExactRates(
        unconditional=unconditional, conditional=conditional, open_fraction=open_fraction
    )


@dataclass(frozen=True)
class DoorTally:
    wins: int
    games: int


@dataclass(frozen=True)
class SimulationResult:
    config: SimulationConfig
    wins_total: int
    wins_given_opened: dict[BoxLabel, DoorTally]
    empirical_rate: float
    empirical_ci95: tuple[float, float]
    conditional_rates: dict[BoxLabel, float | None]
    conditional_ci95: dict[BoxLabel, tuple[float, float] | None]
    elapsed: float


# ---------------------------------------------------------------------------
# engines


@dataclass
class _Tally:
    wins: int = 0
    games: int = 0
    by_door: dict[BoxLabel, list[int]] = field(
        default_factory=lambda: {BoxLabel.L: [0, 0], BoxLabel.R: [0, 0]}
    )

    def merge(self, other: "_Tally") -> None:
        # Associative and commutative, so batch scheduling cannot matter.
        self.wins += other.wins
        self.games += other.games
        for door in self.by_door:
            self.by_door[door][0] += other.by_door[door][0]
            self.by_door[door][1] += other.by_door[door][1]


def _run_batch_vector(config: SimulationConfig, start: int, stop: int) -> _Tally:
    u_car = rng.draw_u53_array(config.seed, start, stop, rng.CAR_SLOT)
    u_host = rng.draw_u53_array(config.seed, start, stop, rng.HOST_SLOT)
    car = (np.uint64(3) * u_car) >> np.uint64(rng.DRAW_BITS)  # 0=T, 1=L, 2=R

    host_threshold = np.uint64(rng.threshold_u53(config.bias))
    opens_right = (car == 1) | ((car == 0) & (u_host < host_threshold))

    kind = config.strategy.kind
    if kind == "switch":
        switches = np.ones(stop - start, dtype=bool)
    elif kind == "stay":
        switches = np.zeros(stop - start, dtype=bool)
    elif kind == "mixed":
        u_mix = rng.draw_u53_array(config.seed, start, stop, rng.MIX_SLOT)
        switches = u_mix < np.uint64(rng.threshold_u53(config.strategy.p_switch))
    else:  # bias-aware
        by_door = _switch_probability_by_door(config)
        switches = np.where(
            opens_right, by_door[BoxLabel.R] == 1, by_door[BoxLabel.L] == 1
        )

    wins = np.where(switches, car != 0, car == 0)

    tally = _Tally()
    tally.games = stop - start
    tally.wins = int(np.count_nonzero(wins))
    games_right = int(np.count_nonzero(opens_right))
    wins_right = int(np.count_nonzero(wins & opens_right))
    tally.by_door[BoxLabel.R] = [wins_right, games_right]
    tally.by_door[BoxLabel.L] = [tally.wins - wins_right, tally.games - games_right]
    return tally


def play_trial(config: SimulationConfig, index: int) -> GameTranscript:
    """Play trial ``index`` through ``model.play``; the scalar reference path."""
    u_car = rng.draw_u53(config.seed, index, rng.CAR_SLOT)
    car = CAR_ORDER[rng.car_index_from_u53(u_car)]
    host_draw = rng.draw_unit(config.seed, index, rng.HOST_SLOT)

    kind = config.strategy.kind
    if kind == "switch":
        decision = Decision.SWITCH
    elif kind == "stay":
        decision = Decision.STAY
    elif kind == "mixed":
        mix_draw = rng.draw_unit(config.seed, index, rng.MIX_SLOT)
        decision = Decision.SWITCH if mix_draw < config.strategy.p_switch else Decision.STAY
    else:  # bias-aware: peek at the door the host will open
        opened = host_choose(car, config.bias, host_draw)
        report = posterior_given_opened(config.bias, opened)
        decision = (
            Decision.SWITCH if report.p_switch_win >= Fraction(1, 2) else Decision.STAY
        )
    return play(config.variant, car, config.bias, decision, host_draw, seed_index=index)


def _run_batch_scalar(config: SimulationConfig, start: int, stop: int) -> _Tally:
    tally = _Tally()
    tally.games = stop - start
    for index in range(start, stop):
        transcript = play_trial(config, index)
        won = transcript.outcome.value == "win"
        tally.wins += won
        door = tally.by_door[transcript.host_opened]
        door[0] += won
        door[1] += 1
    return tally


def run(config: SimulationConfig, engine: str = "vector") -> SimulationResult:
    """Play the configured number of games and tally win rates.

    ``engine`` selects "vector" (numpy, the default) or "scalar" (every
    trial through ``model.play``); both produce identical tallies.
    """
    config.validate()
    batch_fn = {"vector": _run_batch_vector, "scalar": _run_batch_scalar}[engine]

    started = time.perf_counter()
    total = _Tally()
    for start in range(0, config.trials, config.batch_size):
        stop = min(start + config.batch_size, config.trials)
        total.merge(batch_fn(config, start, stop))
    elapsed = time.perf_counter() - started

    conditional_rates: dict[BoxLabel, float | None] = {}
    conditional_ci: dict[BoxLabel, tuple[float, float] | None] = {}
    tallies: dict[BoxLabel, DoorTally] = {}
    for door in (BoxLabel.L, BoxLabel.R):
        wins, games = total.by_door[door]
        tallies[door] = DoorTally(wins=wins, games=games)
        if games == 0:
            # Explicitly undefined rather than 0/0 or NaN.
            conditional_rates[door] = None
            conditional_ci[door] = None
        else:
            conditional_rates[door] = wins / games
            conditional_ci[door] = wilson_interval(wins, games)

    return SimulationResult(
        config=config,
        wins_total=total.wins,
        wins_given_opened=tallies,
        empirical_rate=total.wins / config.trials,
        empirical_ci95=wilson_interval(total.wins, config.trials),
        conditional_rates=conditional_rates,
        conditional_ci95=conditional_ci,
        elapsed=elapsed,
    )


# ---------------------------------------------------------------------------
# estimator utilities


def wilson_interval(
    wins: int, games: int, confidence: float = 0.95
) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Chosen over the Wald interval for its correct behavior when the
    observed rate sits at 0 or 1 (the exact-forced endpoints of this game).
    """
    if games < 1:
        raise ValueError(f"games must be >= 1, got {games}")
    if not 0 <= wins <= games:
        raise ValueError(f"wins must lie in [0, games], got {wins}/{games}")
    if not 0 < confidence < 1:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence}")
    z = NormalDist().inv_cdf((1 + confidence) / 2)
    n = games
    phat = wins / n
    denom = 1 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom
    low = 0.0 if wins == 0 else max(0.0, center - half)
    high = 1.0 if wins == games else min(1.0, center + half)
    return (low, high)


def within_three_sigma(observed: float, expected: Fraction, n: int) -> bool:
    """Three-sigma binomial agreement check against an exact expectation.

    When the expectation is 0 or 1 the sampling distribution is degenerate
    (sigma = 0) and the observed rate must match exactly.
    """
    if n == 0:
        return True  # nothing observed, nothing to contradict
    p = float(expected)
    if expected == 0 or expected == 1:
        return observed == p
    sigma = math.sqrt(p * (1 - p) / n)
    return abs(observed - p) < 3 * sigma


@dataclass(frozen=True)
class SelfCheck:
    """Outcome of comparing one run against its exact expectations."""

    passed: bool
    failures: tuple[str, ...]


def self_check(result: SimulationResult) -> SelfCheck:
    """Compare empirical rates of a run to the exact analytics values."""
    config = result.config
    exact = exact_rates(config)
    failures: list[str] = []

    if not within_three_sigma(result.empirical_rate, exact.unconditional, config.trials):
        failures.append(
            f"unconditional rate {result.empirical_rate:.6f} outside 3 sigma of {exact.unconditional}"
        )
    for door in (BoxLabel.L, BoxLabel.R):
        tally = result.wins_given_opened[door]
        if tally.games and not within_three_sigma(
            result.conditional_rates[door], exact.conditional[door], tally.games
        ):
            failures.append(
                f"conditional rate on {door.value} {result.conditional_rates[door]:.6f} "
                f"outside 3 sigma of {exact.conditional[door]}"
            )
        observed_fraction = tally.games / config.trials
        if not within_three_sigma(
            observed_fraction, exact.open_fraction[door], config.trials
        ):
            failures.append(
                f"{door.value}-door frequency {observed_fraction:.6f} "
                f"outside 3 sigma of {exact.open_fraction[door]}"
            )
    return SelfCheck(passed=not failures, failures=tuple(failures))


# ---------------------------------------------------------------------------
# bias sweeps


@dataclass(frozen=True)
class SweepRow:
    bias: Fraction
    seed: int
    result: SimulationResult
    exact: ExactRates

    def delta_unconditional(self) -> float:
        return self.result.empirical_rate - float(self.exact.unconditional)

    def delta_conditional(self, door: BoxLabel) -> float | None:
        rate = self.result.conditional_rates[door]
        if rate is None:
            return None
        return rate - float(self.exact.conditional[door])


def sweep_bias(grid: list[Fraction], base_config: SimulationConfig) -> list[SweepRow]:
    """One run per grid bias, each with a decorrelated derived seed.

    The exact analytics values ride along in every row so a consumer can
    see the conditional column trace 1/(1+q) while the unconditional column
    stays flat at 2/3.
    """
    if not grid:
        raise ValueError("bias grid must be non-empty")
    rows = []
    for index, bias in enumerate(grid):
        seed = rng.derive_seed(base_config.seed, index)
        config = replace(base_config, bias=bias, seed=seed)
        try:
            config.validate()
            result = run(config)
        except ValueError as err:
            raise ValueError(f"sweep point q={bias}: {err}") from err
        rows.append(SweepRow(bias=bias, seed=seed, result=result, exact=exact_rates(config)))
    return rows
