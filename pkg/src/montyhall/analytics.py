"""Closed-form win probabilities, in exact rational arithmetic.

Two independent routes compute the Game I posterior: a Bayes-rule
derivation (``posterior_given_opened``) and a four-atom sample-space
enumeration (``posterior_from_sample_space``). They must agree exactly for
every bias, which the test suite checks on a dense grid. Game II totals and
the long-series unconditional rate round out the set.

No floating point anywhere in this module; callers that need decimals
convert at the edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import BoxLabel, Decision, Outcome, other_closable_door, validate_bias


class InvalidDoorError(ValueError):
    """An opened-door argument was not one of the closable doors L, R."""


class _InfiniteRatio:
    """Distinguished marker for an infinite posterior odds ratio.

    Returned instead of an error because the posterior pair behind it
    (switch wins with probability 1, stay with probability 0) is perfectly
    well defined; only the quotient degenerates.
    """

    _instance = None

    def __new__(cls) -> "_InfiniteRatio":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _InfiniteRatio()

Ratio = Fraction | _InfiniteRatio


@dataclass(frozen=True)
class PosteriorReport:
    """Conditional win probabilities after the host opened a given door."""

    opened: BoxLabel
    p_switch_win: Fraction
    p_stay_win: Fraction
    bayes_ratio: Ratio


@dataclass(frozen=True)
class SampleSpaceAtom:
    """One combined event (car placement, switch target, result)."""

    car: BoxLabel
    switch_target: BoxLabel
    result: Outcome
    probability: Fraction


@dataclass(frozen=True)
class GameIIReport:
    """Game II win probabilities for both pure strategies.

    ``per_placement`` holds P(win | car at box) for the queried decision;
    the values are 0 or 1 for pure strategies.
    """

    p_win_switch: Fraction
    p_win_stay: Fraction
    per_placement: dict[BoxLabel, Fraction]


_THIRD = Fraction(1, 3)


def _require_opened(opened: BoxLabel) -> None:
    if opened not in (BoxLabel.L, BoxLabel.R):
        raise InvalidDoorError(f"opened door must be L or R, got {opened}")


def free_choice_probability(bias: Fraction, opened: BoxLabel) -> Fraction:
    """Probability that a free host (car at T) opens the given door."""
    _require_opened(opened)
    return bias if opened is BoxLabel.R else 1 - bias


def door_open_probability(bias: Fraction, opened: BoxLabel) -> Fraction:
    """Unconditional probability that the host opens the given door.

    By total probability over the car placement: the host is forced to this
    door in one placement (probability 1/3) and free in another, giving
    (1 + q)/3 for R and (2 - q)/3 for L.
    """
    validate_bias(bias)
    _require_opened(opened)
    forced = _THIRD  # car behind the other closable door
    free = _THIRD * free_choice_probability(bias, opened)
    return forced + free


def _ratio(numer: Fraction, denom: Fraction) -> Ratio:
    return INFINITE if denom == 0 else numer / denom


def posterior_given_opened(bias: Fraction, opened: BoxLabel) -> PosteriorReport:
    """Bayes-route posterior after observing which door the host opened.

    Switching wins with probability 1/(1 + h), where h is the host's
    free-choice probability for the door he actually opened (h = q when he
    opened R, 1 - q when he opened L). The stay-side probability is the
    exact complement; the two always sum to 1.
    """
    validate_bias(bias)
    _require_opened(opened)
    h = free_choice_probability(bias, opened)
    p_switch = Fraction(1) / (1 + h)
    p_stay = 1 - p_switch
    return PosteriorReport(
        opened=opened,
        p_switch_win=p_switch,
        p_stay_win=p_stay,
        bayes_ratio=_ratio(p_switch, p_stay),
    )


def bayes_ratio(bias: Fraction) -> Ratio:
    """Posterior odds of switch over stay after the host opens R: 1/q.

    At q = 0 the host opening R proves the car is behind L, so the odds are
    the INFINITE marker rather than an error.
    """
    validate_bias(bias)
    if bias == 0:
        return INFINITE
    return Fraction(1) / bias


def enumerate_sample_space(bias: Fraction) -> list[SampleSpaceAtom]:
    """The four combined events (car, switch target, result) with their
    exact probabilities: (1-q)/3, q/3, 1/3, 1/3. They sum to exactly 1.

    When the car is at T the contestant's switch target is decided by the
    host's free choice (he leaves the other door closed), splitting the 1/3
    placement mass by the bias. The other two placements force his hand.
    """
    validate_bias(bias)
    return [
        # Car at T, host opened L (prob 1 - q), switch target R: lose.
        SampleSpaceAtom(BoxLabel.T, BoxLabel.R, Outcome.LOSE, _THIRD * (1 - bias)),
        # Car at T, host opened R (prob q), switch target L: lose.
        SampleSpaceAtom(BoxLabel.T, BoxLabel.L, Outcome.LOSE, _THIRD * bias),
        # Car at L, host forced to R, switch target L: win.
        SampleSpaceAtom(BoxLabel.L, BoxLabel.L, Outcome.WIN, _THIRD),
        # Car at R, host forced to L, switch target R: win.
        SampleSpaceAtom(BoxLabel.R, BoxLabel.R, Outcome.WIN, _THIRD),
    ]


def posterior_from_sample_space(bias: Fraction, opened: BoxLabel) -> PosteriorReport:
    """Sample-space route to the same posterior as ``posterior_given_opened``.

    Observing the opened door fixes the switch target to the door left
    closed; the atoms with the other target are ruled out, the survivors
    are renormalized, and the win mass among them is the switch posterior.
    """
    validate_bias(bias)
    _require_opened(opened)
    target = other_closable_door(opened)
    kept = [atom for atom in enumerate_sample_space(bias) if atom.switch_target is target]
    total = sum(atom.probability for atom in kept)
    # total is (1+q)/3 or (2-q)/3, never zero on [0, 1].
    win_mass = sum(atom.probability for atom in kept if atom.result is Outcome.WIN)
    p_switch = win_mass / total
    p_stay = 1 - p_switch
    return PosteriorReport(
        opened=opened,
        p_switch_win=p_switch,
        p_stay_win=p_stay,
        bayes_ratio=_ratio(p_switch, p_stay),
    )


_SWITCH_PER_PLACEMENT: dict[BoxLabel, Fraction] = {
    BoxLabel.T: Fraction(0),  # switching away from the car
    BoxLabel.L: Fraction(1),  # host forced to R, switch lands on L
    BoxLabel.R: Fraction(1),
}
_STAY_PER_PLACEMENT: dict[BoxLabel, Fraction] = {
    BoxLabel.T: Fraction(1),
    BoxLabel.L: Fraction(0),
    BoxLabel.R: Fraction(0),
}


def game_two_win(decision: Decision) -> GameIIReport:
    """Game II win probability for a pure strategy, by total probability
    over the car placement: switch wins 2/3, stay wins 1/3.

    The host's bias never enters: the decision is committed before any
    door opens.
    """
    p_switch = sum(_SWITCH_PER_PLACEMENT[box] * _THIRD for box in BoxLabel)
    p_stay = sum(_STAY_PER_PLACEMENT[box] * _THIRD for box in BoxLabel)
    if p_switch + p_stay != 1:
        raise RuntimeError("internal consistency failure: Game II totals must sum to 1")
    placements = _SWITCH_PER_PLACEMENT if decision is Decision.SWITCH else _STAY_PER_PLACEMENT
    return GameIIReport(
        p_win_switch=p_switch,
        p_win_stay=p_stay,
        per_placement=dict(placements),
    )


def long_run_switch_rate(bias: Fraction) -> Fraction:
    """Unconditional switch-win probability over a long series of Game I.

    Computed as the total-probability sum over which door the host opens,
    P(open R) * P(switch wins | R) + P(open L) * P(switch wins | L),
    then checked against 2/3. The value is not hard-coded: a regression in
    the posterior formulas trips the consistency check here.
    """
    validate_bias(bias)
    rate = sum(
        door_open_probability(bias, door) * posterior_given_opened(bias, door).p_switch_win
        for door in (BoxLabel.L, BoxLabel.R)
    )
    if rate != Fraction(2, 3):
        raise RuntimeError(
            f"internal consistency failure: long-run switch rate came out {rate}, expected 2/3"
        )
    return rate
