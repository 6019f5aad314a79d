"""Game mechanics for the three-box game with a biased host.

Everything is modeled in the canonical frame: after the contestant states
her pick, the table is rotated so her box sits at position T and the two
closable doors are L and R. The host knows where the car is, never opens T,
and never opens the car's box. When the car is at T he is free to choose,
and the bias q is the probability that he opens R in that situation.

Note on conventions: some treatments define the bias as the probability of
opening L instead. The two conventions are mirror images under q -> 1 - q;
every formula in this package uses the open-R convention.

Two game variants are supported:

* Game I: the host opens a door, then the contestant decides.
* Game II: the contestant commits to switch or stay before any door opens;
  the host's door is revealed afterwards and cannot affect the outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class BoxLabel(Enum):
    T = "T"
    L = "L"
    R = "R"


class GameVariant(Enum):
    GAME_I = "I"
    GAME_II = "II"


class Decision(Enum):
    STAY = "stay"
    SWITCH = "switch"


class Outcome(Enum):
    WIN = "win"
    LOSE = "lose"


# The host may only ever open one of these two.
CLOSABLE_DOORS = (BoxLabel.L, BoxLabel.R)

HostBias = Fraction


def validate_bias(bias: Fraction) -> Fraction:
    """Check 0 <= q <= 1; returns the value unchanged."""
    if not isinstance(bias, Fraction):
        raise ValueError(f"host bias must be an exact Fraction, got {type(bias).__name__}")
    if not 0 <= bias <= 1:
        raise ValueError(f"host bias must lie in [0, 1], got {bias}")
    return bias


def other_closable_door(door: BoxLabel) -> BoxLabel:
    """The closable door the given one faces: L <-> R."""
    if door is BoxLabel.L:
        return BoxLabel.R
    if door is BoxLabel.R:
        return BoxLabel.L
    raise ValueError("T is not a closable door")


def legal_host_doors(car: BoxLabel) -> set[BoxLabel]:
    """Doors the host may open: everything except T and the car's box.

    One door when the car is at L or R (the host is forced), two when the
    car is at T (the host is free to choose).
    """
    return {door for door in CLOSABLE_DOORS if door is not car}


def host_choose(car: BoxLabel, bias: Fraction, draw: float) -> BoxLabel:
    """Pick the door the host opens.

    Forced to R when the car is at L, forced to L when the car is at R.
    When the car is at T, opens R exactly when ``draw < bias``; the caller
    supplies the uniform draw in [0, 1), which keeps this a pure function.
    The comparison against the exact rational bias is itself exact.
    """
    if car is BoxLabel.L:
        return BoxLabel.R
    if car is BoxLabel.R:
        return BoxLabel.L
    return BoxLabel.R if draw < bias else BoxLabel.L


@dataclass(frozen=True)
class GameTranscript:
    """One full play of either variant.

    ``decision_before_reveal`` records the protocol ordering: True means the
    decision was committed before the host's door was opened (Game II).
    ``seed_index`` is the trial ordinal inside a simulation run; live
    sessions record 0.
    """

    variant: GameVariant
    car: BoxLabel
    bias: Fraction
    host_opened: BoxLabel
    decision: Decision
    outcome: Outcome
    seed_index: int = 0
    decision_before_reveal: bool = False


def play(
    variant: GameVariant,
    car: BoxLabel,
    bias: Fraction,
    decision: Decision,
    draw: float,
    seed_index: int = 0,
) -> GameTranscript:
    """Play one game and return its transcript.

    The host's door is drawn in both variants (in Game II it is revealed
    only after the commitment, so it cannot influence the result). Staying
    wins exactly when the car is at T; switching wins exactly when it is
    not, because the host never opens the car's box, so the switch target
    is the car whenever the car sits behind a closable door.
    """
    host_opened = host_choose(car, bias, draw)
    if decision is Decision.STAY:
        won = car is BoxLabel.T
    else:
        won = car is not BoxLabel.T and car is not host_opened
    return GameTranscript(
        variant=variant,
        car=car,
        bias=bias,
        host_opened=host_opened,
        decision=decision,
        outcome=Outcome.WIN if won else Outcome.LOSE,
        seed_index=seed_index,
        decision_before_reveal=variant is GameVariant.GAME_II,
    )
