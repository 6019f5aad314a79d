"""Exact analytics, Monte Carlo verification, and live play for the
three-box game with a biased host."""

from .analytics import (
    INFINITE,
    GameIIReport,
    InvalidDoorError,
    PosteriorReport,
    SampleSpaceAtom,
    bayes_ratio,
    door_open_probability,
    enumerate_sample_space,
    game_two_win,
    long_run_switch_rate,
    posterior_from_sample_space,
    posterior_given_opened,
)
from .model import (
    BoxLabel,
    Decision,
    GameTranscript,
    GameVariant,
    HostBias,
    Outcome,
    host_choose,
    legal_host_doors,
    play,
)
from .simulation import (
    ALWAYS_STAY,
    ALWAYS_SWITCH,
    BIAS_AWARE,
    SimulationConfig,
    SimulationResult,
    Strategy,
    exact_rates,
    mixed,
    run,
    sweep_bias,
    wilson_interval,
)

__version__ = "0.1.0"

__all__ = [
    "ALWAYS_STAY",
    "ALWAYS_SWITCH",
    "BIAS_AWARE",
    "BoxLabel",
    "Decision",
    "GameIIReport",
    "GameTranscript",
    "GameVariant",
    "HostBias",
    "INFINITE",
    "InvalidDoorError",
    "Outcome",
    "PosteriorReport",
    "SampleSpaceAtom",
    "SimulationConfig",
    "SimulationResult",
    "Strategy",
    "bayes_ratio",
    "door_open_probability",
    "enumerate_sample_space",
    "exact_rates",
    "game_two_win",
    "host_choose",
    "legal_host_doors",
    "long_run_switch_rate",
    "mixed",
    "play",
    "posterior_from_sample_space",
    "posterior_given_opened",
    "run",
    "sweep_bias",
    "wilson_interval",
]
