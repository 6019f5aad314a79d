"""Counter-based pseudo-random draws for the simulation engine.

Every draw is a pure function of (seed, trial index, draw slot): the value
is the splitmix64 output at counter ``trial * SLOTS_PER_TRIAL + slot``.
Because nothing is consumed sequentially, any partition of a run into
batches, on any number of workers, in any order, reproduces the same
stream bit for bit.

Scalar (pure int) and vectorized (numpy uint64) implementations are both
provided and must agree exactly; the test suite cross-checks them.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1

# Fixed draw budget per trial; unused slots cost nothing.
SLOTS_PER_TRIAL = 4
CAR_SLOT = 0
HOST_SLOT = 1
MIX_SLOT = 2

# A draw carries the top 53 bits of the mixed counter, so u / 2**53 is an
# exactly representable float in [0, 1).
DRAW_BITS = 53
DRAW_SCALE = 1 << DRAW_BITS


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def validate_seed(seed: int) -> int:
    if not isinstance(seed, int) or not 0 <= seed < (1 << 64):
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return seed


def draw_u53(seed: int, trial: int, slot: int) -> int:
    """The 53-bit draw for one (trial, slot) cell."""
    counter = trial * SLOTS_PER_TRIAL + slot
    return mix64((seed + (counter + 1) * _GOLDEN) & _MASK) >> 11


def draw_unit(seed: int, trial: int, slot: int) -> float:
    """The same draw as ``draw_u53``, as an exact float in [0, 1)."""
    return draw_u53(seed, trial, slot) * 2.0**-53


def _mix64_array(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    x ^= x >> np.uint64(30)
    x *= np.uint64(0xBF58476D1CE4E5B9)
    x ^= x >> np.uint64(27)
    x *= np.uint64(0x94D049BB133111EB)
    x ^= x >> np.uint64(31)
    return x


def draw_u53_array(seed: int, start: int, stop: int, slot: int) -> np.ndarray:
    """Vectorized ``draw_u53`` for trials ``start..stop-1`` at one slot."""
    counters = np.arange(start, stop, dtype=np.uint64)
    counters *= np.uint64(SLOTS_PER_TRIAL)
    counters += np.uint64(slot + 1)
    counters *= np.uint64(_GOLDEN)
    counters += np.uint64(seed)
    return _mix64_array(counters) >> np.uint64(11)


def threshold_u53(p: Fraction) -> int:
    """Integer threshold t such that ``u < t`` iff ``u / 2**53 < p`` exactly.

    For rational p = a/b in [0, 1] this is ceil(a * 2**53 / b); the
    equivalence holds because u is an integer.
    """
    a, b = p.numerator, p.denominator
    return -((-a << DRAW_BITS) // b)


def car_index_from_u53(u: int) -> int:
    """Uniform index in {0, 1, 2} from a 53-bit draw: floor(3u / 2**53)."""
    return (3 * u) >> DRAW_BITS


def derive_seed(seed: int, index: int) -> int:
    """Decorrelated sub-seed for run ``index`` of a sweep."""
    return mix64((mix64(seed) + (index + 1) * _GOLDEN) & _MASK)
