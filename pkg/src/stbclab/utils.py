"""
Utility helpers for the stbclab package.
"""

from __future__ import annotations

from typing import Iterator, Tuple

import numpy as np
import numpy.typing as npt

_WORD = 2**64


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """
    Independent random stream for one trial.

    Philox is counter based: the master seed is the key and the trial index
    occupies the top counter word, so trial ``i`` always sees the same numbers
    no matter which worker runs it or in what order.
    """
    if not 0 <= trial_index < _WORD:
        raise ValueError(f"trial index out of range: {trial_index}")
    bit_generator = np.random.Philox(key=seed, counter=np.array([0, 0, 0, trial_index], dtype=np.uint64))
    return np.random.Generator(bit_generator)


def chunk_ranges(start: int, stop: int, size: int) -> Iterator[Tuple[int, int]]:
    """
    Yield consecutive ``[begin, end)`` ranges of at most ``size`` items.
    """
    for begin in range(start, stop, size):
        yield begin, min(begin + size, stop)


def count_bit_errors(sent: npt.ArrayLike, received: npt.ArrayLike) -> int:
    return int(np.count_nonzero(np.asarray(sent) != np.asarray(received)))
