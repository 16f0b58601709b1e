"""
Quasi-static Rayleigh channel for the two-cell SFN layout, complex AWGN and
SNR bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from .codes import Codeword, CodeDescriptor
from .common import db_to_linear
from .linalg import CMat, CVec, as_cmat

RECEIVE_ANTENNAS = 2
TRANSMIT_ANTENNAS = 4


@dataclass(frozen=True, slots=True)
class ImbalanceProfile:
    """
    Per-antenna amplitude gains ``(g, g, g', g')`` for a cell1/cell2 receive
    power ratio of ``delta_db``, with ``g^2 + g'^2 = 2``.
    """

    delta_db: float
    gains: Tuple[float, float, float, float]

    @classmethod
    def from_db(cls, delta_db: float) -> "ImbalanceProfile":
        ratio = 10.0 ** (delta_db / 20.0)
        weak = math.sqrt(2.0 / (1.0 + ratio**2))
        strong = ratio * weak
        return cls(float(delta_db), (strong, strong, weak, weak))

    @classmethod
    def balanced(cls) -> "ImbalanceProfile":
        return cls.from_db(0.0)


@dataclass(frozen=True, slots=True)
class NoiseModel:
    """
    Complex AWGN with variance ``sigma2`` per real dimension, ``2 sigma2`` per entry.
    """

    sigma2: float

    def __post_init__(self) -> None:
        if not (self.sigma2 > 0.0 and math.isfinite(self.sigma2)):
            raise ValueError(f"sigma2 must be positive and finite, got {self.sigma2}")

    @property
    def entry_variance(self) -> float:
        return 2.0 * self.sigma2


@dataclass(frozen=True, slots=True, eq=False)
class ChannelRealization:
    """
    2x4 channel; entry ``(m, n)`` is the gain from transmit antenna ``n`` to
    receive antenna ``m``, imbalance gains already applied per column.
    """

    h: np.ndarray
    profile: ImbalanceProfile


def _complex_normal(rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def draw_channel(rng: np.random.Generator, profile: ImbalanceProfile) -> ChannelRealization:
    """
    Draw i.i.d. CN(0, 1) gains and scale columns 1-2 by g and 3-4 by g'.
    """
    z = _complex_normal(rng, (RECEIVE_ANTENNAS, TRANSMIT_ANTENNAS))
    return ChannelRealization(z * np.asarray(profile.gains), profile)


def add_noise(y_clean: npt.ArrayLike, noise: NoiseModel, rng: np.random.Generator) -> CVec:
    """
    Add circularly symmetric Gaussian noise of variance ``2 sigma2`` per entry.
    """
    y = np.asarray(y_clean, dtype=np.complex128)
    w = rng.standard_normal(y.shape) + 1j * rng.standard_normal(y.shape)
    return y + math.sqrt(noise.sigma2) * w


def rx_energy_per_channel_use(code: CodeDescriptor) -> float:
    """
    Expected received signal energy per receive antenna per channel use for
    unit-energy symbols and unit-variance fading. Every encoder here preserves
    symbol energy, so this is the number of symbols carried per slot.
    """
    return code.symbols_per_codeword / code.slots


def snr_to_sigma2(snr_db: float, code: CodeDescriptor) -> float:
    """
    Noise parameter giving ``SNR = E_rx / (2 sigma2)`` at zero imbalance.
    """
    return rx_energy_per_channel_use(code) / (2.0 * db_to_linear(snr_db))


def receive(codeword: Codeword, h: npt.ArrayLike, antennas: Tuple[int, ...]) -> CMat:
    """
    Noiseless time-domain receive matrix ``Y = h[:, antennas] C``.
    """
    h = as_cmat(h)
    return h[:, list(antennas)] @ codeword.entries


def stack_received(Y: npt.ArrayLike, conjugate_second_slot: bool) -> CVec:
    """
    Stack a 2x2 receive matrix as ``[Y1(1), Y2(1), Y1(2), Y2(2)]``, with the
    second slot conjugated for the Alamouti-structured codes.
    """
    Y = np.asarray(Y, dtype=np.complex128)
    second = np.conj(Y[:, 1]) if conjugate_second_slot else Y[:, 1]
    return np.concatenate([Y[:, 0], second])
