"""
Space-time block encoders: the Golden code, its generator-matrix form, the
4x2 distributed code that arranges one Golden codeword in Alamouti fashion
over two cells, and an Alamouti baseline.

Antenna rows of the 4x2 codeword are ordered cell by cell: antennas 1-2 belong
to cell 1 and antennas 3-4 to cell 2. The 2x2 baselines transmit from
antennas 1 and 3, one per cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from .common import lookup
from .linalg import CMat, CVec, as_cmat

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)

THETA = (1.0 + SQRT5) / 2.0
THETA_BAR = (1.0 - SQRT5) / 2.0
ALPHA = complex(1.0, THETA_BAR)
ALPHA_BAR = complex(1.0, THETA)


class Normalization(Enum):
    RAW = "raw"
    NORMALIZED = "normalized"


@dataclass(frozen=True, slots=True, eq=False)
class Codeword:
    """
    Antennas x time-slots transmit matrix.

    ``normalization`` records whether the leading 1/sqrt(2) of the 4x2 code
    has been applied.
    """

    entries: np.ndarray
    normalization: Normalization = Normalization.RAW

    @property
    def antennas(self) -> int:
        return int(self.entries.shape[0])

    @property
    def slots(self) -> int:
        return int(self.entries.shape[1])


@dataclass(frozen=True, slots=True)
class CodeDescriptor:
    """
    Static description of a code as seen by the simulator.

    ``tx_scale`` is the factor between the raw linear model ``H G s`` and what
    the antennas radiate.
    """

    name: str
    symbols_per_codeword: int
    slots: int
    antennas: Tuple[int, ...]
    tx_scale: float
    conjugate_second_slot: bool

    @property
    def rate(self) -> float:
        return self.symbols_per_codeword / self.slots

    def is_full_rate(self, receive_antennas: int = 2) -> bool:
        return self.rate == receive_antennas


CODES: Dict[str, CodeDescriptor] = {
    "proposed": CodeDescriptor("proposed", 4, 2, (0, 1, 2, 3), 1.0 / SQRT2, True),
    "golden2x2": CodeDescriptor("golden2x2", 4, 2, (0, 2), 1.0, False),
    "alamouti": CodeDescriptor("alamouti", 2, 2, (0, 2), 1.0 / SQRT2, True),
}


def get_code(name: str) -> CodeDescriptor:
    return lookup(CODES, name, "code")


@dataclass(frozen=True, slots=True, eq=False)
class GoldenGenerator:
    """
    Constants of the Golden code and its unitary block-diagonal generator.

    ``phases`` are the four unit-modulus factors that reproduce the codeword
    definition. ``printed_phases`` keeps the published list, whose last entry
    equals the second and so misses the factor i carried by X2(1).
    """

    theta: float
    theta_bar: float
    alpha: complex
    alpha_bar: complex
    sin_phi: float
    cos_phi: float
    psi_alpha: float
    psi_alpha_bar: float
    phases: Tuple[complex, complex, complex, complex]
    printed_phases: Tuple[complex, complex, complex, complex]
    G: np.ndarray

    @property
    def G1(self) -> CMat:
        return self.G[:2, :2]

    @property
    def G2(self) -> CMat:
        return self.G[2:, 2:]


def generator_from_phases(
    phases: Sequence[complex], sin_phi: float, cos_phi: float
) -> CMat:
    """
    Assemble the phase-rotation form of the generator matrix.
    """
    phi1, phi2, phi3, phi4 = phases
    G = np.zeros((4, 4), dtype=np.complex128)
    G[0, :2] = phi1 * cos_phi, phi1 * sin_phi
    G[1, :2] = -phi2 * sin_phi, phi2 * cos_phi
    G[2, 2:] = phi3 * cos_phi, phi3 * sin_phi
    G[3, 2:] = -phi4 * sin_phi, phi4 * cos_phi
    return G


@lru_cache(maxsize=None)
def generator_matrix() -> GoldenGenerator:
    """
    Build G by substituting the codeword definition, so that
    ``G @ s == [X1(1), X2(2), X1(2), X2(1)]``.
    """
    G = np.zeros((4, 4), dtype=np.complex128)
    G[0, :2] = ALPHA * np.array([1.0, THETA]) / SQRT5
    G[1, :2] = ALPHA_BAR * np.array([1.0, THETA_BAR]) / SQRT5
    G[2, 2:] = ALPHA * np.array([1.0, THETA]) / SQRT5
    G[3, 2:] = 1j * ALPHA_BAR * np.array([1.0, THETA_BAR]) / SQRT5
    G.setflags(write=False)

    norm = math.sqrt(1.0 + THETA_BAR**2)
    sin_phi = 1.0 / norm
    cos_phi = -THETA_BAR / norm
    psi_alpha = math.atan(THETA_BAR)
    psi_alpha_bar = math.atan(THETA)

    def unit(angle: float) -> complex:
        return complex(math.cos(angle), math.sin(angle))

    phases = (
        unit(psi_alpha),
        unit(psi_alpha_bar + math.pi),
        unit(psi_alpha),
        unit(psi_alpha_bar - math.pi / 2.0),
    )
    printed = phases[:3] + (unit(psi_alpha_bar + math.pi),)

    return GoldenGenerator(
        theta=THETA,
        theta_bar=THETA_BAR,
        alpha=ALPHA,
        alpha_bar=ALPHA_BAR,
        sin_phi=sin_phi,
        cos_phi=cos_phi,
        psi_alpha=psi_alpha,
        psi_alpha_bar=psi_alpha_bar,
        phases=phases,
        printed_phases=printed,
        G=G,
    )


def _symbols(s: npt.ArrayLike, length: int) -> CVec:
    vector = as_cmat(s).reshape(-1)
    if vector.shape != (length,):
        raise ValueError(f"expected {length} symbols, got {vector.size}")
    return vector


def _golden_entries(s: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    s1, s2, s3, s4 = s[..., 0], s[..., 1], s[..., 2], s[..., 3]
    x11 = ALPHA * (s1 + THETA * s2) / SQRT5
    x12 = ALPHA * (s3 + THETA * s4) / SQRT5
    x21 = 1j * ALPHA_BAR * (s3 + THETA_BAR * s4) / SQRT5
    x22 = ALPHA_BAR * (s1 + THETA_BAR * s2) / SQRT5
    return x11, x12, x21, x22


def golden_encode(s: npt.ArrayLike) -> Codeword:
    """
    Golden codeword ``[[X1(1), X1(2)], [X2(1), X2(2)]]`` for four symbols.
    """
    x11, x12, x21, x22 = _golden_entries(_symbols(s, 4))
    return Codeword(np.array([[x11, x12], [x21, x22]], dtype=np.complex128))


def proposed_encode_batch(symbols: npt.ArrayLike) -> np.ndarray:
    """
    Raw 4x2 codewords for a stack of symbol vectors, shape (N, 4) -> (N, 4, 2).
    """
    s = np.asarray(symbols, dtype=np.complex128).reshape(-1, 4)
    x11, x12, x21, x22 = _golden_entries(s)
    entries = np.empty((s.shape[0], 4, 2), dtype=np.complex128)
    entries[:, :, 0] = np.stack([x11, x21, x12, x22], axis=-1)
    entries[:, :, 1] = np.stack([-np.conj(x12), -np.conj(x22), np.conj(x11), np.conj(x21)], axis=-1)
    return entries


def proposed_encode(s: npt.ArrayLike, normalized: bool = False) -> Codeword:
    """
    4x2 distributed codeword: the Golden entries of one codeword laid out in
    an Alamouti pattern over the two cells.
    """
    entries = proposed_encode_batch(_symbols(s, 4))[0]
    if normalized:
        return Codeword(entries / SQRT2, Normalization.NORMALIZED)
    return Codeword(entries, Normalization.RAW)


def alamouti_encode(s: npt.ArrayLike) -> Codeword:
    s1, s2 = _symbols(s, 2)
    entries = np.array([[s1, -np.conj(s2)], [s2, np.conj(s1)]], dtype=np.complex128) / SQRT2
    return Codeword(entries, Normalization.NORMALIZED)


def encode(code: CodeDescriptor, s: npt.ArrayLike) -> Codeword:
    """
    Transmit-form codeword for ``code``.
    """
    if code.name == "proposed":
        return proposed_encode(s, normalized=True)
    if code.name == "golden2x2":
        return golden_encode(s)
    return alamouti_encode(s)


def stack_codeword(codeword: Codeword) -> CVec:
    """
    Read ``x = [X1(1), X2(2), X1(2), X2(1)]`` back out of a Golden or 4x2
    codeword, undoing the 1/sqrt(2) when present.
    """
    C = codeword.entries
    if C.shape == (2, 2):
        return np.array([C[0, 0], C[1, 1], C[0, 1], C[1, 0]], dtype=np.complex128)
    if C.shape != (4, 2):
        raise ValueError(f"cannot stack a codeword of shape {C.shape}")
    x = np.array([C[0, 0], C[3, 0], C[2, 0], C[1, 0]], dtype=np.complex128)
    if codeword.normalization is Normalization.NORMALIZED:
        x = x * SQRT2
    return x


def effective_channel(h: npt.ArrayLike) -> CMat:
    """
    4x4 matrix H with ``[Y1(1), Y2(1), Y1*(2), Y2*(2)] = H x + w`` for the
    4x2 code, from the 2x4 physical channel.
    """
    h = as_cmat(h)
    if h.shape != (2, 4):
        raise ValueError(f"expected a 2x4 channel, got shape {h.shape}")
    H = np.empty((4, 4), dtype=np.complex128)
    H[:2] = h[:, [0, 3, 2, 1]]
    hc = np.conj(h)
    H[2:] = np.stack([hc[:, 2], -hc[:, 1], -hc[:, 0], hc[:, 3]], axis=1)
    return H


def golden_effective_channel(h2: npt.ArrayLike) -> CMat:
    """
    4x4 matrix for the 2x2 Golden code on ``[Y1(1), Y2(1), Y1(2), Y2(2)]``.
    """
    h2 = as_cmat(h2)
    if h2.shape != (2, 2):
        raise ValueError(f"expected a 2x2 channel, got shape {h2.shape}")
    H = np.zeros((4, 4), dtype=np.complex128)
    H[:2, 0] = h2[:, 0]
    H[:2, 3] = h2[:, 1]
    H[2:, 1] = h2[:, 1]
    H[2:, 2] = h2[:, 0]
    return H


def alamouti_effective_channel(h2: npt.ArrayLike) -> CMat:
    """
    4x2 matrix for Alamouti on ``[Y1(1), Y2(1), Y1*(2), Y2*(2)]``; the columns
    are orthogonal for every channel.
    """
    h2 = as_cmat(h2)
    if h2.shape != (2, 2):
        raise ValueError(f"expected a 2x2 channel, got shape {h2.shape}")
    H = np.empty((4, 2), dtype=np.complex128)
    H[:2] = h2
    H[2:, 0] = np.conj(h2[:, 1])
    H[2:, 1] = -np.conj(h2[:, 0])
    return H


def code_effective_channel(code: CodeDescriptor, h: npt.ArrayLike) -> CMat:
    """
    Effective matrix of ``code`` for a full 2x4 SFN channel draw.
    """
    h = as_cmat(h)
    if code.name == "proposed":
        return effective_channel(h)
    active = h[:, list(code.antennas)]
    if code.name == "golden2x2":
        return golden_effective_channel(active)
    return alamouti_effective_channel(active)
