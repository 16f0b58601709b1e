"""
Detectors for the Golden-family codes on the stacked model
``y = tx_scale * (F1 u + F2 v) + w`` with ``u = [s1, s2]`` and ``v = [s3, s4]``:
exhaustive ML over M^4 hypotheses, conditional ML over M^2 hypotheses with a
zero-forcing inner step, and plain zero forcing. The Alamouti baseline has its
own matched-filter detector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Tuple

import numpy as np
import numpy.typing as npt

from .codes import CodeDescriptor, GoldenGenerator, code_effective_channel, generator_matrix
from .common import BudgetExceeded, SingularMatrix, lookup
from .constellation import Constellation, hard_decision, make_qam
from .linalg import CMat, CVec, gram, hermitian, inv2

DEFAULT_ML_BUDGET = 4**4
ZF_CONDITION_LIMIT = 1e12


@dataclass(frozen=True, slots=True, eq=False)
class DecoderInput:
    y: np.ndarray
    F1: np.ndarray
    F2: np.ndarray
    constellation: Constellation
    tx_scale: float = 1.0

    def __post_init__(self) -> None:
        if self.tx_scale <= 0.0:
            raise ValueError("tx_scale must be positive")
        if not (np.all(np.isfinite(self.F1)) and np.all(np.isfinite(self.F2))):
            raise ValueError("F1 and F2 must be finite")


@dataclass(frozen=True, slots=True, eq=False)
class DecodeResult:
    """
    Decision ``s_hat`` with its constellation ``indices``, the final squared
    distance and the number of candidate metrics evaluated.
    """

    s_hat: np.ndarray
    indices: np.ndarray
    metric: float
    metric_evals: int


def split_effective(H: npt.ArrayLike, G: GoldenGenerator) -> Tuple[CMat, CMat]:
    """
    ``F1 = H[:, :2] G1`` and ``F2 = H[:, 2:] G2``.
    """
    H = np.asarray(H, dtype=np.complex128)
    return H[:, :2] @ G.G1, H[:, 2:] @ G.G2


def build_decoder_input(
    code: CodeDescriptor, h: npt.ArrayLike, y: npt.ArrayLike, constellation: Constellation
) -> DecoderInput:
    """
    Decoder input for the Golden-family codes from a 2x4 channel draw.
    """
    F1, F2 = split_effective(code_effective_channel(code, h), generator_matrix())
    return DecoderInput(np.asarray(y, dtype=np.complex128), F1, F2, constellation, code.tx_scale)


@lru_cache(maxsize=None)
def _hypotheses(order: int, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    All ``count``-symbol index tuples in lexicographic order and their points.
    """
    c = make_qam(order)
    indices = np.array(list(itertools.product(range(order), repeat=count)), dtype=np.int64)
    indices.setflags(write=False)
    symbols = c.points[indices]
    symbols.setflags(write=False)
    return indices, symbols


def _residual_energy(residual: np.ndarray) -> np.ndarray:
    return np.sum(residual.real**2 + residual.imag**2, axis=0)


def ml_decode(dec: DecoderInput, budget: int = DEFAULT_ML_BUDGET) -> DecodeResult:
    """
    Exhaustive search over all M^4 symbol vectors.
    """
    order = dec.constellation.order
    evals = order**4
    if evals > budget:
        raise BudgetExceeded(f"ML needs {evals} hypotheses, budget is {budget}; use conditional ML")

    indices, symbols = _hypotheses(order, 4)
    A = np.hstack([dec.F1, dec.F2])
    residual = dec.y[:, None] - dec.tx_scale * (A @ symbols.T)
    metrics = _residual_energy(residual)
    best = int(np.argmin(metrics))
    return DecodeResult(symbols[best].copy(), indices[best].copy(), float(metrics[best]), evals)


def _gram_inverse(F2: CMat) -> CMat:
    return inv2(gram(F2))


def zf_inner(dec: DecoderInput, u: npt.ArrayLike) -> CVec:
    """
    Unquantized zero-forcing estimate of ``v`` given ``u``.

    ``u`` may be a single pair (shape (2,)) or a batch of pairs as columns
    (shape (2, K)).
    """
    u = np.asarray(u, dtype=np.complex128)
    y = dec.y if u.ndim == 1 else dec.y[:, None]
    target = y - dec.tx_scale * (dec.F1 @ u)
    return _gram_inverse(dec.F2) @ (hermitian(dec.F2) @ target) / dec.tx_scale


def projection_metric(dec: DecoderInput, u: npt.ArrayLike) -> float:
    """
    ``r^H (I - F2 (F2^H F2)^-1 F2^H) r`` with ``r = y - tx_scale F1 u``.
    """
    u = np.asarray(u, dtype=np.complex128)
    r = dec.y - dec.tx_scale * (dec.F1 @ u)
    projector = np.eye(dec.F2.shape[0]) - dec.F2 @ _gram_inverse(dec.F2) @ hermitian(dec.F2)
    return float(np.real(np.vdot(r, projector @ r)))


def conditional_ml_decode(dec: DecoderInput) -> DecodeResult:
    """
    Search every ``u`` in M^2, recover ``v`` by zero forcing and hard decision,
    keep the pair with the smallest full metric.
    """
    c = dec.constellation
    u_indices, u_symbols = _hypotheses(c.order, 2)
    u_batch = u_symbols.T

    v_tilde = zf_inner(dec, u_batch)
    v_indices = hard_decision(v_tilde.T, c)
    v_hat = c.points[v_indices].T

    residual = dec.y[:, None] - dec.tx_scale * (dec.F1 @ u_batch + dec.F2 @ v_hat)
    metrics = _residual_energy(residual)
    best = int(np.argmin(metrics))

    indices = np.concatenate([u_indices[best], v_indices[best]])
    return DecodeResult(c.points[indices], indices, float(metrics[best]), len(u_indices))


def zf_decode(dec: DecoderInput) -> DecodeResult:
    """
    Invert ``[F1 F2]`` and slice each symbol independently.
    """
    A = np.hstack([dec.F1, dec.F2])
    if np.linalg.cond(A) > ZF_CONDITION_LIMIT:
        raise SingularMatrix("effective matrix is singular")
    try:
        s_tilde = np.linalg.solve(A, dec.y) / dec.tx_scale
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix("effective matrix is singular") from exc

    indices = hard_decision(s_tilde, dec.constellation)
    s_hat = dec.constellation.points[indices]
    residual = dec.y - dec.tx_scale * (A @ s_hat)
    return DecodeResult(s_hat, indices, float(np.real(np.vdot(residual, residual))), 0)


def alamouti_decode(
    y: npt.ArrayLike, H: npt.ArrayLike, constellation: Constellation, tx_scale: float = 1.0
) -> DecodeResult:
    """
    Matched-filter combining followed by per-symbol slicing. The 4x2 Alamouti
    matrix has orthogonal columns of equal norm, so this is the ML decision.
    """
    y = np.asarray(y, dtype=np.complex128)
    H = np.asarray(H, dtype=np.complex128)
    energy = float(np.sum(np.abs(H[:, 0]) ** 2))
    if energy <= 0.0:
        raise SingularMatrix("Alamouti channel has zero energy")

    combined = hermitian(H) @ y / (tx_scale * energy)
    indices = hard_decision(combined, constellation)
    s_hat = constellation.points[indices]
    residual = y - tx_scale * (H @ s_hat)
    evals = len(indices) * constellation.order
    return DecodeResult(s_hat, indices, float(np.real(np.vdot(residual, residual))), evals)


Decoder = Callable[[DecoderInput], DecodeResult]

DECODERS: Dict[str, Decoder] = {
    "ml": ml_decode,
    "cond-ml": conditional_ml_decode,
    "zf": zf_decode,
}


def get_decoder(name: str) -> Decoder:
    return lookup(DECODERS, name, "decoder")
