"""
Algebraic checks of the 4x2 code (rate, difference-matrix rank, coding gain),
BER-curve measurements (diversity slope, SNR at a target BER) and decoder
complexity accounting.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Protocol, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from .codes import (
    code_effective_channel,
    generator_matrix,
    get_code,
    golden_encode,
    proposed_encode,
    proposed_encode_batch,
    stack_codeword,
)
from .common import BudgetExceeded, ConfigError, IdenticalInputs, InsufficientErrors
from .constellation import Constellation, get_constellation
from .decode import DecodeResult, build_decoder_input, get_decoder, ml_decode
from .linalg import CMat, eig_hermitian2_batch, gram, hermitian, rank_numeric
from .models import CheckResult, ComplexityRow, PairwiseReport

logger = logging.getLogger(__name__)

DEFAULT_PAIR_BUDGET = 1_000_000
DEFAULT_SAMPLED_PAIRS = 100_000
PAIR_CHUNK = 8192
EIGEN_TOLERANCE = 1e-9
DISTANCE_TOLERANCE = 1e-10
MIN_CURVE_ERRORS = 100
MEASURE_ML_BUDGET = 16**4


class CurvePoint(Protocol):
    snr_db: float

    @property
    def ber(self) -> float: ...

    @property
    def bit_errors(self) -> int: ...


class CurveSample(NamedTuple):
    """
    Minimal BER curve point for measured or synthetic curves.
    """

    snr_db: float
    ber: float
    bit_errors: int


def codeword_difference(s: npt.ArrayLike, s_hat: npt.ArrayLike) -> CMat:
    """
    ``D = C(s) - C(s_hat)`` on Raw 4x2 codewords.
    """
    s = np.asarray(s, dtype=np.complex128)
    s_hat = np.asarray(s_hat, dtype=np.complex128)
    if np.array_equal(s, s_hat):
        raise IdenticalInputs("codeword difference needs two distinct symbol vectors")
    return proposed_encode(s).entries - proposed_encode(s_hat).entries


def _all_symbol_vectors(c: Constellation) -> np.ndarray:
    grids = np.meshgrid(*([np.arange(c.order)] * 4), indexing="ij")
    return np.stack([grid.ravel() for grid in grids], axis=-1)


def _nearest_neighbour_pairs(c: Constellation, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pairs that differ in a single position by a ``d_min`` step, one per
    (position, neighbour pair), with the other three symbols drawn at random.
    """
    gaps = np.abs(c.points[:, None] - c.points[None, :])
    a, b = np.nonzero(np.triu(np.isclose(gaps, c.d_min, rtol=1e-9, atol=0.0), k=1))
    count = 4 * len(a)
    rows = np.arange(count)
    position = np.repeat(np.arange(4), len(a))
    left = rng.integers(0, c.order, size=(count, 4))
    left[rows, position] = np.tile(a, 4)
    right = left.copy()
    right[rows, position] = np.tile(b, 4)
    return left, right


def _pair_indices(
    c: Constellation, mode: str, sampled_pairs: int, seed: int, pair_budget: int
) -> Tuple[str, np.ndarray, np.ndarray, np.ndarray]:
    """
    Symbol-index vectors and the (first, second) row pairs to scan.

    A sampled scan always includes the nearest-neighbour pairs, so its
    minimum coding gain is the true one.
    """
    if sampled_pairs < 0:
        raise ConfigError(f"sampled_pairs must be >= 0, got {sampled_pairs}")
    codewords = c.order**4
    total_pairs = codewords * (codewords - 1) // 2
    if mode == "auto":
        mode = "exhaustive" if total_pairs <= pair_budget else "sampled"

    if mode == "exhaustive":
        if total_pairs > pair_budget:
            raise BudgetExceeded(f"{total_pairs} pairs exceed the pair budget of {pair_budget}")
        vectors = _all_symbol_vectors(c)
        first, second = np.triu_indices(codewords, k=1)
        return mode, vectors, first, second

    if mode != "sampled":
        raise ValueError(f"unknown scan mode {mode!r}")
    rng = np.random.default_rng(seed)
    left = rng.integers(0, c.order, size=(sampled_pairs, 4))
    right = rng.integers(0, c.order, size=(sampled_pairs, 4))
    distinct = np.any(left != right, axis=1)
    near_left, near_right = _nearest_neighbour_pairs(c, rng)
    left = np.concatenate([left[distinct], near_left])
    right = np.concatenate([right[distinct], near_right])
    vectors = np.concatenate([left, right])
    count = len(left)
    return mode, vectors, np.arange(count), np.arange(count, 2 * count)


@dataclass(slots=True)
class _ScanState:
    min_rank: int = 2
    min_root: float = math.inf
    min_distance: float = math.inf
    argmin: Optional[Tuple[int, int]] = None
    violations: int = 0
    pairs: int = 0


def _scan(
    c: Constellation,
    with_eigen: bool,
    mode: str,
    sampled_pairs: int,
    seed: int,
    pair_budget: int,
) -> PairwiseReport:
    mode, vectors, first, second = _pair_indices(c, mode, sampled_pairs, seed, pair_budget)
    symbols = c.points[vectors]
    codewords = proposed_encode_batch(symbols)
    state = _ScanState()

    for begin in range(0, len(first), PAIR_CHUNK):
        i = first[begin : begin + PAIR_CHUNK]
        j = second[begin : begin + PAIR_CHUNK]
        D = codewords[i] - codewords[j]
        state.pairs += len(i)
        state.min_rank = min(state.min_rank, int(np.min(rank_numeric(D))))
        if not with_eigen:
            continue

        high, low = eig_hermitian2_batch(gram(D))
        column = np.sum(np.abs(D[:, :, 0]) ** 2, axis=-1)
        distance = np.sum(np.abs(symbols[i] - symbols[j]) ** 2, axis=-1)
        scale = np.maximum(column, 1.0)
        bad = (
            (np.abs(high - low) > EIGEN_TOLERANCE * scale)
            | (np.abs(high - column) > EIGEN_TOLERANCE * scale)
            | (np.abs(column - distance) > DISTANCE_TOLERANCE * scale)
        )
        state.violations += int(np.count_nonzero(bad))

        roots = np.sqrt(np.clip(high * low, 0.0, None))
        best = int(np.argmin(roots))
        if roots[best] < state.min_root:
            state.min_root = float(roots[best])
            state.argmin = (int(i[best]), int(j[best]))
        state.min_distance = min(state.min_distance, float(np.min(distance)))

    report = PairwiseReport(
        constellation=c.name,
        mode=mode,
        pairs_checked=state.pairs,
        min_rank=state.min_rank,
    )
    if with_eigen:
        report.min_eigen_product_root = state.min_root
        report.min_symbol_distance = state.min_distance
        report.violations = state.violations
        if state.argmin is not None:
            a, b = state.argmin
            report.argmin_pair = (symbols[a].tolist(), symbols[b].tolist())
    logger.debug("pair scan %s/%s: %s", c.name, mode, report.to_dict())
    return report


def verify_rank_property(
    c: Constellation,
    mode: str = "auto",
    sampled_pairs: int = DEFAULT_SAMPLED_PAIRS,
    seed: int = 0,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> PairwiseReport:
    """
    Minimum numerical rank of ``D`` over codeword pairs: every pair for QPSK,
    a seeded uniform sample of pairs plus every nearest-neighbour step for
    the larger alphabets.
    """
    return _scan(c, False, mode, sampled_pairs, seed, pair_budget)


def verify_coding_gain(
    c: Constellation,
    mode: str = "auto",
    sampled_pairs: int = DEFAULT_SAMPLED_PAIRS,
    seed: int = 0,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> PairwiseReport:
    """
    Minimum ``sqrt(lambda1 lambda2)`` of ``D^H D`` over codeword pairs.

    Each pair is also checked for ``lambda1 == lambda2 == ||D[:, 0]||^2 ==
    ||s - s_hat||^2``; mismatches are counted in ``violations``.
    """
    return _scan(c, True, mode, sampled_pairs, seed, pair_budget)


def _fit_slope(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    return float(np.sum(dx * (y - y.mean())) / np.sum(dx * dx))


def diversity_slope(curve: Sequence[CurvePoint], min_errors: int = MIN_CURVE_ERRORS) -> float:
    """
    Least-squares slope of ``log10(BER)`` against ``SNR_dB / 10`` over points
    with at least ``min_errors`` bit errors. A diversity-4 curve gives about -4.
    """
    usable = [point for point in curve if point.bit_errors >= min_errors and point.ber > 0.0]
    snrs = {point.snr_db for point in usable}
    if len(snrs) < 2:
        raise InsufficientErrors(
            f"need at least two SNR points with >= {min_errors} bit errors, have {len(snrs)}"
        )
    x = np.array([point.snr_db / 10.0 for point in usable])
    y = np.log10([point.ber for point in usable])
    return _fit_slope(x, y)


def snr_at_ber(curve: Sequence[CurvePoint], target: float) -> Optional[float]:
    """
    SNR where the curve crosses ``target``, interpolating ``log10(BER)``
    linearly between the bracketing points. None if it never crosses.
    """
    ordered = sorted((point for point in curve if point.ber > 0.0), key=lambda point: point.snr_db)
    log_target = math.log10(target)
    for low, high in zip(ordered, ordered[1:]):
        if low.ber == target:
            return float(low.snr_db)
        if low.ber > target >= high.ber:
            a, b = math.log10(low.ber), math.log10(high.ber)
            fraction = (a - log_target) / (a - b)
            return float(low.snr_db + fraction * (high.snr_db - low.snr_db))
    if ordered and ordered[-1].ber == target:
        return float(ordered[-1].snr_db)
    return None


def snr_penalty(
    reference: Sequence[CurvePoint], candidate: Sequence[CurvePoint], target: float
) -> Optional[float]:
    """
    Extra SNR (dB) ``candidate`` needs over ``reference`` to reach ``target``.
    """
    ref = snr_at_ber(reference, target)
    cand = snr_at_ber(candidate, target)
    if ref is None or cand is None:
        return None
    return cand - ref


ANALYTIC_LABELS = {"ml": "O(M^4) (ML)", "cond-ml": "O(M^2) (conditional ML)", "zf": "linear (ZF)"}


def analytic_evals(decoder: str, order: int) -> int:
    if decoder == "ml":
        return order**4
    if decoder == "cond-ml":
        return order**2
    return 0


def complexity_report(runs: Iterable[Tuple[str, str, Constellation, DecodeResult]]) -> List[ComplexityRow]:
    """
    Measured ``metric_evals`` next to the analytic count for each run.
    """
    rows: List[ComplexityRow] = []
    for code, decoder, c, result in runs:
        row = ComplexityRow(
            code=code,
            decoder=decoder,
            constellation=c.name,
            order=c.order,
            measured=result.metric_evals,
            analytic=analytic_evals(decoder, c.order),
            label=ANALYTIC_LABELS.get(decoder, decoder),
        )
        if not row.matches:
            logger.error("complexity mismatch: %s", row.to_dict())
        rows.append(row)
    return rows


def measure_complexity(
    constellations: Sequence[str] = ("qpsk",),
    decoders: Sequence[str] = ("ml", "cond-ml", "zf"),
    seed: int = 0,
    ml_budget: int = MEASURE_ML_BUDGET,
) -> List[ComplexityRow]:
    """
    Decode one random noisy reception per (constellation, decoder) for the
    4x2 code and report the counters. ML is skipped (with a log line) for
    alphabets whose M^4 exceeds ``ml_budget``.
    """
    code = get_code("proposed")
    G = generator_matrix().G
    rng = np.random.default_rng(seed)
    runs = []
    for name in constellations:
        c = get_constellation(name)
        s = c.points[rng.integers(0, c.order, size=4)]
        h = (rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))) / math.sqrt(2.0)
        noise = 0.1 * (rng.standard_normal(4) + 1j * rng.standard_normal(4))
        y = code.tx_scale * (code_effective_channel(code, h) @ G @ s) + noise
        dec = build_decoder_input(code, h, y, c)
        for decoder in decoders:
            if decoder == "ml":
                if c.order**4 > ml_budget:
                    logger.info("skipping ML on %s: %d hypotheses over budget %d", c.name, c.order**4, ml_budget)
                    continue
                result = ml_decode(dec, budget=ml_budget)
            else:
                result = get_decoder(decoder)(dec)
            runs.append((code.name, decoder, c, result))
    return complexity_report(runs)


@dataclass(slots=True)
class VerificationSummary:
    """
    Everything the ``verify`` command reports; ``ok`` is False on any violation.
    """

    checks: List[CheckResult] = field(default_factory=list)
    rank: Optional[PairwiseReport] = None
    gain: Optional[PairwiseReport] = None
    complexity: List[ComplexityRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, passed: bool, detail: str) -> None:
        self.checks.append(CheckResult(name=name, passed=bool(passed), detail=detail))

    def to_dict(self) -> Dict[str, object]:
        return {
            "ok": self.ok,
            "checks": [check.to_dict() for check in self.checks],
            "rank": self.rank.to_dict() if self.rank else None,
            "coding_gain": self.gain.to_dict() if self.gain else None,
            "complexity": [row.to_dict() for row in self.complexity],
        }


def run_verification(
    constellation: str = "qpsk",
    sampled_pairs: int = DEFAULT_SAMPLED_PAIRS,
    seed: int = 0,
    consistency_draws: int = 1000,
) -> VerificationSummary:
    """
    Generator, rate, rank, coding-gain and complexity checks in one pass.
    """
    summary = VerificationSummary()
    c = get_constellation(constellation)
    gen = generator_matrix()

    unitarity = float(np.max(np.abs(hermitian(gen.G) @ gen.G - np.eye(4))))
    summary.add("generator_unitary", unitarity <= 1e-12, f"max |G^H G - I| = {unitarity:.3e}")

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(consistency_draws):
        s = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        x = gen.G @ s
        worst = max(
            worst,
            float(np.max(np.abs(x - stack_codeword(proposed_encode(s))))),
            float(np.max(np.abs(x - stack_codeword(golden_encode(s))))),
        )
    summary.add("generator_consistency", worst <= 1e-12, f"max |G s - x| = {worst:.3e} over {consistency_draws} draws")

    code = get_code("proposed")
    summary.add("full_rate", code.rate == 2 and code.is_full_rate(2), f"R = Q/T = {code.rate:g}")

    summary.rank = verify_rank_property(c, sampled_pairs=sampled_pairs, seed=seed)
    summary.add(
        "rank",
        summary.rank.min_rank == 2,
        f"min rank {summary.rank.min_rank} over {summary.rank.pairs_checked} pairs ({summary.rank.mode})",
    )

    summary.gain = verify_coding_gain(c, sampled_pairs=sampled_pairs, seed=seed)
    expected = c.d_min**2
    tolerance = EIGEN_TOLERANCE * max(expected, 1.0)
    gain = summary.gain.min_eigen_product_root or 0.0
    summary.add(
        "coding_gain",
        abs(gain - expected) <= tolerance
        and abs(gain - (summary.gain.min_symbol_distance or 0.0)) <= tolerance
        and summary.gain.violations == 0,
        f"min sqrt(l1 l2) = {gain:.12g} vs d_min^2 = {expected:.12g} (normalized {gain / 2.0:.12g}); "
        f"{summary.gain.violations} eigenvalue violations",
    )

    summary.complexity = measure_complexity((constellation,), seed=seed)
    summary.add(
        "complexity",
        all(row.matches for row in summary.complexity),
        ", ".join(f"{row.decoder}={row.measured}/{row.analytic}" for row in summary.complexity),
    )
    return summary
