"""
Monte Carlo BER/SER engine: sweeps SNR and receive-power imbalance for one
code/decoder/constellation triple and writes the aggregated points to CSV.

Trial ``i`` of every grid point draws from the same counter-based stream
``(seed, i)``: bits first, then channel and noise (repeated on a singular
channel redraw). Decoders consume no randomness, so runs that differ only in
the decoder see identical channels and noise.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import Executor, Future, ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Deque, Dict, Iterator, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from .analysis import snr_at_ber
from .channel import ImbalanceProfile, NoiseModel, add_noise, draw_channel, receive, snr_to_sigma2, stack_received
from .codes import CodeDescriptor, Codeword, code_effective_channel, encode, get_code
from .common import SingularMatrix
from .config import SimConfig
from .constellation import Constellation, bits_to_indices, get_constellation, indices_to_bits
from .decode import (
    DecodeResult,
    alamouti_decode,
    build_decoder_input,
    conditional_ml_decode,
    get_decoder,
    ml_decode,
)
from .exporters import Destination, export_csv
from .models import CSV_COLUMNS, BerPoint, TrialCounts
from .utils import chunk_ranges, count_bit_errors, trial_rng

logger = logging.getLogger(__name__)

MAX_REDRAWS = 16
REDRAW_WARNING_FRACTION = 0.01

R = TypeVar("R")


@dataclass(frozen=True, slots=True, eq=False)
class _TrialSetup:
    code: CodeDescriptor
    constellation: Constellation
    bits: np.ndarray
    indices: np.ndarray
    codeword: Codeword
    profile: ImbalanceProfile
    noise: NoiseModel


def _setup_trial(
    cfg: SimConfig, rng: np.random.Generator, snr_db: float, imbalance_db: float
) -> _TrialSetup:
    code = get_code(cfg.code)
    c = get_constellation(cfg.constellation)
    bits = rng.integers(0, 2, size=code.symbols_per_codeword * c.bits_per_symbol, dtype=np.int64)
    indices = bits_to_indices(bits, c)
    return _TrialSetup(
        code=code,
        constellation=c,
        bits=bits,
        indices=indices,
        codeword=encode(code, c.points[indices]),
        profile=ImbalanceProfile.from_db(imbalance_db),
        noise=NoiseModel(snr_to_sigma2(snr_db, code)),
    )


def _receive_with_redraws(
    setup: _TrialSetup,
    rng: np.random.Generator,
    detect: Callable[[np.ndarray, np.ndarray], R],
) -> Tuple[R, int]:
    """
    Draw channel and noise, then detect; on a singular channel draw again from
    the same stream. Returns the detection and the number of redraws.
    """
    redraws = 0
    while True:
        realization = draw_channel(rng, setup.profile)
        Y = receive(setup.codeword, realization.h, setup.code.antennas)
        y = add_noise(stack_received(Y, setup.code.conjugate_second_slot), setup.noise, rng)
        try:
            return detect(realization.h, y), redraws
        except SingularMatrix:
            redraws += 1
            if redraws > MAX_REDRAWS:
                raise


def _detector(cfg: SimConfig, setup: _TrialSetup) -> Callable[[np.ndarray, np.ndarray], DecodeResult]:
    code, c = setup.code, setup.constellation
    if code.name == "alamouti":
        return lambda h, y: alamouti_decode(y, code_effective_channel(code, h), c, code.tx_scale)

    decoder = get_decoder(cfg.decoder)
    if decoder is ml_decode:
        return lambda h, y: ml_decode(build_decoder_input(code, h, y, c), budget=cfg.ml_budget)
    return lambda h, y: decoder(build_decoder_input(code, h, y, c))


def run_trial(cfg: SimConfig, trial_index: int, snr_db: float, imbalance_db: float) -> TrialCounts:
    """
    One codeword end to end: bits, mapping, encoding, channel, noise,
    detection and error counting. Fully determined by ``(cfg.seed, trial_index)``.
    """
    rng = trial_rng(cfg.seed, trial_index)
    setup = _setup_trial(cfg, rng, snr_db, imbalance_db)
    result, redraws = _receive_with_redraws(setup, rng, _detector(cfg, setup))

    symbol_errors = int(np.count_nonzero(result.indices != setup.indices))
    bit_errors = count_bit_errors(setup.bits, indices_to_bits(result.indices, setup.constellation))
    return TrialCounts(
        trials=1,
        bit_errors=bit_errors,
        symbol_errors=symbol_errors,
        codeword_errors=int(symbol_errors > 0),
        redraws=redraws,
    )


def run_chunk(cfg: SimConfig, snr_db: float, imbalance_db: float, begin: int, end: int) -> TrialCounts:
    """
    Trials ``[begin, end)`` of one grid point; the unit of parallel work.
    """
    total = TrialCounts()
    for trial_index in range(begin, end):
        total = total + run_trial(cfg, trial_index, snr_db, imbalance_db)
    return total


def _ordered_results(
    cfg: SimConfig,
    snr_db: float,
    imbalance_db: float,
    executor: Optional[Executor],
) -> Iterator[TrialCounts]:
    """
    Chunk results in chunk order. With an executor, up to ``cfg.workers``
    chunks run ahead; results are still yielded strictly in order so the
    stopping point does not depend on scheduling.
    """
    chunks = chunk_ranges(0, cfg.max_trials, cfg.chunk_size)
    if executor is None:
        for begin, end in chunks:
            yield run_chunk(cfg, snr_db, imbalance_db, begin, end)
        return

    pending: Deque[Future] = deque()
    try:
        for begin, end in chunks:
            pending.append(executor.submit(run_chunk, cfg, snr_db, imbalance_db, begin, end))
            if len(pending) >= cfg.workers:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()
    finally:
        for future in pending:
            future.cancel()


def run_point(
    cfg: SimConfig,
    snr_db: float,
    imbalance_db: float,
    executor: Optional[Executor] = None,
) -> BerPoint:
    """
    Run chunks until ``min_bit_errors`` is reached or ``max_trials`` are spent.
    """
    code = get_code(cfg.code)
    c = get_constellation(cfg.constellation)
    point = BerPoint(
        code=code.name,
        decoder="ml" if code.name == "alamouti" else cfg.decoder,
        constellation=c.name,
        snr_db=float(snr_db),
        imbalance_db=float(imbalance_db),
        bits_per_codeword=code.symbols_per_codeword * c.bits_per_symbol,
        symbols_per_codeword=code.symbols_per_codeword,
    )

    total = TrialCounts()
    for counts in _ordered_results(cfg, snr_db, imbalance_db, executor):
        total = total + counts
        if total.bit_errors >= cfg.min_bit_errors:
            break
    point.counts = total

    if total.redraws > REDRAW_WARNING_FRACTION * total.trials:
        logger.warning(
            "%d singular-channel redraws over %d trials at snr=%.2f dB, imbalance=%.2f dB",
            total.redraws,
            total.trials,
            snr_db,
            imbalance_db,
        )
    logger.info(
        "%s/%s %s snr=%.2f dB imbalance=%.2f dB: trials=%d bit_errors=%d ber=%.3e",
        point.code,
        point.decoder,
        point.constellation,
        snr_db,
        imbalance_db,
        total.trials,
        total.bit_errors,
        point.ber,
    )
    return point


def run_sweep(cfg: SimConfig) -> List[BerPoint]:
    """
    Every (imbalance, SNR) grid point, imbalance-major, SNR in config order.
    """
    logger.info(
        "sweep: code=%s decoder=%s constellation=%s points=%d workers=%d seed=%d",
        cfg.code,
        cfg.decoder,
        cfg.constellation,
        len(cfg.snr_db) * len(cfg.imbalance_db),
        cfg.workers,
        cfg.seed,
    )
    if cfg.workers == 1:
        return [run_point(cfg, snr, delta) for delta in cfg.imbalance_db for snr in cfg.snr_db]

    with ProcessPoolExecutor(max_workers=cfg.workers) as executor:
        return [run_point(cfg, snr, delta, executor) for delta in cfg.imbalance_db for snr in cfg.snr_db]


def emit_csv(points: Sequence[BerPoint], destination: Destination) -> None:
    """
    Write points sorted by (code, decoder, imbalance_db, snr_db).
    """
    ordered = sorted(points, key=BerPoint.sort_key)
    export_csv([point.to_dict() for point in ordered], destination, columns=CSV_COLUMNS)


def paired_agreement(cfg: SimConfig, snr_db: float, imbalance_db: float, trials: int) -> float:
    """
    Fraction of trials on which ML and conditional ML pick the same symbol
    vector, both decoding the same received vector.
    """
    agreements = 0
    for trial_index in range(trials):
        rng = trial_rng(cfg.seed, trial_index)
        setup = _setup_trial(cfg, rng, snr_db, imbalance_db)

        def both(h: np.ndarray, y: np.ndarray) -> Tuple[DecodeResult, DecodeResult]:
            dec = build_decoder_input(setup.code, h, y, setup.constellation)
            return ml_decode(dec, budget=cfg.ml_budget), conditional_ml_decode(dec)

        (ml, cond), _ = _receive_with_redraws(setup, rng, both)
        agreements += int(np.array_equal(ml.indices, cond.indices))
    return agreements / trials if trials else 1.0


def sweep_imbalance(cfg: SimConfig, target_ber: float = 1e-3) -> List[Dict[str, object]]:
    """
    SNR needed for ``target_ber`` at each imbalance level and the loss against
    the first level in the config.
    """
    points = run_sweep(cfg)
    rows: List[Dict[str, object]] = []
    reference: Optional[float] = None
    for index, delta in enumerate(cfg.imbalance_db):
        curve = [point for point in points if point.imbalance_db == delta]
        snr = snr_at_ber(curve, target_ber)
        if index == 0:
            reference = snr
        loss = None if snr is None or reference is None else snr - reference
        rows.append(
            {
                "code": cfg.code,
                "decoder": curve[0].decoder if curve else cfg.decoder,
                "imbalance_db": delta,
                "target_ber": target_ber,
                "snr_at_target_db": snr,
                "loss_db": loss,
            }
        )
    return rows
