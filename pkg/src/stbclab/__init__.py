"""
stbclab: a 4x2 distributed space-time block code lab for single-frequency
broadcast networks.
"""

from .analysis import (
    VerificationSummary,
    codeword_difference,
    complexity_report,
    diversity_slope,
    measure_complexity,
    run_verification,
    snr_at_ber,
    snr_penalty,
    verify_coding_gain,
    verify_rank_property,
)
from .channel import ImbalanceProfile, NoiseModel, draw_channel, snr_to_sigma2
from .codes import (
    alamouti_encode,
    effective_channel,
    generator_matrix,
    get_code,
    golden_encode,
    proposed_encode,
)
from .config import SimConfig, load_config
from .constellation import get_constellation, hard_decision, make_qam
from .decode import DecoderInput, conditional_ml_decode, get_decoder, ml_decode, zf_decode
from .sim import emit_csv, paired_agreement, run_point, run_sweep, run_trial, sweep_imbalance

__all__ = [
    "DecoderInput",
    "ImbalanceProfile",
    "NoiseModel",
    "SimConfig",
    "VerificationSummary",
    "alamouti_encode",
    "codeword_difference",
    "complexity_report",
    "conditional_ml_decode",
    "diversity_slope",
    "draw_channel",
    "effective_channel",
    "emit_csv",
    "generator_matrix",
    "get_code",
    "get_constellation",
    "get_decoder",
    "golden_encode",
    "hard_decision",
    "load_config",
    "make_qam",
    "measure_complexity",
    "ml_decode",
    "paired_agreement",
    "proposed_encode",
    "run_point",
    "run_sweep",
    "run_trial",
    "run_verification",
    "snr_at_ber",
    "snr_penalty",
    "snr_to_sigma2",
    "sweep_imbalance",
    "verify_coding_gain",
    "verify_rank_property",
    "zf_decode",
]
