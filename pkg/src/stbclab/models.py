"""
Result records produced by the simulator and the property checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

CSV_COLUMNS = (
    "code",
    "decoder",
    "constellation",
    "snr_db",
    "imbalance_db",
    "trials",
    "bit_errors",
    "symbol_errors",
    "codeword_errors",
    "redraws",
    "ber",
    "ser",
)


@dataclass(slots=True)
class TrialCounts:
    """
    Error counts over one or more trials. Addition is the reduction used to
    merge work units, so it must stay associative.
    """

    trials: int = 0
    bit_errors: int = 0
    symbol_errors: int = 0
    codeword_errors: int = 0
    redraws: int = 0

    def __add__(self, other: "TrialCounts") -> "TrialCounts":
        return TrialCounts(
            trials=self.trials + other.trials,
            bit_errors=self.bit_errors + other.bit_errors,
            symbol_errors=self.symbol_errors + other.symbol_errors,
            codeword_errors=self.codeword_errors + other.codeword_errors,
            redraws=self.redraws + other.redraws,
        )


@dataclass(slots=True)
class BerPoint:
    """
    Aggregated Monte Carlo result for one (SNR, imbalance) grid point.
    """

    code: str
    decoder: str
    constellation: str
    snr_db: float
    imbalance_db: float
    bits_per_codeword: int
    symbols_per_codeword: int
    counts: TrialCounts = field(default_factory=TrialCounts)

    @property
    def trials(self) -> int:
        return self.counts.trials

    @property
    def bit_errors(self) -> int:
        return self.counts.bit_errors

    @property
    def symbol_errors(self) -> int:
        return self.counts.symbol_errors

    @property
    def codeword_errors(self) -> int:
        return self.counts.codeword_errors

    @property
    def redraws(self) -> int:
        return self.counts.redraws

    @property
    def ber(self) -> float:
        if not self.trials:
            return 0.0
        return self.bit_errors / (self.trials * self.bits_per_codeword)

    @property
    def ser(self) -> float:
        if not self.trials:
            return 0.0
        return self.symbol_errors / (self.trials * self.symbols_per_codeword)

    def sort_key(self) -> Tuple[str, str, float, float]:
        return (self.code, self.decoder, self.imbalance_db, self.snr_db)

    def to_dict(self) -> Dict[str, object]:
        return {
            "code": self.code,
            "decoder": self.decoder,
            "constellation": self.constellation,
            "snr_db": self.snr_db,
            "imbalance_db": self.imbalance_db,
            "trials": self.trials,
            "bit_errors": self.bit_errors,
            "symbol_errors": self.symbol_errors,
            "codeword_errors": self.codeword_errors,
            "redraws": self.redraws,
            "ber": self.ber,
            "ser": self.ser,
        }


@dataclass(slots=True)
class PairwiseReport:
    """
    Outcome of a rank or coding-gain scan over codeword pairs.

    ``min_eigen_product_root`` is measured on Raw codewords;
    ``normalized_coding_gain`` is the same figure with the 1/sqrt(2) applied.
    """

    constellation: str
    mode: str  # exhaustive | sampled
    pairs_checked: int
    min_rank: int
    min_eigen_product_root: Optional[float] = None
    argmin_pair: Optional[Tuple[List[complex], List[complex]]] = None
    min_symbol_distance: Optional[float] = None
    violations: int = 0

    @property
    def normalized_coding_gain(self) -> Optional[float]:
        if self.min_eigen_product_root is None:
            return None
        return self.min_eigen_product_root / 2.0

    def to_dict(self) -> Dict[str, object]:
        return {
            "constellation": self.constellation,
            "mode": self.mode,
            "pairs_checked": self.pairs_checked,
            "min_rank": self.min_rank,
            "min_eigen_product_root": self.min_eigen_product_root,
            "normalized_coding_gain": self.normalized_coding_gain,
            "min_symbol_distance": self.min_symbol_distance,
            "violations": self.violations,
        }


@dataclass(slots=True)
class ComplexityRow:
    """
    Measured versus analytic metric evaluations for one decoder run.
    """

    code: str
    decoder: str
    constellation: str
    order: int
    measured: int
    analytic: int
    label: str

    @property
    def matches(self) -> bool:
        return self.measured == self.analytic

    def to_dict(self) -> Dict[str, object]:
        return {
            "code": self.code,
            "decoder": self.decoder,
            "constellation": self.constellation,
            "order": self.order,
            "measured": self.measured,
            "analytic": self.analytic,
            "label": self.label,
            "matches": self.matches,
        }


@dataclass(slots=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}
