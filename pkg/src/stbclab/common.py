"""
Common helpers shared across stbclab modules.
"""

from __future__ import annotations

import re
from typing import Mapping, TypeVar

T = TypeVar("T")


class StbcLabError(Exception):
    """
    Base class for every error raised by the package.
    """


class UnsupportedOrder(StbcLabError, ValueError):
    """Constellation order outside the supported square-QAM set."""


class LengthMismatch(StbcLabError, ValueError):
    """Bit or symbol sequence length incompatible with the constellation."""


class SingularMatrix(StbcLabError, ValueError):
    """A Gram or effective matrix is numerically singular (degenerate channel draw)."""


class NotHermitian(StbcLabError, ValueError):
    """Matrix expected to be Hermitian is not, within tolerance."""


class BudgetExceeded(StbcLabError, ValueError):
    """Exhaustive enumeration would exceed the configured hypothesis budget."""


class IdenticalInputs(StbcLabError, ValueError):
    """Two symbol vectors expected to differ are identical."""


class InsufficientErrors(StbcLabError, ValueError):
    """A BER curve has too few points above the error-count floor."""


class UnknownName(StbcLabError, KeyError):
    """Lookup of a code, decoder or constellation by an unknown name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ConfigError(StbcLabError, ValueError):
    """Invalid simulation configuration."""


class IoFailure(StbcLabError, OSError):
    """Writing or reading an output file failed."""


def lookup(registry: Mapping[str, T], name: str, kind: str) -> T:
    """
    Return ``registry[name]`` or raise UnknownName listing the valid choices.
    """
    key = normalize_name(name)
    try:
        return registry[key]
    except KeyError:
        choices = ", ".join(sorted(registry))
        raise UnknownName(f"unknown {kind} {name!r}; expected one of: {choices}") from None


def normalize_name(text: str) -> str:
    """
    Lower-case a user supplied name and collapse separators to a single dash.
    """
    text = text.strip().lower()
    text = re.sub(r"[\s_]+", "-", text)
    return text.strip("-")


def db_to_linear(value_db: float) -> float:
    return float(10.0 ** (value_db / 10.0))
