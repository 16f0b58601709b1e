"""
Shared fixtures for the stbclab test suite.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from stbclab.constellation import Constellation, make_qam  # noqa: E402


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def qpsk() -> Constellation:
    return make_qam(4)


@pytest.fixture
def qam16() -> Constellation:
    return make_qam(16)


@pytest.fixture
def cn(rng: np.random.Generator):
    """
    Draw CN(0, 1) arrays of a given shape from the shared stream.
    """

    def draw(*shape: int) -> np.ndarray:
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)

    return draw
