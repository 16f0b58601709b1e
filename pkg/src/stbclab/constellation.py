"""
Square QAM signal alphabets with Gray labels and hard-decision helpers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Union

import numpy as np
import numpy.typing as npt

from .common import LengthMismatch, UnsupportedOrder, lookup

SUPPORTED_ORDERS = (4, 16, 64)
CONSTELLATION_NAMES: Dict[str, int] = {"qpsk": 4, "qam16": 16, "qam64": 64}


def _gray(value: int) -> int:
    return value ^ (value >> 1)


@dataclass(frozen=True, slots=True, eq=False)
class Constellation:
    """
    Unit-average-energy square QAM alphabet.

    Points are stored in raster order (I level major, Q level minor, both
    ascending). ``bit_table[k]`` holds the label of point ``k``: the reflected
    Gray code of the I level followed by that of the Q level, MSB first.
    """

    name: str
    order: int
    points: np.ndarray = field(repr=False)
    bit_table: np.ndarray = field(repr=False)
    d_min: float
    avg_energy: float
    _label_to_index: np.ndarray = field(repr=False)

    @property
    def bits_per_symbol(self) -> int:
        return int(self.order).bit_length() - 1

    @property
    def labels(self) -> List[str]:
        return ["".join(str(int(bit)) for bit in row) for row in self.bit_table]


def _min_pairwise_distance(points: np.ndarray) -> float:
    distances = np.abs(points[:, None] - points[None, :])
    np.fill_diagonal(distances, np.inf)
    return float(distances.min())


@lru_cache(maxsize=None)
def make_qam(order: int) -> Constellation:
    """
    Build a Gray-labelled square QAM constellation of the given order.
    """
    if order not in SUPPORTED_ORDERS:
        raise UnsupportedOrder(f"unsupported constellation order {order}; expected one of {SUPPORTED_ORDERS}")

    side = int(round(np.sqrt(order)))
    axis_bits = (side.bit_length() - 1)
    levels = 2.0 * np.arange(side) - (side - 1)
    scale = np.sqrt(2.0 * (side**2 - 1) / 3.0)

    points = np.empty(order, dtype=np.complex128)
    bit_table = np.empty((order, 2 * axis_bits), dtype=np.uint8)
    label_to_index = np.empty(order, dtype=np.int64)
    shifts = np.arange(axis_bits - 1, -1, -1)

    for i_level in range(side):
        for q_level in range(side):
            index = i_level * side + q_level
            points[index] = complex(levels[i_level], levels[q_level]) / scale
            i_label = _gray(i_level)
            q_label = _gray(q_level)
            bit_table[index, :axis_bits] = (i_label >> shifts) & 1
            bit_table[index, axis_bits:] = (q_label >> shifts) & 1
            label_to_index[(i_label << axis_bits) | q_label] = index

    points.setflags(write=False)
    bit_table.setflags(write=False)
    label_to_index.setflags(write=False)

    name = next(key for key, value in CONSTELLATION_NAMES.items() if value == order)
    return Constellation(
        name=name,
        order=order,
        points=points,
        bit_table=bit_table,
        d_min=_min_pairwise_distance(points),
        avg_energy=float(np.mean(np.abs(points) ** 2)),
        _label_to_index=label_to_index,
    )


def get_constellation(name: str) -> Constellation:
    """
    Resolve a constellation by config name ("qpsk", "qam16", "qam64").
    """
    return make_qam(lookup(CONSTELLATION_NAMES, name, "constellation"))


def hard_decision(z: Union[complex, npt.ArrayLike], c: Constellation) -> Union[int, np.ndarray]:
    """
    Index of the nearest constellation point; ties go to the lowest index.

    A scalar input returns an int, an array input returns an index array of
    the same shape.
    """
    values = np.asarray(z, dtype=np.complex128)
    diff = values[..., None] - c.points
    distances = diff.real**2 + diff.imag**2
    indices = np.argmin(distances, axis=-1)
    if values.ndim == 0:
        return int(indices)
    return indices


def bits_to_indices(bits: npt.ArrayLike, c: Constellation) -> np.ndarray:
    array = np.asarray(bits, dtype=np.int64).ravel()
    k = c.bits_per_symbol
    if array.size % k:
        raise LengthMismatch(f"{array.size} bits is not a multiple of {k} bits per symbol")
    if np.any((array != 0) & (array != 1)):
        raise ValueError("bits must be 0 or 1")
    weights = 1 << np.arange(k - 1, -1, -1)
    labels = array.reshape(-1, k) @ weights
    return c._label_to_index[labels]


def bits_to_symbols(bits: npt.ArrayLike, c: Constellation) -> np.ndarray:
    """
    Map a bit sequence onto constellation points, ``log2(M)`` bits per symbol.
    """
    return c.points[bits_to_indices(bits, c)]


def indices_to_bits(indices: npt.ArrayLike, c: Constellation) -> np.ndarray:
    return c.bit_table[np.asarray(indices, dtype=np.int64)].reshape(-1)


def symbols_to_bits(symbols: npt.ArrayLike, c: Constellation) -> np.ndarray:
    """
    Hard-decide each symbol and return the concatenated labels.
    """
    return indices_to_bits(hard_decision(np.atleast_1d(symbols), c), c)
