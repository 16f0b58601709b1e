"""Tests for the Gray-labelled QAM alphabets."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stbclab.common import LengthMismatch, UnknownName, UnsupportedOrder
from stbclab.constellation import (
    Constellation,
    bits_to_indices,
    bits_to_symbols,
    get_constellation,
    hard_decision,
    indices_to_bits,
    make_qam,
    symbols_to_bits,
)


class TestMakeQam:
    def test_qpsk_points(self, qpsk: Constellation) -> None:
        expected = {complex(a, b) / np.sqrt(2) for a in (-1, 1) for b in (-1, 1)}
        assert len(qpsk.points) == 4
        for point in qpsk.points:
            assert min(abs(point - e) for e in expected) < 1e-12
        assert qpsk.d_min == pytest.approx(np.sqrt(2))

    def test_qam16_scaling(self, qam16: Constellation) -> None:
        assert qam16.avg_energy == pytest.approx(1.0, abs=1e-12)
        assert qam16.d_min == pytest.approx(2 / np.sqrt(10))

    @pytest.mark.parametrize("order", [4, 16, 64])
    def test_unit_average_energy(self, order: int) -> None:
        c = make_qam(order)
        assert np.mean(np.abs(c.points) ** 2) == pytest.approx(1.0, abs=1e-12)
        assert c.bits_per_symbol == int(np.log2(order))

    @pytest.mark.parametrize("order", [4, 16, 64])
    def test_labels_are_a_permutation(self, order: int) -> None:
        c = make_qam(order)
        assert len(set(c.labels)) == order

    @pytest.mark.parametrize("order", [4, 16, 64])
    def test_gray_neighbours_differ_in_one_bit(self, order: int) -> None:
        c = make_qam(order)
        for k, point in enumerate(c.points):
            distances = np.abs(c.points - point)
            neighbours = np.flatnonzero(np.isclose(distances, c.d_min))
            assert len(neighbours) >= 2
            for n in neighbours:
                assert int(np.sum(c.bit_table[k] != c.bit_table[n])) == 1

    @pytest.mark.parametrize("order", [2, 8, 32, 256])
    def test_unsupported_order(self, order: int) -> None:
        with pytest.raises(UnsupportedOrder):
            make_qam(order)

    def test_points_are_read_only(self, qpsk: Constellation) -> None:
        with pytest.raises(ValueError):
            qpsk.points[0] = 0.0


class TestGetConstellation:
    @pytest.mark.parametrize("name,order", [("qpsk", 4), ("QAM16", 16), ("qam64", 64)])
    def test_known_names(self, name: str, order: int) -> None:
        assert get_constellation(name).order == order

    def test_unknown_name(self) -> None:
        with pytest.raises(UnknownName):
            get_constellation("8psk")


class TestHardDecision:
    def test_fixed_point(self, qam16: Constellation) -> None:
        assert hard_decision(qam16.points[3], qam16) == 3

    def test_origin_breaks_tie_to_lowest_index(self, qpsk: Constellation) -> None:
        assert hard_decision(0j, qpsk) == 0

    def test_just_short_of_midpoint(self, qam16: Constellation) -> None:
        p2, p5 = qam16.points[2], qam16.points[5]
        assert hard_decision(p2 + 0.49 * (p5 - p2), qam16) == 2

    def test_idempotent_on_points(self, qam16: Constellation) -> None:
        np.testing.assert_array_equal(hard_decision(qam16.points, qam16), np.arange(16))

    def test_matches_brute_force(self, qam16: Constellation, rng: np.random.Generator) -> None:
        z = 1.5 * (rng.standard_normal(10_000) + 1j * rng.standard_normal(10_000))
        expected = [int(np.argmin(np.abs(value - qam16.points))) for value in z]
        np.testing.assert_array_equal(hard_decision(z, qam16), expected)

    def test_preserves_shape(self, qpsk: Constellation) -> None:
        z = np.zeros((3, 2), dtype=np.complex128)
        assert hard_decision(z, qpsk).shape == (3, 2)


class TestBitMapping:
    def test_empty_sequence(self, qpsk: Constellation) -> None:
        assert bits_to_symbols([], qpsk).size == 0

    def test_length_mismatch(self, qam16: Constellation) -> None:
        with pytest.raises(LengthMismatch):
            bits_to_indices([0, 1, 1], qam16)

    def test_rejects_non_binary(self, qpsk: Constellation) -> None:
        with pytest.raises(ValueError):
            bits_to_indices([0, 2], qpsk)

    @pytest.mark.parametrize("order", [4, 16, 64])
    def test_label_of_point_maps_back(self, order: int) -> None:
        c = make_qam(order)
        for k in range(order):
            np.testing.assert_array_equal(bits_to_indices(c.bit_table[k], c), [k])

    def test_all_two_symbol_qpsk_inputs(self, qpsk: Constellation) -> None:
        for value in range(16):
            bits = np.array([(value >> shift) & 1 for shift in (3, 2, 1, 0)])
            np.testing.assert_array_equal(symbols_to_bits(bits_to_symbols(bits, qpsk), qpsk), bits)

    @given(st.integers(0, 3).flatmap(lambda n: st.lists(st.integers(0, 1), min_size=6 * n, max_size=6 * n)))
    def test_qam64_bits_survive_mapping(self, bits) -> None:
        c = make_qam(64)
        np.testing.assert_array_equal(indices_to_bits(bits_to_indices(bits, c), c), np.asarray(bits, dtype=np.uint8))
