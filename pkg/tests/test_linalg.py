"""Tests for the fixed-size complex linear algebra helpers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from stbclab.common import NotHermitian, SingularMatrix
from stbclab.linalg import eig_hermitian2, eig_hermitian2_batch, gram, hermitian, inv2, rank_numeric

finite_complex = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)


class TestHermitian:
    def test_identity(self) -> None:
        np.testing.assert_array_equal(hermitian(np.eye(2)), np.eye(2))

    def test_pure_imaginary_diagonal(self) -> None:
        m = np.array([[1j, 0], [0, 1j]])
        np.testing.assert_array_equal(hermitian(m), np.array([[-1j, 0], [0, -1j]]))

    @given(arrays(np.complex128, (3, 2), elements=finite_complex))
    def test_involution_is_exact(self, m: np.ndarray) -> None:
        np.testing.assert_array_equal(hermitian(hermitian(m)), m)

    def test_stack_transposes_trailing_axes(self, cn) -> None:
        stack = cn(5, 4, 2)
        result = hermitian(stack)
        assert result.shape == (5, 2, 4)
        np.testing.assert_array_equal(result[3], stack[3].conj().T)

    def test_gram_is_hermitian_psd(self, cn) -> None:
        g = gram(cn(4, 2))
        np.testing.assert_allclose(g, hermitian(g), atol=1e-12)
        assert np.all(np.linalg.eigvalsh(g) >= -1e-12)


class TestInv2:
    def test_identity(self) -> None:
        np.testing.assert_allclose(inv2(np.eye(2)), np.eye(2))

    def test_scalar_matrix(self) -> None:
        np.testing.assert_allclose(inv2(2.0 * np.eye(2)), 0.5 * np.eye(2))

    def test_random_residual(self, cn) -> None:
        for _ in range(100):
            m = cn(2, 2)
            if np.linalg.cond(m) > 1e8:
                continue
            np.testing.assert_allclose(m @ inv2(m), np.eye(2), atol=1e-10)

    def test_singular_raises(self) -> None:
        with pytest.raises(SingularMatrix):
            inv2(np.array([[1.0, 2.0], [2.0, 4.0]]))

    def test_zero_raises(self) -> None:
        with pytest.raises(SingularMatrix):
            inv2(np.zeros((2, 2)))

    def test_rejects_wrong_shape(self) -> None:
        with pytest.raises(ValueError):
            inv2(np.eye(3))


class TestEigHermitian2:
    def test_identity(self) -> None:
        assert eig_hermitian2(np.eye(2)) == pytest.approx((1.0, 1.0))

    def test_diagonal_descending(self) -> None:
        assert eig_hermitian2(np.diag([1.0, 3.0])) == pytest.approx((3.0, 1.0))

    def test_not_hermitian(self) -> None:
        with pytest.raises(NotHermitian):
            eig_hermitian2(np.array([[1.0, 1.0], [0.0, 1.0]]))

    @settings(max_examples=50)
    @given(arrays(np.complex128, (3, 2), elements=finite_complex))
    def test_characteristic_polynomial(self, a: np.ndarray) -> None:
        m = gram(a)
        high, low = eig_hermitian2(m)
        assert high >= low
        trace = m[0, 0].real + m[1, 1].real
        det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
        scale = max(1.0, trace) ** 2
        for lam in (high, low):
            assert abs(lam * lam - trace * lam + det) <= 1e-9 * scale

    def test_batch_matches_numpy(self, cn) -> None:
        stack = gram(cn(20, 4, 2))
        high, low = eig_hermitian2_batch(stack)
        reference = np.linalg.eigvalsh(stack)
        np.testing.assert_allclose(high, reference[:, 1], atol=1e-10)
        np.testing.assert_allclose(low, reference[:, 0], atol=1e-10)


class TestRankNumeric:
    def test_zero_matrix(self) -> None:
        assert rank_numeric(np.zeros((4, 2))) == 0

    def test_single_nonzero_column(self) -> None:
        m = np.zeros((4, 2), dtype=np.complex128)
        m[:, 1] = [1, 2j, 0, -1]
        assert rank_numeric(m) == 1

    def test_full_rank(self, cn) -> None:
        assert rank_numeric(cn(4, 2)) == 2

    def test_stack_returns_array(self, cn) -> None:
        stack = cn(3, 4, 2)
        stack[1, :, 1] = 2.0 * stack[1, :, 0]
        np.testing.assert_array_equal(rank_numeric(stack), [2, 1, 2])
