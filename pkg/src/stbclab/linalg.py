"""
Small fixed-size complex linear algebra used by the encoders, decoders and
property checks.

Everything operates on numpy arrays of dtype complex128 whose trailing two
axes are the matrix; leading axes, when present, are a stack of matrices.
"""

from __future__ import annotations

from typing import Tuple, Union

import numpy as np
import numpy.typing as npt

from .common import NotHermitian, SingularMatrix

CVec = npt.NDArray[np.complex128]
CMat = npt.NDArray[np.complex128]

SINGULAR_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12
RANK_TOLERANCE = 1e-9


def as_cmat(values: npt.ArrayLike) -> CMat:
    """
    Coerce ``values`` to a finite complex128 array.
    """
    array = np.asarray(values, dtype=np.complex128)
    if not np.all(np.isfinite(array)):
        raise ValueError("matrix entries must be finite")
    return array


def hermitian(m: npt.ArrayLike) -> CMat:
    """
    Conjugate transpose over the trailing two axes.
    """
    array = np.asarray(m, dtype=np.complex128)
    return np.conj(np.swapaxes(array, -1, -2))


def gram(m: npt.ArrayLike) -> CMat:
    """
    Gram matrix ``m^H m``.
    """
    array = np.asarray(m, dtype=np.complex128)
    return hermitian(array) @ array


def squared_norm(v: npt.ArrayLike) -> float:
    """
    Squared Euclidean (Frobenius for matrices) norm.
    """
    array = np.asarray(v, dtype=np.complex128)
    return float(np.sum(array.real**2 + array.imag**2))


def inv2(m: npt.ArrayLike) -> CMat:
    """
    Closed-form inverse of a 2x2 complex matrix.

    Raises SingularMatrix when ``|det| <= 1e-12 * (||m||_F^2 + 1)``.
    """
    array = np.asarray(m, dtype=np.complex128)
    if array.shape != (2, 2):
        raise ValueError(f"inv2 expects a 2x2 matrix, got shape {array.shape}")

    a, b = array[0]
    c, d = array[1]
    det = a * d - b * c
    if abs(det) <= SINGULAR_TOLERANCE * (squared_norm(array) + 1.0):
        raise SingularMatrix(f"2x2 matrix is singular (|det| = {abs(det):.3e})")

    return np.array([[d, -b], [-c, a]], dtype=np.complex128) / det


def _hermitian_mismatch(m: CMat) -> float:
    return float(np.max(np.abs(m - hermitian(m)), initial=0.0))


def eig_hermitian2_batch(m: npt.ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenvalues of a stack of 2x2 Hermitian matrices, larger first.

    Uses the half-difference form ``tr/2 +- sqrt(((a - d)/2)^2 + |b|^2)`` which
    stays accurate when the two eigenvalues are nearly equal.
    """
    array = np.asarray(m, dtype=np.complex128)
    if array.shape[-2:] != (2, 2):
        raise ValueError(f"expected trailing 2x2 matrices, got shape {array.shape}")

    scale = max(1.0, float(np.max(np.abs(array), initial=0.0)))
    if _hermitian_mismatch(array) > HERMITIAN_TOLERANCE * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")

    a = array[..., 0, 0].real
    d = array[..., 1, 1].real
    b = array[..., 0, 1]
    half_trace = 0.5 * (a + d)
    radius = np.sqrt((0.5 * (a - d)) ** 2 + (b.real**2 + b.imag**2))
    return half_trace + radius, half_trace - radius


def eig_hermitian2(m: npt.ArrayLike) -> Tuple[float, float]:
    """
    Both real eigenvalues of a 2x2 Hermitian matrix, in descending order.
    """
    array = np.asarray(m, dtype=np.complex128)
    if array.shape != (2, 2):
        raise ValueError(f"eig_hermitian2 expects a 2x2 matrix, got shape {array.shape}")
    high, low = eig_hermitian2_batch(array)
    return float(high), float(low)


def rank_numeric(m: npt.ArrayLike) -> Union[int, np.ndarray]:
    """
    Numerical rank: singular values above ``1e-9 * sigma_max`` are counted.

    Accepts a single matrix (returns int) or a stack (returns an int array).
    """
    array = np.asarray(m, dtype=np.complex128)
    singular_values = np.linalg.svd(array, compute_uv=False)
    sigma_max = singular_values[..., :1]
    counted = (singular_values > RANK_TOLERANCE * sigma_max) & (sigma_max > 0.0)
    ranks = np.sum(counted, axis=-1)
    if array.ndim == 2:
        return int(ranks)
    return ranks
