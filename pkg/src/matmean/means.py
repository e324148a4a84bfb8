"""Matrix means and the quadratic Heron / Bures-Wasserstein expressions.

The central device is the Riccati parametrization: X = A^{-1} # B is the
unique positive definite solution of X A X = B, and it linearizes the
cross terms:

    (A B)^{1/2} = A X,      (B A)^{1/2} = X A,
    W_{a,b}(A, B) = a^2 A + b^2 B + a b ((A B)^{1/2} + (B A)^{1/2})
                  = (a I + b X) A (a I + b X).

The dual Wasserstein formula is recomputed on every call and used as a
built-in correctness oracle.

Values are immutable, so the heavy constructors are memoized on object
identity; this changes nothing semantically and keeps repeated checker
calls on the same instances cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    InvalidWeightsError,
    MatrixFormatError,
    NotPositiveDefiniteError,
    NumericalFailure,
)
from .linalg import (
    HermitianMatrix,
    PDMatrix,
    hermitian_part,
    inverse,
    pd_power,
    principal_sqrt,
)

RICCATI_RESIDUAL_RTOL = 1e-8
WASSERSTEIN_FORM_RTOL = 1e-8


def _psd_pow_raw(mat: np.ndarray, t: float) -> np.ndarray:
    """mat**t for a raw PSD intermediate.

    Conjugated intermediates like A^{-1/2} B A^{-1/2} can be far worse
    conditioned than either operand, so they bypass the strict PDMatrix
    gate; genuine indefiniteness is still rejected, and rounding-level
    negative eigenvalues clamp to zero.
    """
    vals, vecs = np.linalg.eigh(mat)
    lam_max = float(vals[-1])
    if float(vals[0]) < -1e-12 * lam_max or lam_max <= 0.0:
        raise NotPositiveDefiniteError(
            f"intermediate matrix is not PSD: lambda_min = {vals[0]:.3e}, lambda_max = {lam_max:.3e}"
        )
    return hermitian_part((vecs * np.maximum(vals, 0.0) ** t) @ vecs.conj().T)


@dataclass(frozen=True)
class MeanWeights:
    """Coefficient bundle (a, b, c, t) for the Heron-type expressions."""

    a: float
    b: float
    c: float
    t: float = 0.5

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or self.c < 0:
            raise InvalidWeightsError(f"coefficients must be nonnegative: a={self.a}, b={self.b}, c={self.c}")
        if not 0.0 <= self.t <= 1.0:
            raise InvalidWeightsError(f"t must lie in [0, 1], got {self.t}")

    @classmethod
    def sharp(cls, a: float, b: float, t: float = 0.5) -> "MeanWeights":
        """Weights with the endpoint cross coefficient c = 2ab."""
        return cls(a=a, b=b, c=2.0 * a * b, t=t)


def _check_dims(A: PDMatrix, B: PDMatrix):
    if A.dim != B.dim:
        raise MatrixFormatError(f"dimension mismatch: {A.dim} vs {B.dim}")


@lru_cache(maxsize=512)
def geometric_mean(A: PDMatrix, B: PDMatrix) -> PDMatrix:
    """Midpoint geometric mean A # B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}."""
    return geometric_mean_weighted(A, B, 0.5)


def geometric_mean_weighted(A: PDMatrix, B: PDMatrix, t: float) -> PDMatrix:
    """Weighted geometric mean A #_t B."""
    _check_dims(A, B)
    if not 0.0 <= t <= 1.0:
        raise InvalidWeightsError(f"t must lie in [0, 1], got {t}")
    if t == 0.0:
        return A
    if t == 1.0:
        return B
    Ah = principal_sqrt(A)
    Aih = inverse(Ah)
    inner = hermitian_part(Aih.mat @ B.mat @ Aih.mat)
    mid = _psd_pow_raw(inner, t)
    return PDMatrix(hermitian_part(Ah.mat @ mid @ Ah.mat))


@lru_cache(maxsize=512)
def riccati_mean(A: PDMatrix, B: PDMatrix) -> PDMatrix:
    """X = A^{-1} # B, the unique positive definite solution of X A X = B.

    The defining residual is verified on every call; a violation means the
    floating pipeline lost too much accuracy to be trusted.
    """
    _check_dims(A, B)
    X = geometric_mean(inverse(A), B)
    residual = float(np.linalg.norm(X.mat @ A.mat @ X.mat - B.mat))
    limit = RICCATI_RESIDUAL_RTOL * float(np.linalg.norm(B.mat))
    if residual > limit:
        raise NumericalFailure(f"Riccati residual ||XAX - B|| = {residual:.3e} exceeds {limit:.3e}")
    return X


def spectral_mean_weighted(A: PDMatrix, B: PDMatrix, t: float) -> PDMatrix:
    """Weighted spectral geometric mean (A^{-1} # B)^t A (A^{-1} # B)^t."""
    _check_dims(A, B)
    if not 0.0 <= t <= 1.0:
        raise InvalidWeightsError(f"t must lie in [0, 1], got {t}")
    if t == 0.0:
        return A
    X = riccati_mean(A, B)
    Xt = principal_sqrt(X) if t == 0.5 else pd_power(X, t)
    return PDMatrix(hermitian_part(Xt.mat @ A.mat @ Xt.mat))


@lru_cache(maxsize=512)
def spectral_mean(A: PDMatrix, B: PDMatrix) -> PDMatrix:
    """Midpoint spectral geometric mean."""
    return spectral_mean_weighted(A, B, 0.5)


def product_sqrt_pair(A: PDMatrix, B: PDMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Principal square roots ((AB)^{1/2}, (BA)^{1/2}) = (A X, X A).

    Neither factor is Hermitian in general, but their sum is.
    """
    X = riccati_mean(A, B)
    return A.mat @ X.mat, X.mat @ A.mat


@lru_cache(maxsize=512)
def _wasserstein_cached(A: PDMatrix, B: PDMatrix, a: float, b: float) -> tuple[HermitianMatrix, float]:
    _check_dims(A, B)
    if a < 0 or b < 0:
        raise InvalidWeightsError(f"weights must be nonnegative: a={a}, b={b}")
    if b == 0.0:
        return HermitianMatrix(a * a * A.mat), 0.0
    if a == 0.0:
        return HermitianMatrix(b * b * B.mat), 0.0
    X = riccati_mean(A, B)
    n = A.dim
    T = a * np.eye(n) + b * X.mat
    by_congruence = hermitian_part(T @ A.mat @ T)
    AX = A.mat @ X.mat
    by_definition = a * a * A.mat + b * b * B.mat + a * b * (AX + AX.conj().T)
    scale = float(np.linalg.norm(by_congruence))
    residual = float(np.linalg.norm(by_definition - by_congruence))
    if residual > WASSERSTEIN_FORM_RTOL * scale:
        raise NumericalFailure(
            f"Wasserstein dual formulas disagree: ||diff|| = {residual:.3e} vs scale {scale:.3e}"
        )
    return HermitianMatrix(by_congruence), residual


def wasserstein_expression(A: PDMatrix, B: PDMatrix, a: float, b: float) -> HermitianMatrix:
    """W_{a,b}(A,B) = a^2 A + b^2 B + ab((AB)^{1/2} + (BA)^{1/2}).

    Computed through the congruence form (aI + bX) A (aI + bX) and
    cross-validated against the definitional form on every call.
    """
    return _wasserstein_cached(A, B, float(a), float(b))[0]


def wasserstein_residual(A: PDMatrix, B: PDMatrix, a: float, b: float) -> float:
    """Frobenius distance between the two Wasserstein formulas."""
    return _wasserstein_cached(A, B, float(a), float(b))[1]


def bw_geodesic(A: PDMatrix, B: PDMatrix, t: float) -> HermitianMatrix:
    """Bures-Wasserstein geodesic point W_{1-t,t}(A, B)."""
    if not 0.0 <= t <= 1.0:
        raise InvalidWeightsError(f"t must lie in [0, 1], got {t}")
    return wasserstein_expression(A, B, 1.0 - t, t)


def heron_spectral(A: PDMatrix, B: PDMatrix, w: MeanWeights) -> PDMatrix:
    """Spectral Heron expression a^2 A + b^2 B + c (A natural B)."""
    if w.c == 0.0:
        return PDMatrix(w.a * w.a * A.mat + w.b * w.b * B.mat)
    cross = spectral_mean(A, B)
    return PDMatrix(w.a * w.a * A.mat + w.b * w.b * B.mat + w.c * cross.mat)


def heron_kubo(A: PDMatrix, B: PDMatrix, a: float, b: float, c: float | None = None) -> PDMatrix:
    """Heron expression with the geometric-mean cross term,
    a^2 A + b^2 B + c (A # B); c defaults to the endpoint 2ab."""
    if c is None:
        c = 2.0 * a * b
    if a < 0 or b < 0 or c < 0:
        raise InvalidWeightsError(f"coefficients must be nonnegative: a={a}, b={b}, c={c}")
    if c == 0.0:
        return PDMatrix(a * a * A.mat + b * b * B.mat)
    cross = geometric_mean(A, B)
    return PDMatrix(a * a * A.mat + b * b * B.mat + c * cross.mat)
