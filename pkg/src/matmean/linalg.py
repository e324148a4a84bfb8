"""Dense complex Hermitian linear algebra on small matrices.

All matrix functions (square root, inverse, powers, positive part) are
computed through one eigendecomposition path, never by iteration, so a
single accuracy model covers everything.  Values are immutable after
construction and every operation is a pure function.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    InvalidWeightsError,
    MatrixFormatError,
    NotPositiveDefiniteError,
    NumericalFailure,
)

# Construction-time Hermitization: asymmetry within this relative threshold
# is averaged away, anything larger is rejected rather than silently fixed.
HERMITIAN_ASYMMETRY_RTOL = 1e-13
# Positive definiteness: smallest eigenvalue must clear this fraction of the
# largest one.
PD_EIGENVALUE_RTOL = 1e-12
# Eigendecomposition quality gates.
RECONSTRUCTION_RTOL = 1e-10
UNITARITY_RTOL = 1e-10
# Rotation budget for the cyclic Jacobi solver, per dim**2.
JACOBI_BUDGET_PER_DIM2 = 100


def _as_complex_square(entries) -> np.ndarray:
    mat = np.asarray(entries, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise MatrixFormatError(f"expected a nonempty square matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise MatrixFormatError("matrix contains non-finite entries")
    return mat


def hermitian_part(mat: np.ndarray) -> np.ndarray:
    """(M + M*)/2 for raw arrays whose Hermitianity is guaranteed
    algebraically but not bitwise."""
    return (mat + mat.conj().T) / 2


class HermitianMatrix:
    """Immutable dense complex Hermitian matrix.

    The eigendecomposition is computed lazily and cached; since the value
    never changes, the cache is safe to share between threads.
    """

    __slots__ = ("mat", "_eig")

    def __init__(self, entries):
        mat = _as_complex_square(entries)
        scale = float(np.abs(mat).max())
        asym = float(np.abs(mat - mat.conj().T).max())
        if asym > HERMITIAN_ASYMMETRY_RTOL * scale:
            raise MatrixFormatError(
                f"matrix is not Hermitian: asymmetry {asym:.3e} exceeds "
                f"{HERMITIAN_ASYMMETRY_RTOL:g} * max|entry| = {HERMITIAN_ASYMMETRY_RTOL * scale:.3e}"
            )
        mat = hermitian_part(mat)
        mat.flags.writeable = False
        self.mat = mat
        self._eig = None

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def eig(self) -> "SpectralDecomposition":
        if self._eig is None:
            self._eig = eig_hermitian(self)
        return self._eig

    def trace(self) -> float:
        return float(np.trace(self.mat).real)

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.mat))

    def __add__(self, other):
        if isinstance(other, (HermitianMatrix, PDMatrix)):
            return HermitianMatrix(self.mat + _raw(other))
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, (HermitianMatrix, PDMatrix)):
            return HermitianMatrix(self.mat - _raw(other))
        return NotImplemented

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, float)):
            return HermitianMatrix(scalar * self.mat)
        return NotImplemented

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim})"


def _raw(M) -> np.ndarray:
    return M.mat if isinstance(M, (HermitianMatrix, PDMatrix)) else np.asarray(M, dtype=np.complex128)


class SpectralDecomposition:
    """Eigenvalues sorted in decreasing order with matching unitary columns."""

    __slots__ = ("eigenvalues", "eigenvectors")

    def __init__(self, eigenvalues, eigenvectors, reference: np.ndarray | None = None):
        vals = np.asarray(eigenvalues, dtype=np.float64)
        vecs = np.asarray(eigenvectors, dtype=np.complex128)
        n = vals.shape[0]
        if vecs.shape != (n, n):
            raise MatrixFormatError("eigenvector matrix shape does not match eigenvalue count")
        if np.any(vals[:-1] < vals[1:]):
            raise MatrixFormatError("eigenvalues must be sorted in decreasing order")
        ortho = float(np.linalg.norm(vecs.conj().T @ vecs - np.eye(n)))
        if ortho > UNITARITY_RTOL * n:
            raise NumericalFailure(f"eigenvector matrix is not unitary: ||U*U - I|| = {ortho:.3e}")
        if reference is not None:
            recon = float(np.linalg.norm((vecs * vals) @ vecs.conj().T - reference))
            limit = RECONSTRUCTION_RTOL * (1.0 + float(np.linalg.norm(reference)))
            if recon > limit:
                raise NumericalFailure(f"eigendecomposition residual {recon:.3e} exceeds {limit:.3e}")
        vals.flags.writeable = False
        vecs.flags.writeable = False
        self.eigenvalues = vals
        self.eigenvectors = vecs

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def assemble(self, transformed_eigenvalues) -> np.ndarray:
        """U diag(f(lambda)) U* as a raw Hermitian array."""
        vecs = self.eigenvectors
        return hermitian_part((vecs * np.asarray(transformed_eigenvalues)) @ vecs.conj().T)


class PDMatrix:
    """Positive definite matrix: a HermitianMatrix plus the eigenvalue
    witness that certified strict positivity at construction."""

    __slots__ = ("base", "min_eigenvalue_witness")

    def __init__(self, base):
        if isinstance(base, PDMatrix):
            base = base.base
        if not isinstance(base, HermitianMatrix):
            base = HermitianMatrix(base)
        dec = base.eig()
        lam_min = float(dec.eigenvalues[-1])
        lam_max = float(dec.eigenvalues[0])
        if not lam_min > PD_EIGENVALUE_RTOL * lam_max or lam_min <= 0.0:
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite: lambda_min = {lam_min:.3e}, lambda_max = {lam_max:.3e}"
            )
        self.base = base
        self.min_eigenvalue_witness = lam_min

    @classmethod
    def _from_eig(cls, eigenvalues_desc: np.ndarray, eigenvectors: np.ndarray) -> "PDMatrix":
        """Build from a known spectral factorization, skipping the fresh
        eigendecomposition.  Caller guarantees decreasing order."""
        dec = SpectralDecomposition(eigenvalues_desc, eigenvectors)
        lam_min, lam_max = float(dec.eigenvalues[-1]), float(dec.eigenvalues[0])
        if not lam_min > PD_EIGENVALUE_RTOL * lam_max or lam_min <= 0.0:
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite: lambda_min = {lam_min:.3e}, lambda_max = {lam_max:.3e}"
            )
        base = HermitianMatrix(dec.assemble(dec.eigenvalues))
        base._eig = dec
        obj = cls.__new__(cls)
        obj.base = base
        obj.min_eigenvalue_witness = lam_min
        return obj

    @property
    def mat(self) -> np.ndarray:
        return self.base.mat

    @property
    def dim(self) -> int:
        return self.base.dim

    def eig(self) -> SpectralDecomposition:
        return self.base.eig()

    def trace(self) -> float:
        return self.base.trace()

    def frobenius(self) -> float:
        return self.base.frobenius()

    def __add__(self, other):
        return self.base + other

    def __sub__(self, other):
        return self.base - other

    def __rmul__(self, scalar):
        return scalar * self.base

    def __repr__(self):
        return f"PDMatrix(dim={self.dim}, lambda_min={self.min_eigenvalue_witness:.3e})"


def eig_hermitian(H: HermitianMatrix, method: str = "lapack") -> SpectralDecomposition:
    """Eigendecomposition with eigenvalues in decreasing order.

    method="lapack" uses numpy's eigh.  method="jacobi" runs the cyclic
    Jacobi sweep solver with a deterministic budget of 100*dim**2
    rotations; it is slower and kept as an independent cross-check.
    """
    mat = H.mat if isinstance(H, (HermitianMatrix, PDMatrix)) else HermitianMatrix(H).mat
    if method == "lapack":
        try:
            vals, vecs = np.linalg.eigh(mat)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"eigensolver did not converge: {exc}") from exc
        order = slice(None, None, -1)
        return SpectralDecomposition(vals[order].copy(), vecs[:, order].copy(), reference=mat)
    if method == "jacobi":
        vals, vecs = _jacobi_eigh(mat)
        order = np.argsort(vals)[::-1]
        return SpectralDecomposition(vals[order], vecs[:, order], reference=mat)
    raise ValueError(f"unknown eigensolver method {method!r}")


def _jacobi_eigh(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi for complex Hermitian matrices.

    Each rotation zeroes one off-diagonal pair (p, q) with a unitary
    2x2 rotation; sweeps repeat until the off-diagonal mass is at noise
    level or the rotation budget runs out.
    """
    n = mat.shape[0]
    A = mat.astype(np.complex128).copy()
    V = np.eye(n, dtype=np.complex128)
    if n == 1:
        return A.real.diagonal().copy(), V
    budget = JACOBI_BUDGET_PER_DIM2 * n * n
    scale = max(float(np.linalg.norm(A)), 1.0)
    tol = 1e-14 * scale
    rotations = 0
    while True:
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = A[p, q]
                if abs(g) <= 1e-16 * scale:
                    continue
                if rotations >= budget:
                    raise NumericalFailure(
                        f"cyclic Jacobi did not converge within {budget} rotations"
                    )
                rotations += 1
                # plane rotation U with U[p,p]=U[q,q]=c, U[p,q]=-s*w,
                # U[q,p]=s*conj(w), where w is the phase of A[p,q]
                w = g / abs(g)
                app, aqq = A[p, p].real, A[q, q].real
                tau = (aqq - app) / (2.0 * abs(g))
                if tau == 0.0:
                    t = 1.0
                else:
                    t = (-1.0 if tau > 0 else 1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                col_p = c * A[:, p] + s * np.conj(w) * A[:, q]
                col_q = -s * w * A[:, p] + c * A[:, q]
                A[:, p], A[:, q] = col_p, col_q
                row_p = c * A[p, :] + s * w * A[q, :]
                row_q = -s * np.conj(w) * A[p, :] + c * A[q, :]
                A[p, :], A[q, :] = row_p, row_q
                A[p, q] = 0.0
                A[q, p] = 0.0
                vcol_p = c * V[:, p] + s * np.conj(w) * V[:, q]
                vcol_q = -s * w * V[:, p] + c * V[:, q]
                V[:, p], V[:, q] = vcol_p, vcol_q
    return np.real(np.diag(A)).copy(), V


def principal_sqrt(P: PDMatrix) -> PDMatrix:
    """Unique positive definite square root."""
    dec = P.eig()
    return PDMatrix._from_eig(np.sqrt(dec.eigenvalues), dec.eigenvectors)


def pd_power(P: PDMatrix, t: float) -> PDMatrix:
    """P**t for real t via the eigendecomposition."""
    dec = P.eig()
    vals = dec.eigenvalues ** t
    if t >= 0:
        return PDMatrix._from_eig(vals, dec.eigenvectors)
    return PDMatrix._from_eig(vals[::-1].copy(), dec.eigenvectors[:, ::-1].copy())


def inverse(P: PDMatrix) -> PDMatrix:
    """Inverse of a positive definite matrix."""
    dec = P.eig()
    vals = (1.0 / dec.eigenvalues)[::-1].copy()
    vecs = dec.eigenvectors[:, ::-1].copy()
    return PDMatrix._from_eig(vals, vecs)


def positive_part(H: HermitianMatrix) -> HermitianMatrix:
    """(|H| + H)/2: eigenvalues clamp to max(lambda, 0)."""
    dec = H.eig()
    out = HermitianMatrix(dec.assemble(np.maximum(dec.eigenvalues, 0.0)))
    return out


def congruence(T, C: HermitianMatrix) -> HermitianMatrix:
    """T C T* for an arbitrary square complex matrix T."""
    T = np.asarray(T, dtype=np.complex128)
    C_raw = _raw(C)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] != C_raw.shape[0]:
        raise MatrixFormatError(f"congruence dimension mismatch: T {T.shape}, C {C_raw.shape}")
    return HermitianMatrix(hermitian_part(T @ C_raw @ T.conj().T))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix with the
    standard phase fix."""
    Z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_pd_from_rng(dim: int, cond_max: float, rng: np.random.Generator) -> PDMatrix:
    if dim < 1:
        raise MatrixFormatError("dimension must be at least 1")
    if cond_max < 1.0:
        raise InvalidWeightsError(f"cond_max must be >= 1, got {cond_max}")
    vals = 10.0 ** rng.uniform(-np.log10(cond_max), 0.0, size=dim) if cond_max > 1.0 else np.ones(dim)
    vals = vals / vals.max()
    vals = np.sort(vals)[::-1].copy()
    U = haar_unitary(dim, rng)
    return PDMatrix._from_eig(vals, U)


def random_pd(dim: int, cond_max: float, seed: int) -> PDMatrix:
    """Deterministic random positive definite matrix.

    Eigenvalues are drawn log-uniform in [1/cond_max, 1] and normalized so
    the largest is exactly 1; eigenvectors come from a Haar-like unitary.
    The same seed always yields the same matrix.
    """
    return random_pd_from_rng(dim, cond_max, np.random.default_rng(seed))


def random_hermitian(dim: int, seed: int, scale: float = 1.0) -> HermitianMatrix:
    """Deterministic random Hermitian matrix (Gaussian entries, symmetrized)."""
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianMatrix(scale * hermitian_part(Z))
