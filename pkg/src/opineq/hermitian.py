"""Dense complex Hermitian matrices with spectral calculus and
tolerance-aware Loewner-order comparison.

All values are immutable after construction; operations are pure functions.
Eigendecompositions are cached on the matrix the first time they are needed
(idempotent, so benign under concurrent reads).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from opineq._backend import jacobi_eigh
from opineq.errors import DimensionMismatchError, DomainViolationError, SingularMatrixError

if TYPE_CHECKING:
    from opineq.functions import ScalarFunction

DEFAULT_LOEWNER_TOL = 1e-8
DOMAIN_MARGIN = 1e-12


class HermitianMatrix:
    """An n-by-n complex Hermitian matrix.

    Construction symmetrizes the input as (X + X*)/2 and records the norm of
    the applied correction in ``correction_norm``; diagonal imaginary parts
    are exactly zero afterwards. The entry array is read-only.
    """

    __slots__ = ("mat", "correction_norm", "_decomp")

    def __init__(self, entries):
        X = np.asarray(entries, dtype=np.complex128)
        if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] < 1:
            raise DimensionMismatchError(f"expected a square matrix, got shape {X.shape}")
        H = (X + X.conj().T) / 2.0
        self.correction_norm = float(np.linalg.norm(X - H))
        H.flags.writeable = False
        self.mat = H
        self._decomp = None

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def identity(cls, n: int) -> "HermitianMatrix":
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def from_diag(cls, values) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(values, dtype=np.complex128)))

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        _check_same_dim(self, other)
        return HermitianMatrix(self.mat + other.mat)

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        _check_same_dim(self, other)
        return HermitianMatrix(self.mat - other.mat)

    def __mul__(self, c: float) -> "HermitianMatrix":
        return HermitianMatrix(float(c) * self.mat)

    __rmul__ = __mul__

    def __neg__(self) -> "HermitianMatrix":
        return HermitianMatrix(-self.mat)

    def __repr__(self) -> str:
        return f"HermitianMatrix(n={self.n})"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and unitary eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        self.eigenvalues.flags.writeable = False
        self.eigenvectors.flags.writeable = False

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.conj().T

    def reconstruction_residual(self, source: np.ndarray) -> float:
        denom = max(float(np.linalg.norm(source)), np.finfo(float).tiny)
        return float(np.linalg.norm(source - self.reconstruct())) / denom

    def unitarity_defect(self) -> float:
        q = self.eigenvectors
        return float(np.linalg.norm(q.conj().T @ q - np.eye(q.shape[0])))


@dataclass(frozen=True)
class LoewnerVerdict:
    """Outcome of a Loewner-order comparison X <= Y.

    ``holds`` is true iff ``min_gap_eigenvalue >= -tolerance_used * scale``
    where ``scale = max(1, ||X||_2, ||Y||_2)``.
    """

    holds: bool
    min_gap_eigenvalue: float
    scale: float
    tolerance_used: float


def eig_hermitian(a: HermitianMatrix) -> SpectralDecomposition:
    """Eigendecomposition of ``a``, cached on the matrix after first use."""
    if a._decomp is None:
        w, q = jacobi_eigh(a.mat)
        a._decomp = SpectralDecomposition(w, q)
    return a._decomp


def from_spectrum(eigenvalues, eigenvectors) -> HermitianMatrix:
    """Build Q diag(w) Q* as a HermitianMatrix with its decomposition attached."""
    w = np.asarray(eigenvalues, dtype=np.float64)
    q = np.asarray(eigenvectors, dtype=np.complex128)
    h = HermitianMatrix((q * w) @ q.conj().T)
    order = np.argsort(w, kind="stable")
    h._decomp = SpectralDecomposition(w[order].copy(), np.ascontiguousarray(q[:, order]))
    return h


def spectral_apply(a: HermitianMatrix, f: "ScalarFunction") -> HermitianMatrix:
    """Apply a scalar function to ``a`` through its eigendecomposition.

    Every eigenvalue must lie strictly inside ``f``'s domain (absolute
    margin 1e-12); violations raise :class:`DomainViolationError` carrying
    the offending eigenvalue.
    """
    dec = eig_hermitian(a)
    w = dec.eigenvalues
    lo, hi = f.domain
    if np.isfinite(lo) and w[0] <= lo + DOMAIN_MARGIN:
        raise DomainViolationError(float(w[0]), f.domain, f.name)
    if np.isfinite(hi) and w[-1] >= hi - DOMAIN_MARGIN:
        raise DomainViolationError(float(w[-1]), f.domain, f.name)
    fw = np.asarray(f.evaluate(w), dtype=np.float64)
    return from_spectrum(fw, dec.eigenvectors)


def loewner_leq(
    x: HermitianMatrix, y: HermitianMatrix, tol_rel: float = DEFAULT_LOEWNER_TOL
) -> LoewnerVerdict:
    """Decide X <= Y in the Loewner order, up to ``tol_rel`` relative slack."""
    _check_same_dim(x, y)
    if tol_rel < 0:
        raise ValueError("tol_rel must be nonnegative")
    gaps, _ = jacobi_eigh(y.mat - x.mat)
    min_gap = float(gaps[0])
    scale = max(1.0, spectral_norm(x), spectral_norm(y))
    return LoewnerVerdict(
        holds=bool(min_gap >= -tol_rel * scale),
        min_gap_eigenvalue=min_gap,
        scale=scale,
        tolerance_used=float(tol_rel),
    )


def matrix_inverse(a: HermitianMatrix) -> HermitianMatrix:
    """Inverse through the spectral decomposition; requires lambda_min > 0."""
    dec = eig_hermitian(a)
    lam_min = float(dec.eigenvalues[0])
    if lam_min <= 0.0:
        raise SingularMatrixError(lam_min, "matrix_inverse")
    return from_spectrum(1.0 / dec.eigenvalues, dec.eigenvectors)


def spectral_norm(a: HermitianMatrix) -> float:
    w = eig_hermitian(a).eigenvalues
    return float(max(abs(w[0]), abs(w[-1])))


def lambda_min(a: HermitianMatrix) -> float:
    return float(eig_hermitian(a).eigenvalues[0])


def lambda_max(a: HermitianMatrix) -> float:
    return float(eig_hermitian(a).eigenvalues[-1])


def matrix_to_json(a: HermitianMatrix) -> dict:
    """Encode as ``{"n", "re", "im"}`` (row-major float lists)."""
    return {
        "n": a.n,
        "re": a.mat.real.tolist(),
        "im": a.mat.imag.tolist(),
    }


def matrix_from_json(obj: dict) -> HermitianMatrix:
    """Decode the ``{"n", "re", "im"}`` encoding; lower triangle authoritative."""
    n = int(obj["n"])
    re = np.asarray(obj["re"], dtype=np.float64)
    im = np.asarray(obj["im"], dtype=np.float64)
    if re.shape != (n, n) or im.shape != (n, n):
        raise DimensionMismatchError(
            f"matrix JSON shape mismatch: n={n}, re {re.shape}, im {im.shape}"
        )
    x = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        x[i, i] = re[i, i]
        for j in range(i):
            lower = complex(re[i, j], im[i, j])
            x[i, j] = lower
            x[j, i] = lower.conjugate()
    return HermitianMatrix(x)


def _check_same_dim(x: HermitianMatrix, y: HermitianMatrix) -> None:
    if x.n != y.n:
        raise DimensionMismatchError(f"dimension mismatch: {x.n} vs {y.n}")
