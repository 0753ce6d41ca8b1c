"""Weighted arithmetic and geometric operator means, spectral-band
certification, and normalized positive linear map constructors."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from opineq.errors import DimensionMismatchError, DomainViolationError, MapSpecError, SingularMatrixError
from opineq.hermitian import (
    HermitianMatrix,
    eig_hermitian,
    from_spectrum,
)

UNITAL_TOL = 1e-12
MAP_KINDS = ("identity", "unitary_mixture", "compression", "pinching", "normalized_trace")


@dataclass(frozen=True)
class SpectralBand:
    """Scalars 0 < m <= M with mI <= A <= MI.

    Degenerate bands (m == M) are permitted; every chain formula then
    collapses to equality, which makes them useful exact test anchors.
    """

    m: float
    M: float

    def __post_init__(self):
        if not (0.0 < self.m <= self.M):
            raise ValueError(f"invalid spectral band ({self.m!r}, {self.M!r})")


def check_weight(v: float) -> float:
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"mean weight must lie in [0, 1], got {v!r}")
    return v


def arith_mean(a: HermitianMatrix, b: HermitianMatrix, v: float = 0.5) -> HermitianMatrix:
    """Weighted arithmetic mean (1-v) A + v B."""
    v = check_weight(v)
    if a.n != b.n:
        raise DimensionMismatchError(f"dimension mismatch: {a.n} vs {b.n}")
    return HermitianMatrix((1.0 - v) * a.mat + v * b.mat)


def geo_mean(a: HermitianMatrix, b: HermitianMatrix, v: float = 0.5) -> HermitianMatrix:
    """Weighted geometric mean A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}.

    Both operands must be strictly positive; the middle term is explicitly
    re-symmetrized before its fractional power is taken.
    """
    v = check_weight(v)
    if a.n != b.n:
        raise DimensionMismatchError(f"dimension mismatch: {a.n} vs {b.n}")
    da = eig_hermitian(a)
    if da.eigenvalues[0] <= 0.0:
        raise SingularMatrixError(float(da.eigenvalues[0]), "geo_mean (left operand)")
    db = eig_hermitian(b)
    if db.eigenvalues[0] <= 0.0:
        raise SingularMatrixError(float(db.eigenvalues[0]), "geo_mean (right operand)")
    qa = da.eigenvectors
    a_half = (qa * np.sqrt(da.eigenvalues)) @ qa.conj().T
    a_neg_half = (qa * (da.eigenvalues ** -0.5)) @ qa.conj().T
    w = HermitianMatrix(a_neg_half @ b.mat @ a_neg_half)
    dw = eig_hermitian(w)
    if dw.eigenvalues[0] <= 0.0:
        raise SingularMatrixError(float(dw.eigenvalues[0]), "geo_mean (middle term)")
    mid = (dw.eigenvectors * (dw.eigenvalues ** v)) @ dw.eigenvectors.conj().T
    return HermitianMatrix(a_half @ mid @ a_half)


def matrix_power(a: HermitianMatrix, r: float) -> HermitianMatrix:
    """A^r through the spectral decomposition; spectrum must stay in (0, inf)."""
    dec = eig_hermitian(a)
    if dec.eigenvalues[0] <= 1e-12:
        raise DomainViolationError(float(dec.eigenvalues[0]), (0.0, np.inf), f"power:{r!r}")
    return from_spectrum(dec.eigenvalues ** float(r), dec.eigenvectors)


def certify_band(a: HermitianMatrix) -> SpectralBand:
    """Tightest band (lambda_min, lambda_max); requires strict positivity."""
    dec = eig_hermitian(a)
    lam_min = float(dec.eigenvalues[0])
    if lam_min <= 0.0:
        raise SingularMatrixError(lam_min, "certify_band")
    return SpectralBand(lam_min, float(dec.eigenvalues[-1]))


def derived_band(band_a: SpectralBand, band_b: SpectralBand) -> SpectralBand:
    """Combine operand bands (m1^2, M1^2), (m2^2, M2^2) into (m2/M1, M2/m1)."""
    m1, cap_m1 = np.sqrt(band_a.m), np.sqrt(band_a.M)
    m2, cap_m2 = np.sqrt(band_b.m), np.sqrt(band_b.M)
    return SpectralBand(float(m2 / cap_m1), float(cap_m2 / m1))


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Approximately Haar-distributed unitary: QR of a complex Gaussian with
    the R-diagonal phases normalized. Deterministic under the given rng."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True)
class PositiveMapSpec:
    """Declarative description of a normalized positive linear map."""

    kind: str
    params: dict = field(default_factory=dict)


class PositiveMap:
    """Applicable normalized positive linear map built from a PositiveMapSpec."""

    def __init__(self, spec: PositiveMapSpec, in_dim: int, out_dim: int, apply_fn):
        self.spec = spec
        self.in_dim = in_dim
        self.out_dim = out_dim
        self._apply = apply_fn
        ident = HermitianMatrix.identity(in_dim)
        defect = np.linalg.norm(self(ident).mat - np.eye(out_dim))
        if defect > UNITAL_TOL:
            raise MapSpecError(f"map is not unital: ||Phi(I) - I|| = {defect:.3e}")

    def __call__(self, x: HermitianMatrix) -> HermitianMatrix:
        if x.n != self.in_dim:
            raise DimensionMismatchError(
                f"map expects dimension {self.in_dim}, got {x.n}"
            )
        return self._apply(x)

    def __repr__(self) -> str:
        return f"PositiveMap({self.spec.kind}, {self.in_dim}->{self.out_dim})"


def build_map(spec: PositiveMapSpec) -> PositiveMap:
    """Validate a map specification and return the applicable map.

    Raises MapSpecError for non-isometric compressions, non-convex mixture
    weights, or block systems that do not partition the index set.
    """
    kind = spec.kind
    params = spec.params
    if kind == "identity":
        n = _dim_param(params)
        return PositiveMap(spec, n, n, lambda x: x)

    if kind == "normalized_trace":
        n = _dim_param(params)

        def ntrace(x: HermitianMatrix) -> HermitianMatrix:
            return HermitianMatrix([[np.trace(x.mat).real / x.n]])

        return PositiveMap(spec, n, 1, ntrace)

    if kind == "unitary_mixture":
        unitaries = [np.asarray(u, dtype=np.complex128) for u in params["unitaries"]]
        weights = np.asarray(params["weights"], dtype=np.float64)
        if len(unitaries) == 0 or len(unitaries) != len(weights):
            raise MapSpecError("unitary_mixture needs matching unitaries and weights")
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > UNITAL_TOL:
            raise MapSpecError(f"mixture weights are not convex: {weights.tolist()}")
        n = unitaries[0].shape[0]
        for u in unitaries:
            if u.shape != (n, n):
                raise MapSpecError("mixture unitaries must share one square shape")
            if np.linalg.norm(u.conj().T @ u - np.eye(n)) > UNITAL_TOL:
                raise MapSpecError("mixture member is not unitary")

        def mixture(x: HermitianMatrix) -> HermitianMatrix:
            acc = np.zeros((n, n), dtype=np.complex128)
            for wgt, u in zip(weights, unitaries):
                acc += wgt * (u @ x.mat @ u.conj().T)
            return HermitianMatrix(acc)

        return PositiveMap(spec, n, n, mixture)

    if kind == "compression":
        v = np.asarray(params["isometry"], dtype=np.complex128)
        if v.ndim != 2 or v.shape[0] < v.shape[1] or v.shape[1] < 1:
            raise MapSpecError(f"isometry must be n x k with k <= n, got {v.shape}")
        n, k = v.shape
        if np.linalg.norm(v.conj().T @ v - np.eye(k)) > UNITAL_TOL:
            raise MapSpecError("compression columns are not an isometry (V*V != I)")

        def compress(x: HermitianMatrix) -> HermitianMatrix:
            return HermitianMatrix(v.conj().T @ x.mat @ v)

        return PositiveMap(spec, n, k, compress)

    if kind == "pinching":
        blocks = [sorted(int(i) for i in blk) for blk in params["blocks"]]
        flat = [i for blk in blocks for i in blk]
        if len(set(flat)) != len(flat):
            raise MapSpecError("pinching blocks overlap")
        n = len(flat)
        if sorted(flat) != list(range(n)) or n == 0:
            raise MapSpecError("pinching blocks must partition 0..n-1")

        def pinch(x: HermitianMatrix) -> HermitianMatrix:
            out = np.zeros((n, n), dtype=np.complex128)
            for blk in blocks:
                ix = np.ix_(blk, blk)
                out[ix] = x.mat[ix]
            return HermitianMatrix(out)

        return PositiveMap(spec, n, n, pinch)

    raise MapSpecError(f"unknown map kind {kind!r}; expected one of {MAP_KINDS}")


def _dim_param(params: dict) -> int:
    n = int(params.get("n", 0))
    if n < 1:
        raise MapSpecError("map needs a positive dimension parameter 'n'")
    return n


def _array_to_json(a: np.ndarray) -> dict:
    return {"re": a.real.tolist(), "im": a.imag.tolist()}


def _array_from_json(obj: dict) -> np.ndarray:
    return np.asarray(obj["re"], dtype=np.float64) + 1j * np.asarray(obj["im"], dtype=np.float64)


def map_spec_to_json(spec: PositiveMapSpec) -> dict:
    """Encode as {"kind", "params"}; unitaries/isometries as plain re/im arrays."""
    params = dict(spec.params)
    if spec.kind == "unitary_mixture":
        params["unitaries"] = [_array_to_json(np.asarray(u)) for u in params["unitaries"]]
        params["weights"] = [float(w) for w in params["weights"]]
    elif spec.kind == "compression":
        params["isometry"] = _array_to_json(np.asarray(params["isometry"]))
    elif spec.kind == "pinching":
        params["blocks"] = [[int(i) for i in blk] for blk in params["blocks"]]
    return {"kind": spec.kind, "params": params}


def map_spec_from_json(obj: dict) -> PositiveMapSpec:
    kind = obj["kind"]
    params = dict(obj.get("params", {}))
    if kind == "unitary_mixture":
        params["unitaries"] = [_array_from_json(u) for u in params["unitaries"]]
    elif kind == "compression":
        params["isometry"] = _array_from_json(params["isometry"])
    return PositiveMapSpec(kind, params)
