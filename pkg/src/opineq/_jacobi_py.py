"""Pure-numpy cyclic Jacobi eigensolver for complex Hermitian matrices.

Fallback kernel used when the compiled extension is unavailable. Same
algorithm and same convergence policy as the compiled kernel: cyclic sweeps
of two-sided unitary rotations, converged once the off-diagonal Frobenius
norm drops below 1e-13 times the input Frobenius norm.
"""

from __future__ import annotations

import math

import numpy as np

from opineq.errors import ConvergenceError

OFF_DIAG_REL_TOL = 1e-13
MAX_SWEEPS = 64


def _off_norm(a: np.ndarray) -> float:
    # Summed directly over off-diagonal entries: the ||A||^2 - ||diag||^2
    # shortcut cancels catastrophically once the residual nears eps*||A||.
    return float(np.linalg.norm(a - np.diag(np.diagonal(a))))


def jacobi_eigh(a: np.ndarray, max_sweeps: int = MAX_SWEEPS):
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : (n, n) complex ndarray, assumed Hermitian (caller enforces).
    max_sweeps : sweep budget before giving up.

    Returns
    -------
    (w, q) : eigenvalues ascending (float64) and unitary eigenvector columns.

    Raises
    ------
    ConvergenceError : off-diagonal residual still above tolerance after
        the sweep budget.
    """
    A = np.array(a, dtype=np.complex128, order="C")
    n = A.shape[0]
    if n == 1:
        return np.array([A[0, 0].real]), np.ones((1, 1), dtype=np.complex128)

    Q = np.eye(n, dtype=np.complex128)
    tol_off = OFF_DIAG_REL_TOL * np.linalg.norm(A)
    rot_eps = tol_off / (n * n)

    for _ in range(max_sweeps):
        if _off_norm(A) <= tol_off:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= rot_eps:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if theta >= 0.0:
                    t = -1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = 1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                phase = apq / r

                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p + s * np.conj(phase) * col_q
                A[:, q] = -s * phase * col_p + c * col_q
                A[p, :] = np.conj(A[:, p])
                A[q, :] = np.conj(A[:, q])
                A[p, p] = c * c * app + 2.0 * r * s * c + s * s * aqq
                A[q, q] = s * s * app - 2.0 * r * s * c + c * c * aqq
                A[p, q] = 0.0
                A[q, p] = 0.0

                qcol_p = Q[:, p].copy()
                qcol_q = Q[:, q].copy()
                Q[:, p] = c * qcol_p + s * np.conj(phase) * qcol_q
                Q[:, q] = -s * phase * qcol_p + c * qcol_q
    else:
        off = _off_norm(A)
        if off > tol_off:
            raise ConvergenceError(off, max_sweeps)

    w = np.diagonal(A).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], np.ascontiguousarray(Q[:, order])
