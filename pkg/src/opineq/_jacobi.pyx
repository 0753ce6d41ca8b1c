# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled cyclic Jacobi eigensolver for complex Hermitian matrices.

Hot kernel of the package; algorithm and convergence policy match the
pure-numpy fallback in ``_jacobi_py`` (off-diagonal Frobenius norm below
1e-13 times the input norm, sweep cap 64).
"""

import numpy as np

from libc.math cimport sqrt

from opineq.errors import ConvergenceError

OFF_DIAG_REL_TOL = 1e-13
MAX_SWEEPS = 64


cdef inline double _cabs(double complex z) noexcept:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef double _off_norm(double complex[:, ::1] a, Py_ssize_t n) noexcept:
    cdef double total = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(i + 1, n):
            total += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    return sqrt(2.0 * total)


def jacobi_eigh(a, int max_sweeps=64):
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, q)`` with eigenvalues ascending and unitary eigenvector
    columns; raises :class:`ConvergenceError` if the sweep budget is
    exhausted. The input is assumed Hermitian (caller enforces).
    """
    A = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = A.shape[0]
    if n == 1:
        return np.array([A[0, 0].real]), np.ones((1, 1), dtype=np.complex128)

    Q = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] am = A
    cdef double complex[:, ::1] qm = Q

    cdef double norm_a = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n):
            norm_a += am[i, j].real * am[i, j].real + am[i, j].imag * am[i, j].imag
    norm_a = sqrt(norm_a)

    cdef double tol_off = 1e-13 * norm_a
    cdef double rot_eps = tol_off / (n * n)

    cdef Py_ssize_t p, q
    cdef int sweep
    cdef bint converged = False
    cdef double off, r, app, aqq, theta, t, c, s
    cdef double complex apq, phase, phase_conj, aip, aiq, qip, qiq

    for sweep in range(max_sweeps):
        off = _off_norm(am, n)
        if off <= tol_off:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = am[p, q]
                r = _cabs(apq)
                if r <= rot_eps:
                    continue
                app = am[p, p].real
                aqq = am[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if theta >= 0.0:
                    t = -1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = 1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                phase = apq / r
                phase_conj = phase.conjugate()

                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = am[i, p]
                    aiq = am[i, q]
                    am[i, p] = c * aip + s * phase_conj * aiq
                    am[i, q] = -s * phase * aip + c * aiq
                    am[p, i] = am[i, p].conjugate()
                    am[q, i] = am[i, q].conjugate()
                am[p, p] = c * c * app + 2.0 * r * s * c + s * s * aqq
                am[q, q] = s * s * app - 2.0 * r * s * c + c * c * aqq
                am[p, q] = 0.0
                am[q, p] = 0.0

                for i in range(n):
                    qip = qm[i, p]
                    qiq = qm[i, q]
                    qm[i, p] = c * qip + s * phase_conj * qiq
                    qm[i, q] = -s * phase * qip + c * qiq

    if not converged:
        off = _off_norm(am, n)
        if off > tol_off:
            raise ConvergenceError(off, max_sweeps)

    w = np.diagonal(A).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], np.ascontiguousarray(Q[:, order])
