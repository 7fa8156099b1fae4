"""Cyclic Jacobi eigensolver for small dense symmetric matrices.

Self-contained on purpose: the spectral decompositions used by the
quadratic Wick exponentials must not depend on a LAPACK build.  Classic
cyclic sweeps with the stable rotation formulas; quadratic convergence
makes 50 sweeps generous for any matrix this library produces.
"""

from __future__ import annotations

import math

import numpy as np

OFFDIAG_TOL = 1e-12
MAX_SWEEPS = 50


def _offdiag_norm(a: np.ndarray) -> float:
    d = a.shape[0]
    s = 0.0
    for p in range(d):
        for q in range(p + 1, d):
            s += 2.0 * a[p, q] * a[p, q]
    return math.sqrt(s)


def jacobi_eigh(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors as columns.

    Accepts any square symmetric array-like.  Stops when the off-diagonal
    Frobenius norm falls below OFFDIAG_TOL (relative to the matrix norm),
    raising if MAX_SWEEPS cyclic sweeps do not get there.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    if not np.allclose(a, a.T, atol=1e-12, rtol=0.0):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    d = a.shape[0]
    v = np.eye(d)
    if d == 1:
        return a[0, 0:1].copy(), v

    scale = max(1.0, float(np.max(np.abs(a))))
    tol = OFFDIAG_TOL * scale
    for _ in range(MAX_SWEEPS):
        if _offdiag_norm(a) <= tol:
            break
        for p in range(d):
            for q in range(p + 1, d):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    if _offdiag_norm(a) > tol:
        raise RuntimeError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
