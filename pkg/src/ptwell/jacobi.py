"""Cyclic Jacobi rotations for small dense Hermitian matrices."""
from __future__ import annotations

import math

import numpy as np


class NotHermitian(ValueError):
    pass


def jacobi_eigh_real(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100):
    """Eigenvalues (ascending) and eigenvectors of a real symmetric matrix.

    Classical cyclic sweep over the strict upper triangle; stops when the off-diagonal
    Frobenius norm drops below tol times the matrix Frobenius norm.
    """
    a = np.array(a, dtype=float)
    n, m = a.shape
    if n != m:
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max(initial=0.0))):
        raise NotHermitian("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    scale = np.linalg.norm(a) or 1.0
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300 or abs(apq) < 1e-18 * (abs(a[p, p]) + abs(a[q, q])):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # a <- J^T a J with J the (p, q) rotation
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(a).copy()
    order = np.argsort(w)
    return w[order], v[:, order]


def jacobi_eigvalsh(h: np.ndarray, tol: float = 1e-14) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix via its real 2n x 2n embedding.

    [[Re H, -Im H], [Im H, Re H]] is symmetric and carries every eigenvalue of H twice.
    """
    h = np.asarray(h, dtype=complex)
    herm_err = np.abs(h - h.conj().T).max(initial=0.0)
    if herm_err > 1e-10 * max(1.0, np.abs(h).max(initial=0.0)):
        raise NotHermitian(f"matrix deviates from Hermitian by {herm_err:.3e}")
    h = 0.5 * (h + h.conj().T)
    re, im = h.real, h.imag
    emb = np.block([[re, -im], [im, re]])
    w, _ = jacobi_eigh_real(emb, tol=tol)
    return w[::2]
