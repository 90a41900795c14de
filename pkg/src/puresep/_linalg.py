"""Small dense kernels: cyclic Jacobi (two- and one-sided) and LU determinant."""

from __future__ import annotations

import math

import numpy as np

from .errors import NumericalFailure

EPS = np.finfo(float).eps


def _rotation(app: float, aqq: float, apq_abs: float) -> tuple[float, float]:
    # smaller-angle root of t^2 + 2*zeta*t - 1 = 0
    zeta = (aqq - app) / (2.0 * apq_abs)
    t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, c * t


def jacobi_eigh(h: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm is at most
    ``tol * ||h||_F``.  Returns eigenvalues in descending order and the
    matching eigenvectors as columns.
    """
    a = np.array(h, dtype=np.complex128)
    m = a.shape[0]
    if a.shape != (m, m):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(m, dtype=np.complex128)
    scale = np.linalg.norm(a)
    target = tol * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target or scale == 0.0:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                g = abs(apq)
                if g <= EPS * EPS * scale:
                    continue
                c, s = _rotation(a[p, p].real, a[q, q].real, g)
                e = apq / g
                # columns (p, q) <- (p, q) @ diag(1, conj(e)) @ [[c, s], [-s, c]]
                u = np.array([[c, s], [-s * e.conjugate(), c * e.conjugate()]])
                cols = a[:, [p, q]] @ u
                a[:, [p, q]] = cols
                a[[p, q], :] = u.conj().T @ a[[p, q], :]
                a[q, p] = a[p, q] = 0.0
                v[:, [p, q]] = v[:, [p, q]] @ u
    else:
        raise NumericalFailure(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")
    w = a.diagonal().real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def jacobi_gram_spectrum(m: np.ndarray, tol: float = 1e-15, max_sweeps: int = 60, counter=None):
    """Eigenvalues of ``m^dagger m`` by one-sided (implicit) Jacobi on ``m``.

    Each rotation is the Jacobi rotation that annihilates one off-diagonal
    entry of the Gram matrix, with that entry recomputed from the current
    columns instead of being read from a rounded explicit Gram matrix.  Small
    eigenvalues therefore keep an absolute accuracy of about
    ``eps * ||m||**2`` in the singular values rather than in their squares.

    Returns the eigenvalues (squared column norms at convergence) in
    descending order.
    """
    a = np.array(m, dtype=np.complex128, copy=True)
    r, ncols = a.shape
    tiny = np.finfo(float).tiny / EPS
    for _ in range(max_sweeps):
        rotated = False
        for p in range(ncols - 1):
            for q in range(p + 1, ncols):
                ap, aq = a[:, p], a[:, q]
                alpha = float(np.vdot(ap, ap).real)
                beta = float(np.vdot(aq, aq).real)
                gamma = complex(np.vdot(ap, aq))
                g = abs(gamma)
                if counter is not None:
                    counter.tally(mults=3 * r, adds=3 * r, comparisons=1, phase="jacobi")
                if alpha <= tiny or beta <= tiny or g <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                c, s = _rotation(alpha, beta, g)
                bq = aq * (gamma / g).conjugate()
                a[:, p], a[:, q] = c * ap - s * bq, s * ap + c * bq
                if counter is not None:
                    counter.tally(mults=5 * r, adds=2 * r, phase="jacobi")
        if not rotated:
            break
    else:
        raise NumericalFailure(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")
    lam = np.einsum("ij,ij->j", a.conj(), a).real
    if counter is not None:
        counter.tally(mults=r * ncols, adds=r * ncols, phase="jacobi")
    return np.sort(lam)[::-1]


def lu_determinant(a: np.ndarray, counter=None, phase: str = "det") -> complex:
    """Determinant by Gaussian elimination with partial pivoting."""
    u = np.array(a, dtype=np.complex128, copy=True)
    m = u.shape[0]
    det = 1.0 + 0.0j
    for j in range(m):
        piv = j + int(np.argmax(np.abs(u[j:, j])))
        if counter is not None:
            counter.tally(comparisons=m - j - 1, phase=phase)
        if piv != j:
            u[[j, piv]] = u[[piv, j]]
            det = -det
        pivot = u[j, j]
        det *= pivot
        if counter is not None:
            counter.tally(mults=1, phase=phase)
        if pivot == 0:
            return 0.0j
        rest = m - j - 1
        if rest:
            factors = u[j + 1:, j] / pivot
            u[j + 1:, j + 1:] -= np.outer(factors, u[j, j + 1:])
            if counter is not None:
                counter.tally(mults=rest + rest * rest, adds=rest * rest, phase=phase)
    return complex(det)
