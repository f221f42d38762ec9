"""Small dense linear-algebra helpers used by the eigensystem and canonical layers.

Everything here operates on tiny (at most 4x4) real matrices, so the
routines favour determinism and explicit rank decisions over asymptotic
performance.
"""

from __future__ import annotations

import numpy as np

from .minkowski import G_METRIC, g_inner


def null_space_basis(M: np.ndarray, rtol: float) -> np.ndarray:
    """Orthonormal basis (columns) of the null space of M.

    Full-pivot Gaussian elimination with pivots judged relative to the
    largest entry of the original matrix; pivots below ``rtol * scale``
    terminate the elimination, so ``rtol`` is the rank decision
    threshold.
    """
    A = np.array(M, dtype=float, copy=True)
    m, n = A.shape
    scale = max(float(np.abs(A).max()), 1e-300)
    col_perm = list(range(n))
    rank = 0
    for k in range(min(m, n)):
        sub = np.abs(A[k:, k:])
        i_rel, j_rel = np.unravel_index(int(sub.argmax()), sub.shape)
        piv = sub[i_rel, j_rel]
        if piv <= rtol * scale:
            break
        i, j = k + i_rel, k + j_rel
        if i != k:
            A[[k, i], :] = A[[i, k], :]
        if j != k:
            A[:, [k, j]] = A[:, [j, k]]
            col_perm[k], col_perm[j] = col_perm[j], col_perm[k]
        A[k + 1:, k:] -= np.outer(A[k + 1:, k] / A[k, k], A[k, k:])
        rank += 1

    if rank == n:
        return np.zeros((n, 0))
    basis = []
    for free in range(rank, n):
        x = np.zeros(n)
        x[free] = 1.0
        for i in range(rank - 1, -1, -1):
            x[i] = -(A[i, i + 1:] @ x[i + 1:]) / A[i, i]
        y = np.zeros(n)
        for pos, orig in enumerate(col_perm):
            y[orig] = x[pos]
        basis.append(y)
    B = np.array(basis).T
    # orthonormalize (Euclidean) for numerical hygiene
    Q, _ = np.linalg.qr(B)
    return Q[:, : B.shape[1]]


def gram_eigenbasis(V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize the Minkowski Gram matrix of the columns of V.

    Returns (gram_eigenvalues, W) where W = V @ U has columns realizing
    the Gram eigenvalues: W[:,k]^T G W[:,l] = delta_kl * gram_eigenvalues[k].
    Eigenvalues are sorted descending, so any timelike content comes first.
    """
    S = V.T @ G_METRIC @ V
    S = 0.5 * (S + S.T)
    vals, U = np.linalg.eigh(S)
    order = np.argsort(vals)[::-1]
    return vals[order], V @ U[:, order]


def complete_g_frame(existing: list[np.ndarray], count: int, sign: float) -> list[np.ndarray]:
    """Extend G-orthonormal vectors with `count` unit vectors of G-norm `sign`.

    `existing` must hold vectors with G-norms close to +/-1.  Candidates
    are drawn from the standard basis, G-projected against everything
    accumulated so far, and the best-conditioned survivor is normalized
    and appended.  Deterministic.
    """
    frame = [np.asarray(v, dtype=float) for v in existing]
    out: list[np.ndarray] = []
    for _ in range(count):
        best, best_mag = None, 0.0
        for k in range(4):
            cand = np.zeros(4)
            cand[k] = 1.0
            for y in frame:
                eps = g_inner(y, y)
                cand = cand - (g_inner(y, cand) / eps) * y
            mag = sign * g_inner(cand, cand)
            if mag > best_mag:
                best, best_mag = cand, mag
        if best is None or best_mag <= 1e-12:
            raise np.linalg.LinAlgError("could not complete indefinite frame")
        v = best / np.sqrt(best_mag)
        frame.append(v)
        out.append(v)
    return out
