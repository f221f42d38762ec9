"""Minkowski-space utilities: metric, vector classes, frames and completions.

Four-vectors live in R^4 with metric G = diag(1, -1, -1, -1).  A set
{y0, y1, y2, y3} is a G-orthonormal tetrad when the Gram matrix of the
vectors under G equals G itself (one unit timelike leg, three unit
spacelike legs, mutually G-orthogonal).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateCompletion, TriadNotGOrthogonal

G_METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

#: Default absolute/relative tolerance used across the package.
DEFAULT_TOL = 1e-10


def g_inner(x: np.ndarray, y: np.ndarray) -> float:
    """Minkowski inner product x^T G y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3])


def minkowski_norm(x: np.ndarray) -> float:
    """Squared Minkowski norm x^T G x (sign carries the causal class)."""
    return g_inner(x, x)


class VectorClass(Enum):
    POSITIVE = "Positive"   # timelike,  x^T G x > 0
    NEUTRAL = "Neutral"     # lightlike, x^T G x = 0
    NEGATIVE = "Negative"   # spacelike, x^T G x < 0


def classify_four_vector(x: np.ndarray, tol: float = DEFAULT_TOL) -> VectorClass:
    """Causal class of a four-vector.

    The neutral band is |x^T G x| <= tol * max(1, ||x||^2), so the
    classification is scale-aware but never sharper than `tol` in
    absolute terms for small vectors.
    """
    x = np.asarray(x, dtype=float)
    n = minkowski_norm(x)
    scale = max(1.0, float(x @ x))
    if abs(n) <= tol * scale:
        return VectorClass.NEUTRAL
    return VectorClass.POSITIVE if n > 0 else VectorClass.NEGATIVE


def is_orthochronous_proper_lorentz(L: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True when L^T G L = G within tol, det L = +1 and L[0,0] > 0."""
    L = np.asarray(L, dtype=float)
    if L.shape != (4, 4):
        return False
    resid = L.T @ G_METRIC @ L - G_METRIC
    scale = max(1.0, float(np.abs(L).max()) ** 2)
    if float(np.abs(resid).max()) > tol * scale:
        return False
    if abs(float(np.linalg.det(L)) - 1.0) > tol * scale:
        return False
    return float(L[0, 0]) > 0.0


@dataclass(frozen=True)
class Tetrad:
    """G-orthonormal frame; `y0` timelike (+1), `y1..y3` spacelike (-1)."""

    y0: np.ndarray
    y1: np.ndarray
    y2: np.ndarray
    y3: np.ndarray

    def rows(self) -> np.ndarray:
        """Stack the tetrad as rows of a 4x4 matrix (a Lorentz matrix)."""
        return np.vstack([self.y0, self.y1, self.y2, self.y3])


def validate_g_orthogonal_tetrad(tetrad: Tetrad, tol: float = DEFAULT_TOL) -> float:
    """Check Y G Y^T = G for the stacked tetrad; returns the max deviation.

    Raises TriadNotGOrthogonal when the deviation exceeds tol (relative
    to the squared magnitude of the largest entry).
    """
    Y = tetrad.rows()
    gram = Y @ G_METRIC @ Y.T
    dev = float(np.abs(gram - G_METRIC).max())
    scale = max(1.0, float(np.abs(Y).max()) ** 2)
    if dev > tol * scale:
        raise TriadNotGOrthogonal(
            f"tetrad Gram deviates from metric by {dev:.3e} (tol {tol * scale:.3e})"
        )
    return dev


def _check_neutral_triad(y0: np.ndarray, y1: np.ndarray, y2: np.ndarray, tol: float) -> None:
    scale = max(1.0, *(float(v @ v) for v in (y0, y1, y2)))
    checks = {
        "y0 neutral": g_inner(y0, y0),
        "y1 unit spacelike": g_inner(y1, y1) + 1.0,
        "y2 unit spacelike": g_inner(y2, y2) + 1.0,
        "y0.y1": g_inner(y0, y1),
        "y0.y2": g_inner(y0, y2),
        "y1.y2": g_inner(y1, y2),
    }
    bad = {k: v for k, v in checks.items() if abs(v) > tol * scale}
    if bad:
        detail = ", ".join(f"{k}={v:.3e}" for k, v in bad.items())
        raise TriadNotGOrthogonal(f"neutral triad conditions violated: {detail}")
    if float(y0 @ y0) <= tol * scale:
        raise TriadNotGOrthogonal("y0 is numerically the zero vector")


def complete_tetrad_from_neutral_triad(
    y0: np.ndarray,
    y1: np.ndarray,
    y2: np.ndarray,
    tol: float = DEFAULT_TOL,
    timelike_pivot: np.ndarray | None = None,
) -> tuple[Tetrad, float, float]:
    """Complete a neutral triad {y0, y1, y2} to a G-orthonormal tetrad.

    `y0` must be neutral and G-orthogonal to the unit spacelike pair
    `y1`, `y2`.  The two-plane G-orthogonal to {y1, y2} containing y0
    has signature (+, -); a fourth direction y3 in that plane with
    q = y3^T G y0 != 0 yields the frame

        ytilde0 = y3 + tau * y0,   tau = (1 - y3^T G y3) / (2 q),
        ytilde3 = y3 - kappa * y0, kappa = (1 + y3^T G y3) / (2 q),

    which satisfies ytilde0^T G ytilde0 = +1, ytilde3^T G ytilde3 = -1
    and all cross terms zero, independent of the causal class of y3.

    By default y3 = G y0 + (y1.y0) y1 + (y2.y0) y2 (Euclidean dots),
    which is automatically G-orthogonal to y1, y2 and has
    q = ||y0||^2 > 0.  Callers may instead supply `timelike_pivot` to
    select a different fourth direction in the completion plane; it is
    validated before use.

    Returns (tetrad, tau, kappa).  The timelike leg is sign-fixed to a
    positive time component.
    """
    y0 = np.asarray(y0, dtype=float)
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    _check_neutral_triad(y0, y1, y2, tol)
    scale = max(1.0, float(y0 @ y0))

    if timelike_pivot is None:
        y3 = G_METRIC @ y0 + (y1 @ y0) * y1 + (y2 @ y0) * y2
    else:
        y3 = np.asarray(timelike_pivot, dtype=float).copy()
        pscale = max(1.0, float(y3 @ y3))
        if abs(g_inner(y3, y1)) > tol * pscale or abs(g_inner(y3, y2)) > tol * pscale:
            raise DegenerateCompletion("pivot is not G-orthogonal to the spacelike pair")

    q = g_inner(y3, y0)
    if abs(q) <= tol * scale * max(1.0, float(np.abs(y3).max())):
        raise DegenerateCompletion(
            f"pivot degenerate along y0: y3^T G y0 = {q:.3e}"
        )

    nrm3 = g_inner(y3, y3)
    tau = (1.0 - nrm3) / (2.0 * q)
    kappa = (1.0 + nrm3) / (2.0 * q)
    t0 = y3 + tau * y0
    t3 = y3 - kappa * y0
    if t0[0] < 0.0:
        # flip the pivot so the timelike leg points to the future
        t0, t3 = -t0, -t3
        tau, kappa = -tau, -kappa
    tetrad = Tetrad(y0=t0, y1=y1.copy(), y2=y2.copy(), y3=t3)
    validate_g_orthogonal_tetrad(tetrad, tol=max(tol, 1e-9))
    return tetrad, float(tau), float(kappa)
