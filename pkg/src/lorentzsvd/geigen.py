"""Indefinite-metric eigenanalysis of the correlation quadratic forms.

For a correlation matrix Lambda (00-entry normalized to one) the two
symmetric forms

    Omega_A = Lambda G Lambda^T ,      Omega_B = Lambda^T G Lambda

share the spectrum of the non-symmetric operator G @ Omega, and that
spectrum -- real, non-negative, with a top eigenvector that is either
timelike or lightlike -- decides which canonical form a state admits.

Two fully independent routes to the spectrum live here:

* the production route: exact characteristic quartic (`_quartic`) plus
  null-space extraction of eigenvectors at the clustered roots;
* a validation oracle: rotate the spatial block of Omega to diagonal
  form, which turns det(Omega - lambda*G) into an arrowhead-style
  secular function h(lambda) whose zeros can be bracketed between its
  poles with nothing but sign checks.

The two never share intermediate results, so agreement between them is
meaningful evidence rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._linalg import gram_eigenbasis, null_space_basis
from ._quartic import charpoly_g, quartic_real_roots
from .errors import NormalizationFailure, NumericalFailure, PoleEvaluation
from .minkowski import DEFAULT_TOL, G_METRIC, VectorClass

_EPS = float(np.finfo(float).eps)

#: Minkowski norms of unit eigenvectors at or below this magnitude are
#: treated as lightlike when reading off the signature of an eigenspace.
SIGNATURE_TOL = 1e-8

#: Relative radius for merging characteristic-quartic roots into one
#: degenerate cluster.  Exact degeneracies survive transport by
#: well-conditioned filtering operations with root smear a couple of
#: orders below this, while generic random states keep eigenvalue gaps
#: a few orders above it.
CLUSTER_RADIUS_REL = 1e-7


# ---------------------------------------------------------------------------
# the two quadratic forms


@dataclass(frozen=True)
class OmegaPair:
    """The pair of symmetric forms attached to a correlation matrix."""

    omega_a: np.ndarray
    omega_b: np.ndarray
    #: largest asymmetry removed when the products were symmetrized
    symmetry_defect: float


def omega_matrices(lam: np.ndarray) -> OmegaPair:
    """Both quadratic forms of a correlation matrix, symmetrized.

    The products are symmetric in exact arithmetic; floating-point
    noise is averaged away and the removed defect recorded.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (4, 4):
        raise ValueError(f"expected a 4x4 correlation matrix, got {lam.shape}")
    oa = lam @ G_METRIC @ lam.T
    ob = lam.T @ G_METRIC @ lam
    defect = max(
        float(np.abs(oa - oa.T).max()),
        float(np.abs(ob - ob.T).max()),
    )
    return OmegaPair(
        omega_a=0.5 * (oa + oa.T),
        omega_b=0.5 * (ob + ob.T),
        symmetry_defect=defect,
    )


def lorentz_invariants(lam: np.ndarray) -> np.ndarray:
    """Power traces Tr[(G Omega_A)^n], n = 1..4.

    These four numbers are unchanged by normalized filtering operations
    on either side, and coincide with the same traces built from
    Omega_B.
    """
    pair = omega_matrices(lam)
    k = G_METRIC @ pair.omega_a
    out = np.empty(4)
    p = np.eye(4)
    for n in range(4):
        p = p @ k
        out[n] = np.trace(p)
    return out


# ---------------------------------------------------------------------------
# production eigensystem


@dataclass(frozen=True)
class ConditionReport:
    """Numerical health data attached to a solved eigensystem."""

    #: per-eigenpair residual norms ||G Omega x - lambda x||_2
    residuals: np.ndarray
    #: imaginary scale absorbed when a near-complex root pair was closed
    imag_residue: float
    #: asymmetry removed from the input form
    symmetry_defect: float
    #: total algebraic-minus-geometric multiplicity over all clusters
    defect: int
    #: Minkowski Gram eigenvalues of the top eigenvalue cluster
    gram_top: np.ndarray


@dataclass(frozen=True)
class GEigenSystem:
    """Solved eigenproblem of G @ Omega for one symmetric form Omega.

    ``eigenvalues`` are descending with algebraic multiplicity expanded;
    ``eigenvectors[i]`` is the row vector paired with ``eigenvalues[i]``,
    normalized so its Minkowski norm is +1, 0 or -1 (``norms[i]``).  A
    defective cluster repeats its lightlike direction in every algebraic
    slot and reports the shortfall in the condition report.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    norms: np.ndarray
    top_class: VectorClass
    degeneracy: int
    #: (center, algebraic multiplicity, geometric dimension) per cluster
    clusters: tuple[tuple[float, int, int], ...]
    condition_report: ConditionReport
    tol: float


def _signed_unit(x: np.ndarray) -> np.ndarray:
    """Deterministic overall sign: time component non-negative when it is
    significant, otherwise the largest-magnitude component non-negative."""
    big = float(np.abs(x).max())
    if big == 0.0:
        return x
    if abs(x[0]) > 1e-12 * big:
        return x if x[0] > 0 else -x
    k = int(np.abs(x).argmax())
    return x if x[k] > 0 else -x


def _cluster_vectors(
    omega: np.ndarray,
    center: float,
    mult: int,
    gap: float,
    scale: float,
) -> np.ndarray:
    """Orthonormal basis (columns) of the eigenspace at a cluster center.

    The rank decision must swallow the in-cluster eigenvalue smear (at
    most the merge radius) yet reject directions belonging to the next
    cluster (at least ``gap`` away), so the threshold is pinched between
    the two, with progressive widening if the first cut finds nothing.
    """
    m = G_METRIC @ omega - center * np.eye(4)
    mscale = max(float(np.abs(m).max()), 1e-300)
    thresh = max(CLUSTER_RADIUS_REL * scale, 64.0 * _EPS * mscale)
    if np.isfinite(gap):
        thresh = max(min(thresh, 0.45 * gap), 64.0 * _EPS * mscale)
    for widen in range(4):
        basis = null_space_basis(m, rtol=thresh * 8.0**widen / mscale)
        if 1 <= basis.shape[1] <= mult:
            return basis
        if basis.shape[1] > mult:
            # over-wide cut swallowed a neighbouring direction; tighten
            tight = null_space_basis(m, rtol=thresh / (8.0 * mscale))
            if 1 <= tight.shape[1] <= mult:
                return tight
            return basis[:, :mult]
    raise NumericalFailure(
        f"no eigenvector found at eigenvalue {center:.6g} "
        f"(threshold {thresh:.3e}, multiplicity {mult})"
    )


def _rediagonalize_cluster(omega: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Diagonalize the Omega-form within one degenerate cluster.

    Columns of the result stay G-orthonormal while the cross terms
    x_i^T Omega x_j are rotated away.  Clusters of uniform signature take
    an orthogonal mix of the G-normalized columns; an indefinite pair
    takes the hyperbolic mix that preserves the (+, -) Gram, when the
    cross term is small enough for it to exist.  Anything lightlike is
    left exactly as the Gram eigenbasis produced it.
    """
    gram, w = gram_eigenbasis(basis)
    dim = w.shape[1]
    if dim < 2:
        return w
    signs = np.zeros(dim, dtype=int)
    signs[gram > SIGNATURE_TOL] = 1
    signs[gram < -SIGNATURE_TOL] = -1
    if np.any(signs == 0):
        return w
    wn = w / np.sqrt(np.abs(gram))
    if np.all(signs == signs[0]):
        s = wn.T @ omega @ wn
        _, rot = np.linalg.eigh(0.5 * (s + s.T))
        return wn @ rot
    if dim == 2 and signs[0] == 1 and signs[1] == -1:
        s = wn.T @ omega @ wn
        den = s[0, 0] + s[1, 1]
        num = -2.0 * s[0, 1]
        if abs(num) < abs(den):
            theta = 0.5 * np.arctanh(num / den)
            ch, sh = np.cosh(theta), np.sinh(theta)
            return wn @ np.array([[ch, sh], [sh, ch]])
    return wn


def g_eigensystem(omega: np.ndarray, tol: float = DEFAULT_TOL) -> GEigenSystem:
    """Solve the eigenproblem of G @ Omega for a symmetric 4x4 form.

    Eigenvalues come from the exact characteristic quartic with Sturm
    isolation; eigenvectors from null spaces at the clustered roots,
    G-normalized to norm +1/0/-1 with a deterministic sign.  Raises
    NumericalFailure when the quartic has a genuinely complex pair
    (input violating the positivity-transfer precondition) and
    NormalizationFailure when a subdominant eigenvector turns out
    lightlike, which no valid input can produce.
    """
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (4, 4):
        raise ValueError(f"expected a 4x4 symmetric form, got {omega.shape}")
    symmetry_defect = float(np.abs(omega - omega.T).max())
    omega = 0.5 * (omega + omega.T)

    if float(np.abs(omega).max()) <= tol:
        # the zero form: every direction is an eigenvector at zero
        return GEigenSystem(
            eigenvalues=np.zeros(4),
            eigenvectors=np.eye(4),
            norms=np.array([1, -1, -1, -1], dtype=int),
            top_class=VectorClass.POSITIVE,
            degeneracy=4,
            clusters=((0.0, 4, 4),),
            condition_report=ConditionReport(
                residuals=np.zeros(4),
                imag_residue=0.0,
                symmetry_defect=symmetry_defect,
                defect=0,
                gram_top=np.array([1.0, -1.0, -1.0, -1.0]),
            ),
            tol=tol,
        )

    scale = max(1.0, abs(float(np.trace(G_METRIC @ omega))))
    quartic = quartic_real_roots(
        charpoly_g(omega),
        cluster_radius=CLUSTER_RADIUS_REL * scale,
        imag_tol=max(tol, 1e-9),
    )
    order = np.argsort(quartic.values)[::-1]
    centers = quartic.values[order]
    mults = quartic.multiplicities[order]

    eigenvalues: list[float] = []
    vectors: list[np.ndarray] = []
    norms: list[int] = []
    residuals: list[float] = []
    clusters: list[tuple[float, int, int]] = []
    gram_top = np.zeros(0)
    defect_total = 0
    k_op = G_METRIC @ omega

    for ci, (center, mult) in enumerate(zip(centers, mults)):
        others = np.delete(centers, ci)
        gap = float(np.abs(others - center).min()) if others.size else np.inf
        basis = _cluster_vectors(omega, float(center), int(mult), gap, scale)
        dim = basis.shape[1]
        defect_total += int(mult) - dim
        clusters.append((float(center), int(mult), dim))

        w = _rediagonalize_cluster(omega, basis)
        entries: list[tuple[int, float, np.ndarray]] = []
        for j in range(w.shape[1]):
            col = w[:, j]
            gam = float(col @ G_METRIC @ col)
            if abs(gam) <= SIGNATURE_TOL:
                x = _signed_unit(col / np.linalg.norm(col))
                cls = 0
                if ci > 0 and center > max(tol, 1e-9) * max(1.0, centers[0]):
                    raise NormalizationFailure(
                        f"lightlike eigenvector at subdominant eigenvalue "
                        f"{center:.6g} (Minkowski norm {gam:.3e})"
                    )
            else:
                x = _signed_unit(col / np.sqrt(abs(gam)))
                cls = 1 if gam > 0 else -1
            rayleigh = float(x @ omega @ x) * (cls if cls else 1)
            entries.append((cls, rayleigh, x))
        # timelike first, then lightlike, then spacelike; within a class
        # larger Rayleigh quotient first — a deterministic total order
        entries.sort(key=lambda e: (-e[0], -e[1]))

        if ci == 0:
            gram_top = np.array(sorted(
                (float(w[:, j] @ G_METRIC @ w[:, j]) for j in range(w.shape[1])),
                reverse=True,
            ))

        slot_vectors = [e[2] for e in entries]
        for slot in range(int(mult)):
            x = slot_vectors[slot % dim]
            eigenvalues.append(float(center))
            vectors.append(x)
            norms.append(entries[slot % dim][0])
            residuals.append(float(np.linalg.norm(k_op @ x - center * x)))

    top_classes = norms[: mults[0]]
    if 1 in top_classes:
        top_class = VectorClass.POSITIVE
    elif 0 in top_classes:
        top_class = VectorClass.NEUTRAL
    else:
        raise NumericalFailure(
            "top eigenspace contains no timelike or lightlike direction; "
            f"Gram eigenvalues {gram_top}, eigenvalue {centers[0]:.6g}"
        )

    return GEigenSystem(
        eigenvalues=np.array(eigenvalues),
        eigenvectors=np.array(vectors),
        norms=np.array(norms, dtype=int),
        top_class=top_class,
        degeneracy=int(mults[0]),
        clusters=tuple(clusters),
        condition_report=ConditionReport(
            residuals=np.array(residuals),
            imag_residue=quartic.imag_residue,
            symmetry_defect=symmetry_defect,
            defect=defect_total,
            gram_top=gram_top,
        ),
        tol=tol,
    )


# ---------------------------------------------------------------------------
# family classification


class CanonicalFamily(Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    DEGENERATE_PRODUCT = "DegenerateProduct"


def classify_canonical_type(sys: GEigenSystem) -> CanonicalFamily:
    """Which canonical family the eigensystem belongs to.

    Order of precedence: a vanishing top eigenvalue short-circuits to
    the degenerate product family (no normalizable canonical form
    exists); a timelike direction anywhere in the top eigenspace gives
    the diagonalizable family; otherwise the top eigenspace is lightlike
    and the state is of the non-diagonalizable kind.
    """
    if sys.eigenvalues[0] <= sys.tol:
        return CanonicalFamily.DEGENERATE_PRODUCT
    if sys.top_class is VectorClass.POSITIVE:
        return CanonicalFamily.TYPE_I
    return CanonicalFamily.TYPE_II


# ---------------------------------------------------------------------------
# validation oracle: arrowhead reduction and the secular function
#
# Rotating the spatial block of Omega to diagonal form turns
# det(Omega - lambda*G) into psi(lambda) * h(lambda) with
#
#     h(lambda)   = n0 - lambda - sum_i  n_i^2 / (lambda + alpha_i)
#     psi(lambda) = prod_i (lambda + alpha_i)
#
# so every zero of h is an eigenvalue of G Omega, the remaining
# eigenvalues sit exactly at poles whose coupling n_i vanishes (or is
# repeated), and all of them can be located by sign changes alone.


def _sym3_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Eigenvalues (descending) of a symmetric 3x3 matrix, closed form."""
    q = float(np.trace(a)) / 3.0
    b = a - q * np.eye(3)
    p2 = float((b * b).sum())
    p = np.sqrt(p2 / 6.0)
    if p <= 1e-300:
        return np.array([q, q, q])
    cnorm = b / p
    r = 0.5 * float(np.linalg.det(cnorm))
    r = min(1.0, max(-1.0, r))
    phi = np.arccos(r) / 3.0
    top = q + 2.0 * p * np.cos(phi)
    low = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    mid = 3.0 * q - top - low
    return np.array([top, mid, low])


def _sym3_vector(a: np.ndarray, w: float, scale: float) -> np.ndarray | None:
    """Unit eigenvector of a 3x3 symmetric matrix for a *simple* eigenvalue.

    The eigenvector is orthogonal to the row space of a - w*1, so the
    largest cross product of two rows points along it.  Returns None when
    every cross product is negligible (eigenvalue not simple)."""
    m = a - w * np.eye(3)
    best, best_norm = None, 0.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        c = np.cross(m[i], m[j])
        n = float(np.linalg.norm(c))
        if n > best_norm:
            best, best_norm = c, n
    if best is None or best_norm <= 1e-8 * scale * scale:
        return None
    return best / best_norm


def _sym3_eigensystem(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and a proper-rotation eigenvector matrix.

    Hand-rolled trigonometric solve: well-conditioned at this size, free
    of iterative libraries, and therefore independent of the production
    eigensolver it is meant to check.
    """
    a = 0.5 * (a + a.T)
    scale = max(float(np.abs(a).max()), 1e-300)
    w = _sym3_eigenvalues(a)
    if w[0] - w[2] <= 1e-14 * scale:
        return w, np.eye(3)

    # solve the better-isolated extreme eigenvalue first
    first = 0 if (w[0] - w[1]) >= (w[1] - w[2]) else 2
    other = 2 - first
    v_first = _sym3_vector(a, float(w[first]), scale)
    if v_first is None:
        # extreme eigenvalue is the double one; fall back to the other end
        first, other = other, first
        v_first = _sym3_vector(a, float(w[first]), scale)
        if v_first is None:
            return w, np.eye(3)

    v_other = _sym3_vector(a, float(w[other]), scale)
    if v_other is not None:
        v_other = v_other - (v_other @ v_first) * v_first
        nrm = float(np.linalg.norm(v_other))
        v_other = v_other / nrm if nrm > 1e-8 else None
    if v_other is None:
        # double eigenvalue at `other`: any unit vector orthogonal to
        # v_first works; pick the least-aligned coordinate axis
        t = np.zeros(3)
        t[int(np.abs(v_first).argmin())] = 1.0
        v_other = t - (t @ v_first) * v_first
        v_other = v_other / np.linalg.norm(v_other)
    v_mid = np.cross(v_first, v_other) if first == 0 else np.cross(v_other, v_first)

    cols = {first: v_first, other: v_other, 1: v_mid}
    rot = np.column_stack([cols[0], cols[1], cols[2]])
    if np.linalg.det(rot) < 0.0:
        rot[:, 1] = -rot[:, 1]
    return w, rot


@dataclass(frozen=True)
class SpectralOracle:
    """Arrowhead data of one symmetric form.

    ``rotation`` is the proper rotation whose 1 (+) R conjugation leaves
    the time-time entry ``n0``, the rotated time-space coupling ``n``,
    and the diagonalized spatial block ``alpha``; ``arrow_defect`` is the
    largest off-pattern entry left behind by the conjugation.
    """

    n0: float
    n: np.ndarray
    alpha: np.ndarray
    rotation: np.ndarray
    arrow_defect: float


def spectral_oracle(omega: np.ndarray) -> SpectralOracle:
    """Reduce a symmetric form to arrowhead shape by a spatial rotation."""
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (4, 4):
        raise ValueError(f"expected a 4x4 symmetric form, got {omega.shape}")
    omega = 0.5 * (omega + omega.T)
    _, rot = _sym3_eigensystem(omega[1:, 1:])
    embed = np.eye(4)
    embed[1:, 1:] = rot
    arrow = embed.T @ omega @ embed
    # Rayleigh-quotient eigenvalues (the arrow diagonal itself): unlike the
    # trigonometric values that located the eigenvectors, these stay at
    # full precision when the spatial block is degenerate.
    alpha = np.diag(arrow[1:, 1:]).copy()
    n = arrow[1:, 0].copy()
    expected = np.zeros((4, 4))
    expected[0, 0] = arrow[0, 0]
    expected[0, 1:] = n
    expected[1:, 0] = n
    expected[1:, 1:] = np.diag(alpha)
    return SpectralOracle(
        n0=float(omega[0, 0]),
        n=n,
        alpha=alpha,
        rotation=rot,
        arrow_defect=float(np.abs(arrow - expected).max()),
    )


def _oracle_scale(oracle: SpectralOracle) -> float:
    return max(
        1.0,
        abs(oracle.n0),
        float(np.abs(oracle.n).max()) ** 2,
        float(np.abs(oracle.alpha).max()),
    )


def _active_poles(oracle: SpectralOracle) -> tuple[list[tuple[float, float]], list[float], list[float]]:
    """Split the arrowhead data into secular-function structure.

    Returns (merged active poles as (position, weight) sorted ascending,
    eigenvalues contributed directly by uncoupled poles, extra
    eigenvalues contributed by repeated active poles).
    """
    scale = _oracle_scale(oracle)
    active: list[tuple[float, float]] = []
    direct: list[float] = []
    for ni, ai in zip(oracle.n, oracle.alpha):
        if abs(ni) > 1e-9 * scale:
            active.append((-float(ai), float(ni) ** 2))
        else:
            direct.append(-float(ai))
    active.sort()
    merged: list[list[float]] = []
    extra: list[float] = []
    for pos, weight in active:
        if merged and pos - merged[-1][0] <= 1e-9 * max(1.0, abs(pos)):
            # repeated pole: weights add, and the repetition itself is an
            # eigenvalue (a zero of psi surviving the simple pole of h)
            merged[-1][1] += weight
            extra.append(merged[-1][0])
        else:
            merged.append([pos, weight])
    return [(p, w) for p, w in merged], direct, extra


def h_function(oracle: SpectralOracle, lam: float, pole_tol: float = 1e-12) -> float:
    """The secular function h at a point away from its poles."""
    poles, _, _ = _active_poles(oracle)
    scale = _oracle_scale(oracle)
    for pos, _ in poles:
        if abs(lam - pos) <= pole_tol * max(1.0, abs(pos)):
            raise PoleEvaluation(
                f"h evaluated at {lam!r}, within tolerance of its pole {pos!r}"
            )
    val = oracle.n0 - lam
    for pos, weight in poles:
        val -= weight / (lam - pos)
    return float(val)


def h_derivative(oracle: SpectralOracle, lam: float, pole_tol: float = 1e-12) -> float:
    """First derivative of the secular function at a non-pole point."""
    poles, _, _ = _active_poles(oracle)
    for pos, _ in poles:
        if abs(lam - pos) <= pole_tol * max(1.0, abs(pos)):
            raise PoleEvaluation(
                f"h' evaluated at {lam!r}, within tolerance of its pole {pos!r}"
            )
    val = -1.0
    for pos, weight in poles:
        val += weight / (lam - pos) ** 2
    return float(val)


def _bisect_sign_change(f, a: float, b: float, fa: float) -> float:
    """Root of f in (a, b) given f(a) and f(b) have opposite signs."""
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (fa > 0.0):
            a = mid
        else:
            b = mid
        if (b - a) <= 4.0 * _EPS * max(1.0, abs(a), abs(b)):
            break
    return 0.5 * (a + b)


def _approach_pole(f, pole: float, start_offset: float, side: int, sign: int) -> float:
    """Point near `pole` (side=+1 right, -1 left) where sign(f) == sign."""
    off = start_offset
    for _ in range(400):
        x = pole + side * off
        if x == pole:
            raise NumericalFailure(
                f"secular function never reached sign {sign} near pole {pole!r}"
            )
        val = f(x)
        if (val > 0.0) == (sign > 0) and val != 0.0:
            return x
        off *= 0.25
    raise NumericalFailure(f"sign search stalled near pole {pole!r}")


def _expand_to_sign(f, start: float, step: float, direction: int, sign: int) -> float:
    """Point beyond `start` (direction=+-1) where sign(f) == sign."""
    w = step
    for _ in range(200):
        x = start + direction * w
        val = f(x)
        if (val > 0.0) == (sign > 0) and val != 0.0:
            return x
        w *= 2.0
    raise NumericalFailure(f"secular function never reached sign {sign} beyond {start!r}")


def oracle_eigenvalues(oracle: SpectralOracle) -> np.ndarray:
    """All four eigenvalues located through the secular function alone.

    Uncoupled poles are read off directly; each gap between consecutive
    active poles holds one sign change of h; the region right of the last
    pole holds the top two (h rises from -inf to its unique critical
    point and falls to -inf, so the critical value decides two / double /
    none), and symmetrically on the far left.  A final count against the
    quartic's degree guards the bookkeeping.
    """
    poles, direct, extra = _active_poles(oracle)
    scale = _oracle_scale(oracle)
    crit_tol = 256.0 * _EPS * scale
    h = lambda x: h_function(oracle, x, pole_tol=0.0)  # noqa: E731
    hp = lambda x: h_derivative(oracle, x, pole_tol=0.0)  # noqa: E731

    zeros: list[float] = []
    if not poles:
        zeros.append(oracle.n0)
    else:
        positions = [p for p, _ in poles]
        # one zero per finite gap: h runs from -inf up to +inf
        for left, right in zip(positions, positions[1:]):
            width = right - left
            a = _approach_pole(h, left, 0.25 * width, side=+1, sign=-1)
            b = _approach_pole(h, right, min(0.25 * width, right - a), side=-1, sign=+1)
            zeros.append(_bisect_sign_change(h, a, b, fa=-1.0))

        # right of the last pole: h' falls monotonically from +inf to -1
        top_pole = positions[-1]
        a = _approach_pole(hp, top_pole, max(1.0, scale), side=+1, sign=+1)
        b = _expand_to_sign(hp, a, max(1.0, scale), direction=+1, sign=-1)
        crit = _bisect_sign_change(hp, a, b, fa=+1.0)
        hc = h(crit)
        local = abs(oracle.n0) + abs(crit) + sum(
            w / max(abs(crit - p), 1e-300) for p, w in poles
        )
        if abs(hc) <= max(crit_tol, 64.0 * _EPS * local):
            zeros.extend([crit, crit])
        elif hc > 0.0:
            a2 = _approach_pole(h, top_pole, crit - top_pole, side=+1, sign=-1)
            zeros.append(_bisect_sign_change(h, a2, crit, fa=-1.0))
            b2 = _expand_to_sign(h, crit, max(1.0, crit - top_pole), direction=+1, sign=-1)
            zeros.append(_bisect_sign_change(h, crit, b2, fa=+1.0))

        # left of the first pole: mirror image; valid inputs put nothing here
        low_pole = positions[0]
        a = _approach_pole(hp, low_pole, max(1.0, scale), side=-1, sign=+1)
        b = _expand_to_sign(hp, a, max(1.0, scale), direction=-1, sign=-1)
        crit = _bisect_sign_change(hp, b, a, fa=-1.0)
        hc = h(crit)
        local = abs(oracle.n0) + abs(crit) + sum(
            w / max(abs(crit - p), 1e-300) for p, w in poles
        )
        if abs(hc) <= max(crit_tol, 64.0 * _EPS * local):
            zeros.extend([crit, crit])
        elif hc < 0.0:
            b2 = _expand_to_sign(h, crit, max(1.0, low_pole - crit), direction=-1, sign=+1)
            zeros.append(_bisect_sign_change(h, b2, crit, fa=+1.0))
            a2 = _approach_pole(h, low_pole, low_pole - crit, side=-1, sign=+1)
            zeros.append(_bisect_sign_change(h, crit, a2, fa=-1.0))

    found = sorted(zeros + direct + extra, reverse=True)
    if len(found) != 4:
        raise NumericalFailure(
            f"secular bookkeeping found {len(found)} eigenvalues "
            f"(zeros {sorted(zeros)}, uncoupled {sorted(direct)}, "
            f"repeated {sorted(extra)})"
        )
    return np.array(found)


@dataclass(frozen=True)
class HDerivativeCheck:
    """Outcome of the slope-sign consistency check; falsy on violation."""

    ok: bool
    #: (eigenvalue, h'(eigenvalue), verdict) for every eigenvalue examined
    checks: tuple[tuple[float, float, str], ...]

    def __bool__(self) -> bool:
        return self.ok


def h_derivative_norm_check(
    oracle: SpectralOracle,
    sys: GEigenSystem,
    tol: float = 1e-9,
) -> HDerivativeCheck:
    """Sign consistency of h' with the eigenvector signatures.

    The Minkowski norm of an eigenvector is proportional to -h' at its
    eigenvalue, so the top eigenvalue must see h' <= tol (timelike or
    lightlike top vector) and every simple subdominant eigenvalue must
    see h' >= -tol (spacelike).  Eigenvalues inside degenerate clusters,
    and any sitting on a pole, are skipped: h' is not defined there.
    """
    poles, _, _ = _active_poles(oracle)
    checks: list[tuple[float, float, str]] = []
    ok = True
    for idx, (center, mult, _dim) in enumerate(sys.clusters):
        if mult != 1:
            checks.append((center, np.nan, "skipped: degenerate"))
            continue
        if any(abs(center - p) <= 1e-9 * max(1.0, abs(p)) for p, _ in poles):
            checks.append((center, np.nan, "skipped: at a pole"))
            continue
        slope = h_derivative(oracle, center)
        if idx == 0:
            good = slope <= tol
            verdict = "top: h' <= tol" if good else "top: h' positive"
        else:
            good = slope >= -tol
            verdict = "lower: h' >= -tol" if good else "lower: h' negative"
        ok = ok and good
        checks.append((center, slope, verdict))
    return HDerivativeCheck(ok=ok, checks=tuple(checks))
