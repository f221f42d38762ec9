"""Exact-coefficient quartic root finding for the indefinite eigenproblem.

det(Omega - lambda * G) is a quartic in lambda whose roots are the
eigenvalues of G @ Omega.  The coefficients come from principal minors
(exact multilinear expansion), the real roots from a Sturm chain with
bisection, and multiple roots from the truncated tail of the chain
(a numerical gcd of p and p').  General-purpose nonsymmetric iteration
is deliberately avoided: at the defective double roots that characterize
the non-diagonalizable family it produces spurious complex pairs, while
the chain degrades gracefully into a cluster count.

Polynomials are coefficient arrays in ascending order: c[k] <-> lambda^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import NumericalFailure

_EPS = float(np.finfo(float).eps)


def _det_small(M: np.ndarray) -> float:
    """Determinant by cofactor expansion, exact flop pattern for n <= 4."""
    n = M.shape[0]
    if n == 0:
        return 1.0
    if n == 1:
        return float(M[0, 0])
    if n == 2:
        return float(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
    total = 0.0
    cols = list(range(1, n))
    for i in range(n):
        rows = [r for r in range(n) if r != i]
        minor = M[np.ix_(rows, cols)]
        total += (-1.0) ** i * M[i, 0] * _det_small(minor)
    return total


def charpoly_g(omega: np.ndarray) -> np.ndarray:
    """Coefficients (ascending) of p(x) = det(omega - x*G), G = diag(1,-1,-1,-1).

    Multilinearity in the columns gives
        c_k = sum over k-subsets S of {0..3} of
              prod_{j in S} (-G_jj) * det(omega with rows+cols S deleted),
    so every coefficient is a signed sum of principal minors.
    """
    omega = np.asarray(omega, dtype=float)
    gdiag = np.array([1.0, -1.0, -1.0, -1.0])
    c = np.zeros(5)
    idx = (0, 1, 2, 3)
    for k in range(5):
        acc = 0.0
        for S in combinations(idx, k):
            keep = [j for j in idx if j not in S]
            sign = 1.0
            for j in S:
                sign *= -gdiag[j]
            acc += sign * _det_small(omega[np.ix_(keep, keep)])
        c[k] = acc
    return c


def polyval(c: np.ndarray, x: float) -> float:
    r = 0.0
    for ck in c[::-1]:
        r = r * x + ck
    return float(r)


def polyval_bound(c: np.ndarray, x: float) -> float:
    """Crude running-error bound for Horner evaluation at x."""
    s = 0.0
    ax = abs(x)
    for ck in c[::-1]:
        s = s * ax + abs(ck)
    return float((2 * len(c) + 1) * _EPS * s)


def polyder(c: np.ndarray) -> np.ndarray:
    if len(c) <= 1:
        return np.zeros(1)
    return c[1:] * np.arange(1, len(c))


def _trim(c: np.ndarray, rel: float = 1e-12) -> np.ndarray:
    big = np.abs(c).max()
    if big == 0.0:
        return np.zeros(1)
    out = np.array(c, dtype=float)
    k = len(out) - 1
    while k > 0 and abs(out[k]) <= rel * big:
        k -= 1
    return out[: k + 1]


def _polydiv(num: np.ndarray, den: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    num = np.array(num, dtype=float)
    den = _trim(den)
    dn, dd = len(num) - 1, len(den) - 1
    if dn < dd:
        return np.zeros(1), num
    quot = np.zeros(dn - dd + 1)
    rem = num.copy()
    for k in range(dn - dd, -1, -1):
        q = rem[k + dd] / den[dd]
        quot[k] = q
        rem[k : k + dd + 1] -= q * den
    return quot, rem[:dd] if dd > 0 else np.zeros(1)


@dataclass
class SturmData:
    chain: list[np.ndarray]
    truncated: bool
    gcd: np.ndarray  # last chain element; nontrivial iff truncated


def sturm_chain(c: np.ndarray, trunc_rel: float = 1e-11) -> SturmData:
    """Euclidean remainder chain of (p, p'), normalized elementwise.

    Remainders whose coefficients all fall below `trunc_rel` (relative to
    the running dividend) are treated as zero; the chain then ends at a
    numerical gcd of p and p', whose roots are the multiple roots of p.
    """
    p0 = np.array(c, dtype=float)
    p0 /= np.abs(p0).max()
    p1 = _trim(polyder(p0))
    p1 /= np.abs(p1).max()
    chain = [p0, p1]
    truncated = False
    while len(chain[-1]) > 1:
        _, rem = _polydiv(chain[-2], chain[-1])
        rem = -rem
        mag = float(np.abs(rem).max())
        if mag <= trunc_rel:
            truncated = True
            break
        rem = _trim(rem / mag)
        chain.append(rem)
    return SturmData(chain=chain, truncated=truncated, gcd=chain[-1])


def _variations(chain: list[np.ndarray], x: float) -> int:
    signs = []
    for c in chain:
        v = polyval(c, x)
        if v != 0.0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_distinct_roots(sd: SturmData, a: float, b: float) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    return _variations(sd.chain, a) - _variations(sd.chain, b)


def cauchy_bound(c: np.ndarray) -> float:
    c = _trim(c)
    return 1.0 + float(np.abs(c[:-1]).max() / abs(c[-1]))


def _isolate(sd: SturmData, lo: float, hi: float, floor: float) -> list[tuple[float, float, int]]:
    out: list[tuple[float, float, int]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_distinct_roots(sd, a, b)
        if n == 0:
            continue
        if n == 1 or (b - a) <= floor:
            out.append((a, b, n))
            continue
        mid = 0.5 * (a + b)
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(out)


def _bisect_refine(c: np.ndarray, a: float, b: float, iters: int = 90) -> float:
    fb = polyval(c, b)
    if fb == 0.0:
        return b  # intervals are half-open (a, b]; a root at b belongs here
    fa = polyval(c, a)
    if fa == 0.0:
        # a is a root of the *neighbouring* interval; step off it
        a += max(b - a, 1.0) * 1e-12
        fa = polyval(c, a)
    if fa == 0.0:
        return a
    if fa * fb > 0.0:
        # no bracket (nudge overshot, or near-double smear): midpoint + Newton
        x = 0.5 * (a + b)
    else:
        for _ in range(iters):
            x = 0.5 * (a + b)
            fx = polyval(c, x)
            if fx == 0.0:
                break
            if fa * fx < 0.0:
                b, fb = x, fx
            else:
                a, fa = x, fx
            if (b - a) <= 2.0 * np.finfo(float).eps * max(1.0, abs(a), abs(b)):
                break
        x = 0.5 * (a + b)
    return _newton_polish(c, x, steps=8)


def _real_roots_low_degree(q: np.ndarray) -> list[float]:
    """Real roots of a degree <= 2 polynomial; a barely-negative discriminant
    is clamped to a double root at the vertex."""
    q = _trim(q)
    if len(q) == 3:
        a2, a1, a0 = q[2], q[1], q[0]
        disc = a1 * a1 - 4.0 * a2 * a0
        scale = max(a1 * a1, abs(4.0 * a2 * a0), 1e-300)
        vertex = -a1 / (2.0 * a2)
        if disc < 0.0:
            if disc >= -1e-8 * scale:
                return [vertex, vertex]
            return []
        s = np.sqrt(disc) / (2.0 * abs(a2))
        return [vertex - s, vertex + s]
    if len(q) == 2:
        return [float(-q[0] / q[1])]
    return []


@dataclass
class QuarticRoots:
    values: np.ndarray          # distinct roots, ascending
    multiplicities: np.ndarray  # matching multiplicities, sum = 4
    imag_residue: float         # imaginary scale absorbed when closing a near-complex pair


def quartic_real_roots(
    c: np.ndarray,
    cluster_radius: float,
    imag_tol: float,
) -> QuarticRoots:
    """All real roots (with multiplicity) of an exactly-quartic polynomial.

    cluster_radius: distinct refined roots closer than this merge into one.
    imag_tol: a leftover irreducible quadratic factor with imaginary part
    below this is closed onto the real axis as a double root; beyond it,
    NumericalFailure.
    """
    c = np.array(c, dtype=float)
    scale = np.abs(c).max()
    if scale == 0.0:
        raise NumericalFailure("zero characteristic polynomial")
    c = c / scale

    # Square-free decomposition by repeated numerical gcd: levels[k+1] is the
    # gcd of levels[k] with its derivative, so a root of multiplicity m in p
    # survives into levels 0..m-1.  Multiplicities are read off this structure
    # instead of thresholded derivative values, which misjudge roots whose
    # residual sits just above an evaluation-error bound.
    levels: list[np.ndarray] = [c]
    sd = sturm_chain(c)
    while sd.truncated and len(sd.gcd) > 1:
        levels.append(sd.gcd / sd.gcd[-1])
        sd = sturm_chain(levels[-1])

    # Isolation must run on the square-free part: at a multiple root every
    # element of a truncated chain vanishes, breaking sign-variation counts.
    if len(levels) == 1:
        square_free = c
        top_sd = sturm_chain(c)
    else:
        square_free, _ = _polydiv(c, levels[1])
        square_free = _trim(square_free / np.abs(square_free).max())
        top_sd = sturm_chain(square_free)
        for _ in range(3):
            # division noise can leave a residual near-multiple pair
            if not (top_sd.truncated and len(top_sd.gcd) > 1):
                break
            square_free, _ = _polydiv(square_free, top_sd.gcd / top_sd.gcd[-1])
            square_free = _trim(square_free / np.abs(square_free).max())
            top_sd = sturm_chain(square_free)

    B = cauchy_bound(c)
    floor = max(1e-13 * B, 64.0 * _EPS * B)
    intervals = _isolate(top_sd, -B, B, floor)

    roots: list[float] = []
    for a, b, n in intervals:
        if n == 1:
            roots.append(_bisect_refine(square_free, a, b))
        else:
            # width-floor cluster: several distinct roots we cannot split
            roots.append(0.5 * (a + b))

    # merge near-coincident refinements; group size seeds the multiplicity
    roots.sort()
    merged: list[list[float]] = []
    for r in roots:
        if merged and r - merged[-1][-1] <= cluster_radius:
            merged[-1].append(r)
        else:
            merged.append([r])
    centers = [float(np.mean(g)) for g in merged]
    mults = [len(g) for g in merged]

    # each gcd level contributes one extra multiplicity to its nearest root
    if centers:
        for k in range(1, len(levels)):
            if k + 1 < len(levels):
                quot, _ = _polydiv(levels[k], levels[k + 1])
                quot = _trim(quot)
            else:
                quot = levels[k]
            for s in _real_roots_low_degree(quot):
                i = int(np.argmin([abs(r - s) for r in centers]))
                mults[i] += 1

    # polish each root on the derivative matching its multiplicity
    polished = []
    for r, m in zip(centers, mults):
        poly = c
        for _ in range(m - 1):
            poly = polyder(poly)
        polished.append(_newton_polish(poly, r))
    centers = polished

    total = sum(mults)
    imag_residue = 0.0
    if total < 4:
        rem_poly = c
        for r, m in zip(centers, mults):
            for _ in range(m):
                rem_poly, _ = _polydiv(rem_poly, np.array([-r, 1.0]))
        rem_poly = _trim(rem_poly)
        if len(rem_poly) == 3:
            a2, a1, a0 = rem_poly[2], rem_poly[1], rem_poly[0]
            disc = a1 * a1 - 4.0 * a2 * a0
            vertex = -a1 / (2.0 * a2)
            if disc >= 0.0:
                s = np.sqrt(disc) / (2.0 * a2)
                centers.extend([vertex - s, vertex + s])
                mults.extend([1, 1])
            else:
                imag_residue = float(np.sqrt(-disc) / (2.0 * abs(a2)))
                if imag_residue > imag_tol * max(1.0, abs(vertex)):
                    raise NumericalFailure(
                        f"complex eigenvalue pair with imaginary part {imag_residue:.3e}"
                    )
                centers.append(float(vertex))
                mults.append(2)
        elif len(rem_poly) == 2:
            centers.append(float(-rem_poly[0] / rem_poly[1]))
            mults.append(1)
        elif total == 0:
            raise NumericalFailure("no real eigenvalues found for a quartic")

    # re-merge after reconciliation, then force the total to 4
    pairs = sorted(zip(centers, mults))
    out_r: list[float] = []
    out_m: list[int] = []
    for r, m in pairs:
        if out_r and r - out_r[-1] <= cluster_radius * max(1.0, abs(r)):
            tot = out_m[-1] + m
            out_r[-1] = (out_r[-1] * out_m[-1] + r * m) / tot
            out_m[-1] = tot
        else:
            out_r.append(r)
            out_m.append(m)
    excess = sum(out_m) - 4
    if excess > 0:
        # trim from the largest multiplicity (conservative, should not occur)
        k = int(np.argmax(out_m))
        out_m[k] -= excess
        if out_m[k] <= 0:
            raise NumericalFailure("inconsistent multiplicity reconciliation")
    elif excess < 0:
        k = int(np.argmax(out_m))
        out_m[k] -= excess

    return QuarticRoots(
        values=np.array(out_r),
        multiplicities=np.array(out_m, dtype=int),
        imag_residue=imag_residue,
    )


def _newton_polish(poly: np.ndarray, x: float, steps: int = 4) -> float:
    d = polyder(poly)
    for _ in range(steps):
        fx = polyval(poly, x)
        dx = polyval(d, x)
        if dx == 0.0:
            break
        step = fx / dx
        if not np.isfinite(step) or abs(step) > max(1.0, abs(x)):
            break
        x -= step
        if abs(step) <= 4.0 * _EPS * max(1.0, abs(x)):
            break
    return float(x)
