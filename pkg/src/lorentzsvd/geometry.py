"""Steering-ellipsoid geometry of canonical two-qubit states.

The normalized correlation matrix maps one party's measurement directions
to the other party's conditional Bloch vectors.  On canonical forms that
image has closed-form geometry: a centered ellipsoid with semi-axes
sqrt(lambda_i/lambda_0) for the diagonal family, and a spheroid of
semi-axes (r1, r1, r0) centered at (0, 0, 1-r0) on the symmetry axis for
the arrow family.  This module emits those parameters and deterministic
sampled surfaces (Fibonacci sphere, no RNG) for external plotters.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .canonical import CanonicalResult, SideFamily
from .errors import DegenerateProductGeometry
from .qstate import SteerDirection, steer

_GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))


class GeometryFamily(Enum):
    TYPE_I = "TypeI"
    TYPE_II_A = "TypeII_A"
    TYPE_II_B = "TypeII_B"
    POINT = "Point"


@dataclass(frozen=True)
class SteeringEllipsoid:
    """Axis-aligned steering ellipsoid of a canonical state.

    ``axis_frame`` is the rotation from ellipsoid axes to Bloch axes;
    canonical forms are already axis-aligned, so it is the identity.
    """

    center: np.ndarray
    semi_axes: np.ndarray
    axis_frame: np.ndarray
    family: GeometryFamily


def steering_ellipsoid(result: CanonicalResult, tol: float = 1e-12) -> SteeringEllipsoid:
    """Closed-form steering geometry of a canonical factorization result."""
    if result.family is SideFamily.DEGENERATE_PRODUCT:
        raise DegenerateProductGeometry(
            "the degenerate product family has no steering ellipsoid"
        )
    if result.family is SideFamily.TYPE_I:
        semi = np.abs(np.diag(result.canonical_lambda)[1:])
        center = np.zeros(3)
        family = GeometryFamily.POINT if np.all(semi <= tol) else GeometryFamily.TYPE_I
    else:
        p = result.parameters
        if result.family is SideFamily.TYPE_II_A:
            p0, p1 = p["r0"], p["r1"]
            family = GeometryFamily.TYPE_II_A
        else:
            p0, p1 = p["s0"], p["s1"]
            family = GeometryFamily.TYPE_II_B
        semi = np.array([p1, p1, p0])
        center = np.array([0.0, 0.0, 1.0 - p0])
    return SteeringEllipsoid(
        center=center, semi_axes=semi, axis_frame=np.eye(3), family=family
    )


def fibonacci_sphere(count: int) -> np.ndarray:
    """`count` quasi-uniform unit vectors; deterministic in the count."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    n = np.arange(count)
    z = 1.0 - (2.0 * n + 1.0) / count
    radius = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    theta = _GOLDEN_ANGLE * n
    return np.column_stack([radius * np.cos(theta), radius * np.sin(theta), z])


def sample_steered_surface(
    lam: np.ndarray,
    direction: SteerDirection | str,
    count: int,
    tol: float = 1e-10,
) -> np.ndarray:
    """Conditional Bloch vectors steered through lam, one per sphere sample.

    Each unit vector x becomes the neutral probe p = (1, x); the steered
    output is renormalized by its time component, whose positivity is
    enforced inside steer().
    """
    points = np.empty((count, 3))
    for i, x in enumerate(fibonacci_sphere(count)):
        q = steer(lam, np.concatenate([[1.0], x]), direction, tol=tol)
        points[i] = q[1:] / q[0]
    return points


def surface_residuals(points: np.ndarray, ellipsoid: SteeringEllipsoid) -> np.ndarray:
    """Per-point defect of the implicit surface equation.

    For a nondegenerate ellipsoid this is |quadratic form - 1|.  When a
    semi-axis collapses to zero the surface equation degenerates (the
    image fills a segment or point rather than tracing a boundary), so
    the residual becomes the absolute offset along the collapsed axes.
    """
    rel = (np.atleast_2d(points) - ellipsoid.center) @ ellipsoid.axis_frame
    live = ellipsoid.semi_axes > 0.0
    if not np.all(live):
        return np.abs(rel[:, ~live]).sum(axis=1)
    quad = np.sum((rel / ellipsoid.semi_axes) ** 2, axis=1)
    return np.abs(quad - 1.0)


def fit_axis_aligned_ellipsoid(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Least-squares axis-aligned ellipsoid with center on the z axis.

    Fits alpha x^2 + beta y^2 + gamma z^2 + delta z = 1 and converts to
    (center, semi_axes).  Only meaningful for nondegenerate surfaces.
    """
    pts = np.asarray(points, dtype=float)
    design = np.column_stack([pts[:, 0] ** 2, pts[:, 1] ** 2, pts[:, 2] ** 2, pts[:, 2]])
    coef, *_ = np.linalg.lstsq(design, np.ones(len(pts)), rcond=None)
    alpha, beta, gamma, delta = coef
    z0 = -delta / (2.0 * gamma)
    kappa = 1.0 + gamma * z0 * z0
    semi = np.sqrt(kappa / np.array([alpha, beta, gamma]))
    return np.array([0.0, 0.0, z0]), semi


def _fmt(x: float) -> str:
    return format(0.0 if x == 0.0 else float(x), ".17g")


def points_to_csv(points: np.ndarray) -> str:
    lines = ["x,y,z"]
    for p in np.atleast_2d(points):
        lines.append(",".join(_fmt(v) for v in p))
    return "\n".join(lines) + "\n"


def ellipsoid_json_dict(ellipsoid: SteeringEllipsoid) -> dict:
    return {
        "family": ellipsoid.family.value,
        "center": [float(v) for v in ellipsoid.center],
        "semiAxes": [float(v) for v in ellipsoid.semi_axes],
    }
