"""Export steering-ellipsoid surfaces of reference states for plotting.

Each requested state is canonicalized, its ellipsoid parameters are
written to <name>.ellipsoid.json, and a sampled steered surface goes to
<name>.surface.csv (columns x,y,z).  State specs:

    werner:P         Werner state with visibility P
    pattern:R0,R1    non-diagonal canonical family with parameters (r0, r1)
    file:PATH        state document (rho or lambda payload) on disk

Example:
    python scripts/export_steering_surfaces.py -o surfaces \\
        werner:0.5 pattern:0.64,0.6
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from lorentzsvd.canonical import canonicalize
from lorentzsvd.geometry import (
    ellipsoid_json_dict,
    points_to_csv,
    sample_steered_surface,
    steering_ellipsoid,
    surface_residuals,
)
from lorentzsvd.qstate import rho_from_lambda
from lorentzsvd.serialize import dumps, loads_state


@dataclass
class Config:
    specs: list[str]
    out_dir: Path
    samples: int = 500
    tol: float = 1e-10


def _state_from_spec(spec: str) -> tuple[str, np.ndarray]:
    kind, _, arg = spec.partition(":")
    if kind == "werner":
        p = float(arg)
        lam = np.diag([1.0, p, -p, p])
        return f"werner-{arg}", rho_from_lambda(lam)
    if kind == "pattern":
        r0, r1 = (float(v) for v in arg.split(","))
        lam = np.array(
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, r1, 0.0, 0.0],
                [0.0, 0.0, -r1, 0.0],
                [1.0 - r0, 0.0, 0.0, r0],
            ]
        )
        return f"pattern-{r0}-{r1}", rho_from_lambda(lam)
    if kind == "file":
        payload, value = loads_state(Path(arg).read_text(encoding="utf-8"))
        rho = value if payload == "rho" else rho_from_lambda(value)
        return Path(arg).stem, rho
    raise SystemExit(f"unknown state spec {spec!r} (use werner:, pattern:, file:)")


def export(cfg: Config) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    bad = 0
    for spec in cfg.specs:
        name, rho = _state_from_spec(spec)
        res = canonicalize(rho, tol=cfg.tol)
        nodes = [(res, "BtoA")]
        if res.partner is not None:
            nodes.append((res.partner, "AtoB"))
        for node, direction in nodes:
            ell = steering_ellipsoid(node)
            pts = sample_steered_surface(node.canonical_lambda, direction, cfg.samples)
            resid = float(np.max(surface_residuals(pts, ell)))
            base = name if direction == "BtoA" else f"{name}.partner"
            (cfg.out_dir / f"{base}.ellipsoid.json").write_text(
                dumps(ellipsoid_json_dict(ell)), encoding="utf-8"
            )
            (cfg.out_dir / f"{base}.surface.csv").write_text(
                points_to_csv(pts), encoding="utf-8"
            )
            flag = "" if resid <= 1e-8 else "  <-- residual above 1e-8"
            print(f"{base}: {cfg.samples} points, quadric residual {resid:.2e}{flag}")
            bad += resid > 1e-8
    return 1 if bad else 0


def parse_args(argv: list[str] | None = None) -> Config:
    ap = argparse.ArgumentParser(
        description=__doc__.splitlines()[0],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="\n".join(__doc__.splitlines()[2:]),
    )
    ap.add_argument("specs", nargs="+", metavar="SPEC")
    ap.add_argument("-o", "--out-dir", type=Path, default=Path("surfaces"))
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--tol", type=float, default=1e-10)
    ns = ap.parse_args(argv)
    return Config(specs=ns.specs, out_dir=ns.out_dir, samples=ns.samples, tol=ns.tol)


if __name__ == "__main__":
    sys.exit(export(parse_args()))
