"""Race the production eigensolver against the secular-function route.

Both routes solve the same indefinite 4x4 eigenproblem; this script
times them on full-rank random states and reports the worst root
disagreement, as a quick regression check after touching either path.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from lorentzsvd.geigen import (
    g_eigensystem,
    omega_matrices,
    oracle_eigenvalues,
    spectral_oracle,
)
from lorentzsvd.qstate import lambda_from_rho, random_state


@dataclass
class Config:
    count: int = 300
    seed_base: int = 7_000_000
    tol: float = 1e-10


def bench(cfg: Config) -> dict:
    omegas = [
        omega_matrices(lambda_from_rho(random_state(4, seed=cfg.seed_base + i))).omega_a
        for i in range(cfg.count)
    ]

    t0 = time.perf_counter()
    main = [g_eigensystem(om, tol=cfg.tol).eigenvalues for om in omegas]
    t_main = time.perf_counter() - t0

    t0 = time.perf_counter()
    secular = [oracle_eigenvalues(spectral_oracle(om)) for om in omegas]
    t_secular = time.perf_counter() - t0

    gaps = [float(np.abs(a - b).max()) for a, b in zip(main, secular)]
    return {
        "states": cfg.count,
        "mainMillisecondsPerState": round(1000.0 * t_main / cfg.count, 3),
        "secularMillisecondsPerState": round(1000.0 * t_secular / cfg.count, 3),
        "worstRootGap": max(gaps),
        "medianRootGap": float(np.median(gaps)),
    }


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed-base", type=int, default=7_000_000)
    ap.add_argument("--tol", type=float, default=1e-10)
    ns = ap.parse_args()
    out = bench(Config(count=ns.count, seed_base=ns.seed_base, tol=ns.tol))
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    sys.exit(0 if out["worstRootGap"] <= 1e-8 else 1)
