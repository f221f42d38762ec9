"""Survey canonical families and factorization quality over random states.

Draws seeded density matrices across the four ranks, canonicalizes each,
and tallies family counts, worst residuals, and wall time.  Prints one
JSON summary to stdout; optionally writes a per-state CSV for plotting.

    python scripts/survey_random_states.py --per-rank 500 --csv out.csv
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from lorentzsvd.canonical import canonicalize
from lorentzsvd.errors import LorentzSvdError
from lorentzsvd.qstate import lambda_from_rho, random_state


@dataclass
class Config:
    per_rank: int = 500
    ranks: tuple[int, ...] = (1, 2, 3, 4)
    seed_base: int = 0
    tol: float = 1e-10
    csv_path: Path | None = None


def survey(cfg: Config) -> dict:
    families: dict[str, int] = {}
    errors: list[str] = []
    rows: list[dict] = []
    worst_fact = 0.0
    worst_state = None
    t0 = time.perf_counter()
    for rank in cfg.ranks:
        for i in range(cfg.per_rank):
            seed = cfg.seed_base + rank * 1_000_000 + i
            rho = random_state(rank, seed=seed)
            lam = lambda_from_rho(rho)
            t1 = time.perf_counter()
            try:
                res = canonicalize(rho, tol=cfg.tol)
            except LorentzSvdError as exc:
                errors.append(f"rank {rank} seed {seed}: {type(exc).__name__}: {exc}")
                continue
            ms = 1000.0 * (time.perf_counter() - t1)
            image = res.left_lorentz @ lam @ res.right_lorentz.T
            fact = float(np.abs(image / image[0, 0] - res.canonical_lambda).max())
            families[res.family.value] = families.get(res.family.value, 0) + 1
            if fact > worst_fact:
                worst_fact, worst_state = fact, (rank, seed)
            rows.append(
                {"rank": rank, "seed": seed, "family": res.family.value,
                 "factorization": fact, "milliseconds": round(ms, 3)}
            )
    total = time.perf_counter() - t0

    if cfg.csv_path is not None and rows:
        with open(cfg.csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)

    n = len(rows)
    return {
        "config": {**asdict(cfg), "csv_path": str(cfg.csv_path) if cfg.csv_path else None},
        "states": n,
        "families": dict(sorted(families.items())),
        "worstFactorization": worst_fact,
        "worstState": worst_state,
        "meanMillisecondsPerState": round(1000.0 * total / max(n, 1), 3),
        "errors": errors,
    }


def parse_args(argv: list[str] | None = None) -> Config:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--per-rank", type=int, default=500)
    ap.add_argument("--ranks", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--seed-base", type=int, default=0)
    ap.add_argument("--tol", type=float, default=1e-10)
    ap.add_argument("--csv", type=Path, default=None, help="per-state rows for plotting")
    ns = ap.parse_args(argv)
    return Config(per_rank=ns.per_rank, ranks=tuple(ns.ranks), seed_base=ns.seed_base,
                  tol=ns.tol, csv_path=ns.csv)


if __name__ == "__main__":
    summary = survey(parse_args())
    json.dump(summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    sys.exit(1 if summary["errors"] else 0)
