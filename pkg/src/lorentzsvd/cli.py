"""Command-line front end.

Subcommands:

* ``classify``     print the family and G-eigenvalue spectrum of a state
* ``canonicalize`` write the full canonical factorization report (JSON)
* ``ellipsoid``    write steering-ellipsoid geometry, optionally with
                   sampled surface points as CSV
* ``sigma``        build the (b, c, d) normal form and print the
                   closed-form vs. pipeline comparison table
* ``random``       write a seeded random state document
* ``verify``       run the built-in self-check suite on a state

Exit codes: 0 success, 1 malformed input, 2 not a physical state,
3 numerical failure, 4 verification failure.  Errors are emitted as a
single JSON object on stderr.  All JSON output is byte-deterministic.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
from pathlib import Path

import numpy as np

from .canonical import (
    SigmaParameters,
    canonicalize,
    sigma_equivalence_check,
    sigma_from_bcd,
)
from .errors import InputFormatError, LorentzSvdError
from .geigen import classify_canonical_type, g_eigensystem, omega_matrices
from .geometry import (
    ellipsoid_json_dict,
    points_to_csv,
    sample_steered_surface,
    steering_ellipsoid,
)
from .minkowski import G_METRIC
from .qstate import lambda_from_rho, random_state, rho_from_lambda
from .serialize import (
    CONVENTIONS,
    canonical_report,
    dumps,
    format_float,
    loads_state,
    parse_canonical_report,
    parse_state_document,
    state_document,
)

DEFAULT_TOL = 1e-10


def _resolve_tol(value: float | None) -> float:
    if value is None:
        env = os.environ.get("CANON_TOL")
        if env:
            try:
                value = float(env)
            except ValueError:
                raise InputFormatError(f"CANON_TOL is not a number: {env!r}") from None
        else:
            value = DEFAULT_TOL
    if not value > 0.0:
        raise InputFormatError(f"tolerance must be positive, got {value}")
    return value


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from None


def _load_state(path: str) -> tuple[np.ndarray, np.ndarray]:
    """(rho, lambda) from a state document, validating physicality."""
    kind, value = loads_state(_read_text(path))
    if kind == "rho":
        return value, lambda_from_rho(value)
    return rho_from_lambda(value), value


def _write_output(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommand bodies (each returns the output text)


def _run_classify(path: str, tol: float) -> str:
    _, lam = _load_state(path)
    pair = omega_matrices(lam)
    sys_a = g_eigensystem(pair.omega_a, tol)
    family = classify_canonical_type(sys_a)
    spectrum = ",".join(format_float(v) for v in sys_a.eigenvalues)
    return f"{family.value}, eigenvalues [{spectrum}]\n"


def _run_canonicalize(path: str, tol: float) -> str:
    rho, _ = _load_state(path)
    return dumps(canonical_report(canonicalize(rho, tol)))


def _run_ellipsoid(path: str, tol: float, side: str, samples: int | None,
                   csv_path: str | None) -> str:
    text = _read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"not valid JSON: {exc}") from None
    if isinstance(doc, dict) and "family" in doc:
        # a canonical report carries everything the geometry needs
        if side == "B" and "partner" in doc:
            doc = doc["partner"]
        result = parse_canonical_report(doc)
    else:
        kind, value = parse_state_document(doc)
        rho = value if kind == "rho" else rho_from_lambda(value)
        result = canonicalize(rho, tol)
        if side == "B" and result.partner is not None:
            result = result.partner
    ell = steering_ellipsoid(result)
    if samples:
        direction = "AtoB" if ell.family.value == "TypeII_B" else "BtoA"
        points = sample_steered_surface(result.canonical_lambda, direction, samples)
        if csv_path:
            Path(csv_path).write_text(points_to_csv(points), encoding="utf-8")
    out = {"conventions": CONVENTIONS}
    out.update(ellipsoid_json_dict(ell))
    return dumps(out)


def _run_sigma(b: float, c: float, d: float, tol: float) -> tuple[str, bool]:
    sigma, _ = sigma_from_bcd(SigmaParameters(b, c, d))
    report = sigma_equivalence_check(SigmaParameters(b, c, d), tol=max(tol, 1e-8))
    lam0 = (1.0 + c) * (1.0 - b)
    s0 = (1.0 - b) / (1.0 - c)
    s1 = abs(d) / np.sqrt(1.0 - c * c)
    lines = [
        f"sigma(b={format_float(b)}, c={format_float(c)}, d={format_float(d)})",
        "eigenvalues (each doubly degenerate): "
        f"{format_float(lam0)}, {format_float(d * d)}",
        f"closed-form s0={format_float(s0)}  s1={format_float(s1)}",
        f"eigenvalue residual:   {format_float(report.eigenvalue_residual)}",
        f"B-side closed form:    {format_float(report.b_side_residual)}",
        f"A-side closed form:    {format_float(report.a_side_residual)}",
        f"pipeline s-parameters: {format_float(report.s_parameter_residual)}",
        f"invariant ratio:       {format_float(report.ratio_residual)}",
        f"ok: {'true' if report.ok else 'false'}",
    ]
    return "\n".join(lines) + "\n", report.ok


def _run_random(rank: int, seed: int) -> str:
    if not 1 <= rank <= 4:
        raise InputFormatError(f"rank must be 1..4, got {rank}")
    return dumps(state_document(rho=random_state(rank, seed=seed)))


def _run_verify(path: str, tol: float) -> tuple[str, bool]:
    rho, lam = _load_state(path)
    checks: dict[str, dict] = {}

    def record(name: str, value: float, threshold: float) -> None:
        checks[name] = {
            "value": float(value),
            "threshold": float(threshold),
            "ok": bool(value <= threshold),
        }

    record("rhoRoundTrip", np.abs(rho_from_lambda(lam, validate=False) - rho).max(),
           max(tol, 1e-10))
    pair = omega_matrices(lam)
    sys_a = g_eigensystem(pair.omega_a, tol)
    sys_b = g_eigensystem(pair.omega_b, tol)
    scale = max(1.0, float(sys_a.eigenvalues[0]))
    record("sharedSpectrum", np.abs(sys_a.eigenvalues - sys_b.eigenvalues).max(),
           max(100 * tol, 1e-8) * scale)
    result = canonicalize(rho, tol)
    if result.residuals:
        record("factorization", result.residuals["factorization"], max(100 * tol, 1e-8))
        lorentz_defect = max(
            np.abs(L.T @ G_METRIC @ L - G_METRIC).max()
            for L in (result.left_lorentz, result.right_lorentz)
        )
        record("lorentzFactors", lorentz_defect, max(10 * tol, 1e-9))
        record("canonicalRhoPositive",
               max(0.0, -float(np.linalg.eigvalsh(result.canonical_rho).min())),
               max(10 * tol, 1e-9))
    ok = all(c["ok"] for c in checks.values())
    doc = {
        "conventions": CONVENTIONS,
        "family": result.family.value,
        "checks": checks,
        "ok": ok,
    }
    return dumps(doc), ok


# ---------------------------------------------------------------------------
# batch mode


def _batch_one(task: tuple[str, str, str, float, dict]) -> tuple[str, int, str]:
    """(input name, exit code, message); never raises."""
    cmd, in_path, out_path, tol, extra = task
    try:
        if cmd == "classify":
            text = _run_classify(in_path, tol)
        elif cmd == "canonicalize":
            text = _run_canonicalize(in_path, tol)
        elif cmd == "ellipsoid":
            text = _run_ellipsoid(in_path, tol, extra.get("side", "A"),
                                  extra.get("samples"), None)
        else:
            text, ok = _run_verify(in_path, tol)
            if not ok:
                Path(out_path).write_text(text, encoding="utf-8")
                return Path(in_path).name, 4, "verification failed"
        Path(out_path).write_text(text, encoding="utf-8")
        return Path(in_path).name, 0, ""
    except LorentzSvdError as exc:
        return Path(in_path).name, exc.exit_code, f"{type(exc).__name__}: {exc}"
    except Exception as exc:  # per-file isolation: report, never abort the pool
        return Path(in_path).name, 3, f"{type(exc).__name__}: {exc}"


def _run_batch(cmd: str, directory: str, tol: float, extra: dict) -> int:
    root = Path(directory)
    if not root.is_dir():
        raise InputFormatError(f"batch target {directory} is not a directory")
    files = sorted(p for p in root.glob("*.json") if not p.name.endswith(f".{cmd}.json"))
    suffix = ".txt" if cmd == "classify" else ".json"
    tasks = [
        (cmd, str(p), str(p.with_suffix(f".{cmd}{suffix}")), tol, extra) for p in files
    ]
    workers = min(8, max(1, os.cpu_count() or 1), max(1, len(tasks)))
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_batch_one, tasks))
    results.sort(key=lambda r: r[0])
    summary = {
        "command": cmd,
        "processed": len(results),
        "failures": {name: {"exitCode": code, "message": msg}
                     for name, code, msg in results if code != 0},
    }
    sys.stdout.write(dumps(summary))
    return max((code for _, code, _ in results), default=0)


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorentzsvd",
        description="Canonical SLOCC factorization and steering geometry of two-qubit states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_state_command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("input", nargs="?", help="state JSON file, or - for stdin")
        group.add_argument("--batch", metavar="DIR",
                           help="process every *.json in DIR on a worker pool")
        p.add_argument("--tol", type=float, default=None,
                       help="tolerance (default: CANON_TOL env or 1e-10)")
        p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
        return p

    add_state_command("classify", "print family and G-eigenvalue spectrum")
    add_state_command("canonicalize", "write the canonical factorization report")
    p_ell = add_state_command("ellipsoid", "write steering-ellipsoid geometry")
    p_ell.add_argument("--side", choices=("A", "B"), default="A")
    p_ell.add_argument("--samples", type=int, default=None,
                       help="also sample this many surface points")
    p_ell.add_argument("--csv", default=None, help="CSV file for sampled points")
    add_state_command("verify", "run the self-check suite on a state")

    p_sig = sub.add_parser("sigma", help="closed-form vs pipeline comparison")
    p_sig.add_argument("--b", type=float, required=True)
    p_sig.add_argument("--c", type=float, required=True)
    p_sig.add_argument("--d", type=float, required=True)
    p_sig.add_argument("--tol", type=float, default=None)
    p_sig.add_argument("-o", "--output", default=None)

    p_rnd = sub.add_parser("random", help="write a seeded random state document")
    p_rnd.add_argument("--rank", type=int, required=True)
    p_rnd.add_argument("--seed", type=int, required=True)
    p_rnd.add_argument("-o", "--output", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "random":
            _write_output(_run_random(args.rank, args.seed), args.output)
            return 0
        tol = _resolve_tol(getattr(args, "tol", None))
        if args.command == "sigma":
            text, ok = _run_sigma(args.b, args.c, args.d, tol)
            _write_output(text, args.output)
            return 0 if ok else 4
        if getattr(args, "batch", None):
            extra = {}
            if args.command == "ellipsoid":
                extra = {"side": args.side, "samples": args.samples}
            return _run_batch(args.command, args.batch, tol, extra)
        if args.command == "classify":
            text = _run_classify(args.input, tol)
        elif args.command == "canonicalize":
            text = _run_canonicalize(args.input, tol)
        elif args.command == "ellipsoid":
            text = _run_ellipsoid(args.input, tol, args.side, args.samples, args.csv)
        else:
            text, ok = _run_verify(args.input, tol)
            _write_output(text, args.output)
            return 0 if ok else 4
        _write_output(text, args.output)
        return 0
    except LorentzSvdError as exc:
        error = {
            "error": type(exc).__name__,
            "message": str(exc),
            "exitCode": exc.exit_code,
        }
        sys.stderr.write(dumps(error))
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
