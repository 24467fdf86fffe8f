"""Command-line front end.

Subcommands:

* ``run`` -- run a reproduction experiment from a JSON config and write a
  time series (CSV or JSON).
* ``reduce`` -- apply any reduction algorithm to a density-matrix file.
* ``decompose`` -- emit a hidden-ensemble decomposition plus verification.
* ``validate`` -- validate a density-matrix file.

All frequencies/energies are dimensionless (hbar = k_B = 1). Exit codes:
0 success, 2 config/validation error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import ensembles, matrixcore as mc, models, reduction
from .errors import CorredError, DegenerateOverlap, TieUndefined, ValidationError
from .matrixcore import BipartiteSystem
from .states import DensityMatrix

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

log = logging.getLogger("corred")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _setup_logging() -> None:
    level = os.environ.get("CORRED_LOG", "error").upper()
    logging.basicConfig(level=getattr(logging, level, logging.ERROR))


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SystemExit(_fail(EXIT_IO, f"cannot read {path}: {exc}"))
    except json.JSONDecodeError as exc:
        raise SystemExit(_fail(EXIT_CONFIG, f"invalid JSON in {path}: {exc}"))


def _fail(code: int, msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _load_density(path: str) -> DensityMatrix:
    obj = _load_json(path)
    return DensityMatrix.from_json(obj)


# ---------------------------------------------------------------- run


def _time_grid(cfg: dict, tie_times: list[float], include_ties: bool) -> np.ndarray:
    grid = cfg.get("time_grid", {"start": 0.0, "stop": 0.0, "steps": 1})
    start, stop, steps = float(grid["start"]), float(grid["stop"]), int(grid["steps"])
    if steps < 1 or stop < start:
        raise ValidationError(f"bad time grid {grid}")
    ts = np.linspace(start, stop, steps)
    if include_ties or not tie_times or steps < 2:
        return ts
    # Nudge samples landing exactly on a tie point; the tie behavior is a
    # measure-zero special case (opt in with --include-ties).
    delta = (ts[1] - ts[0]) * 1e-3 if steps > 1 else 1e-6
    for i, t in enumerate(ts):
        if any(abs(t - tie) < 1e-9 for tie in tie_times):
            ts[i] = t + delta
    return ts


def _state_factory(cfg: dict):
    """Returns (system, rho_of_t, tie_times) for the configured experiment."""
    experiment = cfg.get("experiment")
    params = cfg.get("params", {})
    if experiment == "epr":
        from .states import epr_state

        rho = epr_state()
        return BipartiteSystem(2, 2), lambda t: rho, []
    if experiment == "spin_pair":
        p = models.SpinPairParams(
            omega=float(params.get("omega", 1.0)),
            j_coupling=float(params.get("j", 0.0)),
            c_coupling=float(params.get("c", 0.0)),
            d_coupling=float(params.get("d", 0.0)),
        )
        phi = float(params.get("phi", 0.0))
        ties = []
        c = p.c_coupling
        if c != 0 and abs(math.cos(2 * phi)) > 1e-12:
            stop = float(cfg.get("time_grid", {}).get("stop", 0.0))
            step = math.pi / (4 * abs(c))
            ties = [(2 * k + 1) * step for k in range(int(stop / step) + 1)]
        return (
            models.SPIN_PAIR_SYSTEM,
            lambda t: models.spin_pair_density(p, phi, t),
            ties,
        )
    if experiment == "jcm_vacuum":
        p = models.JcmParams(
            omega=float(params.get("omega", 1.0)),
            rabi=float(params.get("rabi", 1.0)),
            n_max=int(params.get("n_max", 16)),
        )
        stop = float(cfg.get("time_grid", {}).get("stop", 0.0))
        return (
            models.jcm_system(p),
            lambda t: models.jcm_vacuum_density(p, t),
            models.jcm_tie_times(p, stop),
        )
    if experiment == "custom":
        rho = _load_density(params["state"])
        na, nb = params["dims"]
        return BipartiteSystem(int(na), int(nb)), lambda t: rho, []
    raise ValidationError(f"unknown experiment {experiment!r}")


def _reduce_one(rho: DensityMatrix, sys_: BipartiteSystem, rcfg: dict):
    """Apply the configured reduction, returning a ReductionResult-like row."""
    method = rcfg.get("method", "neumann")
    if method == "neumann":
        res = reduction.neumann_reduce(rho, sys_)
        return res, "-", 0
    if method == "projective":
        res = reduction.projective_reduce(rho, sys_, int(rcfg["level"]))
        return res, "-", 0
    if method == "conditioned":
        sigma = _load_density(rcfg["state"])
        given = rcfg.get("given_side", "beta")
        red = reduction.conditioned_reduce(rho, sys_, sigma, given_side=given)
        if given == "beta":
            res = reduction.ReductionResult(red, None, "conditioned", 0.0)
        else:
            res = reduction.ReductionResult(
                reduction.neumann_reduce(rho, sys_).rho_alpha, red, "conditioned", 0.0
            )
        return res, "-", 0
    if method == "correlated":
        seed = rcfg.get("seed", "neumann")
        if isinstance(seed, str) and seed.startswith("file:"):
            seeded = _load_density(seed[5:])
            base = reduction.neumann_reduce(rho, sys_)
            seed = reduction.ReductionResult(seeded, base.rho_beta, "seed", 0.0)
        report = reduction.correlated_reduce(
            rho,
            sys_,
            seed=seed,
            tol=float(rcfg.get("tol", 1e-12)),
            max_iter=int(rcfg.get("max_iter", 10_000)),
            scheme=rcfg.get("scheme", "gauss-seidel"),
        )
        return report.final, report.verdict, report.iterations
    raise ValidationError(f"unknown reduction method {method!r}")


def _max_coherence(m: np.ndarray) -> float:
    off = m - np.diag(np.diag(m))
    return float(np.max(np.abs(off))) if m.shape[0] > 1 else 0.0


def cmd_run(args) -> int:
    cfg = _load_json(args.config)
    try:
        sys_, rho_of_t, ties = _state_factory(cfg)
        ts = _time_grid(cfg, ties, args.include_ties)
    except (CorredError, KeyError) as exc:
        return _fail(EXIT_CONFIG, str(exc))

    rcfg = cfg.get("reduction", {"method": "neumann"})
    rows = []
    failures = 0
    for t in ts:
        rho = rho_of_t(float(t))
        try:
            res, verdict, iters = _reduce_one(rho, sys_, rcfg)
        except DegenerateOverlap as exc:
            log.warning("t=%g: %s", t, exc)
            failures += 1
            continue
        ra = res.rho_alpha.matrix
        row = {
            "t": float(t),
            "pop_alpha": [float(np.real(ra[i, i])) for i in range(sys_.dim_alpha)],
            "coh_alpha": _max_coherence(ra),
            "reconstruction_error": res.reconstruction_error,
            "verdict": verdict,
            "iterations": iters,
        }
        if res.rho_beta is not None:
            rb = res.rho_beta.matrix
            row["pop_beta"] = [float(np.real(rb[i, i])) for i in range(sys_.dim_beta)]
            row["coh_beta"] = _max_coherence(rb)
        rows.append(row)

    if not rows:
        return _fail(EXIT_NUMERICAL, "degenerate overlap at every time point")

    out_cfg = cfg.get("output", {})
    fmt = args.format or out_cfg.get("format", "csv")
    path = args.out or out_cfg.get("path")
    try:
        _write_series(rows, cfg, fmt, path)
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    return 0


def _write_series(rows: list[dict], cfg: dict, fmt: str, path: str | None) -> None:
    out = open(path, "w") if path else sys.stdout
    try:
        if fmt == "json":
            json.dump({"config": cfg, "rows": rows}, out, indent=2)
            out.write("\n")
            return
        na = len(rows[0]["pop_alpha"])
        nb = len(rows[0].get("pop_beta", []))
        header = (
            ["t"]
            + [f"pop_alpha_{i}" for i in range(na)]
            + [f"pop_beta_{i}" for i in range(nb)]
            + ["coh_alpha"]
            + (["coh_beta"] if nb else [])
            + ["reconstruction_error", "verdict", "iterations"]
        )
        out.write(f"# config: {json.dumps(cfg, sort_keys=True)}\n")
        out.write(",".join(header) + "\n")
        for r in rows:
            cells = [_fmt(r["t"])]
            cells += [_fmt(x) for x in r["pop_alpha"]]
            cells += [_fmt(x) for x in r.get("pop_beta", [])]
            cells.append(_fmt(r["coh_alpha"]))
            if nb:
                cells.append(_fmt(r["coh_beta"]))
            cells += [_fmt(r["reconstruction_error"]), str(r["verdict"]), str(r["iterations"])]
            out.write(",".join(cells) + "\n")
    finally:
        if path:
            out.close()


# ---------------------------------------------------------------- reduce


def cmd_reduce(args) -> int:
    try:
        rho = _load_density(args.state)
    except ValidationError as exc:
        return _fail(EXIT_CONFIG, str(exc))
    sys_ = BipartiteSystem(args.dims[0], args.dims[1])
    rcfg = {
        "method": args.method,
        "level": args.level,
        "state": args.sigma,
        "given_side": args.given_side,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "seed": args.seed,
        "scheme": args.scheme,
    }
    try:
        if args.method == "correlated":
            report = reduction.correlated_reduce(
                rho, sys_, seed=args.seed if not args.seed.startswith("file:")
                else _seed_from_file(rho, sys_, args.seed),
                tol=args.tol, max_iter=args.max_iter, scheme=args.scheme,
            )
            print(json.dumps(report.to_json(), indent=2))
        else:
            res, _, _ = _reduce_one(rho, sys_, rcfg)
            print(json.dumps(res.to_json(), indent=2))
    except DegenerateOverlap as exc:
        return _fail(EXIT_NUMERICAL, str(exc))
    except (CorredError, KeyError) as exc:
        return _fail(EXIT_CONFIG, str(exc))
    return 0


def _seed_from_file(rho, sys_, spec: str):
    seeded = _load_density(spec[5:])
    base = reduction.neumann_reduce(rho, sys_)
    return reduction.ReductionResult(seeded, base.rho_beta, "seed", 0.0)


# ---------------------------------------------------------------- decompose


def cmd_decompose(args) -> int:
    try:
        if args.kind == "epr":
            ens = ensembles.epr_decomposition(args.theta)
            from .states import epr_state

            target = epr_state()
        elif args.kind == "triplet":
            ens = ensembles.triplet_decomposition(args.theta)
            from .states import triplet_state

            target = triplet_state()
        elif args.kind == "spin_pair_initial":
            ens = ensembles.spin_pair_initial_decomposition(args.phi, args.theta)
            from .states import spin_pair_initial

            target = spin_pair_initial(args.phi)
        elif args.kind == "spin_pair_t":
            ens = ensembles.spin_pair_reduced_decomposition(
                args.phi, args.c, args.t, args.theta
            )
            p = models.SpinPairParams(omega=args.omega, c_coupling=args.c)
            target = models.spin_pair_density(p, args.phi, args.t)
        else:
            return _fail(EXIT_CONFIG, f"unknown decomposition kind {args.kind!r}")
    except TieUndefined as exc:
        return _fail(EXIT_NUMERICAL, str(exc))

    report = ensembles.verify_ensemble(ens, target, tol=args.tol)
    obj = ens.to_json()
    obj["verification"] = {
        "max_error": report.max_error,
        "diagonal_error": report.diagonal_error,
        "coherence_error": report.coherence_error,
        "matches": report.matches,
        "tolerance": report.tolerance,
    }
    print(json.dumps(obj, indent=2))
    if args.report_only or report.matches:
        return 0
    return _fail(EXIT_NUMERICAL, f"verification error {report.max_error:g} above {args.tol:g}")


# ---------------------------------------------------------------- validate


def cmd_validate(args) -> int:
    obj = _load_json(args.state)
    try:
        m = mc.matrix_from_json(obj)
        dm = DensityMatrix(m, validation=args.level)
    except (CorredError, KeyError) as exc:
        print(json.dumps({"valid": False, "reason": str(exc)}))
        return EXIT_CONFIG
    print(
        json.dumps(
            {
                "valid": True,
                "dim": dm.dim,
                "min_eigenvalue": dm.min_eigenvalue,
                "purity": dm.purity(),
            }
        )
    )
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corred",
        description="Reduction algorithms for bipartite quantum states "
        "(dimensionless units, hbar = k_B = 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a JSON config")
    p_run.add_argument("--config", required=True, help="experiment config path")
    p_run.add_argument("--out", help="output file (default stdout)")
    p_run.add_argument("--format", choices=["csv", "json"], help="override output format")
    p_run.add_argument(
        "--include-ties",
        action="store_true",
        help="do not nudge time samples off step-function tie points",
    )
    p_run.set_defaults(func=cmd_run)

    p_red = sub.add_parser("reduce", help="reduce a density-matrix file")
    p_red.add_argument("state", help="density matrix JSON file")
    p_red.add_argument("--dims", type=int, nargs=2, required=True, metavar=("NA", "NB"))
    p_red.add_argument(
        "--method",
        choices=["neumann", "projective", "conditioned", "correlated"],
        default="neumann",
    )
    p_red.add_argument("--level", type=int, default=0, help="projective level index")
    p_red.add_argument("--sigma", help="conditioning state file")
    p_red.add_argument("--given-side", choices=["alpha", "beta"], default="beta")
    p_red.add_argument("--tol", type=float, default=1e-12)
    p_red.add_argument("--max-iter", type=int, default=10_000)
    p_red.add_argument("--seed", default="neumann", help="'neumann' or file:<path>")
    p_red.add_argument("--scheme", choices=["gauss-seidel", "jacobi"], default="gauss-seidel")
    p_red.set_defaults(func=cmd_reduce)

    p_dec = sub.add_parser("decompose", help="hidden-ensemble decomposition")
    p_dec.add_argument(
        "kind", choices=["epr", "triplet", "spin_pair_initial", "spin_pair_t"]
    )
    p_dec.add_argument("--theta", type=float, default=0.0, help="hidden phase")
    p_dec.add_argument("--phi", type=float, default=0.0, help="initial mixing angle")
    p_dec.add_argument("--c", type=float, default=1.0, help="flip-flop coupling")
    p_dec.add_argument("--t", type=float, default=0.0, help="time")
    p_dec.add_argument("--omega", type=float, default=1.0, help="Zeeman frequency")
    p_dec.add_argument("--tol", type=float, default=1e-10)
    p_dec.add_argument(
        "--report-only",
        action="store_true",
        help="exit 0 even when the assembled ensemble misses the target",
    )
    p_dec.set_defaults(func=cmd_decompose)

    p_val = sub.add_parser("validate", help="validate a density-matrix file")
    p_val.add_argument("state")
    p_val.add_argument("--level", choices=["strict", "relaxed"], default="strict")
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))


if __name__ == "__main__":
    sys.exit(main())
