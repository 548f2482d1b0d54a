"""Command line entry point.

    filmthick run <config|preset> [--out DIR] [--quick]
    filmthick sweep <config|preset> [--out DIR] [--quick]
    filmthick check [--out DIR] [--seed N] [--cg-tol TOL]
    filmthick export-mesh <config|preset> [--out DIR] [--quick]

Exit codes: 0 success, 1 config error, 2 solver failure, 3 check failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import checks
from .assembly import assemble, write_matrix_market
from .config import ConfigError, load_config
from .experiment import a_tag, is_flat, monotone_violations, run_convergence, run_experiment
from .mesh import build_mesh, export_mesh
from .solver import DEFAULT_TOL, SolverError

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_CHECK = 0, 1, 2, 3

log = logging.getLogger("filmthick")


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    results = run_experiment(cfg, args.out, args.quick, args.cg_tol)
    for r in results:
        bound = "n/a" if r.error.theorem_bound is None else f"{r.error.theorem_bound:.4g}"
        print(f"a={r.a:g} l2_inv_error={r.error.l2_inv_error:.4g} theorem_bound={bound} "
              f"band_fraction={r.error.band_fraction:.4f} iterations={r.iterations}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    try:
        rows = run_convergence(cfg, args.out, args.quick, args.cg_tol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for r in rows:
        status = "under-resolved" if r.under_resolved else "ok"
        print(f"a={r.a:g} l2_inv_error={r.l2_inv_error:.4g} continuum={r.continuum_error:.4g} "
              f"fem_sup_error={r.fem_sup_error:.3g} {status}")
    bad = monotone_violations(rows) if is_flat(cfg) else []
    if bad:
        print(f"l2_inv_error not decreasing between a = {bad}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def _cmd_check(args) -> int:
    out = Path(args.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    results = checks.run_battery(args.seed, args.cg_tol)
    checks.write_jsonl(results, out / "checks.jsonl")
    for r in results:
        tag = "PASS" if r.passed else ("FAIL" if r.gated else "info")
        print(f"{tag:4s} {r.case}: lhs={r.lhs:.4g} rhs={r.rhs:.4g}")
    failed = checks.failed(results)
    if failed:
        print("failed checks: " + ", ".join(r.case for r in failed), file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def _cmd_export_mesh(args) -> int:
    cfg = load_config(args.config)
    out = Path(args.out or cfg.outputs)
    out.mkdir(parents=True, exist_ok=True)
    res = cfg.resolution(args.quick)
    for a in cfg.a_list:
        mesh = build_mesh(cfg.spec, res.nx, res.ny, res.layer_width(a))
        export_mesh(mesh, out / f"mesh_{a_tag(a)}.txt")
        if args.matrix:
            sx, _ = assemble(mesh, a)
            write_matrix_market(sx, out / f"matrix_{a_tag(a)}.mtx")
        print(f"a={a:g}: {mesh.n_nodes} nodes, {mesh.n_triangles} triangles")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="filmthick", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("config", help="config file or preset name (film-k0, film-k1, film-k2, flat-box)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--quick", action="store_true", help="coarse meshes")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cg-tol", type=float, default=DEFAULT_TOL)
        p.add_argument("-v", "--verbose", action="store_true")
        return p

    common(sub.add_parser("run", help="solve each a in the config")).set_defaults(func=_cmd_run)
    common(sub.add_parser("sweep", help="a -> 0 convergence table")).set_defaults(func=_cmd_sweep)
    common(sub.add_parser("check", help="invariant battery"), config=False).set_defaults(func=_cmd_check)
    p = common(sub.add_parser("export-mesh", help="write meshes (and optionally matrices)"))
    p.add_argument("--matrix", action="store_true", help="also write MatrixMarket matrices")
    p.set_defaults(func=_cmd_export_mesh)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
