"""Preset runs and a -> 0 sweeps, with their file outputs."""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .assembly import assemble
from .config import ExperimentConfig
from .exact1d import reference_film_solution
from .mesh import Mesh, build_mesh
from .raster import write_heatmap
from .solver import DEFAULT_TOL, Field, SolveReport, solve_or_raise
from .thickness import FilmErrorReport, ThicknessField, film_error, thickness_field, write_thickness_csv
from .verify import reference_values

log = logging.getLogger(__name__)

SUMMARY_HEADER = ["preset", "a", "nx", "ny", "R", "l2_inv_error", "theorem_bound", "band_fraction", "iterations"]
CONVERGENCE_HEADER = ["a", "l2_inv_error", "theorem_bound", "continuum_error", "fem_sup_error", "status"]
FLOOR_FACTOR = 4.0


def a_tag(a: float) -> str:
    return f"{a:g}"


def _num(v) -> str:
    return "n/a" if v is None else f"{v:.12g}"


@dataclass(frozen=True, eq=False)
class CaseResult:
    a: float
    mesh: Mesh
    sx: Field
    sy: Field
    reports: tuple[SolveReport, SolveReport]
    thickness: ThicknessField
    error: FilmErrorReport

    @property
    def iterations(self) -> int:
        return sum(r.iterations for r in self.reports)


def solve_case(cfg: ExperimentConfig, a: float, quick: bool = False, tol: float = DEFAULT_TOL) -> CaseResult:
    """Mesh, assemble, solve both components and post-process one value of a."""
    res = cfg.resolution(quick)
    mesh = build_mesh(cfg.spec, res.nx, res.ny, res.layer_width(a))
    sys_x, sys_y = assemble(mesh, a)
    sx, rx = solve_or_raise(sys_x, tol)
    sy, ry = solve_or_raise(sys_y, tol)
    tf = thickness_field(sx, sy, a)
    return CaseResult(a, mesh, sx, sy, (rx, ry), tf, film_error(tf, cfg.spec, a, cfg.band))


def run_experiment(cfg: ExperimentConfig, out: Path | str | None = None, quick: bool = False,
                   tol: float = DEFAULT_TOL) -> list[CaseResult]:
    """One case per a: thickness CSV, heatmap and a summary row each."""
    out = Path(out or cfg.outputs)
    out.mkdir(parents=True, exist_ok=True)
    results = []
    for a in cfg.a_list:
        r = solve_case(cfg, a, quick, tol)
        write_thickness_csv(r.thickness, out / f"thickness_{a_tag(a)}.csv")
        write_heatmap(r.mesh, r.thickness, out / f"heatmap_{a_tag(a)}.ppm", cfg.band)
        log.info("a=%g: l2_inv_error=%.4g band_fraction=%.4f", a, r.error.l2_inv_error, r.error.band_fraction)
        results.append(r)
    with (out / "summary.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_HEADER)
        for r in results:
            w.writerow([cfg.preset, _num(r.a), r.mesh.nx, r.mesh.ny, _num(cfg.spec.constants.R),
                        _num(r.error.l2_inv_error), _num(r.error.theorem_bound),
                        _num(r.error.band_fraction), r.iterations])
    return results


@dataclass(frozen=True)
class ConvergenceRow:
    a: float
    l2_inv_error: float
    theorem_bound: float | None
    continuum_error: float  # the same norm for the exact flat-slab solution
    fem_sup_error: float  # sup |s^y - s_ref| over nodes
    under_resolved: bool


def is_flat(cfg: ExperimentConfig) -> bool:
    c = cfg.spec.constants
    return c.b_l_min == c.b_l_max and c.b_r_min == c.b_r_max


def monotone_violations(rows: list[ConvergenceRow]) -> list[tuple[float, float]]:
    """Consecutive resolved pairs (a_prev, a) where the error did not decrease."""
    resolved = [r for r in rows if not r.under_resolved]
    return [(p.a, q.a) for p, q in zip(resolved, resolved[1:]) if not q.l2_inv_error < p.l2_inv_error]


def run_convergence(cfg: ExperimentConfig, out: Path | str | None = None, quick: bool = False,
                    tol: float = DEFAULT_TOL) -> list[ConvergenceRow]:
    """Sweep a (must be decreasing) and tabulate errors; writes convergence.csv."""
    if list(cfg.a_list) != sorted(cfg.a_list, reverse=True):
        raise ValueError("a_list must be decreasing for a sweep")
    out = Path(out or cfg.outputs)
    out.mkdir(parents=True, exist_ok=True)
    T = cfg.spec.thickness
    rows = []
    for a in cfg.a_list:
        r = solve_case(cfg, a, quick, tol)
        ref = reference_film_solution(cfg.spec, a)
        continuum = abs(1.0 / ref.h - 1.0 / T) * np.sqrt(T)
        fem_sup = float(np.abs(r.sy.values - reference_values(r.mesh, a)).max())
        floor = FLOOR_FACTOR * r.mesh.interface_spacing()
        rows.append(ConvergenceRow(a, r.error.l2_inv_error, r.error.theorem_bound, float(continuum),
                                   fem_sup, bool(np.sqrt(a) < floor)))
    with (out / "convergence.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CONVERGENCE_HEADER)
        for row in rows:
            w.writerow([_num(row.a), _num(row.l2_inv_error), _num(row.theorem_bound), _num(row.continuum_error),
                        _num(row.fem_sup_error), "under-resolved" if row.under_resolved else "ok"])
    return rows
