"""Fixed-seed invariant battery; each check yields one JSON-lines record.

Every record has ``case``, ``lhs``, ``rhs``, ``margin = lhs - rhs`` and
``passed`` (``lhs <= rhs``).  Records with ``gated = false`` are reported but
do not affect the exit status.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .assembly import assemble
from .domain import BoundaryProfile, DomainSpec, film_preset, flat_box
from .exact1d import (Interval1DProblem, eval_solution, one_sided_derivatives, solve_exact,
                      thickness_bound_1d)
from .mesh import build_mesh
from .solver import DEFAULT_TOL, solve
from .thickness import band_fraction, thickness_field
from .verify import (CutoffProfile, check_gap, check_interior_h1, check_max_modulus, cutoff_eval,
                     gap_readings, gap_solution, homogeneous_solution, interior_margin, random_trace,
                     reference_values)

# below this m / sqrt(a) the 1D envelope's tanh estimate is not valid
ENVELOPE_REGIME = 0.5 * math.log(2.0)


@dataclass
class CheckResult:
    case: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    gated: bool = True
    note: str = ""


def _le(case, lhs, rhs, gated=True, note=""):
    lhs, rhs = float(lhs), float(rhs)
    return CheckResult(case, lhs, rhs, lhs - rhs, bool(lhs <= rhs), gated, note)


def random_interval_problems(rng: np.random.Generator, n: int = 100):
    """Random geometries: b_l in [-1, 1], gaps and thickness in [0.05, 2]."""
    out = []
    for _ in range(n):
        b_l = rng.uniform(-1, 1)
        g_l, T, g_r = rng.uniform(0.05, 2.0, size=3)
        out.append((b_l, b_l + g_l, b_l + g_l + T, b_l + g_l + T + g_r))
    return out


def exact1d_checks(rng):
    geoms = random_interval_problems(rng)
    flux, env_ok, env_all, lower, resid = 0.0, -np.inf, 0, np.inf, 0.0
    a_sweep = np.logspace(-8, 0, 20)
    for b_l, f_l, f_r, b_r in geoms:
        for a in a_sweep:
            p = Interval1DProblem(b_l, b_r, f_l, f_r, a)
            sol = solve_exact(p)
            dl, dr = one_sided_derivatives(sol)
            flux = max(flux, abs(a * sol.slope - a * dl - 1.0), abs(a * sol.slope - a * dr - 1.0))
            _, upper = thickness_bound_1d(p)
            lower = min(lower, sol.excess)
            over = sol.excess - upper
            if p.m / np.sqrt(a) >= ENVELOPE_REGIME:
                env_ok = max(env_ok, over)
            env_all += int(over > 0)
        p = Interval1DProblem(b_l, b_r, f_l, f_r, 1e-3)
        sol = solve_exact(p)
        ys = np.concatenate([np.linspace(b_l, f_l, 1000, endpoint=False), np.linspace(f_r, b_r, 1000)[1:]])
        s = eval_solution(sol, ys)
        s2 = eval_solution(sol, ys, derivative=2)
        resid = max(resid, np.abs(-p.a * s2 + s).max() / np.abs(s).max())
    return [
        _le("exact1d.flux_identity", flux, 1e-10),
        _le("exact1d.envelope_lower", -lower, 0.0),
        _le("exact1d.envelope_upper_valid_regime", env_ok, 0.0,
            note=f"cases with m/sqrt(a) >= {ENVELOPE_REGIME:.4f}"),
        _le("exact1d.envelope_upper_violations_all", env_all, 0, gated=False,
            note="count over the full sweep; the envelope fails for m/sqrt(a) below ~0.35"),
        _le("exact1d.void_residual", resid, 1e-8),
    ]


def assembly_checks(rng, tol):
    spec = film_preset(1)
    mesh = build_mesh(spec, 16, 64)
    a = 1e-2
    sx, sy = assemble(mesh, a)
    A = sx.matrix
    asym = abs(A - A.T).max()
    vs = rng.standard_normal((10, A.shape[0]))
    rayleigh = min(float(v @ (A @ v) / (v @ v)) for v in vs)
    rhs_y = np.zeros(mesh.n_nodes)
    rhs_y[sy.free] = sy.rhs
    j = np.tile(np.arange(mesh.ny + 1), mesh.nx)
    n_lo, n_film, _ = mesh.counts
    lvl = abs(rhs_y[j == n_lo].sum() + 1.0) + abs(rhs_y[j == n_lo + n_film].sum() - 1.0)
    field, report = solve(sy, tol)
    uf = field.values[sy.free]
    ub = float(uf @ sy.rhs)
    energy = abs(float(uf @ (A @ uf)) - ub) / abs(ub) if report.converged and ub > 0 else np.inf
    return [
        _le("assembly.symmetry", asym, 0.0),
        _le("assembly.x_load_sum", abs(sx.rhs.sum()), 1e-12),
        _le("assembly.y_load_levels", lvl, 1e-12),
        _le("assembly.positive_definite", -rayleigh, 0.0),
        _le("solver.energy_identity", energy, 1e-8),
    ]


def fem_checks(tol):
    spec = flat_box()
    a = 1e-4
    errs = []
    for ny in (256, 512, 1024):
        mesh = build_mesh(spec, 4, ny)
        _, sy = assemble(mesh, a)
        f, _ = solve(sy, tol)
        errs.append(np.abs(f.values - reference_values(mesh, a)).max())
    ratio = min(errs[0] / errs[1], errs[1] / errs[2])
    return [_le("fem.quasi1d_refinement_ratio", 3.5, ratio, note="lhs: required ratio, rhs: observed minimum")]


def thickness_checks(tol):
    out = []
    a = 1e-4
    mesh = build_mesh(film_preset(0), 128, 256, 10 * np.sqrt(a))
    sx_sys, sy_sys = assemble(mesh, a)
    sx, _ = solve(sx_sys, tol)
    sy, _ = solve(sy_sys, tol)
    tf = thickness_field(sx, sy, a)
    spread = (np.nanmax(tf.h) - np.nanmin(tf.h)) / np.nanmean(tf.h)
    out.append(_le("thickness.flat_spread", spread, 0.01))
    for k in (0, 1, 2):
        mesh = build_mesh(film_preset(k), 32, 600, 10 * np.sqrt(a))
        sx_sys, sy_sys = assemble(mesh, a)
        sx, _ = solve(sx_sys, tol)
        sy, _ = solve(sy_sys, tol)
        tf = thickness_field(sx, sy, a)
        out.append(_le(f"thickness.band_fraction_k{k}", 0.95, band_fraction(tf),
                       note="lhs: required fraction, rhs: observed"))
        out.append(_le(f"thickness.sx_vanishes_k{k}", np.abs(sx.values).max(), 10 * tol))
    return out


def wavy_lower_spec() -> DomainSpec:
    """Wavy bottom with R > 0 and a boundary gap that does not underflow at a = 1e-2."""
    return DomainSpec(BoundaryProfile.sin2(0.1, 0.1), BoundaryProfile.constant(1.5), 0.5, 0.99)


def verify_checks(rng, tol):
    out = []
    for name, spec, a in (("flat", flat_box(), 1e-2), ("k1", film_preset(1), 1e-2)):
        mesh = build_mesh(spec, 32, 160)
        worst_s = worst_v = -np.inf
        worst_h1 = 0.0
        signed = True
        for _ in range(20):
            d1 = homogeneous_solution(mesh, a, random_trace(mesh, rng), tol)
            d2 = homogeneous_solution(mesh, a, random_trace(mesh, rng), tol)
            r = check_max_modulus(d1)
            signed &= bool(r.signed_ok)
            worst_s = max(worst_s, r.relative_margin)
            worst_v = max(worst_v, check_max_modulus([d1, d2]).relative_margin)
            h1 = check_interior_h1([d1, d2])
            worst_h1 = max(worst_h1, h1.lhs / h1.rhs if h1.rhs > 0 else 0.0)
        out.append(_le(f"verify.max_modulus_scalar_{name}", worst_s, 1e-2))
        out.append(_le(f"verify.max_modulus_signed_{name}", 0 if signed else 1, 0))
        out.append(_le(f"verify.max_modulus_vector_{name}", worst_v, 1e-2))
        out.append(_le(f"verify.interior_h1_{name}", worst_h1, 1.0, note="lhs/rhs ratio"))
    for name, spec, a, layer in (("k0", film_preset(0), 1e-4, 10.0), ("wavy_lower", wavy_lower_spec(), 1e-2, None)):
        mesh = build_mesh(spec, 32, 300, None if layer is None else layer * np.sqrt(a))
        g = check_gap(mesh, a, tol=tol)
        out.append(_le(f"verify.gap_{name}", g.interior_sup, g.C_a * 1.01))
        rd = gap_readings(gap_solution(mesh, a, tol), spec, a)
        for lhs_key, rhs_key in (("film_grad_sq", "lemma_rhs"), ("film_grad_sq", "stated_rhs"),
                                 ("film_l2_sq", "lemma_rhs"), ("film_l2_sq", "stated_rhs")):
            out.append(_le(f"verify.reading_{lhs_key}_vs_{rhs_key}_{name}", rd[lhs_key], rd[rhs_key],
                           gated=False))
    prof = CutoffProfile(0.5, 0.99, interior_margin(film_preset(0)))
    ys = np.linspace(prof.f_l - 1.5 * prof.l, prof.f_r + 1.5 * prof.l, 10_000)
    c, c2 = cutoff_eval(prof, ys)
    out.append(_le("verify.cutoff_curvature", np.abs(c2).max(), 4.0 / prof.l**2))
    out.append(_le("verify.cutoff_range", max(-c.min(), c.max() - 1.0), 0.0))
    return out


def run_battery(seed: int = 0, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    results += exact1d_checks(rng)
    results += assembly_checks(rng, tol)
    results += fem_checks(tol)
    results += thickness_checks(tol)
    results += verify_checks(rng, tol)
    return results


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def write_jsonl(results: list[CheckResult], path) -> None:
    with Path(path).open("w") as fh:
        for r in results:
            fh.write(json.dumps({k: _json_safe(v) for k, v in asdict(r).items()}) + "\n")


def failed(results: list[CheckResult]) -> list[CheckResult]:
    return [r for r in results if r.gated and not r.passed]
