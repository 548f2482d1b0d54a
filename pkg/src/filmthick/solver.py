"""Jacobi-preconditioned conjugate gradients."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .assembly import SparseSystem
from .mesh import Mesh

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
RESIDUAL_REFRESH = 50


@dataclass(frozen=True)
class SolveReport:
    iterations: int
    relative_residual: float
    converged: bool


@dataclass(frozen=True, eq=False)
class Field:
    """Nodal values on a mesh (one scalar component)."""

    mesh: Mesh
    values: np.ndarray
    component: str = "s"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.mesh.n_nodes,):
            raise ValueError(f"field needs {self.mesh.n_nodes} values, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("field values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


class SolverError(RuntimeError):
    def __init__(self, report: SolveReport, component: str = ""):
        super().__init__(
            f"CG did not converge for component {component!r}: "
            f"{report.iterations} iterations, relative residual {report.relative_residual:.3e}"
        )
        self.report = report


def pcg(A, b, tol=DEFAULT_TOL, max_iter=None):
    """Solve ``A x = b`` from a zero start; stop on ``||b - A x|| <= tol ||b||``.

    The recurred residual is replaced by the true one every
    ``RESIDUAL_REFRESH`` iterations and before declaring convergence.
    """
    b = np.asarray(b, dtype=float)
    n = len(b)
    if max_iter is None:
        max_iter = 20 * max(n, 1)
    x = np.zeros(n)
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return x, SolveReport(0, 0.0, True)
    dinv = 1.0 / A.diagonal()
    r = b.copy()
    z = dinv * r
    p = z.copy()
    rz = r @ z
    res = 1.0
    for it in range(1, max_iter + 1):
        Ap = A @ p
        pAp = p @ Ap
        if not pAp > 0:
            log.warning("CG breakdown: p^T A p = %.3e at iteration %d", pAp, it)
            break
        step = rz / pAp
        x += step * p
        if it % RESIDUAL_REFRESH == 0:
            r = b - A @ x
        else:
            r -= step * Ap
        res = np.linalg.norm(r) / bnorm
        if res <= tol:
            r = b - A @ x
            res = np.linalg.norm(r) / bnorm
            if res <= tol:
                return x, SolveReport(it, float(res), True)
        z = dinv * r
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    else:
        it = max_iter
    res = np.linalg.norm(b - A @ x) / bnorm
    return x, SolveReport(it, float(res), bool(res <= tol))


def solve(system: SparseSystem, tol: float = DEFAULT_TOL, max_iter: int | None = None):
    """Solve a reduced system and return the full nodal :class:`Field`.

    Non-convergence is reported through ``SolveReport.converged``.
    """
    if not 0 < tol < 1:
        raise ValueError("tol must lie in (0, 1)")
    u, report = pcg(system.matrix, system.rhs, tol, max_iter)
    if not report.converged:
        log.warning("component %s: CG not converged (%d its, res %.3e)",
                    system.component, report.iterations, report.relative_residual)
    return Field(system.mesh, system.expand(u), system.component), report


def solve_or_raise(system: SparseSystem, tol: float = DEFAULT_TOL, max_iter: int | None = None):
    field, report = solve(system, tol, max_iter)
    if not report.converged:
        raise SolverError(report, system.component)
    return field, report
