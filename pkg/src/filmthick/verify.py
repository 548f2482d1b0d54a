"""Numerical checks of the maximum-modulus principle and the interior H1 estimate.

Homogeneous solutions ``d`` (zero load, prescribed boundary trace) are
manufactured with :func:`homogeneous_solution`; the checks then compare
interior against boundary quantities.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .assembly import assemble_homogeneous, element_gradients
from .domain import DomainSpec
from .exact1d import eval_solution, gap_constant, reference_film_solution
from .mesh import Mesh
from .solver import DEFAULT_TOL, Field, solve_or_raise


@dataclass(frozen=True)
class CutoffProfile:
    """C^{1,1} cutoff: 1 on the film, 0 beyond a margin ``l``, quadratic blends between."""

    f_l: float
    f_r: float
    l: float

    def __post_init__(self):
        if not self.l > 0:
            raise ValueError("cutoff margin must be positive")

    def __call__(self, y):
        return cutoff_eval(self, y)


def cutoff_eval(profile: CutoffProfile, y):
    """``(c(y), c''(y))``; on each side ``c = 2u^2/l^2`` then ``1 - 2(l-u)^2/l^2``."""
    y = np.asarray(y, dtype=float)
    l = profile.l
    # u: distance travelled into the blend zone from its outer edge
    u = np.where(y < profile.f_l, y - (profile.f_l - l), (profile.f_r + l) - y)
    curv = 4.0 / l**2
    c = np.ones_like(y)
    c2 = np.zeros_like(y)
    outside = u <= 0
    rising = (u > 0) & (u <= 0.5 * l)
    falling = (u > 0.5 * l) & (u < l)
    inside_film = (y >= profile.f_l) & (y <= profile.f_r)
    c[outside] = 0.0
    c[rising] = 2.0 * u[rising] ** 2 / l**2
    c2[rising] = curv
    c[falling] = 1.0 - 2.0 * (l - u[falling]) ** 2 / l**2
    c2[falling] = -curv
    c[inside_film] = 1.0
    c2[inside_film] = 0.0
    return c[()], c2[()]


@dataclass(frozen=True)
class PrincipleReport:
    interior_sup: float
    boundary_sup: float
    margin: float  # interior_sup - boundary_sup; negative means slack
    passed: bool
    signed_ok: bool | None = None  # scalar case: c_- <= d <= c_+ with c_- = min(0, min bnd)

    @property
    def relative_margin(self) -> float:
        return self.margin / self.boundary_sup if self.boundary_sup > 0 else self.margin


def _as_components(d) -> list[Field]:
    comps = [d] if isinstance(d, Field) else list(d)
    if not comps:
        raise ValueError("no field given")
    mesh = comps[0].mesh
    if any(f.mesh is not mesh for f in comps):
        raise ValueError("components live on different meshes")
    return comps


def check_max_modulus(d: Field | Sequence[Field], rel_tol: float = 1e-8,
                      abs_tol: float = 1e-12) -> PrincipleReport:
    """Compare ``sup |d|`` over interior nodes with the boundary sup.

    For a vector field the pointwise Euclidean norm is used.  The scalar case
    also checks the signed bounds ``min(0, min_bnd d) <= d <= max(0, max_bnd d)``.
    """
    comps = _as_components(d)
    mesh = comps[0].mesh
    bnd = mesh.dirichlet_mask
    vals = np.stack([f.values for f in comps])
    norm = np.sqrt(np.sum(vals**2, axis=0))
    interior_sup = float(norm[~bnd].max()) if np.any(~bnd) else 0.0
    boundary_sup = float(norm[bnd].max())
    passed = interior_sup <= boundary_sup * (1 + rel_tol) + abs_tol
    signed_ok = None
    if len(comps) == 1:
        v = vals[0]
        c_plus = max(0.0, float(v[bnd].max()))
        c_minus = min(0.0, float(v[bnd].min()))
        slack = rel_tol * boundary_sup + abs_tol
        signed_ok = bool(v[~bnd].max() <= c_plus + slack and v[~bnd].min() >= c_minus - slack)
    return PrincipleReport(interior_sup, boundary_sup, interior_sup - boundary_sup, bool(passed), signed_ok)


def interior_margin(spec: DomainSpec) -> float:
    """``min(min b_r - f_r, f_l - max b_l)``, the largest admissible cutoff margin."""
    return spec.constants.m


@dataclass(frozen=True)
class H1Report:
    lhs: float  # int_film |grad d|^2
    rhs: float  # (2 / l^2) int_void |d|^2
    passed: bool
    slack: float  # rhs - lhs


def _void_mass_energy(mesh: Mesh, comps: list[Field]) -> float:
    area, _ = element_gradients(mesh)
    void = ~mesh.film
    local = np.zeros((mesh.n_triangles,))
    for f in comps:
        v = f.values[mesh.triangles[void]]
        # exact integral of a squared linear function: area/12 * (sum v^2 + (sum v)^2)
        local[void] += area[void] / 12.0 * (np.sum(v**2, axis=1) + np.sum(v, axis=1) ** 2)
    return float(np.sum(local))


def film_gradient_energy(comps: list[Field]) -> float:
    mesh = comps[0].mesh
    area, grads = element_gradients(mesh)
    total = 0.0
    for f in comps:
        g = np.einsum("ki,kid->kd", f.values[mesh.triangles], grads)
        total += float(np.sum(area[mesh.film] * np.sum(g[mesh.film] ** 2, axis=1)))
    return total


def film_l2_energy(comps: list[Field]) -> float:
    mesh = comps[0].mesh
    area, _ = element_gradients(mesh)
    total = 0.0
    for f in comps:
        v = f.values[mesh.triangles[mesh.film]]
        total += float(np.sum(area[mesh.film] / 12.0 * (np.sum(v**2, axis=1) + np.sum(v, axis=1) ** 2)))
    return total


def check_interior_h1(d: Field | Sequence[Field], spec: DomainSpec | None = None,
                      tol: float = 1e-6) -> H1Report:
    """``int_film |grad d|^2 <= (2 / l^2) int_void |d|^2`` with ``l = interior_margin``."""
    comps = _as_components(d)
    mesh = comps[0].mesh
    spec = spec or mesh.spec
    l = interior_margin(spec)
    if not l > 0:
        raise ValueError("film touches the inner slab; no admissible cutoff margin")
    lhs = film_gradient_energy(comps)
    rhs = 2.0 / l**2 * _void_mass_energy(mesh, comps)
    return H1Report(lhs, rhs, bool(lhs <= rhs * (1 + tol)), rhs - lhs)


# --- manufacturing homogeneous solutions ---------------------------------

def homogeneous_solution(mesh: Mesh, a: float, trace, tol: float = DEFAULT_TOL,
                         lumped: bool = False, component: str = "d") -> Field:
    system = assemble_homogeneous(mesh, a, trace, lumped=lumped, component=component)
    field, _ = solve_or_raise(system, tol)
    return field


def random_trace(mesh: Mesh, rng: np.random.Generator, low: float = -1.0, high: float = 1.0) -> np.ndarray:
    """Uniform random values on the Dirichlet nodes (node order)."""
    return rng.uniform(low, high, size=int(mesh.dirichlet_mask.sum()))


def reference_values(mesh: Mesh, a: float) -> np.ndarray:
    """Flat-slab reference solution evaluated at every node."""
    return eval_solution(reference_film_solution(mesh.spec, a), mesh.nodes[:, 1])


def gap_trace(mesh: Mesh, a: float) -> np.ndarray:
    """Boundary trace of ``s - s_ref``: ``s`` vanishes there, so it is ``-s_ref``."""
    return -reference_values(mesh, a)[mesh.dirichlet_mask]


def gap_solution(mesh: Mesh, a: float, tol: float = DEFAULT_TOL) -> Field:
    """Discrete homogeneous solution carrying the boundary gap ``s - s_ref``."""
    return homogeneous_solution(mesh, a, gap_trace(mesh, a), tol, component="gap")


@dataclass(frozen=True)
class GapReport:
    a: float
    C_a: float | None  # None when R <= 0
    boundary_sup: float
    interior_sup: float
    passed: bool | None


def check_gap(mesh: Mesh, a: float, rel_tol: float = 1e-2, tol: float = DEFAULT_TOL) -> GapReport:
    """Interior sup of the manufactured gap against ``C_a`` (only meaningful when R > 0)."""
    d = gap_solution(mesh, a, tol)
    rep = check_max_modulus(d)
    R = mesh.spec.constants.R
    C_a = gap_constant(mesh.spec, a) if R > 0 else None
    passed = None if C_a is None else bool(rep.interior_sup <= C_a * (1 + rel_tol))
    return GapReport(a, C_a, rep.boundary_sup, rep.interior_sup, passed)


def gap_readings(d: Field, spec: DomainSpec, a: float) -> dict:
    """Both readings of the film estimate that follows the H1 lemma.

    Gradient reading: ``int_film |grad d|^2`` vs ``(2/m^2) int_void d^2`` and vs
    ``(4/m) C_a^2``; value reading: ``int_film d^2`` vs the same two right sides.
    """
    comps = [d]
    m = interior_margin(spec)
    C_a = gap_constant(spec, a)
    grad = film_gradient_energy(comps)
    val = film_l2_energy(comps)
    lemma_rhs = 2.0 / m**2 * _void_mass_energy(d.mesh, comps)
    stated_rhs = 4.0 / m * C_a**2
    return {
        "film_grad_sq": grad,
        "film_l2_sq": val,
        "lemma_rhs": lemma_rhs,
        "stated_rhs": stated_rhs,
        "grad_le_lemma": grad <= lemma_rhs,
        "grad_le_stated": grad <= stated_rhs,
        "l2_le_lemma": val <= lemma_rhs,
        "l2_le_stated": val <= stated_rhs,
    }


def fem_reference_gap(sy: Field, a: float) -> float:
    """``sup |s_h - s_ref|`` over all nodes (FEM error plus the true gap)."""
    return float(np.abs(sy.values - reference_values(sy.mesh, a)).max())

