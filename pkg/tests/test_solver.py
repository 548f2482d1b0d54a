import dataclasses

import numpy as np
import pytest
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from filmthick.assembly import assemble
from filmthick.domain import film_preset, flat_box
from filmthick.mesh import build_mesh
from filmthick.solver import Field, SolverError, pcg, solve, solve_or_raise


@pytest.fixture(scope="module")
def systems():
    return assemble(build_mesh(film_preset(1), 16, 96), 1e-3)


def test_zero_rhs_needs_no_iterations():
    x, rep = pcg(sp.identity(5, format="csr"), np.zeros(5))
    assert rep.iterations == 0 and rep.converged and np.all(x == 0)


def test_diagonal_system_one_iteration():
    d = np.arange(1.0, 11.0)
    x, rep = pcg(sp.diags(d).tocsr(), d**2)
    assert rep.iterations <= 1
    np.testing.assert_allclose(x, d, rtol=1e-14)


def test_matches_direct_solve(systems):
    _, sy = systems
    f, rep = solve(sy, 1e-12)
    ref = spsolve(sy.matrix.tocsc(), sy.rhs)
    assert rep.converged
    np.testing.assert_allclose(f.values[sy.free], ref, rtol=0, atol=1e-9 * np.abs(ref).max())
    assert rep.relative_residual == pytest.approx(
        np.linalg.norm(sy.rhs - sy.matrix @ f.values[sy.free]) / np.linalg.norm(sy.rhs), rel=1e-6)


def test_energy_identity(systems):
    _, sy = systems
    f, _ = solve(sy, 1e-12)
    u = f.values[sy.free]
    assert u @ (sy.matrix @ u) == pytest.approx(u @ sy.rhs, rel=1e-9)


def test_x_component_is_exactly_zero(systems):
    sx, _ = systems
    f, rep = solve(sx)
    assert rep.iterations == 0
    assert np.all(f.values == 0)


def test_not_converged_is_reported(systems):
    _, sy = systems
    _, rep = solve(sy, 1e-12, max_iter=3)
    assert not rep.converged and rep.iterations == 3
    with pytest.raises(SolverError):
        solve_or_raise(sy, 1e-12, max_iter=3)


def test_indefinite_matrix_fails(systems):
    _, sy = systems
    bad = dataclasses.replace(sy, matrix=(-sy.matrix).tocsr())
    with pytest.raises(SolverError):
        solve_or_raise(bad)


def test_tolerance_validation(systems):
    with pytest.raises(ValueError):
        solve(systems[1], tol=0.0)


def test_field_validation():
    m = build_mesh(flat_box(), 4, 8)
    with pytest.raises(ValueError):
        Field(m, np.zeros(3))
    with pytest.raises(ValueError):
        Field(m, np.full(m.n_nodes, np.nan))
