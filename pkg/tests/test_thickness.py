import numpy as np
import pytest

from filmthick.assembly import assemble
from filmthick.domain import film_preset, flat_box
from filmthick.exact1d import reference_film_solution
from filmthick.mesh import build_mesh
from filmthick.solver import Field, solve
from filmthick.thickness import (NEAR_ZERO_DIV, NONPOSITIVE_DIV, OK, band_fraction, divergence, film_error,
                                 theorem_bound, thickness_field, write_thickness_csv)
from filmthick.verify import reference_values


@pytest.fixture(scope="module")
def mesh():
    return build_mesh(film_preset(2), 16, 64)


def test_divergence_of_linear_fields(mesh):
    x, y = mesh.nodes.T
    # x is periodic on the mesh, so use y-dependence for the y-component and a constant x-field
    d = divergence(Field(mesh, np.zeros(mesh.n_nodes)), Field(mesh, 3.0 * y - 1.0))
    np.testing.assert_allclose(d, 3.0, rtol=1e-12)


def test_divergence_of_x_field_on_unwrapped_triangles(mesh):
    # a y-independent periodic field has the column difference quotient as x-derivative,
    # including on the triangles that wrap across x = 1
    g = lambda x: np.sin(2 * np.pi * x)
    d = divergence(Field(mesh, g(mesh.nodes[:, 0])), Field(mesh, np.zeros(mesh.n_nodes)))
    col = np.floor(mesh.centroids()[:, 0] * mesh.nx)
    quotient = (g((col + 1) / mesh.nx) - g(col / mesh.nx)) * mesh.nx
    np.testing.assert_allclose(d, quotient, atol=1e-12)


def test_zero_field_is_flagged(mesh):
    z = Field(mesh, np.zeros(mesh.n_nodes))
    tf = thickness_field(z, z, 1e-4)
    assert np.all(tf.flags == NEAR_ZERO_DIV)
    assert np.all(np.isnan(tf.h))
    assert band_fraction(tf) == 0.0


def test_negative_divergence_is_flagged(mesh):
    z = Field(mesh, np.zeros(mesh.n_nodes))
    tf = thickness_field(z, Field(mesh, -mesh.nodes[:, 1]), 1e-4)
    assert np.all(tf.flags == NONPOSITIVE_DIV)


def test_linear_field_inverts_to_T():
    spec = flat_box()
    m = build_mesh(spec, 4, 16)
    a = 1e-4
    slope = 2.0 / (np.sqrt(a) * spec.thickness)
    tf = thickness_field(Field(m, np.zeros(m.n_nodes)), Field(m, slope * m.nodes[:, 1]), a)
    np.testing.assert_allclose(tf.h, spec.thickness, rtol=1e-12)
    assert np.all(tf.flags == OK)
    assert film_error(tf, spec, a).l2_inv_error == pytest.approx(0.0, abs=1e-10)


def test_lifted_exact_solution_reproduces_continuum_error():
    spec = flat_box()
    a = 1e-3
    m = build_mesh(spec, 4, 64)
    sy = Field(m, reference_values(m, a))
    tf = thickness_field(Field(m, np.zeros(m.n_nodes)), sy, a)
    ref = reference_film_solution(spec, a)
    # the exact solution is linear inside the film, so the interpolant is exact there
    np.testing.assert_allclose(tf.h, ref.h, rtol=1e-10)
    err = film_error(tf, spec, a).l2_inv_error
    assert err == pytest.approx(abs(1 / ref.h - 1 / spec.thickness) * np.sqrt(spec.thickness), rel=1e-9)


def test_scaling_covariance():
    # stretching y by lam and a by lam^2 stretches h by lam
    lam = 2.0
    a = 1e-3
    hs = []
    for spec, aa in ((flat_box(), a), (flat_box(-lam, lam, -0.5 * lam, 0.5 * lam), lam**2 * a)):
        m = build_mesh(spec, 4, 256)
        sx, sy = assemble(m, aa)
        fx, _ = solve(sx)
        fy, _ = solve(sy)
        hs.append(np.nanmean(thickness_field(fx, fy, aa).h))
    assert hs[1] / hs[0] == pytest.approx(lam, rel=1e-2)


def test_theorem_bound_only_when_R_positive():
    assert theorem_bound(film_preset(1), 1e-4) is None
    b = theorem_bound(film_preset(0), 1e-4)
    assert b == pytest.approx(2e-2 / 0.49**1.5 + 4 * np.exp(-100) / 0.7 + np.exp(-50) / np.sqrt(0.5), rel=1e-14)


def test_csv_output(mesh, tmp_path):
    a = 1e-2
    sx, sy = assemble(mesh, a)
    fx, _ = solve(sx)
    fy, _ = solve(sy)
    tf = thickness_field(fx, fy, a)
    write_thickness_csv(tf, tmp_path / "t.csv")
    lines = (tmp_path / "t.csv").read_text().splitlines()
    assert lines[0] == "centroid_x,centroid_y,div_s,inv_h,h,flag"
    assert len(lines) == 1 + len(tf.triangles)
    row = lines[1].split(",")
    assert float(row[4]) == tf.h[0] and row[5] == "ok"
