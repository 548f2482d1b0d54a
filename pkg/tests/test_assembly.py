import numpy as np
import pytest
import scipy.io
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from filmthick.assembly import assemble, assemble_homogeneous, assemble_matrix, element_gradients, write_matrix_market
from filmthick.domain import film_preset, flat_box
from filmthick.mesh import build_mesh


@pytest.fixture(scope="module")
def mesh():
    return build_mesh(film_preset(1), 16, 64)


def test_reference_triangle_stiffness():
    # triangle 0 is (ll, lr, ur) = (0,0), (hx,0), (hx,hy); basis gradients by hand:
    # (-1/hx, 0), (1/hx, -1/hy), (0, 1/hy); area hx hy / 2
    m = build_mesh(flat_box(), 4, 8)
    hx, hy = 1 / m.nx, m.levels[0, 1] - m.levels[0, 0]
    area, grads = element_gradients(m)
    assert area[0] == pytest.approx(hx * hy / 2, rel=1e-14)
    r, q = hy / hx, hx / hy
    expected = 0.5 * np.array([[r, -r, 0], [-r, r + q, -q], [0, -q, q]])
    np.testing.assert_allclose(area[0] * grads[0] @ grads[0].T, expected, rtol=1e-12, atol=1e-14)
    # unit right triangle special case
    r = q = 1.0
    unit = 0.5 * np.array([[1, -1, 0], [-1, 2, -1], [0, -1, 1]])
    np.testing.assert_array_equal(0.5 * np.array([[r, -r, 0], [-r, r + q, -q], [0, -q, q]]), unit)


def test_exact_symmetry(mesh):
    A = assemble_matrix(mesh, 1e-3)
    assert (A != A.T).nnz == 0
    sx, _ = assemble(mesh, 1e-3)
    assert (sx.matrix != sx.matrix.T).nnz == 0


def test_positive_definite(mesh):
    sx, _ = assemble(mesh, 1e-3)
    rng = np.random.default_rng(3)
    for v in rng.standard_normal((20, sx.n)):
        assert v @ (sx.matrix @ v) > 0
    lam = sp.linalg.eigsh(sx.matrix, k=1, which="SA", return_eigenvectors=False)[0]
    assert lam > 0


def test_x_load_vanishes(mesh):
    sx, _ = assemble(mesh, 1e-3)
    assert abs(sx.rhs.sum()) <= 1e-12
    assert np.abs(sx.rhs).max() <= 1e-12


def test_y_load_concentrates_on_interfaces(mesh):
    _, sy = assemble(mesh, 1e-3)
    full = sy.expand(sy.rhs)
    j = np.tile(np.arange(mesh.ny + 1), mesh.nx)
    n_lo, n_film, _ = mesh.counts
    assert full[j == n_lo].sum() == pytest.approx(-1.0, abs=1e-12)
    assert full[j == n_lo + n_film].sum() == pytest.approx(1.0, abs=1e-12)
    interior = (j != n_lo) & (j != n_lo + n_film)
    assert np.abs(full[interior]).max() <= 1e-12


def test_total_sum_is_void_area(mesh):
    # stiffness annihilates constants, so 1^T A 1 is the void mass
    a = 1e-2
    A = assemble_matrix(mesh, a)
    area = mesh.areas()
    void_area = area[~mesh.film].sum()
    assert A.sum() == pytest.approx(void_area, rel=1e-12)


def test_lumped_mass_same_total(mesh):
    A = assemble_matrix(mesh, 1e-2)
    L = assemble_matrix(mesh, 1e-2, lumped=True)
    assert L.sum() == pytest.approx(A.sum(), rel=1e-12)


def test_homogeneous_zero_trace_gives_zero_rhs(mesh):
    n_bnd = int(mesh.dirichlet_mask.sum())
    sys0 = assemble_homogeneous(mesh, 1e-2, np.zeros(n_bnd))
    assert np.all(sys0.rhs == 0)


def test_homogeneous_rejects_bad_traces(mesh):
    with pytest.raises(ValueError):
        assemble_homogeneous(mesh, 1e-2, np.zeros(3))
    bad = np.zeros(int(mesh.dirichlet_mask.sum()))
    bad[0] = np.nan
    with pytest.raises(ValueError):
        assemble_homogeneous(mesh, 1e-2, bad)


def test_homogeneous_lifting():
    m = build_mesh(flat_box(), 4, 32)
    g = np.linspace(-1, 1, int(m.dirichlet_mask.sum()))
    system = assemble_homogeneous(m, 1e-2, g)
    full = assemble_matrix(m, 1e-2)
    u = system.expand(spsolve(system.matrix.tocsc(), system.rhs))
    np.testing.assert_allclose((full @ u)[system.free], 0.0, atol=1e-12)
    np.testing.assert_array_equal(u[m.dirichlet_mask], g)


def test_matrix_market_round_trip(mesh, tmp_path):
    sx, _ = assemble(mesh, 1e-3)
    write_matrix_market(sx, tmp_path / "A.mtx")
    B = scipy.io.mmread(str(tmp_path / "A.mtx")).tocsr()
    assert abs(B - sx.matrix).max() == 0.0
    header = (tmp_path / "A.mtx").read_text().splitlines()[0]
    assert "symmetric" in header


def test_assembly_is_deterministic(mesh):
    A1, A2 = assemble(mesh, 1e-3)[1], assemble(mesh, 1e-3)[1]
    np.testing.assert_array_equal(A1.values, A2.values)
    np.testing.assert_array_equal(A1.rhs, A2.rhs)


def test_csr_views(mesh):
    sx, _ = assemble(mesh, 1e-3)
    assert len(sx.row_offsets) == sx.n + 1
    assert len(sx.col_indices) == len(sx.values) == sx.matrix.nnz
    with pytest.raises(ValueError):
        sx.values[0] = 0.0


def test_rejects_nonpositive_a(mesh):
    with pytest.raises(ValueError):
        assemble(mesh, 0.0)
