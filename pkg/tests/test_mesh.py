from collections import Counter

import numpy as np
import pytest

from filmthick.domain import film_preset, flat_box
from filmthick.mesh import build_mesh, export_mesh, read_mesh_export


@pytest.fixture(scope="module", params=[(0, None), (2, None), (2, 0.05)], ids=["k0", "k2", "k2-layer"])
def mesh(request):
    k, layer = request.param
    return build_mesh(film_preset(k), 16, 80, layer)


def test_total_area_matches_integral(mesh):
    spec = mesh.spec
    xs = (np.arange(200_000) + 0.5) / 200_000
    exact = np.mean(spec.upper(xs) - spec.lower(xs))
    # piecewise-linear boundaries: the error is second order in 1/nx
    assert mesh.areas().sum() == pytest.approx(exact, rel=5e-3)


def test_positive_areas_and_counts(mesh):
    assert np.all(mesh.areas() > 0)
    assert mesh.n_triangles == 2 * mesh.nx * mesh.ny
    assert mesh.n_nodes == mesh.nx * (mesh.ny + 1)
    assert sum(mesh.counts) == mesh.ny


def test_interfaces_are_grid_lines(mesh):
    n_lo, n_film, _ = mesh.counts
    assert np.all(mesh.levels[:, n_lo] == mesh.spec.film_lo)
    assert np.all(mesh.levels[:, n_lo + n_film] == mesh.spec.film_hi)
    # every triangle lies on one side of each interface
    y = mesh.vertices()[..., 1]
    for f in (mesh.spec.film_lo, mesh.spec.film_hi):
        assert not np.any((y.min(axis=1) < f) & (y.max(axis=1) > f))


def test_film_flag_matches_centroids(mesh):
    cy = mesh.centroids()[:, 1]
    inside = (cy > mesh.spec.film_lo) & (cy < mesh.spec.film_hi)
    np.testing.assert_array_equal(inside, mesh.film)
    assert mesh.areas()[mesh.film].sum() == pytest.approx(mesh.spec.thickness, rel=1e-12)


def test_conformity(mesh):
    # undirected node-pair edges: interior edges are shared by two triangles
    pairs = Counter()
    for tri in mesh.triangles:
        for a, b in ((0, 1), (1, 2), (2, 0)):
            pairs[tuple(sorted((tri[a], tri[b])))] += 1
    bnd = mesh.dirichlet_mask
    for (p, q), n in pairs.items():
        assert n == (1 if bnd[p] and bnd[q] else 2), (p, q)


def test_boundary_nodes_on_boundary(mesh):
    x, y = mesh.nodes[mesh.dirichlet_mask].T
    on = np.isclose(y, mesh.spec.lower(x)) | np.isclose(y, mesh.spec.upper(x))
    assert np.all(on)
    assert mesh.dirichlet_mask.sum() == 2 * mesh.nx


def test_arrays_read_only(mesh):
    with pytest.raises(ValueError):
        mesh.nodes[0, 0] = 1.0


def test_layer_refines_interface():
    graded = build_mesh(film_preset(2), 16, 80, 0.05)
    uniform = build_mesh(film_preset(2), 16, 80)
    assert graded.interface_spacing() < uniform.interface_spacing()


def test_rejects_tiny_resolution():
    with pytest.raises(ValueError):
        build_mesh(flat_box(), 2, 64)
    with pytest.raises(ValueError):
        build_mesh(flat_box(), 8, 4)


def test_export_round_trip(tmp_path):
    m = build_mesh(film_preset(1), 8, 24)
    export_mesh(m, tmp_path / "m.txt")
    nodes, tris, regions = read_mesh_export(tmp_path / "m.txt")
    np.testing.assert_array_equal(nodes, m.nodes)
    np.testing.assert_array_equal(tris, m.triangles)
    np.testing.assert_array_equal(regions == "film", m.film)
    assert (tmp_path / "m.txt").read_text().splitlines()[0] == f"nodes {m.n_nodes} triangles {m.n_triangles}"
