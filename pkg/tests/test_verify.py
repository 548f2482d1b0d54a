import numpy as np
import pytest

from filmthick.domain import film_preset, flat_box
from filmthick.mesh import build_mesh
from filmthick.solver import Field
from filmthick.verify import (CutoffProfile, check_gap, check_interior_h1, check_max_modulus, cutoff_eval,
                              film_gradient_energy, gap_readings, gap_solution, homogeneous_solution,
                              interior_margin, random_trace, _void_mass_energy)


def test_cutoff_known_values():
    prof = CutoffProfile(0.0, 1.0, 0.2)
    c, c2 = cutoff_eval(prof, np.array([-0.3, -0.2, -0.15, -0.1, -0.05, 0.0, 0.5, 1.1, 1.25]))
    np.testing.assert_allclose(c, [0, 0, 0.125, 0.5, 0.875, 1, 1, 0.5, 0], atol=1e-14)
    assert c2[2] == pytest.approx(100.0) and c2[4] == pytest.approx(-100.0)
    assert c2[6] == 0.0


def test_cutoff_is_c1():
    prof = CutoffProfile(0.5, 0.99, 0.5)
    y = np.linspace(-0.2, 1.7, 200_001)
    c, _ = cutoff_eval(prof, y)
    dc = np.diff(c) / np.diff(y)
    assert np.abs(np.diff(dc)).max() < 1e-3
    assert c.min() >= 0.0 and c.max() <= 1.0


def test_max_modulus_passes_for_constant_trace():
    m = build_mesh(flat_box(), 8, 64)
    d = homogeneous_solution(m, 1e-2, np.ones(int(m.dirichlet_mask.sum())))
    r = check_max_modulus(d)
    assert r.passed and r.signed_ok
    assert r.interior_sup <= 1.0


def test_max_modulus_flags_violation():
    m = build_mesh(flat_box(), 4, 16)
    v = np.zeros(m.n_nodes)
    v[~m.dirichlet_mask] = 2.0
    v[m.dirichlet_mask] = 1.0
    r = check_max_modulus(Field(m, v))
    assert not r.passed and not r.signed_ok
    assert r.margin == pytest.approx(1.0)


def test_vector_norm_used():
    m = build_mesh(flat_box(), 4, 16)
    one = np.where(m.dirichlet_mask, 1.0, 0.9)
    r = check_max_modulus([Field(m, one), Field(m, one)])
    assert r.boundary_sup == pytest.approx(np.sqrt(2))
    assert r.interior_sup == pytest.approx(0.9 * np.sqrt(2))


@pytest.mark.parametrize("name", ["hom_sym_box_a1e-2", "hom_sym_box_a1e-1"])
def test_homogeneous_energies_against_golden(golden, name):
    g = golden["homogeneous"][name]
    b_l, b_r, f_l, f_r, a, c_l, c_r = (float(v) for v in g["params"])
    m = build_mesh(flat_box(b_l, b_r, f_l, f_r), 4, 1024, 10 * np.sqrt(a))
    y = m.nodes[:, 1]
    trace = np.where(y == b_l, c_l, c_r)
    d = homogeneous_solution(m, a, trace, tol=1e-13)
    n_lo = m.counts[0]
    j = np.tile(np.arange(m.ny + 1), m.nx)
    assert d.values[j == n_lo][0] == pytest.approx(float(g["d_f_l"]), rel=1e-3)
    assert film_gradient_energy([d]) == pytest.approx(float(g["film_grad_sq"]), rel=2e-3)
    assert _void_mass_energy(m, [d]) == pytest.approx(float(g["void_l2_sq"]), rel=1e-3)


@pytest.mark.parametrize("spec", [flat_box(), film_preset(1)], ids=["flat", "k1"])
def test_seeded_h1_and_max_modulus(spec):
    m = build_mesh(spec, 16, 96)
    rng = np.random.default_rng(11)
    for _ in range(5):
        d = homogeneous_solution(m, 1e-2, random_trace(m, rng))
        assert check_max_modulus(d, rel_tol=1e-2).passed
        h1 = check_interior_h1(d)
        assert h1.passed and h1.slack > 0


def test_interior_margin_values():
    assert interior_margin(film_preset(0)) == pytest.approx(0.5)
    assert interior_margin(film_preset(2)) == pytest.approx(0.01)


def test_gap_is_tiny_on_flat_k0():
    # k = 0 is itself the flat slab, so the manufactured gap vanishes on the boundary
    m = build_mesh(film_preset(0), 8, 64)
    g = check_gap(m, 1e-2)
    assert g.boundary_sup == 0.0 and g.interior_sup == 0.0 and g.passed


def test_gap_not_applicable_without_assumption():
    m = build_mesh(film_preset(1), 8, 64)
    assert check_gap(m, 1e-2).passed is None


def test_gap_readings_keys():
    m = build_mesh(film_preset(0), 8, 64)
    rd = gap_readings(gap_solution(m, 1e-2), film_preset(0), 1e-2)
    assert set(rd) >= {"film_grad_sq", "film_l2_sq", "lemma_rhs", "stated_rhs"}
