"""
Maximum modulus and interior energy
===================================

Homogeneous solutions (zero load, random boundary data) never exceed their
boundary values in the interior. Their film gradient energy is controlled
by the void L2 energy.
"""

import numpy as np

from filmthick.domain import film_preset, flat_box
from filmthick.mesh import build_mesh
from filmthick.verify import (CutoffProfile, check_interior_h1, check_max_modulus, cutoff_eval,
                              homogeneous_solution, interior_margin, random_trace)

rng = np.random.default_rng(0)
for name, spec in (("flat", flat_box()), ("k=1", film_preset(1))):
    mesh = build_mesh(spec, 32, 160)
    for a in (1e-2, 1e-4):
        d1 = homogeneous_solution(mesh, a, random_trace(mesh, rng))
        d2 = homogeneous_solution(mesh, a, random_trace(mesh, rng))
        mm = check_max_modulus([d1, d2])
        h1 = check_interior_h1([d1, d2])
        print(f"{name:5s} a={a:.0e}: interior {mm.interior_sup:.4f} vs boundary {mm.boundary_sup:.4f};  "
              f"film grad^2 {h1.lhs:.3e} <= {h1.rhs:.3e}")

# %%
# The cutoff used in the energy estimate has |c''| <= 4 / l^2.
l = interior_margin(film_preset(0))
c, c2 = cutoff_eval(CutoffProfile(0.5, 0.99, l), np.linspace(-0.5, 2.0, 11))
print("c  :", np.round(c, 3))
print("c'':", c2, " bound", 4 / l**2)
