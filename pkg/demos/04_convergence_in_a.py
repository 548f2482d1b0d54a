"""
Convergence as a goes to zero
=============================

Sweep a on the flat box (nx=4, ny=2048) and compare the FEM thickness error with the
closed form. Rows where sqrt(a) is below four interface cells are marked
under-resolved.
"""

import dataclasses
import tempfile

from filmthick.config import load_config
from filmthick.experiment import run_convergence

cfg = load_config("flat-box")
print("a list:", cfg.a_list)

with tempfile.TemporaryDirectory() as out:
    rows = run_convergence(cfg, out)
    for r in rows:
        tag = "under-resolved" if r.under_resolved else ""
        print(f"a={r.a:7.0e}  l2 error={r.l2_inv_error:.5f}  closed form={r.continuum_error:.5f}  "
              f"bound={r.theorem_bound:.5f}  nodal err={r.fem_sup_error:.2e} {tag}")

# %%
# The same sweep for the k = 0 film, on its graded quick mesh.
k0 = dataclasses.replace(load_config("film-k0"), a_list=(1e-2, 1e-3, 1e-4))
with tempfile.TemporaryDirectory() as out:
    for r in run_convergence(k0, out, quick=True):
        print(f"a={r.a:7.0e}  l2 error={r.l2_inv_error:.5f}  bound={r.theorem_bound:.5f}")
