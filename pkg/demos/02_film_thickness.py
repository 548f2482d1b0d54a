"""
Thickness of a film next to a wavy wall
=======================================

Solve the two-dimensional problem for a flat film under a wall
b_r = 3 - k sin^2(pi x). For k = 2 the wall dips to within 0.01 of the film.
The thickness is still recovered almost everywhere.
"""

import numpy as np

from filmthick.assembly import assemble
from filmthick.domain import film_preset
from filmthick.mesh import build_mesh
from filmthick.raster import write_heatmap
from filmthick.solver import solve_or_raise
from filmthick.thickness import film_error, thickness_field

a = 1e-4
for k in (0, 1, 2):
    spec = film_preset(k)
    # grade half of each void's cells into 10 sqrt(a) next to the film
    mesh = build_mesh(spec, 32, 600, layer=10 * np.sqrt(a))
    sys_x, sys_y = assemble(mesh, a)
    sx, _ = solve_or_raise(sys_x)
    sy, rep = solve_or_raise(sys_y)
    tf = thickness_field(sx, sy, a)
    err = film_error(tf, spec, a)
    print(f"k={k}: R={spec.constants.R:+.2f}  CG its={rep.iterations}  "
          f"h in [{np.nanmin(tf.h):.4f}, {np.nanmax(tf.h):.4f}]  "
          f"band fraction={err.band_fraction:.4f}  |s^x|max={np.abs(sx.values).max():.1e}")
    write_heatmap(mesh, tf, f"heatmap_k{k}.ppm")

# k = 1 and 2 violate R > 0, so no bound applies, yet the film is still
# recovered to within the band
