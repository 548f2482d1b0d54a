"""
Closed-form thickness on a flat slab
====================================

On a flat slab the problem reduces to an ODE in y, and the fictitious
thickness has a closed form. Here we watch it approach the true thickness
as the diffusion coefficient shrinks.
"""

import numpy as np

from filmthick.exact1d import Interval1DProblem, eval_solution, solve_exact, thickness_bound_1d

# slab (0, 3) with a film between 0.5 and 0.99
T = 0.49
for a in 10.0 ** -np.arange(2, 9):
    p = Interval1DProblem(0.0, 3.0, 0.5, 0.99, a)
    sol = solve_exact(p)
    _, upper = thickness_bound_1d(p)
    print(f"a={a:7.0e}  h={sol.h:.8f}  h-T={sol.excess:.3e}  envelope={upper:.3e}")

# the excess is almost exactly 2 sqrt(a): the boundary layer on each side
# contributes about sqrt(a)

# %%
# The profile: linear in the film, exponential layers in the voids.
sol = solve_exact(Interval1DProblem(0.0, 3.0, 0.5, 0.99, 1e-3))
for y in (0.3, 0.45, 0.5, 0.745, 0.99, 1.05, 1.5):
    print(f"s({y:5.3f}) = {float(eval_solution(sol, y)):+.6f}")

# %%
# With thin voids (gap smaller than sqrt(a)) the exponential envelope is not
# an upper bound any more.
p = Interval1DProblem(0.0, 0.3, 0.1, 0.2, 1.0)
print("thin voids: h-T =", solve_exact(p).excess, "envelope =", thickness_bound_1d(p)[1])
