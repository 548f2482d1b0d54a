"""Closed-form solution of the interval problem and the flat-slab reference.

On ``(b_l, b_r)`` with film ``(f_l, f_r)`` the solution is
``-C_l sinh((y - b_l)/sqrt(a))`` left of the film, ``-C_r sinh((y - b_r)/sqrt(a))``
right of it, and linear with slope ``s*`` across it.

Everything is written in terms of ``tanh`` and ratios ``sinh(x)/cosh(y)`` with
``0 <= x <= y`` so nothing overflows, even at ``alpha, beta ~ 2000``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import DomainSpec


@dataclass(frozen=True)
class Interval1DProblem:
    b_l: float
    b_r: float
    f_l: float
    f_r: float
    a: float

    def __post_init__(self):
        if not (self.b_l < self.f_l < self.f_r < self.b_r):
            raise ValueError("need b_l < f_l < f_r < b_r")
        if not self.a > 0:
            raise ValueError("diffusion coefficient must be positive")

    @property
    def T(self) -> float:
        return self.f_r - self.f_l

    @property
    def m(self) -> float:
        return min(self.b_r - self.f_r, self.f_l - self.b_l)


@dataclass(frozen=True)
class Exact1DSolution:
    problem: Interval1DProblem
    C_l: float
    C_r: float
    alpha: float
    beta: float
    k: float
    slope: float
    h: float
    # s(f_l) = -gain*tanh(alpha), s(f_r) = gain*tanh(beta)
    gain: float
    excess: float  # h - T, evaluated without cancellation
    log_C_l: float
    log_C_r: float

    def __call__(self, y):
        return eval_solution(self, y)


def _one_minus_tanh(x):
    e = np.exp(-2.0 * np.asarray(x, dtype=float))
    return 2.0 * e / (1.0 + e)


def _sech(x):
    e = np.exp(-np.asarray(x, dtype=float))
    return 2.0 * e / (1.0 + e * e)


def _log_cosh(x):
    x = np.abs(np.asarray(x, dtype=float))
    return x + np.log1p(np.exp(-2.0 * x)) - np.log(2.0)


def _sinh_over_cosh(x, y):
    """sinh(x)/cosh(y) for 0 <= x <= y."""
    return (np.exp(x - y) - np.exp(-x - y)) / (1.0 + np.exp(-2.0 * y))


def _cosh_over_cosh(x, y):
    """cosh(x)/cosh(y) for 0 <= x <= y."""
    return (np.exp(x - y) + np.exp(-x - y)) / (1.0 + np.exp(-2.0 * y))


def solve_exact(p: Interval1DProblem) -> Exact1DSolution:
    """Coefficients of the exact interval solution.

    ``C_l = k cosh(beta) / (sqrt(a) (sinh(alpha+beta) + k cosh(alpha) cosh(beta)))``
    and symmetrically for ``C_r``; dividing through by ``cosh(alpha) cosh(beta)``
    gives ``C_l = gain / cosh(alpha)`` with ``gain = k / (sqrt(a) (tanh a + tanh b + k))``.
    """
    sa = np.sqrt(p.a)
    T = p.T
    alpha = (p.f_l - p.b_l) / sa
    beta = (p.b_r - p.f_r) / sa
    k = T / sa
    ta, tb = np.tanh(alpha), np.tanh(beta)
    gain = k / (sa * (ta + tb + k))
    excess = 2.0 * sa + T * (_one_minus_tanh(alpha) + _one_minus_tanh(beta)) / (ta + tb)
    h = T + excess
    return Exact1DSolution(
        problem=p,
        C_l=float(gain * _sech(alpha)),
        C_r=float(gain * _sech(beta)),
        alpha=float(alpha),
        beta=float(beta),
        k=float(k),
        slope=float(2.0 / (sa * h)),
        h=float(h),
        gain=float(gain),
        excess=float(excess),
        log_C_l=float(np.log(gain) - _log_cosh(alpha)),
        log_C_r=float(np.log(gain) - _log_cosh(beta)),
    )


def eval_solution(sol: Exact1DSolution, y, derivative: int = 0):
    """Value (or first/second derivative) of the exact solution at ``y``.

    Inside the film the first derivative is the slope and the second is 0;
    at the interfaces the film branch is used.
    """
    p = sol.problem
    sa = np.sqrt(p.a)
    y = np.asarray(y, dtype=float)
    left = y < p.f_l
    right = y > p.f_r
    film = ~(left | right)
    out = np.empty_like(y)

    xi = np.clip((y[left] - p.b_l) / sa, 0.0, sol.alpha)
    ze = np.clip((p.b_r - y[right]) / sa, 0.0, sol.beta)
    g = sol.gain
    if derivative == 0:
        out[left] = -g * _sinh_over_cosh(xi, sol.alpha)
        out[right] = g * _sinh_over_cosh(ze, sol.beta)
        s_fl = -g * np.tanh(sol.alpha)
        out[film] = s_fl + sol.slope * (y[film] - p.f_l)
    elif derivative == 1:
        out[left] = -g * _cosh_over_cosh(xi, sol.alpha) / sa
        out[right] = -g * _cosh_over_cosh(ze, sol.beta) / sa
        out[film] = sol.slope
    elif derivative == 2:
        out[left] = -g * _sinh_over_cosh(xi, sol.alpha) / p.a
        out[right] = g * _sinh_over_cosh(ze, sol.beta) / p.a
        out[film] = 0.0
    else:
        raise ValueError("derivative must be 0, 1 or 2")
    return out[()]


def one_sided_derivatives(sol: Exact1DSolution) -> tuple[float, float]:
    """``(s'(f_l - 0), s'(f_r + 0)) = (-C_l cosh(alpha), -C_r cosh(beta)) / sqrt(a)``."""
    sa = np.sqrt(sol.problem.a)
    left = -np.exp(sol.log_C_l + _log_cosh(sol.alpha)) / sa
    right = -np.exp(sol.log_C_r + _log_cosh(sol.beta)) / sa
    return float(left), float(right)


def thickness_bound_1d(p: Interval1DProblem) -> tuple[float, float]:
    """Envelope ``(0, 2 sqrt(a) + 4 T exp(-2 m / sqrt(a)))`` for ``h - T``."""
    sa = np.sqrt(p.a)
    return 0.0, float(2.0 * sa + 4.0 * p.T * np.exp(-2.0 * p.m / sa))


def reference_problem(spec: DomainSpec, a: float) -> Interval1DProblem:
    c = spec.constants
    return Interval1DProblem(c.b_l_min, c.b_r_max, spec.film_lo, spec.film_hi, a)


def reference_film_solution(spec: DomainSpec, a: float) -> Exact1DSolution:
    """Exact solution on the circumscribing flat slab ``(min b_l, max b_r)``."""
    return solve_exact(reference_problem(spec, a))


def gap_constant(spec: DomainSpec, a: float) -> float:
    """``C_a = exp(-R / sqrt(a)) / sqrt(a)``; bounds ``|s - s_ref|`` on the boundary when R > 0."""
    sa = np.sqrt(a)
    return float(np.exp(-spec.constants.R / sa) / sa)


def boundary_gap_bounds(spec: DomainSpec, a: float) -> tuple[float, float]:
    """Sharper two-sided bounds on ``s - s_ref`` over the boundary of D.

    The lower boundary contributes ``C_l sinh(wave_l / sqrt(a)) >= 0`` and the
    upper ``-C_r sinh(wave_r / sqrt(a)) <= 0``.
    """
    c = spec.constants
    sol = reference_film_solution(spec, a)
    sa = np.sqrt(a)
    wl = (c.b_l_max - c.b_l_min) / sa
    wr = (c.b_r_max - c.b_r_min) / sa
    # wl < alpha and wr < beta because the film sits strictly inside D
    lower = -sol.gain * _sinh_over_cosh(wr, sol.beta)
    upper = sol.gain * _sinh_over_cosh(wl, sol.alpha)
    return float(lower), float(upper)
