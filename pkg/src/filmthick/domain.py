"""Film-in-a-wavy-slab geometry.

The global domain is ``D = {(x, y) : b_l(x) < y < b_r(x)}`` with ``x`` on the
unit flat torus, and the shape is the straight film ``f_l < y < f_r``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import minimize_scalar

CONSTANT = "constant"
SIN2 = "sinusoidal-squared"
FOURIER = "fourier"
PROFILE_KINDS = (CONSTANT, SIN2, FOURIER)

_FOURIER_SAMPLES = 4096
_FOURIER_XTOL = 1e-12


@dataclass(frozen=True)
class BoundaryProfile:
    """A 1-periodic boundary curve ``y = b(x)``.

    ``constant``: ``base``.
    ``sinusoidal-squared``: ``base - amplitude * sin(pi * frequency * x)**2``.
    ``fourier``: ``base + sum_n c_n cos(2 pi n x) + s_n sin(2 pi n x)`` with
    ``coefficients = ((c_1, s_1), (c_2, s_2), ...)``.
    """

    kind: str = CONSTANT
    base: float = 0.0
    amplitude: float = 0.0
    frequency: int = 1
    coefficients: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if int(self.frequency) != self.frequency or self.frequency < 1:
            raise ValueError("frequency must be a positive integer")
        object.__setattr__(self, "coefficients", tuple((float(c), float(s)) for c, s in self.coefficients))

    @classmethod
    def constant(cls, value: float) -> BoundaryProfile:
        return cls(CONSTANT, float(value))

    @classmethod
    def sin2(cls, base: float, amplitude: float, frequency: int = 1) -> BoundaryProfile:
        return cls(SIN2, float(base), float(amplitude), int(frequency))

    @classmethod
    def fourier(cls, base: float, coefficients) -> BoundaryProfile:
        return cls(FOURIER, float(base), coefficients=tuple(coefficients))

    def __call__(self, x):
        return profile_eval(self, x)

    @cached_property
    def extrema(self) -> tuple[float, float]:
        """(min, max) of the profile over one period."""
        if self.kind == CONSTANT:
            return self.base, self.base
        if self.kind == SIN2:
            lo, hi = self.base - self.amplitude, self.base
            return min(lo, hi), max(lo, hi)
        return _fourier_extrema(self)


def profile_eval(p: BoundaryProfile, x):
    """Evaluate ``b(x)``; ``x`` is wrapped onto [0, 1)."""
    x = np.mod(np.asarray(x, dtype=float), 1.0)
    if p.kind == CONSTANT:
        return np.full_like(x, p.base)[()]
    if p.kind == SIN2:
        return (p.base - p.amplitude * np.sin(np.pi * p.frequency * x) ** 2)[()]
    out = np.full_like(x, p.base)
    for n, (c, s) in enumerate(p.coefficients, start=1):
        out = out + c * np.cos(2 * np.pi * n * x) + s * np.sin(2 * np.pi * n * x)
    return out[()]


def _fourier_extrema(p: BoundaryProfile) -> tuple[float, float]:
    xs = np.arange(_FOURIER_SAMPLES) / _FOURIER_SAMPLES
    vals = profile_eval(p, xs)
    dx = 1.0 / _FOURIER_SAMPLES

    def refine(sign, x0):
        res = minimize_scalar(
            lambda t: sign * profile_eval(p, t),
            bounds=(x0 - dx, x0 + dx),
            method="bounded",
            options={"xatol": _FOURIER_XTOL},
        )
        return sign * res.fun

    lo = min(refine(1.0, xs[np.argmin(vals)]), vals.min())
    hi = max(refine(-1.0, xs[np.argmax(vals)]), vals.max())
    return float(lo), float(hi)


@dataclass(frozen=True)
class GeometricConstants:
    T: float
    b_l_min: float
    b_l_max: float
    b_r_min: float
    b_r_max: float
    R: float
    m: float
    m_bar: float

    @property
    def satisfies_assumption(self) -> bool:
        """Boundary waviness is smaller than the void gaps (R > 0)."""
        return self.R > 0


@dataclass(frozen=True)
class DomainSpec:
    lower: BoundaryProfile
    upper: BoundaryProfile
    film_lo: float
    film_hi: float
    constants: GeometricConstants = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "constants", derive_constants(self))

    @property
    def thickness(self) -> float:
        return self.film_hi - self.film_lo

    def indicator(self, x, y):
        return indicator(self, x, y)


def derive_constants(spec: DomainSpec) -> GeometricConstants:
    """Extrema of both profiles and the gap constants R, m, m_bar.

    Raises ValueError unless ``max b_l < f_l < f_r < min b_r``.
    """
    f_l, f_r = float(spec.film_lo), float(spec.film_hi)
    bl_min, bl_max = spec.lower.extrema
    br_min, br_max = spec.upper.extrema
    if not (bl_max < f_l < f_r < br_min):
        raise ValueError(
            f"film must lie strictly inside D: need max b_l ({bl_max:g}) < f_l ({f_l:g}) "
            f"< f_r ({f_r:g}) < min b_r ({br_min:g})"
        )
    m_bar = min(br_max - f_r, f_l - bl_min)
    waviness = max(br_max - br_min, bl_max - bl_min)
    return GeometricConstants(
        T=f_r - f_l,
        b_l_min=bl_min,
        b_l_max=bl_max,
        b_r_min=br_min,
        b_r_max=br_max,
        R=m_bar - waviness,
        m=min(br_min - f_r, f_l - bl_max),
        m_bar=m_bar,
    )


def indicator(spec: DomainSpec, x, y):
    """Characteristic function of the film; 0 on the interface lines."""
    y = np.asarray(y, dtype=float)
    return ((y > spec.film_lo) & (y < spec.film_hi)).astype(int)[()]


def film_preset(k: float, *, frequency: int = 1) -> DomainSpec:
    """``b_l = 0``, ``b_r = 3 - k sin^2(pi x)``, film ``(0.5, 0.99)``."""
    return DomainSpec(
        lower=BoundaryProfile.constant(0.0),
        upper=BoundaryProfile.sin2(3.0, k, frequency),
        film_lo=0.5,
        film_hi=0.99,
    )


def flat_box(b_l: float = -1.0, b_r: float = 1.0, f_l: float = -0.5, f_r: float = 0.5) -> DomainSpec:
    return DomainSpec(BoundaryProfile.constant(b_l), BoundaryProfile.constant(b_r), f_l, f_r)
