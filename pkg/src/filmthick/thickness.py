"""Local thickness ``h = 2 / (sqrt(a) div s)`` on film triangles, and its error."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .assembly import element_gradients
from .domain import DomainSpec
from .solver import Field

OK = 0
NONPOSITIVE_DIV = 1
NEAR_ZERO_DIV = 2
FLAG_NAMES = {OK: "ok", NONPOSITIVE_DIV: "nonpositive_div", NEAR_ZERO_DIV: "near_zero_div"}

NEAR_ZERO_REL = 1e-12
DEFAULT_BAND = (0.3, 0.7)


def gradient(field: Field) -> np.ndarray:
    """Per-triangle gradient (K, 2) of a P1 field."""
    _, grads = element_gradients(field.mesh)
    return np.einsum("ki,kid->kd", field.values[field.mesh.triangles], grads)


def divergence(sx: Field, sy: Field) -> np.ndarray:
    """``d(s^x)/dx + d(s^y)/dy`` on every triangle."""
    if sx.mesh is not sy.mesh:
        raise ValueError("components live on different meshes")
    return gradient(sx)[:, 0] + gradient(sy)[:, 1]


@dataclass(frozen=True, eq=False)
class ThicknessField:
    """Film-triangle quantities, indexed like ``triangles``."""

    a: float
    triangles: np.ndarray  # mesh triangle ids (film only)
    area: np.ndarray
    centroid: np.ndarray  # (n, 2)
    div_s: np.ndarray
    div_y: np.ndarray  # d(s^y)/dy only
    inv_h: np.ndarray
    h: np.ndarray  # NaN unless flag == OK
    flags: np.ndarray

    @property
    def film_area(self) -> float:
        return float(self.area.sum())


def thickness_field(sx: Field, sy: Field, a: float) -> ThicknessField:
    if not a > 0:
        raise ValueError("diffusion coefficient must be positive")
    mesh = sx.mesh
    div = divergence(sx, sy)
    div_y = gradient(sy)[:, 1]
    idx = np.flatnonzero(mesh.film)
    sa = np.sqrt(a)
    scaled = sa * div[idx]
    flags = np.full(len(idx), OK, dtype=np.int8)
    flags[scaled <= 0] = NONPOSITIVE_DIV
    flags[np.abs(scaled) < NEAR_ZERO_REL * 2.0 / mesh.spec.thickness] = NEAR_ZERO_DIV
    h = np.full(len(idx), np.nan)
    ok = flags == OK
    h[ok] = 2.0 / scaled[ok]
    return ThicknessField(
        a=a,
        triangles=idx,
        area=mesh.areas()[idx],
        centroid=mesh.centroids()[idx],
        div_s=div[idx],
        div_y=div_y[idx],
        inv_h=0.5 * scaled,
        h=h,
        flags=flags,
    )


def band_fraction(tf: ThicknessField, band=DEFAULT_BAND) -> float:
    """Area fraction of the film where ``lo < h < hi``; flagged triangles count as out of band."""
    lo, hi = band
    inside = (tf.flags == OK) & (tf.h > lo) & (tf.h < hi)
    return float(tf.area[inside].sum() / tf.area.sum())


def theorem_bound(spec: DomainSpec, a: float) -> float | None:
    """Upper bound on ``||1/h - 1/T||_{L2(film)}``, or None when R <= 0.

    ``2 a^(1/2) / T^(3/2) + 4 exp(-2 m_bar / sqrt(a)) / sqrt(T) + exp(-R / sqrt(a)) / sqrt(m)``
    """
    c = spec.constants
    if c.R <= 0:
        return None
    sa = np.sqrt(a)
    T = c.T
    return float(
        2.0 * sa / T**1.5
        + 4.0 * np.exp(-2.0 * c.m_bar / sa) / np.sqrt(T)
        + np.exp(-c.R / sa) / np.sqrt(c.m)
    )


@dataclass(frozen=True)
class FilmErrorReport:
    a: float
    l2_inv_error: float
    l2_inv_error_y: float  # same norm with div s replaced by d(s^y)/dy
    theorem_bound: float | None  # None: R <= 0, bound not applicable
    band_fraction: float
    band: tuple[float, float] = DEFAULT_BAND

    @property
    def bound_applicable(self) -> bool:
        return self.theorem_bound is not None


def film_error(tf: ThicknessField, spec: DomainSpec, a: float, band=DEFAULT_BAND) -> FilmErrorReport:
    inv_T = 1.0 / spec.thickness
    err = np.sqrt(np.sum(tf.area * (tf.inv_h - inv_T) ** 2))
    inv_h_y = 0.5 * np.sqrt(a) * tf.div_y
    err_y = np.sqrt(np.sum(tf.area * (inv_h_y - inv_T) ** 2))
    return FilmErrorReport(
        a=a,
        l2_inv_error=float(err),
        l2_inv_error_y=float(err_y),
        theorem_bound=theorem_bound(spec, a),
        band_fraction=band_fraction(tf, band),
        band=tuple(band),
    )


def write_thickness_csv(tf: ThicknessField, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["centroid_x", "centroid_y", "div_s", "inv_h", "h", "flag"])
        for (cx, cy), d, ih, h, f in zip(tf.centroid, tf.div_s, tf.inv_h, tf.h, tf.flags):
            w.writerow([f"{cx:.17g}", f"{cy:.17g}", f"{d:.17g}", f"{ih:.17g}",
                        "nan" if np.isnan(h) else f"{h:.17g}", FLAG_NAMES[int(f)]])
