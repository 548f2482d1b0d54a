"""Terrain-following triangulation of the film-in-slab domain.

Each of the ``nx`` node columns (x = i/nx, periodic) carries the same number of
y-levels.  The levels are built in three segments, lower void, film and upper
void, so ``y = f_l`` and ``y = f_r`` are grid lines in every column and no
triangle straddles an interface.  Quads are split along the lower-left to
upper-right diagonal.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .domain import DomainSpec

log = logging.getLogger(__name__)

FILM = "film"
VOID = "void"
MIN_ANGLE_WARN_DEG = 5.0


@dataclass(frozen=True, eq=False)
class Mesh:
    spec: DomainSpec
    nx: int
    ny: int
    counts: tuple[int, int, int]  # cells in (lower void, film, upper void)
    levels: np.ndarray  # (nx + 1, ny + 1) y-coordinates; column nx is column 0 shifted by 1 in x
    nodes: np.ndarray  # (M, 2)
    triangles: np.ndarray  # (K, 3), counterclockwise
    shift: np.ndarray  # (K, 3) x-offset to add to a vertex to unwrap a triangle across x = 1
    dirichlet_mask: np.ndarray  # (M,)
    film: np.ndarray  # (K,) True for film triangles
    periodic_map: np.ndarray  # (nx + 1, ny + 1) grid index -> node id
    layer: float | None = None

    @property
    def resolution(self) -> tuple[int, int]:
        return self.nx, self.ny

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def element_region(self) -> np.ndarray:
        return np.where(self.film, FILM, VOID)

    def vertices(self) -> np.ndarray:
        """(K, 3, 2) unwrapped vertex coordinates."""
        v = self.nodes[self.triangles].copy()
        v[..., 0] += self.shift
        return v

    def areas(self) -> np.ndarray:
        v = self.vertices()
        e1 = v[:, 1] - v[:, 0]
        e2 = v[:, 2] - v[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    def centroids(self) -> np.ndarray:
        return self.vertices().mean(axis=1)

    def min_angle(self) -> float:
        """Smallest interior angle over all triangles, in degrees."""
        v = self.vertices()
        worst = np.inf
        for k in range(3):
            p, q, r = v[:, k], v[:, (k + 1) % 3], v[:, (k + 2) % 3]
            u, w = q - p, r - p
            cos = np.einsum("ij,ij->i", u, w) / (np.linalg.norm(u, axis=1) * np.linalg.norm(w, axis=1))
            worst = min(worst, np.degrees(np.arccos(np.clip(cos, -1.0, 1.0))).min())
        return float(worst)

    def interface_spacing(self) -> float:
        """Largest height of a void cell touching the film, over all columns."""
        n_lo, n_film, _ = self.counts
        below = self.levels[:, n_lo] - self.levels[:, n_lo - 1]
        j = n_lo + n_film
        above = self.levels[:, j + 1] - self.levels[:, j]
        return float(max(below.max(), above.max()))

    @property
    def interior(self) -> np.ndarray:
        return ~self.dirichlet_mask


def _allocate(total: int, weights, minimum) -> list[int]:
    """Split ``total`` cells proportionally to ``weights`` (largest remainder)."""
    weights = np.asarray(weights, dtype=float)
    minimum = np.asarray(minimum, dtype=int)
    spare = total - minimum.sum()
    if spare < 0:
        raise ValueError(f"ny={total} too small; need at least {minimum.sum()}")
    raw = spare * weights / weights.sum()
    n = np.floor(raw).astype(int)
    order = np.argsort(-(raw - n), kind="stable")
    n[order[: spare - n.sum()]] += 1
    return [int(v) for v in n + minimum]


def _void_offsets(t, length, width):
    """Distance from the film for parameter t in [0, 1] across a void of ``length``.

    With a layer width, half the cells go into ``[0, min(width, length/2)]``.
    """
    t = np.asarray(t, dtype=float)[None, :]
    length = np.asarray(length, dtype=float)[:, None]
    if width is None:
        return t * length
    tau = np.minimum(width, 0.5 * length)
    return np.where(t <= 0.5, 2.0 * t * tau, tau + (2.0 * t - 1.0) * (length - tau))


def column_levels(spec: DomainSpec, xs, counts, layer: float | None = None) -> np.ndarray:
    """y-levels for each column abscissa in ``xs``; shape (len(xs), sum(counts) + 1)."""
    n_lo, n_film, n_up = counts
    xs = np.asarray(xs, dtype=float)
    f_l, f_r = spec.film_lo, spec.film_hi
    low = np.atleast_1d(spec.lower(xs))
    up = np.atleast_1d(spec.upper(xs))
    lower = f_l - _void_offsets(1.0 - np.arange(n_lo) / n_lo, f_l - low, layer)
    film = f_l + spec.thickness * np.arange(n_film) / n_film
    film = np.broadcast_to(film, (len(xs), n_film))
    upper = f_r + _void_offsets(np.arange(n_up + 1) / n_up, up - f_r, layer)
    lv = np.concatenate([lower, film, upper], axis=1)
    # interface lines and boundaries exactly, independent of rounding above
    lv[:, 0] = low
    lv[:, n_lo] = f_l
    lv[:, n_lo + n_film] = f_r
    lv[:, -1] = up
    return lv


def build_mesh(spec: DomainSpec, nx: int, ny: int, layer: float | None = None) -> Mesh:
    """Mapped triangulation with ``ny`` cells per column and ``2 nx ny`` triangles.

    ``layer`` (a length) packs half of each void's cells into a band of that
    width next to the film, for resolving boundary layers of width ~ sqrt(a).
    """
    if nx < 4 or ny < 8:
        raise ValueError("need nx >= 4 and ny >= 8")
    if layer is not None and not layer > 0:
        raise ValueError("layer width must be positive")
    c = spec.constants
    gaps = (spec.film_lo - c.b_l_min, c.b_r_max - spec.film_hi)
    if layer is None:
        weights = (gaps[0], spec.thickness, gaps[1])
    else:
        weights = (min(2 * layer, gaps[0]), spec.thickness, min(2 * layer, gaps[1]))
    counts = tuple(_allocate(ny, weights, (2, 2, 2)))

    xs = np.arange(nx + 1) / nx
    levels = column_levels(spec, xs, counts, layer)
    levels[nx] = levels[0]  # same physical column; keep bit-identical

    grid = np.arange(nx * (ny + 1)).reshape(nx, ny + 1)
    periodic_map = np.vstack([grid, grid[:1]])
    X = np.repeat(xs[:nx, None], ny + 1, axis=1)
    nodes = np.column_stack([X.ravel(), levels[:nx].ravel()])

    i, j = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    i, j = i.ravel(), j.ravel()
    ll = periodic_map[i, j]
    lr = periodic_map[i + 1, j]
    ul = periodic_map[i, j + 1]
    ur = periodic_map[i + 1, j + 1]
    wrap = (i == nx - 1).astype(float)
    zero = np.zeros_like(wrap)
    tris = np.empty((2 * len(i), 3), dtype=np.int64)
    shift = np.empty((2 * len(i), 3))
    tris[0::2] = np.column_stack([ll, lr, ur])
    tris[1::2] = np.column_stack([ll, ur, ul])
    shift[0::2] = np.column_stack([zero, wrap, wrap])
    shift[1::2] = np.column_stack([zero, wrap, zero])

    n_lo, n_film, _ = counts
    row = np.repeat(j, 2)
    film = (row >= n_lo) & (row < n_lo + n_film)

    jj = np.tile(np.arange(ny + 1), nx)
    dirichlet = (jj == 0) | (jj == ny)

    mesh = Mesh(
        spec=spec,
        nx=nx,
        ny=ny,
        counts=counts,
        levels=levels,
        nodes=nodes,
        triangles=tris,
        shift=shift,
        dirichlet_mask=dirichlet,
        film=film,
        periodic_map=periodic_map,
        layer=layer,
    )
    for arr in (levels, nodes, tris, shift, dirichlet, film, periodic_map):
        arr.flags.writeable = False
    angle = mesh.min_angle()
    if angle < MIN_ANGLE_WARN_DEG:
        log.warning("minimum triangle angle %.3g deg (nx=%d, ny=%d)", angle, nx, ny)
    return mesh


def locate_region(mesh: Mesh, t: int) -> str:
    return FILM if mesh.film[t] else VOID


def export_mesh(mesh: Mesh, path) -> None:
    """Plain-text dump: ``nodes M triangles K``, node coordinates, then ``i j k region``.

    Node coordinates are canonical (x in [0, 1)); triangles in the last column
    reference nodes at x = 0 and wrap across the periodic seam.
    """
    path = Path(path)
    with path.open("w") as fh:
        fh.write(f"nodes {mesh.n_nodes} triangles {mesh.n_triangles}\n")
        for x, y in mesh.nodes:
            fh.write(f"{x:.17g} {y:.17g}\n")
        for (p, q, r), region in zip(mesh.triangles, mesh.element_region):
            fh.write(f"{p} {q} {r} {region}\n")


def read_mesh_export(path):
    """Parse an :func:`export_mesh` file into (nodes, triangles, regions)."""
    lines = Path(path).read_text().splitlines()
    _, m, _, k = lines[0].split()
    m, k = int(m), int(k)
    nodes = np.array([[float(v) for v in ln.split()] for ln in lines[1 : 1 + m]])
    rows = [ln.split() for ln in lines[1 + m : 1 + m + k]]
    tris = np.array([[int(v) for v in r[:3]] for r in rows], dtype=np.int64)
    regions = np.array([r[3] for r in rows])
    return nodes, tris, regions
