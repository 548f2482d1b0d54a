"""Binary PPM heatmaps of the thickness classification.

The image covers ``x in [0, 1)`` by ``y in [min b_l, max b_r]`` at
``PIXELS_PER_UNIT`` pixels per unit length, top row = largest y.  Colours:

- film, ``lo < h < hi``: green ``(0, 160, 0)``
- film, out of band or flagged: grey ``(128, 128, 128)``
- void: orange ``(255, 165, 0)``
- outside D: white
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .mesh import Mesh
from .thickness import OK, ThicknessField

PIXELS_PER_UNIT = 300

GREEN = (0, 160, 0)
GREY = (128, 128, 128)
ORANGE = (255, 165, 0)
WHITE = (255, 255, 255)


def locate_points(mesh: Mesh, x, y) -> np.ndarray:
    """Triangle index containing each point, or -1 outside D.

    Uses the mapped structure: column from x, cell row by bisection on the
    interpolated level lines, triangle from the side of the quad diagonal.
    """
    x = np.mod(np.asarray(x, dtype=float), 1.0)
    y = np.asarray(y, dtype=float)
    nx, ny = mesh.nx, mesh.ny
    s = x * nx
    i = np.minimum(s.astype(int), nx - 1)
    t = s - i
    lo_col = mesh.levels[i]
    hi_col = mesh.levels[i + 1]
    lv = (1.0 - t)[:, None] * lo_col + t[:, None] * hi_col
    j = np.sum(lv <= y[:, None], axis=1) - 1
    j[y == lv[:, -1]] = ny - 1  # top boundary belongs to the last row
    inside = (j >= 0) & (j < ny)
    out = np.full(len(x), -1, dtype=np.int64)
    p = np.flatnonzero(inside)
    jp = j[p]
    diag = (1.0 - t[p]) * lo_col[p, jp] + t[p] * hi_col[p, jp + 1]
    out[p] = 2 * (i[p] * ny + jp) + (y[p] > diag)
    return out


def heatmap_pixels(mesh: Mesh, tf: ThicknessField, band=(0.3, 0.7),
                   pixels_per_unit: int = PIXELS_PER_UNIT) -> np.ndarray:
    """(H, W, 3) uint8 image."""
    c = mesh.spec.constants
    ymin, ymax = c.b_l_min, c.b_r_max
    W = pixels_per_unit
    H = max(1, int(np.ceil(pixels_per_unit * (ymax - ymin))))
    lo, hi = band
    colour_of = np.empty((mesh.n_triangles, 3), dtype=np.uint8)
    colour_of[:] = ORANGE
    in_band = (tf.flags == OK) & (tf.h > lo) & (tf.h < hi)
    colour_of[tf.triangles] = GREY
    colour_of[tf.triangles[in_band]] = GREEN
    img = np.empty((H, W, 3), dtype=np.uint8)
    img[:] = WHITE
    ys = ymax - (np.arange(H) + 0.5) * (ymax - ymin) / H
    for col in range(W):
        xc = (col + 0.5) / W
        tri = locate_points(mesh, np.full(H, xc), ys)
        hit = tri >= 0
        img[hit, col] = colour_of[tri[hit]]
    return img


def write_ppm(img: np.ndarray, path) -> None:
    H, W, _ = img.shape
    with Path(path).open("wb") as fh:
        fh.write(f"P6\n{W} {H}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(img, dtype=np.uint8).tobytes())


def read_ppm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    parts = data.split(maxsplit=4)
    if parts[0] != b"P6":
        raise ValueError("not a binary PPM")
    W, H = int(parts[1]), int(parts[2])
    return np.frombuffer(parts[4], dtype=np.uint8).reshape(H, W, 3)


def write_heatmap(mesh: Mesh, tf: ThicknessField, path, band=(0.3, 0.7)) -> None:
    write_ppm(heatmap_pixels(mesh, tf, band), path)
