"""P1 assembly of ``a (grad s, grad u) + (s, u)_void = (div u)_film``.

Both vector components share one bilinear form, so one matrix serves both;
they differ only in the load ``int_film d_i(phi)``.  Dirichlet nodes are
removed symmetrically, leaving an SPD system on the free nodes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.io
import scipy.sparse as sp

from .mesh import Mesh

AXES = ("x", "y")

_CONSISTENT = (np.ones((3, 3)) + np.eye(3)) / 12.0
_LUMPED = np.eye(3) / 3.0


def element_gradients(mesh: Mesh):
    """Triangle areas (K,) and constant basis gradients (K, 3, 2)."""
    v = mesh.vertices()
    x, y = v[..., 0], v[..., 1]
    area = 0.5 * ((x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0]) - (x[:, 2] - x[:, 0]) * (y[:, 1] - y[:, 0]))
    grads = np.empty_like(v)
    for k in range(3):
        p, q = (k + 1) % 3, (k + 2) % 3
        grads[:, k, 0] = y[:, p] - y[:, q]
        grads[:, k, 1] = x[:, q] - x[:, p]
    grads /= (2.0 * area)[:, None, None]
    return area, grads


def _freeze(A: sp.csr_matrix) -> sp.csr_matrix:
    for arr in (A.data, A.indices, A.indptr):
        arr.flags.writeable = False
    return A


def _mirror_upper(A: sp.spmatrix) -> sp.csr_matrix:
    """Exactly symmetric matrix from the upper triangle of ``A``."""
    U = sp.triu(A, format="csr")
    S = (U + sp.triu(U, k=1, format="csr").T).tocsr()
    S.sort_indices()
    return S


def assemble_matrix(mesh: Mesh, a: float, lumped: bool = False) -> sp.csr_matrix:
    """Full (all nodes) matrix of the bilinear form."""
    if not a > 0:
        raise ValueError("diffusion coefficient must be positive")
    area, grads = element_gradients(mesh)
    if np.any(area <= 0):
        raise ValueError("mesh has non-positive triangle areas")
    local = a * area[:, None, None] * np.einsum("kid,kjd->kij", grads, grads)
    mass = _LUMPED if lumped else _CONSISTENT
    local[~mesh.film] += area[~mesh.film, None, None] * mass
    rows = np.repeat(mesh.triangles, 3, axis=1)
    cols = np.tile(mesh.triangles, (1, 3))
    n = mesh.n_nodes
    A = sp.coo_matrix((local.ravel(), (rows.ravel(), cols.ravel())), shape=(n, n)).tocsr()
    return _mirror_upper(A)


def film_load(mesh: Mesh, axis: int) -> np.ndarray:
    """``int_film d(phi_i)/dx_axis`` for every node."""
    area, grads = element_gradients(mesh)
    contrib = area[mesh.film, None] * grads[mesh.film, :, axis]
    return np.bincount(mesh.triangles[mesh.film].ravel(), weights=contrib.ravel(), minlength=mesh.n_nodes)


@dataclass(frozen=True, eq=False)
class SparseSystem:
    """Reduced SPD system on the free (non-Dirichlet) nodes of a mesh."""

    mesh: Mesh
    matrix: sp.csr_matrix
    rhs: np.ndarray
    free: np.ndarray  # node ids of the unknowns
    boundary_values: np.ndarray  # full-length; prescribed values on Dirichlet nodes, 0 elsewhere
    component: str

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def row_offsets(self) -> np.ndarray:
        return self.matrix.indptr

    @property
    def col_indices(self) -> np.ndarray:
        return self.matrix.indices

    @property
    def values(self) -> np.ndarray:
        return self.matrix.data

    def expand(self, u: np.ndarray) -> np.ndarray:
        """Full nodal vector from reduced unknowns, boundary values restored."""
        full = self.boundary_values.copy()
        full[self.free] = u
        return full


def _frozen(arr):
    arr = np.asarray(arr, dtype=float)
    arr.flags.writeable = False
    return arr


def assemble(mesh: Mesh, a: float, lumped: bool = False) -> tuple[SparseSystem, SparseSystem]:
    """Systems for the x- and y-components, sharing one matrix."""
    A = assemble_matrix(mesh, a, lumped)
    free = np.flatnonzero(~mesh.dirichlet_mask)
    Aff = _freeze(A[free][:, free].tocsr())
    zeros = _frozen(np.zeros(mesh.n_nodes))
    free.flags.writeable = False
    return tuple(
        SparseSystem(mesh, Aff, _frozen(film_load(mesh, axis)[free]), free, zeros, AXES[axis])
        for axis in (0, 1)
    )


def assemble_homogeneous(mesh: Mesh, a: float, boundary_values, lumped: bool = False,
                         component: str = "d") -> SparseSystem:
    """Zero-load system with inhomogeneous Dirichlet data lifted into the rhs.

    ``boundary_values`` is either full-length (only Dirichlet entries are
    read) or has one entry per Dirichlet node in node order.
    """
    g = np.asarray(boundary_values, dtype=float)
    bnd = np.flatnonzero(mesh.dirichlet_mask)
    if g.shape == (len(bnd),):
        full = np.zeros(mesh.n_nodes)
        full[bnd] = g
    elif g.shape == (mesh.n_nodes,):
        full = np.where(mesh.dirichlet_mask, g, 0.0)
    else:
        raise ValueError(f"boundary values must have length {len(bnd)} or {mesh.n_nodes}, got {g.shape}")
    if not np.all(np.isfinite(full[bnd])):
        raise ValueError("missing (non-finite) boundary values")
    A = assemble_matrix(mesh, a, lumped)
    free = np.flatnonzero(~mesh.dirichlet_mask)
    Aff = _freeze(A[free][:, free].tocsr())
    rhs = -(A[free][:, bnd] @ full[bnd])
    free.flags.writeable = False
    return SparseSystem(mesh, Aff, _frozen(rhs), free, _frozen(full), component)


def write_matrix_market(system: SparseSystem, path) -> None:
    """Dump the reduced matrix in MatrixMarket coordinate format."""
    scipy.io.mmwrite(str(path), system.matrix, symmetry="symmetric",
                     comment=f"filmthick reduced system, component {system.component}")
