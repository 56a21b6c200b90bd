"""Lagrange interpolation of nodal data, evaluated in barycentric form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid

__all__ = [
    "BarycentricWeights",
    "barycentric_weights",
    "basis_eval",
    "basis_matrix",
    "interpolate",
]


@dataclass(frozen=True)
class BarycentricWeights:
    """Barycentric weights lam[j] = 1 / prod_{k != j} (x_j - x_k) of a grid."""

    grid: Grid
    lam: np.ndarray

    def __post_init__(self) -> None:
        lam = np.array(self.lam, dtype=float)
        lam.flags.writeable = False
        object.__setattr__(self, "lam", lam)


def barycentric_weights(grid: Grid) -> BarycentricWeights:
    """Precompute the barycentric weights of a grid.

    The weights depend only on node positions; with them every subsequent
    evaluation costs O(N) per point and is numerically stable even for high
    degrees (Berrut & Trefethen, SIAM Review 46, 2004).
    """
    x = grid.nodes
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    lam = 1.0 / diff.prod(axis=1)
    if not np.all(np.isfinite(lam)) or np.any(lam == 0.0):
        raise ValueError("degenerate barycentric weights; nodes too close or interval too wide")
    return BarycentricWeights(grid, lam)


def _ratio_matrix(w: BarycentricWeights, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """lam_j / (x - x_j) per probe, plus the mask of node coincidences.

    A probe counts as coinciding with a node when the difference underflows
    the ratio (including exact equality); such rows are served the nodal
    value directly, so the ratios never overflow.
    """
    d = pts[:, None] - w.grid.nodes[None, :]
    hit = np.abs(d) <= np.abs(w.lam)[None, :] * 1e-300
    r = w.lam[None, :] / np.where(hit, 1.0, d)
    return r, hit


def basis_matrix(w: BarycentricWeights, pts) -> np.ndarray:
    """Evaluate every Lagrange basis polynomial at the given points.

    Returns B with B[p, j] = pi_j(pts[p]). Rows whose point coincides with a
    node are exact Kronecker rows, and every row sums to one identically
    because the true barycentric form normalizes by the same sum.
    """
    pts = np.atleast_1d(np.asarray(pts, dtype=float))
    r, hit = _ratio_matrix(w, pts)
    with np.errstate(invalid="ignore"):
        B = r / r.sum(axis=1)[:, None]
    rows = hit.any(axis=1)
    if rows.any():
        B[rows] = hit[rows].astype(float)
    return B


def basis_eval(w: BarycentricWeights, j: int, x: float) -> float:
    """Value of the j-th Lagrange basis polynomial at x; exactly delta_ij at nodes."""
    if not 0 <= j <= w.grid.N:
        raise IndexError(f"basis index {j} out of range 0..{w.grid.N}")
    return float(basis_matrix(w, [x])[0, j])


def _check_data(f, grid: Grid) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape != (grid.N + 1,):
        raise ValueError(f"data length {f.shape} does not match the grid's {grid.N + 1} nodes")
    return f


def _interpolate_rows(w: BarycentricWeights, data: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Barycentric evaluation with an independent data vector per probe row."""
    r, hit = _ratio_matrix(w, pts)
    with np.errstate(invalid="ignore"):
        vals = (r * data).sum(axis=1) / r.sum(axis=1)
    prow, pcol = np.nonzero(hit)
    vals[prow] = data[prow, pcol]
    return vals


def interpolate(w: BarycentricWeights, f, x):
    """Evaluate the degree-N interpolant of nodal data f at x (scalar or array).

    Uses the true barycentric form, which reproduces nodal values exactly,
    sums the basis to one identically, and is exact for polynomial data of
    degree <= N.
    """
    f = _check_data(f, w.grid)
    xs = np.asarray(x, dtype=float)
    pts = np.atleast_1d(xs)
    vals = _interpolate_rows(w, np.broadcast_to(f, (pts.size, f.size)), pts)
    return float(vals[0]) if xs.ndim == 0 else vals
