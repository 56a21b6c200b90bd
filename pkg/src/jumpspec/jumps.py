"""Jump-corrected interpolation, differentiation and integration.

A sampled function with a discontinuity of known location and known
derivative jumps can be represented by a single degree-N interpolant whose
coefficients jump across the discontinuity. Operationally, each nodal datum
receives a correction built from the jump data before the smooth machinery
(barycentric evaluation, derivative matrices, quadrature weights) is
applied. Corrections vanish identically when the jump data is empty, so the
smooth results are recovered unchanged in that case.

Conventions: the Heaviside factor used throughout is 1 for positive
argument, 0 for negative and 1/2 at zero; the discontinuity must lie
strictly between nodes. A discontinuity sitting exactly on a node is served
only by one_sided_derivatives_at_node, because the stored nodal value is
otherwise ambiguous (left limit, right limit or average).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diffmat import DerivMatrix, apply, fd_weights
from .grid import Grid
from .lagrange import BarycentricWeights, _check_data, _interpolate_rows, interpolate
from .quadrature import QuadRule, basis_integrals, integrate

__all__ = [
    "JumpData",
    "XiOnNodeError",
    "CorrectionWeights",
    "jump_weights",
    "correction_terms",
    "correction_matrix",
    "correction_weights",
    "reconstruct_pieces",
    "corrected_interpolate",
    "corrected_derivative",
    "corrected_integrate",
    "one_sided_derivatives_at_node",
]


class XiOnNodeError(ValueError):
    """The discontinuity coincides exactly with a grid node.

    The general correction path cannot decide which side the stored nodal
    value belongs to; route on-node discontinuities to
    one_sided_derivatives_at_node instead.
    """


@dataclass(frozen=True)
class JumpData:
    """Location of a discontinuity and the derivative jumps across it.

    jumps[m] is the m-th derivative jump (right limit minus left limit) at
    xi. An empty jump array means "no correction": all operations then
    reduce to their plain Lagrange counterparts.
    """

    xi: float
    jumps: np.ndarray

    def __post_init__(self) -> None:
        if not np.isfinite(self.xi):
            raise ValueError("discontinuity location must be finite")
        jumps = np.atleast_1d(np.array(self.jumps, dtype=float))
        if jumps.size and not np.all(np.isfinite(jumps)):
            raise ValueError("derivative jumps must be finite")
        jumps.flags.writeable = False
        object.__setattr__(self, "jumps", jumps)

    @property
    def order(self) -> int:
        """Highest enforced jump order; -1 when no jumps are enforced."""
        return self.jumps.size - 1

    def to_dict(self) -> dict:
        return {"xi": self.xi, "J": self.jumps.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> JumpData:
        return cls(float(d["xi"]), np.asarray(d["J"], dtype=float))


@dataclass(frozen=True)
class CorrectionWeights:
    """Precomputed correction data of one discontinuity on one grid.

    node_weights[j] is the truncated jump series at node j; at_nodes[i, j]
    is the correction applied to datum j when the interpolant is evaluated
    at node i (zero whenever i and j lie on the same side, in particular on
    the diagonal).
    """

    grid: Grid
    jump: JumpData
    node_weights: np.ndarray
    at_nodes: np.ndarray


def _require_interior(jump: JumpData, grid: Grid) -> None:
    if not grid.a < jump.xi < grid.b:
        raise ValueError(
            f"discontinuity at {jump.xi} lies outside the open interval ({grid.a}, {grid.b})"
        )
    if np.any(grid.nodes == jump.xi):
        raise XiOnNodeError(f"discontinuity at {jump.xi} coincides with a grid node")


def _as_jump_tuple(jump, grid: Grid) -> tuple[JumpData, ...]:
    """Normalize a JumpData or sequence thereof; drop entries with no jumps."""
    jumps = (jump,) if isinstance(jump, JumpData) else tuple(jump)
    for jd in jumps:
        _require_interior(jd, grid)
    active = tuple(jd for jd in jumps if jd.order >= 0)
    xis = [jd.xi for jd in active]
    if len(set(xis)) != len(xis):
        raise ValueError("discontinuity locations must be pairwise distinct")
    return active


def jump_weights(jump: JumpData, grid: Grid) -> np.ndarray:
    """Per-node correction weights: the truncated jump series at each node.

    Node j receives sum_m jumps[m] / m! * (x_j - xi)^m, evaluated by Horner
    for stability at higher orders. This is the amount by which the two
    smooth extensions of the data differ at that node, as implied by the
    enforced jumps; with no jumps enforced it is identically zero.
    """
    _require_interior(jump, grid)
    if jump.order < 0:
        return np.zeros(grid.N + 1)
    d = grid.nodes - jump.xi
    coeff = jump.jumps / np.array([math.factorial(m) for m in range(jump.order + 1)])
    g = np.full(grid.N + 1, coeff[-1])
    for c in coeff[-2::-1]:
        g = g * d + c
    return g


def correction_terms(jump: JumpData, grid: Grid, x: float) -> np.ndarray:
    """Correction added to each nodal datum when evaluating at probe x.

    The term for node j vanishes when x and x_j lie on the same side of the
    discontinuity and equals +-(jump weight) otherwise, with sign chosen so
    data on the far side is pulled onto the probe's branch. At x equal to
    xi the two branches are averaged.
    """
    g = jump_weights(jump, grid)
    th_x = np.heaviside(x - jump.xi, 0.5)
    th_n = np.heaviside(grid.nodes - jump.xi, 0.5)
    return (th_x * (1.0 - th_n) - (1.0 - th_x) * th_n) * g


def correction_matrix(jump: JumpData, grid: Grid) -> np.ndarray:
    """Nodal correction table S[i, j], the correction to datum j at node i.

    Antisymmetric side pattern: +g_j when node i is right of the
    discontinuity and node j left of it, -g_j for the mirrored pair, zero
    otherwise (including the whole diagonal, which preserves collocation).
    """
    g = jump_weights(jump, grid)
    th = np.heaviside(grid.nodes - jump.xi, 0.5)
    return (th[:, None] - th[None, :]) * g[None, :]


def correction_weights(jump: JumpData, grid: Grid) -> CorrectionWeights:
    """Bundle per-node weights and the nodal correction table."""
    return CorrectionWeights(grid, jump, jump_weights(jump, grid), correction_matrix(jump, grid))


def reconstruct_pieces(f, jump: JumpData, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Nodal data (minus, plus) of the smooth left/right extensions of f.

    Interpolating either array with the plain machinery gives the degree-N
    polynomial valid on that side of the discontinuity; the derivative
    difference plus - minus at xi reproduces the enforced jumps and vanishes
    for orders above the enforced set through degree N.
    """
    f = _check_data(f, grid)
    g = jump_weights(jump, grid)
    left_of = grid.nodes < jump.xi
    plus = f + np.where(left_of, g, 0.0)
    minus = f - np.where(left_of, 0.0, g)
    return minus, plus


def corrected_interpolate(w: BarycentricWeights, f, jump, x):
    """Evaluate the jump-corrected interpolant of data f at x (scalar or array).

    jump may be a single JumpData or a sequence with pairwise-distinct
    locations, whose corrections add. The result collocates f at every node
    exactly and carries the enforced derivative jumps across each
    discontinuity; with empty jump data it is exactly lagrange.interpolate.
    """
    jumps = _as_jump_tuple(jump, w.grid)
    if not jumps:
        return interpolate(w, f, x)
    f = _check_data(f, w.grid)
    xs = np.asarray(x, dtype=float)
    pts = np.atleast_1d(xs)
    data = np.broadcast_to(f, (pts.size, f.size)).copy()
    for jd in jumps:
        g = jump_weights(jd, w.grid)
        th_n = np.heaviside(w.grid.nodes - jd.xi, 0.5)
        th_p = np.heaviside(pts - jd.xi, 0.5)
        data += th_p[:, None] * ((1.0 - th_n) * g)[None, :]
        data -= (1.0 - th_p)[:, None] * (th_n * g)[None, :]
    vals = _interpolate_rows(w, data, pts)
    return float(vals[0]) if xs.ndim == 0 else vals


def corrected_derivative(D: DerivMatrix, f, jump) -> np.ndarray:
    """Apply a derivative matrix to jump-corrected data.

    Equivalent to differentiating the corrected interpolant at every node.
    For banded composite matrices only rows whose stencil straddles a
    discontinuity pick up corrections; all other rows return the plain
    matrix-vector product bit for bit.
    """
    jumps = _as_jump_tuple(jump, D.grid)
    out = apply(D, f)
    for jd in jumps:
        g = jump_weights(jd, D.grid)
        th = np.heaviside(D.grid.nodes - jd.xi, 0.5)
        # combine the two matvecs before adding: stencils on one side of the
        # discontinuity then receive exactly zero and keep the plain result
        out = out + (th * (D.entries @ g) - D.entries @ (th * g))
    return out


def corrected_integrate(rule: QuadRule, w: BarycentricWeights, f, jump) -> float:
    """Integrate jump-corrected data over the rule's interval.

    Augments the plain weighted sum with one correction per datum, built
    from basis integrals split at the discontinuity: nodes left of it
    contribute their jump weight times the basis integral over the right
    part, nodes right of it minus the weight times the left part.
    """
    if not np.array_equal(rule.grid.nodes, w.grid.nodes):
        raise ValueError("quadrature rule and barycentric weights belong to different grids")
    jumps = _as_jump_tuple(jump, rule.grid)
    total = integrate(rule, f)
    for jd in jumps:
        g = jump_weights(jd, rule.grid)
        upper = basis_integrals(w, jd.xi, rule.grid.b)
        lower = basis_integrals(w, rule.grid.a, jd.xi)
        q = np.where(rule.grid.nodes < jd.xi, g * upper, -g * lower)
        total += float(q.sum())
    return total


def one_sided_derivatives_at_node(grid: Grid, f, node_index: int, jumps) -> tuple[float, float]:
    """Left and right first derivatives at a node carrying a discontinuity.

    Serves the case the general path rejects: the discontinuity sits exactly
    on the interior node node_index, with value, slope and curvature jumps
    supplied as jumps = (J0, J1, J2) and the stored nodal value taken as
    given. Built on the centred 3-point stencil. The returned pair satisfies
    right - left = J1 up to a couple of roundings of J1.
    """
    f = _check_data(f, grid)
    J = np.asarray(jumps, dtype=float)
    if J.shape != (3,) or not np.all(np.isfinite(J)):
        raise ValueError("need the three jumps (J0, J1, J2) at the node")
    k = int(node_index)
    if not 0 < k < grid.N:
        raise ValueError("discontinuity node must be interior (a centred stencil is required)")
    xm, x0, xp = grid.nodes[k - 1 : k + 2]
    hm = x0 - xm
    hp = xp - x0
    span = hm + hp
    smooth = float(fd_weights(grid.nodes[k - 1 : k + 2], x0, 1) @ f[k - 1 : k + 2])
    shared = (
        smooth
        - 0.5 * J[0] * (1.0 / hm + 1.0 / hp - 2.0 / span)
        - 0.5 * J[2] * hp * hm / span
    )
    left = shared - J[1] * hm / span
    right = shared + J[1] * hp / span
    return left, right
