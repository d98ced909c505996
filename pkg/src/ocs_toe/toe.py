"""Offline topology engineering for the mirror-decomposable schemes.

Pipeline (cross wiring): halve the demand into C = A + A^T, slice A
into k_egroup/2 partial permutation matchings, then place matching t on
the OCS pair (2t, 2t+1) with the odd OCS carrying the transpose.  The
result realizes the demand exactly for every valid input.

Dual-link uniform wiring runs the same pipeline but realizes A and A^T
on the same OCS through its two capacity layers (psi=2).
"""

from __future__ import annotations

from .decomp import decompose_symmetric, decompose_to_matchings
from .model import (
    LogicalTopology,
    Matrix,
    OcsConfiguration,
    PhysicalTopology,
    WiringScheme,
)

SubSolution = list[list[list[int]]]  # P x P x H over one mirror sub-topology


def merge_mirror(x_sub: SubSolution, phys: PhysicalTopology) -> OcsConfiguration:
    """Populate the mirrored full configuration from an even-side solution.

    x[i][j][2t] = x_sub[i][j][t] and x[j][i][2t+1] = x_sub[i][j][t];
    projecting the even OCSes back recovers x_sub exactly.
    """
    p = phys.p
    h = phys.num_ocs // 2
    cfg = OcsConfiguration.zeros(p, phys.num_ocs)
    for i in range(p):
        for j in range(p):
            for t in range(h):
                v = x_sub[i][j][t]
                if v:
                    cfg.x[i][j][2 * t] = v
                    cfg.x[j][i][2 * t + 1] = v
    return cfg


def project_even(cfg: OcsConfiguration) -> SubSolution:
    """Inverse of merge_mirror: keep only the even OCS layers."""
    h = cfg.num_ocs // 2
    return [
        [[cfg.x[i][j][2 * t] for t in range(h)] for j in range(cfg.p)]
        for i in range(cfg.p)
    ]


def _slices_to_sub(slices: list[Matrix], p: int) -> SubSolution:
    return [
        [[slices[t][i][j] for t in range(len(slices))] for j in range(p)]
        for i in range(p)
    ]


def even_side_totals(cfg: OcsConfiguration) -> Matrix:
    """Sum of the even-OCS layers; the incumbent's A-side view."""
    h = cfg.num_ocs // 2
    return [
        [sum(cfg.x[i][j][2 * t] for t in range(h)) for j in range(cfg.p)]
        for i in range(cfg.p)
    ]


def solve_cross(
    lt: LogicalTopology,
    phys: PhysicalTopology,
    prev: OcsConfiguration | None = None,
) -> OcsConfiguration:
    """Exact cross-wiring configuration for any valid demand.

    When a previous configuration is supplied its even-side totals bias
    the halving step, which tends to reduce rewiring without affecting
    feasibility.
    """
    if phys.scheme is not WiringScheme.CROSS:
        raise ValueError(f"expected cross wiring, got {phys.scheme.value}")
    bias = even_side_totals(prev) if prev is not None else None
    a = decompose_symmetric(lt, bias)
    slices = decompose_to_matchings(a, phys.k_egroup // 2)
    return merge_mirror(_slices_to_sub(slices, phys.p), phys)


def solve_dual_link(lt: LogicalTopology, phys: PhysicalTopology) -> OcsConfiguration:
    """Exact dual-link-uniform configuration for any valid demand.

    OCS t carries matching t on one port layer and its transpose on the
    other, so each count matrix x[.][.][t] is slice + slice^T.
    """
    if phys.scheme is not WiringScheme.DUAL_LINK_UNIFORM:
        raise ValueError(f"expected dual-link uniform wiring, got {phys.scheme.value}")
    a = decompose_symmetric(lt)
    slices = decompose_to_matchings(a, phys.k_egroup // 2)
    cfg = OcsConfiguration.zeros(phys.p, phys.num_ocs)
    for t, s in enumerate(slices):
        for i in range(phys.p):
            for j in range(phys.p):
                cfg.x[i][j][t] = s[i][j] + s[j][i]
    return cfg
