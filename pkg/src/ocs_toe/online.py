"""Online topology engineering with a minimal-rewiring objective.

Given a target sub-logical matrix A and the incumbent configuration u
over a set of OCSes, the merge-decomposition algorithm recursively
bipartitions the OCS set, solves the two-(merged-)group instance as a
min-cost flow whose arc costs are the convex piecewise-linear rewiring
penalties, and then decomposes each half.  The two-group solve is
optimal; the recursion is feasibility-preserving (the fractional split
x = |K2|/|K| * A witnesses every merged instance) but not claimed
optimal beyond two groups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decomp import decompose_symmetric
from .flow import FlowNetwork
from .model import LogicalTopology, Matrix, OcsConfiguration, PhysicalTopology, WiringScheme
from .toe import even_side_totals, merge_mirror

Tensor3 = list[list[list[int]]]  # P x P x H


class InfeasibleError(Exception):
    """The incumbent caps cannot host the requested sub-logical matrix."""


@dataclass(frozen=True)
class PwlSegments:
    """Piecewise-linear rewiring penalty for one (i, j) pair.

    Describes f(x) = (u1 - x)^+ + (u2 - a + x)^+ on [0, a] as segments
    of (length, slope); slopes come from {-1, 0, +1}, non-decreasing.
    """

    segments: tuple[tuple[int, int], ...]

    def value_at(self, x: int) -> int:
        total, pos = 0, 0
        for length, slope in self.segments:
            step = min(max(x - pos, 0), length)
            total += step * slope
            pos += length
        return total


def pwl_segments(u1: int, u2: int, a: int) -> PwlSegments:
    """Segment the rewiring penalty for splitting demand a across a pair.

    f(x) = (u1 - x)^+ + (u2 - a + x)^+ where x is the share placed on
    the first group.  Breakpoints are {u1, a - u2} clipped to (0, a).
    """
    if u1 < 0 or u2 < 0 or a < 0:
        raise ValueError("u1, u2 and a must be nonnegative")
    if a == 0:
        return PwlSegments(())
    points = sorted({b for b in (u1, a - u2) if 0 < b < a})
    bounds = [0] + points + [a]
    segments = []
    for left, right in zip(bounds, bounds[1:]):
        slope = (-1 if right <= u1 else 0) + (1 if left >= a - u2 else 0)
        segments.append((right - left, slope))
    return PwlSegments(tuple(segments))


def solve_two_group(
    a: Matrix,
    u: Tensor3,
    caps: Matrix,
) -> Tensor3:
    """Optimal min-rewiring placement of A over exactly two OCS groups.

    u is P x P x 2 (incumbent counts), caps is P x 2 (ports per EGroup
    per group).  Reduces to a circulation: supply node i carries range
    [rowsum_i(A) - caps[i][1], caps[i][0]], demand node j the column
    analog, and each (i, j) pair a piecewise-linear bundle of capacity
    A[i][j].  Raises InfeasibleError when the caps cannot host A.
    """
    p = len(a)
    row_sums = [sum(a[i]) for i in range(p)]
    col_sums = [sum(a[i][j] for i in range(p)) for j in range(p)]
    for i in range(p):
        if row_sums[i] > caps[i][0] + caps[i][1]:
            raise InfeasibleError(f"row {i}: demand {row_sums[i]} exceeds caps")
        if col_sums[i] > caps[i][0] + caps[i][1]:
            raise InfeasibleError(f"column {i}: demand {col_sums[i]} exceeds caps")

    net = FlowNetwork()
    net.hub()
    supply = [net.add_node() for _ in range(p)]
    demand = [net.add_node() for _ in range(p)]
    for i in range(p):
        net.set_supply_range(supply[i], max(row_sums[i] - caps[i][1], 0), caps[i][0])
        net.set_supply_range(demand[i], -caps[i][0], -max(col_sums[i] - caps[i][1], 0))

    bundles: dict[tuple[int, int], list[int]] = {}
    for i in range(p):
        for j in range(p):
            if a[i][j] == 0:
                continue
            segs = pwl_segments(u[i][j][0], u[i][j][1], a[i][j])
            bundles[(i, j)] = net.add_pwl_arc(supply[i], demand[j], list(segs.segments))

    result = net.solve()
    if not result.feasible:
        raise InfeasibleError("no placement satisfies the group caps")

    x = [[[0, 0] for _ in range(p)] for _ in range(p)]
    for i in range(p):
        for j in range(p):
            first = result.bundle_flow(bundles[(i, j)]) if (i, j) in bundles else 0
            x[i][j][0] = first
            x[i][j][1] = a[i][j] - first
    return x


def mdmcf_config(a: Matrix, u: Tensor3, caps: Matrix) -> Tensor3:
    """Merge-decomposition placement of A over H OCS groups.

    caps is P x H, u is P x P x H.  Groups are bipartitioned into
    contiguous balanced halves (any bipartition is valid; balanced
    halves bound the recursion depth at ceil(log2 H)).
    """
    p = len(a)
    h = len(caps[0])
    if h == 1:
        for i in range(p):
            if sum(a[i]) > caps[i][0]:
                raise InfeasibleError(f"row {i} exceeds single-group cap")
            if sum(a[j][i] for j in range(p)) > caps[i][0]:
                raise InfeasibleError(f"column {i} exceeds single-group cap")
        return [[[a[i][j]] for j in range(p)] for i in range(p)]
    if h == 2:
        return solve_two_group(a, u, caps)

    h1 = h // 2
    merged_u = [
        [[sum(u[i][j][k] for k in range(h1)), sum(u[i][j][k] for k in range(h1, h))]
         for j in range(p)]
        for i in range(p)
    ]
    merged_caps = [
        [sum(caps[i][:h1]), sum(caps[i][h1:])] for i in range(p)
    ]
    split = solve_two_group(a, merged_u, merged_caps)

    halves = []
    for r, (lo, hi) in enumerate(((0, h1), (h1, h))):
        a_r = [[split[i][j][r] for j in range(p)] for i in range(p)]
        u_r = [[u[i][j][lo:hi] for j in range(p)] for i in range(p)]
        caps_r = [caps[i][lo:hi] for i in range(p)]
        halves.append(mdmcf_config(a_r, u_r, caps_r))

    x = [[[0] * h for _ in range(p)] for _ in range(p)]
    for i in range(p):
        for j in range(p):
            for k in range(h1):
                x[i][j][k] = halves[0][i][j][k]
            for k in range(h1, h):
                x[i][j][k] = halves[1][i][j][k - h1]
    return x


def min_rewiring_cross(
    lt: LogicalTopology,
    u: OcsConfiguration,
    phys: PhysicalTopology,
    rewiring_aware: bool = True,
) -> OcsConfiguration:
    """End-to-end online pipeline for cross wiring.

    Projects the incumbent onto the even sub-group, halves the demand
    with a bias toward the incumbent's A-side totals, places the result
    with merge-decomposition against the incumbent, and mirrors.  With
    rewiring_aware=False all rewiring costs are zeroed (the
    rewiring-oblivious baseline); the output is still exact.
    """
    if phys.scheme is not WiringScheme.CROSS:
        raise ValueError(f"expected cross wiring, got {phys.scheme.value}")
    p = phys.p
    h = phys.num_ocs // 2
    if rewiring_aware:
        u_sub = [[[u.x[i][j][2 * t] for t in range(h)] for j in range(p)] for i in range(p)]
        bias = even_side_totals(u)
    else:
        u_sub = [[[0] * h for _ in range(p)] for _ in range(p)]
        bias = None
    caps = [[phys.capacity[i][2 * t] for t in range(h)] for i in range(p)]
    a = decompose_symmetric(lt, bias)
    x_sub = mdmcf_config(a, u_sub, caps)
    return merge_mirror(x_sub, phys)
