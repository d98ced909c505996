"""Integer minimum-cost circulation with per-arc [lower, upper] bounds.

All capacities and costs are exact integers; the solver never rounds.
Convex piecewise-linear arc costs are expressed as bundles of parallel
arcs, one per linear segment (convexity guarantees the cheap segments
fill first at any optimum).

Solving strategy:

1. eliminate lower bounds (mandatory flow becomes node imbalance),
2. pre-saturate arcs with negative residual cost (their reverse arcs
   then carry positive cost, so every residual cost is nonnegative),
3. route the imbalances from a super-source to a super-sink with
   successive shortest augmenting paths (Dijkstra + node potentials);
   when every cost is zero a plain blocking-flow (Dinic) pass is used
   instead, which is much faster on the pure-feasibility networks that
   dominate this package.

If the imbalances cannot be fully routed, no circulation satisfies the
lower bounds and the result is Infeasible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

INF = 10**18

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"


class ConvexityError(ValueError):
    """Raised when piecewise-linear segments have decreasing slopes."""


@dataclass
class Arc:
    tail: int
    head: int
    lower: int
    upper: int
    cost: int


@dataclass
class FlowResult:
    status: str
    flow: list[int] = field(default_factory=list)
    total_cost: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    def bundle_flow(self, arc_ids: list[int]) -> int:
        return sum(self.flow[a] for a in arc_ids)


class FlowNetwork:
    """A directed graph with integer [lower, upper] arc bounds and costs."""

    def __init__(self, num_nodes: int = 0):
        self.num_nodes = num_nodes
        self.arcs: list[Arc] = []
        self._hub: int | None = None

    def add_node(self) -> int:
        self.num_nodes += 1
        return self.num_nodes - 1

    def add_arc(self, tail: int, head: int, lower: int, upper: int, cost: int = 0) -> int:
        for v in (tail, head):
            if not (0 <= v < self.num_nodes):
                raise ValueError(f"node {v} out of range (have {self.num_nodes})")
        for value in (lower, upper, cost):
            if not isinstance(value, int):
                raise ValueError(f"bounds and costs must be exact integers, got {value!r}")
        if lower < 0 or lower > upper:
            raise ValueError(f"invalid bounds [{lower}, {upper}] on arc {tail}->{head}")
        self.arcs.append(Arc(tail, head, lower, upper, cost))
        return len(self.arcs) - 1

    def add_pwl_arc(self, tail: int, head: int, segments: list[tuple[int, int]]) -> list[int]:
        """Add a convex piecewise-linear cost arc as parallel segment arcs.

        Each segment is (length, slope); slopes must be non-decreasing.
        Returns the arc ids of the bundle; the total bundle flow prices
        the piecewise-linear function correctly at any optimum.
        """
        prev_slope = None
        ids = []
        for length, slope in segments:
            if length <= 0:
                raise ValueError(f"segment length must be positive, got {length}")
            if prev_slope is not None and slope < prev_slope:
                raise ConvexityError(f"slopes must be non-decreasing, got {slope} after {prev_slope}")
            prev_slope = slope
            ids.append(self.add_arc(tail, head, 0, length, slope))
        return ids

    def hub(self) -> int:
        """The designated circulation hub used by ranged supplies."""
        if self._hub is None:
            self._hub = self.add_node()
        return self._hub

    def set_supply_range(self, node: int, min_supply: int, max_supply: int) -> "FlowNetwork":
        """Require the node's net outflow to lie in [min_supply, max_supply].

        Positive supply is injected from the hub; negative supply (i.e.
        demand) is returned to the hub on the opposite direction.
        """
        if min_supply > max_supply:
            raise ValueError(f"min_supply {min_supply} > max_supply {max_supply}")
        hub = self.hub()
        if max_supply > 0:
            self.add_arc(hub, node, max(min_supply, 0), max_supply, 0)
        if min_supply < 0:
            self.add_arc(node, hub, max(-max_supply, 0), -min_supply, 0)
        return self

    def to_dimacs(self) -> str:
        """Dump the network in DIMACS-min format for external cross-checks."""
        lines = [f"p min {self.num_nodes} {len(self.arcs)}"]
        for a in self.arcs:
            lines.append(f"a {a.tail + 1} {a.head + 1} {a.lower} {a.upper} {a.cost}")
        return "\n".join(lines) + "\n"

    def solve(self) -> FlowResult:
        return _solve(self)


def solve_min_cost_circulation(net: FlowNetwork) -> FlowResult:
    """Find an integral cost-minimal circulation or report Infeasible."""
    return net.solve()


class _Residual:
    """Paired-arc residual graph; arc i and i^1 are mutual reverses."""

    def __init__(self, num_nodes: int):
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]

    def add(self, u: int, v: int, cap: int, cost: int) -> int:
        i = len(self.to)
        self.to.append(v)
        self.cap.append(cap)
        self.cost.append(cost)
        self.adj[u].append(i)
        self.to.append(u)
        self.cap.append(0)
        self.cost.append(-cost)
        self.adj[v].append(i + 1)
        return i


def _solve(net: FlowNetwork) -> FlowResult:
    n = net.num_nodes
    excess = [0] * (n + 2)
    source, sink = n, n + 1
    res = _Residual(n + 2)
    base_flow = [0] * len(net.arcs)
    res_id = [0] * len(net.arcs)

    for idx, a in enumerate(net.arcs):
        f0 = a.lower
        if a.cost < 0:
            # Saturate: the reverse residual arc carries positive cost,
            # so Dijkstra potentials stay valid from an all-zero start.
            f0 = a.upper
        excess[a.head] += f0
        excess[a.tail] -= f0
        base_flow[idx] = f0
        res_id[idx] = res.add(a.tail, a.head, a.upper - f0, a.cost)
        # Units above the lower bound (pre-saturation) may be undone.
        res.cap[res_id[idx] + 1] = f0 - a.lower

    need = 0
    for v in range(n):
        if excess[v] > 0:
            res.add(source, v, excess[v], 0)
            need += excess[v]
        elif excess[v] < 0:
            res.add(v, sink, -excess[v], 0)

    if all(c == 0 for c in res.cost):
        pushed = _dinic(res, source, sink)
    else:
        pushed = _ssp(res, source, sink, need)

    if pushed < need:
        return FlowResult(status=INFEASIBLE)

    flow = [0] * len(net.arcs)
    total_cost = 0
    for idx, a in enumerate(net.arcs):
        i = res_id[idx]
        # Remaining forward capacity tells how much was pushed (or undone).
        flow[idx] = base_flow[idx] + (a.upper - base_flow[idx] - res.cap[i])
        total_cost += flow[idx] * a.cost
        assert a.lower <= flow[idx] <= a.upper
    return FlowResult(status=FEASIBLE, flow=flow, total_cost=total_cost)


def _dinic(res: _Residual, source: int, sink: int) -> int:
    n = len(res.adj)
    total = 0
    while True:
        level = [-1] * n
        level[source] = 0
        queue = [source]
        for u in queue:
            for i in res.adj[u]:
                v = res.to[i]
                if res.cap[i] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if level[sink] < 0:
            return total
        it = [0] * n

        def dfs(u: int, limit: int) -> int:
            if u == sink:
                return limit
            while it[u] < len(res.adj[u]):
                i = res.adj[u][it[u]]
                v = res.to[i]
                if res.cap[i] > 0 and level[v] == level[u] + 1:
                    pushed = dfs(v, min(limit, res.cap[i]))
                    if pushed > 0:
                        res.cap[i] -= pushed
                        res.cap[i ^ 1] += pushed
                        return pushed
                it[u] += 1
            level[u] = -1
            return 0

        while True:
            pushed = dfs(source, INF)
            if pushed == 0:
                break
            total += pushed


def _ssp(res: _Residual, source: int, sink: int, need: int) -> int:
    """Successive shortest paths with Dijkstra and node potentials.

    Ties in path length are broken by scan order, i.e. by lowest arc
    index out of each node, keeping results deterministic.
    """
    n = len(res.adj)
    potential = [0] * n
    pushed_total = 0
    while pushed_total < need:
        dist = [INF] * n
        parent_arc = [-1] * n
        dist[source] = 0
        heap = [(0, source)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for i in res.adj[u]:
                if res.cap[i] <= 0:
                    continue
                v = res.to[i]
                nd = d + res.cost[i] + potential[u] - potential[v]
                if nd < dist[v]:
                    dist[v] = nd
                    parent_arc[v] = i
                    heapq.heappush(heap, (nd, v))
        if dist[sink] >= INF:
            return pushed_total
        for v in range(n):
            if dist[v] < INF:
                potential[v] += dist[v]
        bottleneck = need - pushed_total
        v = sink
        while v != source:
            i = parent_arc[v]
            bottleneck = min(bottleneck, res.cap[i])
            v = res.to[i ^ 1]
        v = sink
        while v != source:
            i = parent_arc[v]
            res.cap[i] -= bottleneck
            res.cap[i ^ 1] += bottleneck
            v = res.to[i ^ 1]
        pushed_total += bottleneck
    return pushed_total
