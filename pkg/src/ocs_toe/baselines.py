"""Comparison strategies and ground-truth oracles.

The exact uniform-wiring solver and the min-rewiring brute force are
size-guarded exhaustive searches; they exist to anchor the heuristics
and the flow-based algorithms at desk scale, not to run at cluster
scale.  No external ILP solver is used: the guarded searches are
hermetic and bit-reproducible.
"""

from __future__ import annotations

from functools import lru_cache

import networkx as nx
from scipy.optimize import linear_sum_assignment

from .model import (
    LogicalTopology,
    Matrix,
    OcsConfiguration,
    PhysicalTopology,
    WiringScheme,
)
from .online import InfeasibleError

Tensor3 = list[list[list[int]]]


class SizeGuardError(ValueError):
    """Instance too large for an exhaustive oracle; use a heuristic."""


Matching = tuple[tuple[int, int], ...]  # disjoint (i, j) pairs with i <= j


@lru_cache(maxsize=None)
def _symmetric_matchings(p: int) -> tuple[Matching, ...]:
    """All symmetric partial matchings on p nodes, self-loops included."""
    results: list[Matching] = []

    def extend(node: int, used: frozenset[int], chosen: tuple) -> None:
        if node == p:
            results.append(chosen)
            return
        if node in used:
            extend(node + 1, used, chosen)
            return
        extend(node + 1, used, chosen)  # leave idle
        extend(node + 1, used | {node}, chosen + ((node, node),))  # self-loop
        for other in range(node + 1, p):
            if other not in used:
                extend(node + 1, used | {node, other}, chosen + ((node, other),))

    extend(0, frozenset(), ())
    return tuple(results)


def _matching_gain(matching: Matching, residual: Matrix) -> int:
    gain = 0
    for i, j in matching:
        if i == j:
            gain += 1 if residual[i][i] > 0 else 0
        else:
            gain += 2 if residual[i][j] > 0 else 0
    return gain


def uniform_exact_small(lt: LogicalTopology, phys: PhysicalTopology) -> tuple[OcsConfiguration, int]:
    """Optimal best-effort uniform-wiring configuration by exhaustive search.

    Each OCS hosts one symmetric partial matching; the search maximizes
    the realized directed link count sum(min(X, C)).  Guarded to
    P <= 6 and K_egroup <= 6.
    """
    if phys.scheme is not WiringScheme.UNIFORM:
        raise ValueError(f"expected uniform wiring, got {phys.scheme.value}")
    if lt.p > 6 or lt.k_egroup > 6:
        raise SizeGuardError(
            f"exact uniform search guarded to P<=6, K<=6 (got {lt.p}, {lt.k_egroup}); "
            "use uniform_bvn_heuristic instead"
        )
    matchings = _symmetric_matchings(lt.p)
    k = phys.num_ocs
    best_value = -1
    best_choice: list[int] = []

    residual = [list(row) for row in lt.c]

    def search(slot: int, min_idx: int, value: int, chosen: list[int]) -> None:
        nonlocal best_value, best_choice
        if value > best_value:
            best_value = value
            best_choice = list(chosen)
        if slot == k:
            return
        remaining = k - slot
        if value + remaining * lt.p <= best_value:
            return
        for idx in range(min_idx, len(matchings)):
            matching = matchings[idx]
            gain = _matching_gain(matching, residual)
            if gain == 0 and matching:
                continue
            for i, j in matching:
                residual[i][j] -= 1
                if i != j:
                    residual[j][i] -= 1
            chosen.append(idx)
            search(slot + 1, idx, value + gain, chosen)
            chosen.pop()
            for i, j in matching:
                residual[i][j] += 1
                if i != j:
                    residual[j][i] += 1

    search(0, 0, 0, [])

    cfg = OcsConfiguration.zeros(lt.p, k)
    for slot, idx in enumerate(best_choice):
        for i, j in matchings[idx]:
            cfg.x[i][j][slot] = 1
            if i != j:
                cfg.x[j][i][slot] = 1
    return cfg, best_value


def uniform_bvn_heuristic(lt: LogicalTopology, phys: PhysicalTopology) -> OcsConfiguration:
    """Greedy matching extraction on the residual demand graph.

    Per OCS, takes a maximum-weight matching of the undirected residual
    demand (symmetric matchings are exactly matchings of the demand
    multigraph) and commits it.  Best-effort; no optimality claim.
    """
    if phys.scheme is not WiringScheme.UNIFORM:
        raise ValueError(f"expected uniform wiring, got {phys.scheme.value}")
    residual = [list(row) for row in lt.c]
    cfg = OcsConfiguration.zeros(lt.p, phys.num_ocs)
    for k in range(phys.num_ocs):
        graph = nx.Graph()
        graph.add_nodes_from(range(lt.p))
        for i in range(lt.p):
            for j in range(i + 1, lt.p):
                if residual[i][j] > 0:
                    graph.add_edge(i, j, weight=residual[i][j])
        matched: set[int] = set()
        for i, j in sorted(tuple(sorted(e)) for e in nx.max_weight_matching(graph)):
            cfg.x[i][j][k] = 1
            cfg.x[j][i][k] = 1
            residual[i][j] -= 1
            residual[j][i] -= 1
            matched.update((i, j))
        for i in range(lt.p):
            if i not in matched and residual[i][i] > 0:
                cfg.x[i][i][k] = 1
                residual[i][i] -= 1
    return cfg


def helios_matching(lt: LogicalTopology, phys: PhysicalTopology) -> OcsConfiguration:
    """Helios-style per-OCS maximum-weight bipartite matching.

    Matches the Tx side against the Rx side on residual demand, then a
    symmetric post-pass keeps only directed pairs whose reverse was
    also selected, preserving bidirectionality.  Best-effort.
    """
    residual = [list(row) for row in lt.c]
    cfg = OcsConfiguration.zeros(lt.p, phys.num_ocs)
    for k in range(phys.num_ocs):
        weights = [[min(residual[i][j], 1) for j in range(lt.p)] for i in range(lt.p)]
        rows, cols = linear_sum_assignment(weights, maximize=True)
        selected = {(int(i), int(j)) for i, j in zip(rows, cols) if residual[i][j] > 0}
        for i, j in sorted(selected):
            if i == j or ((j, i) in selected and i < j):
                cfg.x[i][j][k] = 1
                residual[i][j] -= 1
                if i != j:
                    cfg.x[j][i][k] = 1
                    residual[j][i] -= 1
    return cfg


def brute_force_min_rewiring(a: Matrix, u: Tensor3, caps: Matrix) -> int:
    """Exhaustive minimum of sum(|x - u|) over all feasible placements.

    Oracle for the two-group solver; guarded to P <= 4, at most 3
    groups, and entries <= 2.  Raises InfeasibleError when no feasible
    placement exists.
    """
    p = len(a)
    h = len(caps[0])
    if p > 4 or h > 3 or any(v > 2 for row in a for v in row):
        raise SizeGuardError("brute force guarded to P<=4, groups<=3, entries<=2")

    cells = [(i, j) for i in range(p) for j in range(p)]
    row_left = [list(caps[i]) for i in range(p)]
    col_left = [list(caps[j]) for j in range(p)]
    best = [None]

    def compositions(total: int, i: int, j: int) -> list[tuple[tuple[int, ...], int]]:
        options: list[tuple[tuple[int, ...], int]] = []

        def rec(g: int, left: int, parts: tuple[int, ...], cost: int) -> None:
            if g == h:
                if left == 0:
                    options.append((parts, cost))
                return
            limit = min(left, row_left[i][g], col_left[j][g])
            for v in range(limit + 1):
                rec(g + 1, left - v, parts + (v,), cost + abs(v - u[i][j][g]))

        rec(0, total, (), 0)
        options.sort(key=lambda item: (item[1], item[0]))
        return options

    def search(cell: int, cost: int) -> None:
        if best[0] is not None and cost >= best[0]:
            return
        if cell == len(cells):
            best[0] = cost
            return
        i, j = cells[cell]
        for parts, local_cost in compositions(a[i][j], i, j):
            for g, v in enumerate(parts):
                row_left[i][g] -= v
                col_left[j][g] -= v
            search(cell + 1, cost + local_cost)
            for g, v in enumerate(parts):
                row_left[i][g] += v
                col_left[j][g] += v

    search(0, 0)
    if best[0] is None:
        raise InfeasibleError("no feasible placement under the given caps")
    return best[0]
