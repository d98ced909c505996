"""Integer matrix decompositions backing the wiring solvers.

Two constructions, both reduced to integer circulations:

* symmetric halving: C = A + A^T with the row/column sums of A pinned
  to floor/ceil of half the corresponding sums of C; optionally biased
  toward an incumbent A (the online pipeline benefits from staying
  close to what is already wired),
* K-way slicing: M = x^(1) + ... + x^(K) with every slice inside the
  floor/ceil bounds of M/K, entry-wise and for all row and column sums,
  built by recursive near-halving (each split is one feasibility
  circulation; the floor/ceil bound families compose across levels).

The matching-level specialization slices a matrix with row/column sums
at most H into H partial permutation matrices, exactly what one OCS can
realize per sub-topology.
"""

from __future__ import annotations

from .flow import FlowNetwork
from .model import LogicalTopology, Matrix, ValidationError, validate_logical


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _abs_deviation_segments(upper: int, target: int) -> list[tuple[int, int]]:
    """Segments of |x - target| on [0, upper]; slopes -1 then +1."""
    pivot = min(max(target, 0), upper)
    segments = []
    if pivot > 0:
        segments.append((pivot, -1))
    if upper - pivot > 0:
        segments.append((upper - pivot, 1))
    return segments


def decompose_symmetric(lt: LogicalTopology, bias: Matrix | None = None) -> Matrix:
    """Split a valid symmetric demand C into A with C = A + A^T.

    Row and column sums of A land in [floor(rowsum(C)/2),
    ceil(rowsum(C)/2)]; per-entry 0 <= A[i][j] <= C[i][j] holds by
    construction.  With a bias matrix, the returned A minimizes
    sum(|A - bias|) over all feasible A.  Always feasible for valid
    input (A = C/2 is a fractional witness), so infeasibility here is
    a bug, not a data condition.
    """
    report = validate_logical(lt)
    if not report.ok:
        raise ValidationError(report)

    p = lt.p
    net = FlowNetwork()
    hub = net.add_node()
    rows = [net.add_node() for _ in range(p)]

    bundles: dict[tuple[int, int], list[int]] = {}
    for i in range(p):
        for j in range(i + 1, p):
            c = lt.c[i][j]
            if c == 0:
                continue
            s = net.add_node()
            net.add_arc(hub, s, c, c, 0)
            for a, b in ((i, j), (j, i)):
                if bias is not None:
                    segs = _abs_deviation_segments(c, bias[a][b])
                    bundles[(a, b)] = net.add_pwl_arc(s, rows[a], segs) if segs else []
                else:
                    bundles[(a, b)] = [net.add_arc(s, rows[a], 0, c, 0)]
    for i in range(p):
        rs = lt.row_sum(i)
        lo = _floor_div(rs, 2) - lt.c[i][i] // 2
        hi = _ceil_div(rs, 2) - lt.c[i][i] // 2
        net.add_arc(rows[i], hub, lo, hi, 0)

    result = net.solve()
    assert result.feasible, "symmetric halving is always feasible for valid demand"

    a = [[0] * p for _ in range(p)]
    for i in range(p):
        a[i][i] = lt.c[i][i] // 2
    for (i, j), ids in bundles.items():
        a[i][j] = result.bundle_flow(ids)
    return a


def decompose_kway(m: Matrix, k: int) -> list[Matrix]:
    """Slice M into K matrices inside the floor/ceil bounds of M/K."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if any(v < 0 for row in m for v in row):
        raise ValueError("matrix entries must be nonnegative")
    if k == 1:
        return [[list(row) for row in m]]
    k1 = k // 2
    m1 = _split_share(m, k1, k)
    m2 = [[m[i][j] - m1[i][j] for j in range(len(m[0]))] for i in range(len(m))]
    return decompose_kway(m1, k1) + decompose_kway(m2, k - k1)


def _split_share(m: Matrix, k1: int, k: int) -> Matrix:
    """Find M1 holding share k1/k of M within floor/ceil bounds.

    Entry, row-sum and column-sum bounds are all enforced; feasibility
    follows from the fractional point M1 = (k1/k) M, so the circulation
    always succeeds on valid input.
    """
    n_rows, n_cols = len(m), len(m[0])
    net = FlowNetwork()
    hub = net.add_node()
    row_nodes = [net.add_node() for _ in range(n_rows)]
    col_nodes = [net.add_node() for _ in range(n_cols)]
    entry_arcs: dict[tuple[int, int], int] = {}

    for i in range(n_rows):
        rs = sum(m[i])
        net.add_arc(hub, row_nodes[i], _floor_div(k1 * rs, k), _ceil_div(k1 * rs, k), 0)
    for j in range(n_cols):
        cs = sum(m[i][j] for i in range(n_rows))
        net.add_arc(col_nodes[j], hub, _floor_div(k1 * cs, k), _ceil_div(k1 * cs, k), 0)
    for i in range(n_rows):
        for j in range(n_cols):
            lo = _floor_div(k1 * m[i][j], k)
            hi = _ceil_div(k1 * m[i][j], k)
            if hi == 0:
                continue
            entry_arcs[(i, j)] = net.add_arc(row_nodes[i], col_nodes[j], lo, hi, 0)

    result = net.solve()
    assert result.feasible, "near-halving split is always feasible"

    m1 = [[0] * n_cols for _ in range(n_rows)]
    for (i, j), arc in entry_arcs.items():
        m1[i][j] = result.flow[arc]
    return m1


def decompose_to_matchings(a: Matrix, h: int) -> list[Matrix]:
    """Slice A into H partial permutation matrices summing to A.

    Requires every row and column sum of A to be at most H; the K-way
    ceil bounds then force each slice to be 0/1 with at most one 1 per
    row and per column.
    """
    n_rows, n_cols = len(a), len(a[0])
    for i in range(n_rows):
        if sum(a[i]) > h:
            raise ValueError(f"row sum {sum(a[i])} of row {i} exceeds {h}")
    for j in range(n_cols):
        cs = sum(a[i][j] for i in range(n_rows))
        if cs > h:
            raise ValueError(f"column sum {cs} of column {j} exceeds {h}")
    slices = decompose_kway(a, h)
    for s in slices:
        assert all(v in (0, 1) for row in s for v in row)
        assert all(sum(row) <= 1 for row in s)
        assert all(sum(s[i][j] for i in range(n_rows)) <= 1 for j in range(n_cols))
    return slices
