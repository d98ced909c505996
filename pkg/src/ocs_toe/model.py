"""Domain types for logical/physical topologies and OCS configurations.

The canonical configuration is count-level: x[i][j][k] gives the number
of directed links OCS k creates from EGroup i to EGroup j.  Port-level
matchings are derived views (ports within one EGroup-OCS attachment are
interchangeable under every wiring scheme in scope).

All types are immutable after construction and every operation here is
a pure function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

Matrix = list[list[int]]


class DimensionError(ValueError):
    pass


class CapacityError(ValueError):
    pass


class ValidationError(ValueError):
    """Raised when an operation requires a valid input and gets none."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(str(v) for v in report.violations))
        self.report = report


class WiringScheme(str, enum.Enum):
    UNIFORM = "uniform"
    DUAL_LINK_UNIFORM = "dual-link-uniform"
    CROSS = "cross"


@dataclass(frozen=True)
class Violation:
    rule: str
    where: tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.rule} at {self.where}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class LogicalTopology:
    """Symmetric nonnegative integer demand matrix with a fan-out bound.

    c[i][j] is the number of required links between EGroups i and j;
    every row sum must stay within k_egroup and the diagonal must be
    even (a self-demand splits into two half-links).
    """

    p: int
    k_egroup: int
    c: Matrix

    def row_sum(self, i: int) -> int:
        return sum(self.c[i])

    def total(self) -> int:
        return sum(sum(row) for row in self.c)


@dataclass(frozen=True)
class PhysicalTopology:
    """Fixed wiring between EGroup ports (Tx/Rx sides) and OCSes.

    capacity[i][k] counts the ports of EGroup i whose Tx reaches OCS k;
    under every scheme in scope the Rx attachment counts are identical.
    """

    scheme: WiringScheme
    p: int
    k_egroup: int
    psi: int
    num_ocs: int
    tx_ocs: dict[tuple[int, int], int]
    rx_ocs: dict[tuple[int, int], int]
    capacity: Matrix  # p x num_ocs

    def tx_ports(self, egroup: int, ocs: int) -> list[int]:
        return [n for n in range(self.k_egroup) if self.tx_ocs[(egroup, n)] == ocs]

    def rx_ports(self, egroup: int, ocs: int) -> list[int]:
        return [n for n in range(self.k_egroup) if self.rx_ocs[(egroup, n)] == ocs]


@dataclass(frozen=True)
class OcsConfiguration:
    """P x P x K tensor of directed link counts per OCS."""

    p: int
    num_ocs: int
    x: list[list[list[int]]]

    @classmethod
    def zeros(cls, p: int, num_ocs: int) -> "OcsConfiguration":
        return cls(p, num_ocs, [[[0] * num_ocs for _ in range(p)] for _ in range(p)])

    def total(self) -> int:
        return sum(v for row in self.x for cell in row for v in cell)


@dataclass(frozen=True)
class PortLink:
    ocs: int
    src_egroup: int
    src_port: int
    dst_egroup: int
    dst_port: int


@dataclass(frozen=True)
class PortMatching:
    links: tuple[PortLink, ...] = field(default_factory=tuple)

    def to_counts(self, p: int, num_ocs: int) -> OcsConfiguration:
        cfg = OcsConfiguration.zeros(p, num_ocs)
        for link in self.links:
            cfg.x[link.src_egroup][link.dst_egroup][link.ocs] += 1
        return cfg


def validate_logical(lt: LogicalTopology) -> ValidationReport:
    """Check symmetry, fan-out and even-diagonal on a demand matrix."""
    if len(lt.c) != lt.p or any(len(row) != lt.p for row in lt.c):
        raise DimensionError(f"matrix must be {lt.p}x{lt.p}")
    violations = []
    for i in range(lt.p):
        for j in range(lt.p):
            if lt.c[i][j] < 0:
                violations.append(Violation("nonnegative", (i, j), f"{lt.c[i][j]} < 0"))
            if j > i and lt.c[i][j] != lt.c[j][i]:
                violations.append(
                    Violation("symmetry", (i, j), f"{lt.c[i][j]} != {lt.c[j][i]}")
                )
        if lt.c[i][i] % 2 != 0:
            violations.append(Violation("even-diagonal", (i, i), f"{lt.c[i][i]} is odd"))
        if lt.row_sum(i) > lt.k_egroup:
            violations.append(
                Violation("fan-out", (i,), f"row sum {lt.row_sum(i)} > {lt.k_egroup}")
            )
    return ValidationReport(tuple(violations))


def build_wiring(scheme: WiringScheme, p: int, k_egroup: int, psi: int) -> PhysicalTopology:
    """Populate the port-to-OCS wiring maps for one scheme.

    Uniform sends port n's Tx and Rx to OCS n.  Cross pairs ports
    (2t, 2t+1) with the OCS pair (2t, 2t+1) crosswise, so the even OCS
    carries one direction and the odd OCS its transpose.  Dual-link
    sends both ports of a pair to the same OCS (psi=2, k_egroup/2 OCSes).
    """
    scheme = WiringScheme(scheme)
    if k_egroup <= 0 or k_egroup % 2 != 0:
        raise ValueError(f"k_egroup must be a positive even integer, got {k_egroup}")
    if psi not in (1, 2):
        raise ValueError(f"psi must be 1 or 2, got {psi}")
    if scheme is WiringScheme.DUAL_LINK_UNIFORM and psi != 2:
        raise ValueError("dual-link uniform wiring requires psi=2")
    if scheme is not WiringScheme.DUAL_LINK_UNIFORM and psi != 1:
        raise ValueError(f"{scheme.value} wiring requires psi=1")

    tx: dict[tuple[int, int], int] = {}
    rx: dict[tuple[int, int], int] = {}
    if scheme is WiringScheme.UNIFORM:
        num_ocs = k_egroup
        for i in range(p):
            for n in range(k_egroup):
                tx[(i, n)] = n
                rx[(i, n)] = n
    elif scheme is WiringScheme.CROSS:
        num_ocs = k_egroup
        for i in range(p):
            for t in range(k_egroup // 2):
                even, odd = 2 * t, 2 * t + 1
                tx[(i, even)] = even
                rx[(i, even)] = odd
                tx[(i, odd)] = odd
                rx[(i, odd)] = even
    else:
        num_ocs = k_egroup // 2
        for i in range(p):
            for n in range(k_egroup):
                tx[(i, n)] = n // 2
                rx[(i, n)] = n // 2

    capacity = [[0] * num_ocs for _ in range(p)]
    for (i, _n), k in tx.items():
        capacity[i][k] += 1
    return PhysicalTopology(
        scheme=scheme,
        p=p,
        k_egroup=k_egroup,
        psi=psi,
        num_ocs=num_ocs,
        tx_ocs=tx,
        rx_ocs=rx,
        capacity=capacity,
    )


def realized_matrix(cfg: OcsConfiguration) -> Matrix:
    """X[i][j] = total directed links from EGroup i to EGroup j."""
    return [[sum(cfg.x[i][j]) for j in range(cfg.p)] for i in range(cfg.p)]


def validate_configuration(
    cfg: OcsConfiguration,
    phys: PhysicalTopology,
    lt: LogicalTopology,
    require_exact: bool = False,
) -> ValidationReport:
    """Check per-OCS capacities, scheme mirror symmetry, and realization.

    With require_exact the realized matrix must equal the demand matrix;
    otherwise (best-effort mode) it only needs to be symmetric.
    """
    if cfg.p != phys.p or cfg.p != lt.p or cfg.num_ocs != phys.num_ocs:
        raise DimensionError(
            f"dimension mismatch: config {cfg.p}x{cfg.p}x{cfg.num_ocs}, "
            f"physical {phys.p}/{phys.num_ocs}, logical {lt.p}"
        )
    violations = []
    p, kk = cfg.p, cfg.num_ocs
    for k in range(kk):
        for i in range(p):
            out = sum(cfg.x[i][j][k] for j in range(p))
            if out > phys.capacity[i][k]:
                violations.append(
                    Violation("tx-capacity", (i, k), f"{out} > {phys.capacity[i][k]}")
                )
            inc = sum(cfg.x[j][i][k] for j in range(p))
            if inc > phys.capacity[i][k]:
                violations.append(
                    Violation("rx-capacity", (i, k), f"{inc} > {phys.capacity[i][k]}")
                )
            for j in range(p):
                if cfg.x[i][j][k] < 0:
                    violations.append(Violation("nonnegative", (i, j, k), "negative count"))

    if phys.scheme is WiringScheme.CROSS:
        for t in range(kk // 2):
            for i in range(p):
                for j in range(p):
                    if cfg.x[i][j][2 * t] != cfg.x[j][i][2 * t + 1]:
                        violations.append(
                            Violation(
                                "mirror",
                                (i, j, 2 * t),
                                f"x[{i}][{j}][{2 * t}]={cfg.x[i][j][2 * t]} != "
                                f"x[{j}][{i}][{2 * t + 1}]={cfg.x[j][i][2 * t + 1]}",
                            )
                        )
    else:
        for k in range(kk):
            for i in range(p):
                for j in range(i + 1, p):
                    if cfg.x[i][j][k] != cfg.x[j][i][k]:
                        violations.append(
                            Violation("per-ocs-symmetry", (i, j, k), "x[i][j][k] != x[j][i][k]")
                        )

    realized = realized_matrix(cfg)
    if require_exact:
        for i in range(p):
            for j in range(p):
                if realized[i][j] != lt.c[i][j]:
                    violations.append(
                        Violation("exact", (i, j), f"realized {realized[i][j]} != demand {lt.c[i][j]}")
                    )
    else:
        for i in range(p):
            for j in range(i + 1, p):
                if realized[i][j] != realized[j][i]:
                    violations.append(
                        Violation("realized-symmetry", (i, j), f"{realized[i][j]} != {realized[j][i]}")
                    )
    return ValidationReport(tuple(violations))


def materialize_ports(cfg: OcsConfiguration, phys: PhysicalTopology) -> PortMatching:
    """Assign concrete ports to a count-level configuration.

    Deterministic: lowest free port index first, per EGroup per OCS.
    Re-counting the result recovers the input exactly.
    """
    links = []
    for k in range(cfg.num_ocs):
        free_tx = {i: phys.tx_ports(i, k) for i in range(cfg.p)}
        free_rx = {j: phys.rx_ports(j, k) for j in range(cfg.p)}
        for i in range(cfg.p):
            for j in range(cfg.p):
                count = cfg.x[i][j][k]
                if count == 0:
                    continue
                if count > len(free_tx[i]) or count > len(free_rx[j]):
                    raise CapacityError(
                        f"x[{i}][{j}][{k}]={count} exceeds free ports on OCS {k}"
                    )
                for _ in range(count):
                    links.append(
                        PortLink(
                            ocs=k,
                            src_egroup=i,
                            src_port=free_tx[i].pop(0),
                            dst_egroup=j,
                            dst_port=free_rx[j].pop(0),
                        )
                    )
    return PortMatching(tuple(links))
