"""Topology engineering for optically switched clusters.

Computes OCS (optical circuit switch) configurations that realize a
target logical topology over a fixed physical wiring, offline and
online (minimal rewiring), with exhaustive oracles and an experiment
harness for comparison.
"""

from .model import (
    LogicalTopology,
    OcsConfiguration,
    PhysicalTopology,
    WiringScheme,
    build_wiring,
    realized_matrix,
    validate_configuration,
    validate_logical,
)
from .toe import solve_cross, solve_dual_link
from .online import min_rewiring_cross

__all__ = [
    "LogicalTopology",
    "OcsConfiguration",
    "PhysicalTopology",
    "WiringScheme",
    "build_wiring",
    "realized_matrix",
    "validate_configuration",
    "validate_logical",
    "solve_cross",
    "solve_dual_link",
    "min_rewiring_cross",
]
