"""Pydantic request/response models for the HTTP service.

These mirror the on-disk JSON schemas; deep validation (symmetry,
fan-out, port capacities) is delegated to the core validators so the
service and the file formats cannot drift apart.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class LogicalPayload(StrictModel):
    p: int = Field(ge=1)
    k_egroup: int = Field(ge=1)
    matrix: list[list[int]]


class PhysicalPayload(StrictModel):
    scheme: str
    p: int = Field(ge=1)
    k_egroup: int = Field(ge=1)
    psi: int = Field(ge=1)


class ConfigEntry(StrictModel):
    i: int = Field(ge=0)
    j: int = Field(ge=0)
    k: int = Field(ge=0)
    count: int = Field(ge=0)


class ConfigPayload(StrictModel):
    x: list[ConfigEntry]


class GenRequest(StrictModel):
    p: int = Field(ge=2)
    k_egroup: int = Field(ge=2)
    mode: str = "heavy"
    sequence_length: int = Field(default=1, ge=1)
    mutation_fraction: str = "1/4"
    seed: int = Field(default=0, ge=0)


class GenResponse(StrictModel):
    logical: LogicalPayload | None = None
    sequence: list[LogicalPayload] | None = None


class SolveRequest(StrictModel):
    scheme: str
    logical: LogicalPayload
    prev: ConfigPayload | None = None


class SolveResponse(StrictModel):
    physical: PhysicalPayload
    config: ConfigPayload
    ltcr: str
    best_value: int | None = None


class ValidateRequest(StrictModel):
    logical: LogicalPayload
    physical: PhysicalPayload
    config: ConfigPayload
    require_exact: bool = True


class ViolationPayload(StrictModel):
    rule: str
    where: list[int]
    detail: str


class ValidateResponse(StrictModel):
    ok: bool
    violations: list[ViolationPayload]


class OnlineRequest(StrictModel):
    scheme: str = "cross"
    sequence: list[LogicalPayload]
    strategy: str = "cross-mdmcf"


class OnlineStep(StrictModel):
    config: ConfigPayload
    ltcr: str
    mrar: str
    rewired: int


class OnlineResponse(StrictModel):
    physical: PhysicalPayload
    steps: list[OnlineStep]


class OracleRequest(StrictModel):
    kind: str
    logical: LogicalPayload | None = None
    a: list[list[int]] | None = None
    u: list[list[list[int]]] | None = None
    caps: list[list[int]] | None = None


class OracleResponse(StrictModel):
    kind: str
    best_value: int | None = None
    ltcr: str | None = None
    min_rewiring_cost: int | None = None


class ExperimentResponse(StrictModel):
    csv: str
    summary: dict


class ErrorResponse(StrictModel):
    error: str
    detail: str
