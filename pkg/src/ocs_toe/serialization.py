"""Canonical JSON schemas for the on-disk interchange files.

Schemas (all integers, matrices row-major, canonical field order, no
insignificant whitespace):

* logical.json:  {"p": int, "k_egroup": int, "matrix": [[int]]}
* physical.json: {"scheme": str, "p": int, "k_egroup": int, "psi": int}
* config.json:   {"x": [{"i": int, "j": int, "k": int, "count": int}]}
  with entries sorted by (i, j, k) and zero counts omitted; dimensions
  come from the accompanying logical/physical context.
* seq.json:      a JSON array of logical.json payloads.

Unknown fields are rejected with their location; parse-serialize-parse
is the identity.
"""

from __future__ import annotations

import json

from .model import (
    DimensionError,
    LogicalTopology,
    OcsConfiguration,
    PhysicalTopology,
    WiringScheme,
    build_wiring,
    validate_logical,
)


class SchemaError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def _require_fields(obj: dict, fields: list[str], location: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(location, f"expected an object, got {type(obj).__name__}")
    for name in fields:
        if name not in obj:
            raise SchemaError(f"{location}.{name}", "missing required field")
    for name in obj:
        if name not in fields:
            raise SchemaError(f"{location}.{name}", "unknown field")


def _require_int(value, location: str, minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(location, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise SchemaError(location, f"must be >= {minimum}, got {value}")
    return value


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def parse_json(text: str, location: str = "$"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(location, f"malformed JSON: {exc}") from exc


def dump_logical(lt: LogicalTopology) -> str:
    return _dumps({"p": lt.p, "k_egroup": lt.k_egroup, "matrix": lt.c})


def load_logical(payload, location: str = "$") -> LogicalTopology:
    _require_fields(payload, ["p", "k_egroup", "matrix"], location)
    p = _require_int(payload["p"], f"{location}.p", minimum=1)
    k = _require_int(payload["k_egroup"], f"{location}.k_egroup", minimum=1)
    matrix = payload["matrix"]
    if not isinstance(matrix, list) or len(matrix) != p:
        raise SchemaError(f"{location}.matrix", f"expected {p} rows")
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != p:
            raise SchemaError(f"{location}.matrix[{i}]", f"expected {p} columns")
        for j, value in enumerate(row):
            _require_int(value, f"{location}.matrix[{i}][{j}]", minimum=0)
    lt = LogicalTopology(p=p, k_egroup=k, c=[list(row) for row in matrix])
    report = validate_logical(lt)
    if not report.ok:
        v = report.violations[0]
        raise SchemaError(f"{location}.matrix", str(v))
    return lt


def dump_physical(phys: PhysicalTopology) -> str:
    return _dumps(
        {"scheme": phys.scheme.value, "p": phys.p, "k_egroup": phys.k_egroup, "psi": phys.psi}
    )


def load_physical(payload, location: str = "$") -> PhysicalTopology:
    _require_fields(payload, ["scheme", "p", "k_egroup", "psi"], location)
    try:
        scheme = WiringScheme(payload["scheme"])
    except ValueError as exc:
        raise SchemaError(f"{location}.scheme", str(exc)) from exc
    p = _require_int(payload["p"], f"{location}.p", minimum=1)
    k = _require_int(payload["k_egroup"], f"{location}.k_egroup", minimum=1)
    psi = _require_int(payload["psi"], f"{location}.psi", minimum=1)
    try:
        return build_wiring(scheme, p, k, psi)
    except ValueError as exc:
        raise SchemaError(location, str(exc)) from exc


def dump_config(cfg: OcsConfiguration) -> str:
    entries = []
    for i in range(cfg.p):
        for j in range(cfg.p):
            for k in range(cfg.num_ocs):
                if cfg.x[i][j][k]:
                    entries.append({"i": i, "j": j, "k": k, "count": cfg.x[i][j][k]})
    return _dumps({"x": entries})


def load_config(payload, p: int, num_ocs: int, location: str = "$") -> OcsConfiguration:
    _require_fields(payload, ["x"], location)
    if not isinstance(payload["x"], list):
        raise SchemaError(f"{location}.x", "expected a list of entries")
    cfg = OcsConfiguration.zeros(p, num_ocs)
    for idx, entry in enumerate(payload["x"]):
        loc = f"{location}.x[{idx}]"
        _require_fields(entry, ["i", "j", "k", "count"], loc)
        i = _require_int(entry["i"], f"{loc}.i", minimum=0)
        j = _require_int(entry["j"], f"{loc}.j", minimum=0)
        k = _require_int(entry["k"], f"{loc}.k", minimum=0)
        count = _require_int(entry["count"], f"{loc}.count", minimum=0)
        if i >= p or j >= p:
            raise DimensionError(f"{loc}: EGroup index out of range for p={p}")
        if k >= num_ocs:
            raise DimensionError(f"{loc}: OCS index out of range for num_ocs={num_ocs}")
        cfg.x[i][j][k] += count
    return cfg


def dump_sequence(sequence: list[LogicalTopology]) -> str:
    return _dumps(
        [{"p": lt.p, "k_egroup": lt.k_egroup, "matrix": lt.c} for lt in sequence]
    )


def load_sequence(payload, location: str = "$") -> list[LogicalTopology]:
    if not isinstance(payload, list) or not payload:
        raise SchemaError(location, "expected a non-empty array of logical payloads")
    return [load_logical(item, f"{location}[{idx}]") for idx, item in enumerate(payload)]
