"""Experiment orchestration: run strategies over workloads, emit reports.

A run config is a JSON object:

    {
      "strategies": ["cross", "uniform-exact", ...],
      "p": 4, "k_egroup": 4,
      "trials": 10, "seed": 7,
      "mode": "offline",             # or "sequence"
      "sequence_length": 20,         # sequence mode
      "mutation_fraction": "1/4",    # sequence mode, rational or float
      "logical": {...}               # optional fixed demand (offline)
    }

Offline strategies: cross, dual, uniform-heuristic, uniform-exact,
helios.  Online strategies (sequence mode): cross-mdmcf (rewiring-aware
merge-decomposition) and cross-nocost (same pipeline, costs zeroed).

CSV column order is frozen; two runs with the same config and seed are
byte-identical apart from the solve_ms column.  Guard or feasibility
errors are reported in the status column and the run continues; metric
columns are only populated for configurations that pass validation.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from statistics import quantiles

from . import baselines, metrics, online, toe
from .model import (
    LogicalTopology,
    OcsConfiguration,
    WiringScheme,
    build_wiring,
    realized_matrix,
    validate_configuration,
)
from .serialization import SchemaError, load_logical
from .workload import SplitMix64, WorkloadSpec, gen_heavy_workload, gen_sequence, substream_seed

CSV_COLUMNS = ["trial", "strategy", "p", "k_egroup", "ltcr", "mrar", "rewired", "solve_ms", "seed", "status"]

OFFLINE_STRATEGIES = ("cross", "dual", "uniform-heuristic", "uniform-exact", "helios")
ONLINE_STRATEGIES = ("cross-mdmcf", "cross-nocost")


@dataclass
class ReportRow:
    trial: int
    strategy: str
    p: int
    k_egroup: int
    ltcr: Fraction | None
    mrar: Fraction | None
    rewired: int | None
    solve_ms: float
    seed: int
    status: str = "ok"

    def as_csv(self) -> list[str]:
        return [
            str(self.trial),
            self.strategy,
            str(self.p),
            str(self.k_egroup),
            metrics.render_rational(self.ltcr),
            metrics.render_rational(self.mrar),
            "" if self.rewired is None else str(self.rewired),
            f"{self.solve_ms:.3f}",
            str(self.seed),
            self.status,
        ]


@dataclass
class ExperimentReport:
    rows: list[ReportRow]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.as_csv())
        return buf.getvalue()

    def summary(self) -> dict:
        by_strategy: dict[str, list[ReportRow]] = {}
        for row in self.rows:
            by_strategy.setdefault(row.strategy, []).append(row)
        out = {}
        for strategy in sorted(by_strategy):
            rows = by_strategy[strategy]
            ok = [r for r in rows if r.status == "ok"]
            ltcrs = [r.ltcr for r in ok if r.ltcr is not None]
            mrars = [r.mrar for r in ok if r.mrar is not None]
            times = sorted(r.solve_ms for r in ok)
            entry = {
                "rows": len(rows),
                "ok": len(ok),
                "mean_ltcr": float(sum(ltcrs) / len(ltcrs)) if ltcrs else None,
                "mean_mrar": float(sum(mrars) / len(mrars)) if mrars else None,
            }
            if times:
                entry["solve_ms_p50"] = _quantile(times, 0.50)
                entry["solve_ms_p95"] = _quantile(times, 0.95)
            out[strategy] = entry
        return out

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"


def _quantile(sorted_values: list[float], q: float) -> float:
    if len(sorted_values) == 1:
        return sorted_values[0]
    cuts = quantiles(sorted_values, n=100, method="inclusive")
    return cuts[max(0, min(98, round(q * 100) - 1))]


def _solve_offline(strategy: str, lt: LogicalTopology):
    """Returns (config, require_exact) for one offline strategy."""
    if strategy == "cross":
        phys = build_wiring(WiringScheme.CROSS, lt.p, lt.k_egroup, 1)
        return toe.solve_cross(lt, phys), phys, True
    if strategy == "dual":
        phys = build_wiring(WiringScheme.DUAL_LINK_UNIFORM, lt.p, lt.k_egroup, 2)
        return toe.solve_dual_link(lt, phys), phys, True
    phys = build_wiring(WiringScheme.UNIFORM, lt.p, lt.k_egroup, 1)
    if strategy == "uniform-heuristic":
        return baselines.uniform_bvn_heuristic(lt, phys), phys, False
    if strategy == "uniform-exact":
        cfg, _best = baselines.uniform_exact_small(lt, phys)
        return cfg, phys, False
    if strategy == "helios":
        return baselines.helios_matching(lt, phys), phys, False
    raise ValueError(f"unknown strategy {strategy!r}")


def _offline_row(trial: int, strategy: str, lt: LogicalTopology, seed: int) -> ReportRow:
    start = time.perf_counter()
    try:
        cfg, phys, exact = _solve_offline(strategy, lt)
    except (baselines.SizeGuardError, online.InfeasibleError, ValueError) as exc:
        return ReportRow(trial, strategy, lt.p, lt.k_egroup, None, None, None,
                         (time.perf_counter() - start) * 1000, seed, f"error: {exc}")
    solve_ms = (time.perf_counter() - start) * 1000
    report = validate_configuration(cfg, phys, lt, require_exact=exact)
    if not report.ok:
        return ReportRow(trial, strategy, lt.p, lt.k_egroup, None, None, None,
                         solve_ms, seed, f"invalid: {report.violations[0]}")
    rate = metrics.ltcr(lt.c, realized_matrix(cfg))
    return ReportRow(trial, strategy, lt.p, lt.k_egroup, rate, None, None, solve_ms, seed)


def run_experiment(config: dict) -> ExperimentReport:
    strategies = config.get("strategies", [])
    if not isinstance(strategies, list):
        raise SchemaError("$.strategies", "expected a list")
    mode = config.get("mode", "offline")
    p = int(config.get("p", 4))
    k_egroup = int(config.get("k_egroup", 4))
    trials = int(config.get("trials", 1))
    seed = int(config.get("seed", 0))
    for strategy in strategies:
        if strategy not in OFFLINE_STRATEGIES + ONLINE_STRATEGIES:
            raise SchemaError("$.strategies", f"unknown strategy {strategy!r}")

    if mode == "offline":
        return _run_offline(strategies, p, k_egroup, trials, seed, config.get("logical"))
    if mode == "sequence":
        length = int(config.get("sequence_length", 10))
        fraction = _parse_fraction(config.get("mutation_fraction", "1/4"))
        return _run_sequence(strategies, p, k_egroup, length, fraction, seed)
    raise SchemaError("$.mode", f"expected 'offline' or 'sequence', got {mode!r}")


def _parse_fraction(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value).limit_denominator(10**6)


def _run_offline(strategies, p, k_egroup, trials, seed, logical_payload) -> ExperimentReport:
    fixed = load_logical(logical_payload) if logical_payload is not None else None

    def run_trial(trial: int) -> list[ReportRow]:
        tseed = substream_seed(seed, trial)
        lt = fixed or gen_heavy_workload(WorkloadSpec(p=p, k_egroup=k_egroup, seed=tseed))
        return [_offline_row(trial, s, lt, tseed) for s in strategies]

    workers = max(1, int(os.environ.get("OCS_TOE_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(run_trial, range(trials)))
    else:
        batches = [run_trial(t) for t in range(trials)]
    return ExperimentReport([row for batch in batches for row in batch])


def _run_sequence(strategies, p, k_egroup, length, fraction, seed) -> ExperimentReport:
    spec = WorkloadSpec(p=p, k_egroup=k_egroup, mode="sequence",
                        sequence_length=length, mutation_fraction=fraction, seed=seed)
    sequence = gen_sequence(spec)
    phys = build_wiring(WiringScheme.CROSS, p, k_egroup, 1)
    rows: list[ReportRow] = []
    incumbents = {s: OcsConfiguration.zeros(p, phys.num_ocs) for s in strategies if s in ONLINE_STRATEGIES}

    for step, lt in enumerate(sequence):
        for strategy in strategies:
            if strategy in ONLINE_STRATEGIES:
                u = incumbents[strategy]
                start = time.perf_counter()
                try:
                    cfg = online.min_rewiring_cross(
                        lt, u, phys, rewiring_aware=(strategy == "cross-mdmcf")
                    )
                except online.InfeasibleError as exc:
                    rows.append(ReportRow(step, strategy, p, k_egroup, None, None, None,
                                          (time.perf_counter() - start) * 1000, seed,
                                          f"error: {exc}"))
                    continue
                solve_ms = (time.perf_counter() - start) * 1000
                report = validate_configuration(cfg, phys, lt, require_exact=True)
                if not report.ok:
                    rows.append(ReportRow(step, strategy, p, k_egroup, None, None, None,
                                          solve_ms, seed, f"invalid: {report.violations[0]}"))
                    continue
                rows.append(ReportRow(
                    step, strategy, p, k_egroup,
                    metrics.ltcr(lt.c, realized_matrix(cfg)),
                    metrics.mrar(u.x, cfg.x),
                    metrics.rewiring_cost(u.x, cfg.x),
                    solve_ms, seed,
                ))
                incumbents[strategy] = cfg
            else:
                rows.append(_offline_row(step, strategy, lt, seed))
    return ExperimentReport(rows)


def strip_timing(csv_text: str) -> str:
    """Drop the solve_ms column; what remains must be run-invariant."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    idx = CSV_COLUMNS.index("solve_ms")
    for record in csv.reader(io.StringIO(csv_text)):
        writer.writerow(record[:idx] + record[idx + 1:])
    return out.getvalue()
