"""HTTP service exposing the topology-engineering pipeline.

Error mapping: schema/usage problems -> 400, domain validation
failures -> 422, infeasible instances -> 409.  All handlers are pure
request -> response; there is no server-side state, so the service is
safe behind any number of workers.
"""

from __future__ import annotations

import json

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import baselines, metrics, online, toe
from ..experiment import run_experiment
from ..model import (
    DimensionError,
    OcsConfiguration,
    WiringScheme,
    build_wiring,
    realized_matrix,
    validate_configuration,
)
from ..serialization import (
    SchemaError,
    dump_physical,
    load_config,
    load_logical,
    load_physical,
    load_sequence,
)
from ..workload import WorkloadSpec, gen_heavy_workload, gen_sequence
from . import schemas


class UsageError(ValueError):
    pass


def _logical_payload(lt) -> schemas.LogicalPayload:
    return schemas.LogicalPayload(p=lt.p, k_egroup=lt.k_egroup, matrix=lt.c)


def _config_payload(cfg: OcsConfiguration) -> schemas.ConfigPayload:
    entries = [
        schemas.ConfigEntry(i=i, j=j, k=k, count=cfg.x[i][j][k])
        for i in range(cfg.p)
        for j in range(cfg.p)
        for k in range(cfg.num_ocs)
        if cfg.x[i][j][k]
    ]
    return schemas.ConfigPayload(x=entries)


def _physical_payload(phys) -> schemas.PhysicalPayload:
    return schemas.PhysicalPayload(**json.loads(dump_physical(phys)))


def _load_logical(payload: schemas.LogicalPayload):
    return load_logical(payload.model_dump(), "$.logical")


def create_app() -> FastAPI:
    app = FastAPI(title="ocs-toe", version="1.0")

    @app.exception_handler(SchemaError)
    @app.exception_handler(UsageError)
    async def _schema_error(_request, exc):
        return JSONResponse(status_code=400, content={"error": "usage", "detail": str(exc)})

    @app.exception_handler(DimensionError)
    async def _dimension_error(_request, exc):
        return JSONResponse(status_code=422, content={"error": "validation", "detail": str(exc)})

    @app.exception_handler(online.InfeasibleError)
    async def _infeasible(_request, exc):
        return JSONResponse(status_code=409, content={"error": "infeasible", "detail": str(exc)})

    @app.exception_handler(baselines.SizeGuardError)
    async def _guard(_request, exc):
        return JSONResponse(status_code=400, content={"error": "usage", "detail": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/gen", response_model=schemas.GenResponse, response_model_exclude_none=True)
    async def gen(req: schemas.GenRequest):
        from fractions import Fraction

        if req.mode == "heavy":
            spec = WorkloadSpec(p=req.p, k_egroup=req.k_egroup, seed=req.seed)
            return schemas.GenResponse(logical=_logical_payload(gen_heavy_workload(spec)))
        if req.mode == "sequence":
            spec = WorkloadSpec(
                p=req.p,
                k_egroup=req.k_egroup,
                mode="sequence",
                sequence_length=req.sequence_length,
                mutation_fraction=Fraction(req.mutation_fraction),
                seed=req.seed,
            )
            return schemas.GenResponse(sequence=[_logical_payload(lt) for lt in gen_sequence(spec)])
        raise UsageError(f"unknown mode {req.mode!r}")

    @app.post("/solve", response_model=schemas.SolveResponse, response_model_exclude_none=True)
    async def solve(req: schemas.SolveRequest):
        lt = _load_logical(req.logical)
        best_value = None
        if req.scheme == "cross":
            phys = build_wiring(WiringScheme.CROSS, lt.p, lt.k_egroup, 1)
            prev = (
                load_config(req.prev.model_dump(), lt.p, phys.num_ocs, "$.prev")
                if req.prev is not None
                else None
            )
            cfg = toe.solve_cross(lt, phys, prev)
        elif req.scheme == "dual":
            phys = build_wiring(WiringScheme.DUAL_LINK_UNIFORM, lt.p, lt.k_egroup, 2)
            cfg = toe.solve_dual_link(lt, phys)
        elif req.scheme == "uniform-heuristic":
            phys = build_wiring(WiringScheme.UNIFORM, lt.p, lt.k_egroup, 1)
            cfg = baselines.uniform_bvn_heuristic(lt, phys)
        elif req.scheme == "uniform-exact":
            phys = build_wiring(WiringScheme.UNIFORM, lt.p, lt.k_egroup, 1)
            cfg, best_value = baselines.uniform_exact_small(lt, phys)
        elif req.scheme == "helios":
            phys = build_wiring(WiringScheme.UNIFORM, lt.p, lt.k_egroup, 1)
            cfg = baselines.helios_matching(lt, phys)
        else:
            raise UsageError(f"unknown scheme {req.scheme!r}")
        return schemas.SolveResponse(
            physical=_physical_payload(phys),
            config=_config_payload(cfg),
            ltcr=metrics.render_rational(metrics.ltcr(lt.c, realized_matrix(cfg))),
            best_value=best_value,
        )

    @app.post("/validate", response_model=schemas.ValidateResponse)
    async def validate(req: schemas.ValidateRequest):
        lt = _load_logical(req.logical)
        phys = load_physical(req.physical.model_dump(), "$.physical")
        cfg = load_config(req.config.model_dump(), phys.p, phys.num_ocs, "$.config")
        report = validate_configuration(cfg, phys, lt, require_exact=req.require_exact)
        return schemas.ValidateResponse(
            ok=report.ok,
            violations=[
                schemas.ViolationPayload(rule=v.rule, where=list(v.where), detail=v.detail)
                for v in report.violations
            ],
        )

    @app.post("/online", response_model=schemas.OnlineResponse)
    async def run_online(req: schemas.OnlineRequest):
        if req.scheme != "cross":
            raise UsageError(f"online solving supports the cross scheme only, got {req.scheme!r}")
        if req.strategy not in ("cross-mdmcf", "cross-nocost"):
            raise UsageError(f"unknown strategy {req.strategy!r}")
        sequence = load_sequence([p.model_dump() for p in req.sequence], "$.sequence")
        first = sequence[0]
        if any(lt.p != first.p or lt.k_egroup != first.k_egroup for lt in sequence):
            raise UsageError("all sequence elements must share p and k_egroup")
        phys = build_wiring(WiringScheme.CROSS, first.p, first.k_egroup, 1)
        incumbent = OcsConfiguration.zeros(first.p, phys.num_ocs)
        steps = []
        for lt in sequence:
            cfg = online.min_rewiring_cross(
                lt, incumbent, phys, rewiring_aware=(req.strategy == "cross-mdmcf")
            )
            steps.append(
                schemas.OnlineStep(
                    config=_config_payload(cfg),
                    ltcr=metrics.render_rational(metrics.ltcr(lt.c, realized_matrix(cfg))),
                    mrar=metrics.render_rational(metrics.mrar(incumbent.x, cfg.x)),
                    rewired=metrics.rewiring_cost(incumbent.x, cfg.x),
                )
            )
            incumbent = cfg
        return schemas.OnlineResponse(physical=_physical_payload(phys), steps=steps)

    @app.post("/oracle", response_model=schemas.OracleResponse, response_model_exclude_none=True)
    async def oracle(req: schemas.OracleRequest):
        if req.kind == "uniform-exact":
            if req.logical is None:
                raise UsageError("uniform-exact oracle requires 'logical'")
            lt = _load_logical(req.logical)
            phys = build_wiring(WiringScheme.UNIFORM, lt.p, lt.k_egroup, 1)
            _cfg, best = baselines.uniform_exact_small(lt, phys)
            rate = metrics.render_rational(metrics.ltcr(lt.c, realized_matrix(_cfg)))
            return schemas.OracleResponse(kind=req.kind, best_value=best, ltcr=rate)
        if req.kind == "min-rewiring":
            if req.a is None or req.u is None or req.caps is None:
                raise UsageError("min-rewiring oracle requires 'a', 'u' and 'caps'")
            cost = baselines.brute_force_min_rewiring(req.a, req.u, req.caps)
            return schemas.OracleResponse(kind=req.kind, min_rewiring_cost=cost)
        raise UsageError(f"unknown oracle kind {req.kind!r}")

    @app.post("/experiment", response_model=schemas.ExperimentResponse)
    async def experiment(config: dict):
        report = run_experiment(config)
        return schemas.ExperimentResponse(csv=report.to_csv(), summary=report.summary())

    return app


app = create_app()
