"""Command-line client for the topology-engineering service.

Every subcommand talks to the HTTP API: in-process by default (no
server needed), or to a remote instance via --server.  Exit codes:
0 success, 1 validation failure, 2 infeasible, 3 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click

from .service.app import app as _app

click.UsageError.exit_code = 3

_EXIT_BY_STATUS = {400: 3, 409: 2, 422: 1}


def _canonical(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server)
    from fastapi.testclient import TestClient

    return TestClient(_app)


def _post(ctx_server: str | None, path: str, payload) -> dict:
    with _client(ctx_server) as client:
        response = client.post(path, json=payload)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        click.echo(f"error: {detail}", err=True)
        sys.exit(_EXIT_BY_STATUS.get(response.status_code, 1))
    return response.json()


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"{path}: {exc}")


class ScaleType(click.ParamType):
    name = "p,k"

    def convert(self, value, param, ctx):
        try:
            p, k = (int(part) for part in value.split(","))
            return p, k
        except ValueError:
            self.fail(f"expected 'p,k' integers, got {value!r}", param, ctx)


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; in-process if omitted.")
@click.pass_context
def main(ctx, server):
    """Topology engineering for optically switched clusters."""
    ctx.obj = server


@main.command()
@click.option("--scale", type=ScaleType(), required=True, help="EGroup count and ports per EGroup.")
@click.option("--seed", type=int, default=0, help="64-bit workload seed.")
@click.option("--mode", type=click.Choice(["heavy", "sequence"]), default="heavy")
@click.option("--length", type=int, default=10, help="Sequence length (sequence mode).")
@click.option("--fraction", default="1/4", help="Mutation fraction per step (sequence mode).")
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def gen(server, scale, seed, mode, length, fraction, out):
    """Generate a seeded demand matrix or demand sequence."""
    p, k = scale
    data = _post(server, "/gen", {
        "p": p, "k_egroup": k, "mode": mode,
        "sequence_length": length, "mutation_fraction": fraction, "seed": seed,
    })
    payload = data["logical"] if mode == "heavy" else data["sequence"]
    _write_out(_canonical(payload) + "\n", out)


@main.command()
@click.option("--scheme", type=click.Choice(["cross", "dual", "uniform-heuristic", "uniform-exact", "helios"]),
              default="cross")
@click.option("--logical", "logical_path", type=click.Path(exists=True), required=True)
@click.option("--prev", "prev_path", type=click.Path(exists=True), default=None,
              help="Previous configuration to bias toward (cross only).")
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def solve(server, scheme, logical_path, prev_path, out):
    """Compute an OCS configuration for one demand matrix."""
    body = {"scheme": scheme, "logical": _read_json(logical_path)}
    if prev_path:
        body["prev"] = _read_json(prev_path)
    data = _post(server, "/solve", body)
    _write_out(_canonical(data["config"]) + "\n", out)
    click.echo(f"ltcr={data['ltcr']}", err=True)


@main.command()
@click.option("--scheme", type=click.Choice(["cross"]), default="cross")
@click.option("--sequence", "seq_path", type=click.Path(exists=True), required=True)
@click.option("--strategy", type=click.Choice(["cross-mdmcf", "cross-nocost"]), default="cross-mdmcf")
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def online(server, scheme, seq_path, strategy, out):
    """Solve a demand sequence online, minimizing rewiring."""
    data = _post(server, "/online", {
        "scheme": scheme, "sequence": _read_json(seq_path), "strategy": strategy,
    })
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step", "ltcr", "mrar", "rewired"])
    for step, row in enumerate(data["steps"]):
        writer.writerow([step, row["ltcr"], row["mrar"], row["rewired"]])
    _write_out(buf.getvalue(), out)


@main.command()
@click.option("--logical", "logical_path", type=click.Path(exists=True), required=True)
@click.option("--physical", "physical_path", type=click.Path(exists=True), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@click.option("--best-effort", is_flag=True, help="Require only symmetry, not exact realization.")
@click.pass_obj
def validate(server, logical_path, physical_path, config_path, best_effort):
    """Check a configuration against a demand and a wiring scheme."""
    data = _post(server, "/validate", {
        "logical": _read_json(logical_path),
        "physical": _read_json(physical_path),
        "config": _read_json(config_path),
        "require_exact": not best_effort,
    })
    if data["ok"]:
        click.echo("ok")
        return
    for v in data["violations"]:
        click.echo(f"{v['rule']} at {tuple(v['where'])}: {v['detail']}", err=True)
    sys.exit(1)


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), required=True,
              help="Experiment run config (JSON).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def bench(server, config_path, fmt, out):
    """Run a benchmark experiment and emit a CSV or JSON report."""
    data = _post(server, "/experiment", _read_json(config_path))
    if fmt == "csv":
        _write_out(data["csv"], out)
    else:
        _write_out(json.dumps(data["summary"], indent=2, sort_keys=True) + "\n", out)


@main.command()
@click.option("--kind", type=click.Choice(["uniform-exact", "min-rewiring"]), required=True)
@click.option("--logical", "logical_path", type=click.Path(exists=True), default=None)
@click.option("--instance", "instance_path", type=click.Path(exists=True), default=None,
              help="JSON with 'a', 'u', 'caps' (min-rewiring kind).")
@click.pass_obj
def oracle(server, kind, logical_path, instance_path):
    """Run a size-guarded exhaustive oracle."""
    body = {"kind": kind}
    if logical_path:
        body["logical"] = _read_json(logical_path)
    if instance_path:
        body.update(_read_json(instance_path))
    data = _post(server, "/oracle", body)
    click.echo(_canonical(data))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(_app, host=host, port=port)


if __name__ == "__main__":
    main()
