"""HTTP API: happy paths and error-code mapping."""

import pytest
from fastapi.testclient import TestClient

from ocs_toe.service.app import create_app

FULL_MESH_3 = {"p": 3, "k_egroup": 2, "matrix": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_gen_heavy_deterministic(client):
    a = client.post("/gen", json={"p": 4, "k_egroup": 4, "seed": 1}).json()
    b = client.post("/gen", json={"p": 4, "k_egroup": 4, "seed": 1}).json()
    assert a == b
    assert all(sum(row) == 4 for row in a["logical"]["matrix"])


def test_gen_sequence(client):
    data = client.post(
        "/gen",
        json={"p": 4, "k_egroup": 4, "mode": "sequence", "sequence_length": 3, "seed": 2},
    ).json()
    assert len(data["sequence"]) == 3


def test_solve_cross_and_validate(client):
    solved = client.post("/solve", json={"scheme": "cross", "logical": FULL_MESH_3})
    assert solved.status_code == 200
    body = solved.json()
    assert body["ltcr"] == "1.000"
    verdict = client.post(
        "/validate",
        json={"logical": FULL_MESH_3, "physical": body["physical"], "config": body["config"]},
    ).json()
    assert verdict == {"ok": True, "violations": []}


def test_solve_uniform_exact(client):
    body = client.post("/solve", json={"scheme": "uniform-exact", "logical": FULL_MESH_3}).json()
    assert body["best_value"] == 4
    assert body["ltcr"] == "0.667"


def test_validate_reports_violations(client):
    solved = client.post("/solve", json={"scheme": "cross", "logical": FULL_MESH_3}).json()
    broken = dict(solved["config"])
    broken["x"] = solved["config"]["x"][1:]  # drop one mirrored link
    verdict = client.post(
        "/validate",
        json={"logical": FULL_MESH_3, "physical": solved["physical"], "config": broken},
    ).json()
    assert not verdict["ok"]
    assert verdict["violations"]


def test_online_threading(client):
    seq = client.post(
        "/gen",
        json={"p": 4, "k_egroup": 4, "mode": "sequence", "sequence_length": 3, "seed": 5},
    ).json()["sequence"]
    data = client.post("/online", json={"sequence": seq}).json()
    assert len(data["steps"]) == 3
    assert all(step["ltcr"] == "1.000" for step in data["steps"])
    assert data["steps"][0]["mrar"] == "0.000"  # everything new from empty


def test_oracle_uniform_exact(client):
    data = client.post("/oracle", json={"kind": "uniform-exact", "logical": FULL_MESH_3}).json()
    assert data == {"kind": "uniform-exact", "best_value": 4, "ltcr": "0.667"}


def test_oracle_min_rewiring(client):
    data = client.post(
        "/oracle",
        json={
            "kind": "min-rewiring",
            "a": [[0, 1], [1, 0]],
            "u": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
            "caps": [[1, 1], [1, 1]],
        },
    ).json()
    assert data["min_rewiring_cost"] == 2


def test_experiment_endpoint(client):
    body = {"strategies": ["cross"], "p": 4, "k_egroup": 4, "trials": 2, "seed": 3}
    data = client.post("/experiment", json=body).json()
    assert data["csv"].splitlines()[0].startswith("trial,strategy,")
    assert data["summary"]["cross"]["mean_ltcr"] == 1.0


def test_usage_errors_are_400(client):
    assert client.post("/solve", json={"scheme": "bogus", "logical": FULL_MESH_3}).status_code == 400
    asym = {"p": 2, "k_egroup": 2, "matrix": [[0, 1], [2, 0]]}
    assert client.post("/solve", json={"scheme": "cross", "logical": asym}).status_code == 400
    big = {"p": 8, "k_egroup": 8, "matrix": [[0] * 8 for _ in range(8)]}
    assert client.post("/oracle", json={"kind": "uniform-exact", "logical": big}).status_code == 400


def test_dimension_mismatch_is_422(client):
    solved = client.post("/solve", json={"scheme": "cross", "logical": FULL_MESH_3}).json()
    response = client.post(
        "/validate",
        json={
            "logical": FULL_MESH_3,
            "physical": {"scheme": "cross", "p": 4, "k_egroup": 2, "psi": 1},
            "config": solved["config"],
        },
    )
    assert response.status_code == 422
    assert response.json()["error"] == "validation"


def test_infeasible_is_409(client):
    response = client.post(
        "/oracle",
        json={
            "kind": "min-rewiring",
            "a": [[0, 2], [2, 0]],
            "u": [[[0], [0]], [[0], [0]]],
            "caps": [[1], [1]],
        },
    )
    assert response.status_code == 409
    assert response.json()["error"] == "infeasible"


def test_unknown_body_field_rejected(client):
    response = client.post("/solve", json={"scheme": "cross", "logical": FULL_MESH_3, "zz": 1})
    assert response.status_code == 422  # pydantic extra="forbid"
