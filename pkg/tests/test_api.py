import pytest
from fastapi.testclient import TestClient

from streamcut.main import app


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json() == {"status": "healthy"}


def test_generate_then_exact(client):
    generated = client.post("/api/instances/generate", json={"type": "bipartite", "n_left": 3, "n_right": 3, "m": 6})
    assert generated.status_code == 200
    body = generated.json()
    assert body["metadata"]["opt_value"] == 6

    exact = client.post("/api/instances/exact", json={"stream": body["stream"]})
    assert exact.status_code == 200
    assert exact.json()["opt_value"] == 6
    assert exact.json()["m"] == 6


def test_exact_rejects_bad_stream(client):
    response = client.post("/api/instances/exact", json={"stream": "n 3 ins\ne 0 0 +1\n"})
    assert response.status_code == 400
    assert "строка 2" in response.json()["detail"]


def test_run_experiment(client):
    payload = {
        "instance": {"type": "bipartite", "n_left": 5, "n_right": 5, "m": 12, "seed": 2},
        "algorithm": "alg1",
        "params": {"eps": 0.5, "delta": 0.2},
        "trials": 2,
    }
    response = client.post("/api/experiments/run", json=payload)
    assert response.status_code == 200
    body = response.json()
    assert body["summary"]["success_frequency"] == 1.0
    assert len(body["records"]) == 2


def test_run_experiment_domain_error(client):
    payload = {
        "instance": {"type": "bipartite", "n_left": 2, "n_right": 2, "m": 3},
        "algorithm": "alg2",
        "params": {"eps": 0.3, "delta": 0.2},
    }
    # поток insertion-only в произвольном порядке, alg2 его не принимает
    response = client.post("/api/experiments/run", json=payload)
    assert response.status_code == 400


def test_run_experiment_validation(client):
    payload = {"algorithm": "alg1", "params": {"eps": 0.3, "delta": 0.2}}
    assert client.post("/api/experiments/run", json=payload).status_code == 422


def test_exact_rejects_deletions_in_insertion_stream(client):
    text = "n 3 ins\ne 0 1 +1\ne 0 1 -1\ne 0 1 +1\ne 0 1 -1\ne 1 2 +1\n"
    response = client.post("/api/instances/exact", json={"stream": text})
    assert response.status_code == 400
    assert "строка 3" in response.json()["detail"]
