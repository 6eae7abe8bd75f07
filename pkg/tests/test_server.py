"""HTTP surface: endpoints, error mapping, and wire shapes."""

import pytest
from fastapi.testclient import TestClient

from outofturn.server import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def start(client, dataset="congress", spec="congress"):
    response = client.post("/sessions", json={"dataset": dataset, "spec": spec})
    assert response.status_code == 201
    body = response.json()
    return body["session_id"], body["render_model"]


def test_datasets_lists_bindable_pairs(client):
    response = client.get("/datasets")
    assert response.status_code == 200
    assert response.json()["pairs"] == [
        {"dataset": "breakfast", "spec": "breakfast"},
        {"dataset": "cars", "spec": "fuel"},
        {"dataset": "congress", "spec": "congress"},
    ]


def test_create_session_and_fetch_model(client):
    session_id, model = start(client)
    assert model["solicitation"]["slot"] == "house"
    again = client.get(f"/sessions/{session_id}")
    assert again.status_code == 200
    assert again.json() == model


def test_create_session_unknown_dataset(client):
    response = client.post("/sessions", json={"dataset": "nope", "spec": "congress"})
    assert response.status_code == 404
    assert response.json()["error"] == "UnknownDataset"


def test_create_session_unbound_pair(client):
    response = client.post("/sessions", json={"dataset": "cars", "spec": "congress"})
    assert response.status_code == 400
    assert response.json()["error"] == "UnboundSlot"


def test_four_step_interaction_trace(client):
    session_id, model = start(client)
    # click Senator
    response = client.post(f"/sessions/{session_id}/input", json={"click": {"slot": "house", "value": "senator"}})
    assert response.status_code == 200
    model = response.json()["render_model"]
    assert model["solicitation"]["slot"] == "party"
    # say Indiana (out of turn)
    response = client.post(f"/sessions/{session_id}/input", json={"say": "Indiana"})
    model = response.json()["render_model"]
    assert model["solicitation"]["slot"] == "party"
    assert [l["value"] for l in model["solicitation"]["offered"]] == ["republican", "democrat"]
    # click Republican
    response = client.post(f"/sessions/{session_id}/input", json={"click": {"slot": "party", "value": "republican"}})
    body = response.json()
    assert body["render_model"]["status"] == "complete"
    assert [r["name"] for r in body["render_model"]["results"]] == ["Richard Lugar"]


def test_show_me_results_over_http(client):
    session_id, _ = start(client)
    client.post(f"/sessions/{session_id}/input", json={"click": {"slot": "house", "value": "senator"}})
    response = client.post(f"/sessions/{session_id}/input", json={"say": "show me results"})
    model = response.json()["render_model"]
    assert model["status"] == "complete"
    assert len(model["results"]) == 6


def test_input_after_completion_is_409(client):
    session_id, _ = start(client)
    client.post(f"/sessions/{session_id}/input", json={"say": "republican senator from minnesota"})
    response = client.post(f"/sessions/{session_id}/input", json={"say": "democrat"})
    assert response.status_code == 409
    assert response.json()["error"] == "SessionComplete"


def test_confirmation_pending_is_409(client):
    session_id, _ = start(client, dataset="breakfast", spec="breakfast")
    client.post(f"/sessions/{session_id}/input", json={"say": "bagel"})
    response = client.post(f"/sessions/{session_id}/input", json={"say": "espresso"})
    assert response.status_code == 409
    assert response.json()["error"] == "ConfirmationPending"
    response = client.post(f"/sessions/{session_id}/input", json={"say": "yes"})
    assert response.status_code == 200


def test_stale_link_is_400(client):
    session_id, _ = start(client)
    response = client.post(f"/sessions/{session_id}/input", json={"click": {"slot": "party", "value": "republican"}})
    assert response.status_code == 400
    assert response.json()["error"] == "StaleLink"


def test_malformed_input_is_400(client):
    session_id, _ = start(client)
    response = client.post(f"/sessions/{session_id}/input", json={})
    assert response.status_code == 400
    assert response.json()["error"] == "MalformedInput"


def test_grammar_endpoint_delegates(client):
    session_id, _ = start(client)
    response = client.get(f"/sessions/{session_id}/grammar")
    doc = response.json()
    assert doc["mode"] == "OVER_APPROXIMATION"
    assert sorted(doc["token_pool"]) == ["district", "house", "party", "seat", "state"]


def test_help_endpoint(client):
    session_id, _ = start(client)
    payload = client.get(f"/sessions/{session_id}/help").json()
    assert len(payload["slots"]) == 5
    assert payload["reserved"][0] == "show me results"


def test_delete_session(client):
    session_id, _ = start(client)
    response = client.delete(f"/sessions/{session_id}")
    assert response.status_code == 204
    assert client.get(f"/sessions/{session_id}").status_code == 404
    assert client.delete(f"/sessions/{session_id}").status_code == 404


def test_unknown_session_is_404(client):
    assert client.get("/sessions/missing").status_code == 404
    response = client.post("/sessions/missing/input", json={"say": "hello"})
    assert response.status_code == 404
    assert response.json()["error"] == "UnknownSession"


def test_report_wire_shape(client):
    session_id, _ = start(client)
    response = client.post(f"/sessions/{session_id}/input", json={"say": "senator blah"})
    report = response.json()["report"]
    assert sorted(report) == ["accepted", "delta", "help", "ignored", "motivators", "rejected"]
    assert report["accepted"] == [{"phrase": "senator", "slot": "house", "value": "senator"}]
    assert report["ignored"] == ["blah"]
    assert report["delta"]["solicitation"] == "party"


def test_index_without_ui_bundle(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["service"] == "outofturn"
