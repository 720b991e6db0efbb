import threading

import pytest
from fastapi.testclient import TestClient

from minipencil import engine
from minipencil.adapter import palette_json
from minipencil.server import SessionStore, create_app
from conftest import SIGN_CHECK, SUM_LOOP_BROKEN, OCTAGON_WALK


@pytest.fixture
def client():
    app = create_app(SessionStore(ttl_seconds=3600))
    with TestClient(app) as c:
        yield c


def create(client, text=""):
    response = client.post("/sessions", json={"text": text})
    assert response.status_code == 201
    return response.json()


def test_create_and_fetch_session(client):
    created = create(client, "fd 100\n")
    state = created["state"]
    assert state["revision"] == 0
    assert state["text"] == "fd 100\n"
    assert state["diagnostics"] == []
    fetched = client.get(f"/sessions/{created['id']}")
    assert fetched.status_code == 200
    assert fetched.json() == state


def test_unknown_session_404(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.post("/sessions/nope/drop", json={"palette_id": "fd", "line": 0}).status_code == 404


def test_drop_flow(client):
    created = create(client, "")
    sid = created["id"]
    response = client.post(f"/sessions/{sid}/drop", json={"palette_id": "fd", "line": 0})
    assert response.status_code == 200
    state = response.json()
    assert state["text"] == "fd 100\n"
    assert state["revision"] == 1
    assert state["changed_line_range"] == [0, 0]
    assert len(state["layout"]) == 1
    assert state["block_types"] == {"1": "fd"}


def test_edit_flow_and_diagnostic_payload(client):
    created = create(client, SIGN_CHECK)
    sid = created["id"]
    response = client.post(
        f"/sessions/{sid}/edit",
        json={
            "range": {"start_line": 2, "start_col": 0, "end_line": 2, "end_col": 1},
            "replacement": "",
        },
    )
    assert response.status_code == 200
    state = response.json()
    assert state["stale"] is True
    assert state["diagnostics"][0]["code"] == "INDENT_MISMATCH"
    assert state["diagnostics"][0]["line"] == 3


def test_edit_out_of_bounds_422(client):
    sid = create(client, "fd 100\n")["id"]
    response = client.post(
        f"/sessions/{sid}/edit",
        json={
            "range": {"start_line": 0, "start_col": 0, "end_line": 9, "end_col": 0},
            "replacement": "",
        },
    )
    assert response.status_code == 422
    assert response.json()["detail"]["code"] == "RANGE_OUT_OF_BOUNDS"


def test_unknown_palette_id_422(client):
    sid = create(client)["id"]
    response = client.post(f"/sessions/{sid}/drop", json={"palette_id": "warp", "line": 0})
    assert response.status_code == 422
    assert response.json()["detail"]["code"] == "UNKNOWN_PALETTE_ID"


def test_unknown_fields_rejected(client):
    sid = create(client)["id"]
    response = client.post(
        f"/sessions/{sid}/drop", json={"palette_id": "fd", "line": 0, "bogus": 1}
    )
    assert response.status_code == 422


def test_stale_revision_conflict_409(client):
    sid = create(client, "")["id"]
    first = client.post(
        f"/sessions/{sid}/drop",
        json={"palette_id": "fd", "line": 0, "expected_revision": 0},
    )
    assert first.status_code == 200
    second = client.post(
        f"/sessions/{sid}/drop",
        json={"palette_id": "rt", "line": 0, "expected_revision": 0},
    )
    assert second.status_code == 409
    state = client.get(f"/sessions/{sid}").json()
    assert state["revision"] == 1
    assert state["text"] == "fd 100\n"


def test_concurrent_same_revision_exactly_one_wins(client):
    sid = create(client, "")["id"]
    results = []
    barrier = threading.Barrier(2)

    def contend(palette_id):
        barrier.wait()
        response = client.post(
            f"/sessions/{sid}/drop",
            json={"palette_id": palette_id, "line": 0, "expected_revision": 0},
        )
        results.append(response.status_code)

    threads = [threading.Thread(target=contend, args=(pid,)) for pid in ("fd", "rt")]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(results) == [200, 409]
    assert client.get(f"/sessions/{sid}").json()["revision"] == 1


def test_run_endpoint(client):
    sid = create(client, OCTAGON_WALK)["id"]
    response = client.post(f"/sessions/{sid}/run", json={})
    assert response.status_code == 200
    body = response.json()
    assert body["error"] is None
    assert len(body["trace"]["segments"]) == 10
    assert body["revision"] == 0


def test_run_endpoint_reports_parse_error(client):
    sid = create(client, SUM_LOOP_BROKEN)["id"]
    body = client.post(f"/sessions/{sid}/run", json={}).json()
    assert body["trace"] is None
    assert body["error"]["code"] == "INDENT_MISMATCH"


def test_run_endpoint_reports_runtime_error(client):
    sid = create(client, "write missing\n")["id"]
    body = client.post(f"/sessions/{sid}/run", json={}).json()
    assert body["error"]["code"] == "UNDEFINED_VARIABLE"
    assert body["error"]["line"] == 1


def test_run_endpoint_step_limit(client):
    sid = create(client, "for x in [1..99999999]\n  y = x\n")["id"]
    body = client.post(f"/sessions/{sid}/run", json={"step_limit": 500}).json()
    assert body["error"]["code"] == "STEP_LIMIT"


def test_palette_endpoint_matches_adapter(client):
    response = client.get("/palette")
    assert response.status_code == 200
    assert response.json() == palette_json()


def test_ttl_eviction():
    now = [0.0]
    store = SessionStore(ttl_seconds=10, clock=lambda: now[0])
    app = create_app(store)
    with TestClient(app) as client:
        sid = create(client, "fd 100\n")["id"]
        now[0] = 5.0
        assert client.get(f"/sessions/{sid}").status_code == 200
        now[0] = 16.0  # 11s after the last access
        assert client.get(f"/sessions/{sid}").status_code == 404


def test_openapi_document_in_sync():
    import yaml
    from pathlib import Path

    committed = yaml.safe_load(
        (Path(__file__).parent.parent / "docs" / "api.yaml").read_text(encoding="utf-8")
    )
    assert set(committed["paths"]) == set(create_app().openapi()["paths"])


def test_transport_transparency(client):
    # the same call sequence in-process must generate the same state
    sid = create(client, "")["id"]
    client.post(f"/sessions/{sid}/drop", json={"palette_id": "for-range", "line": 0})
    client.post(f"/sessions/{sid}/drop", json={"palette_id": "write", "line": 1})
    client.post(
        f"/sessions/{sid}/edit",
        json={
            "range": {"start_line": 0, "start_col": 5, "end_line": 0, "end_col": 6},
            "replacement": "3",
        },
    )
    remote = client.get(f"/sessions/{sid}").json()

    session = engine.new_session("")
    engine.drop_block(session, "for-range", 0)
    engine.drop_block(session, "write", 1)
    engine.edit_text(session, 0, 5, 0, 6, "3")
    assert remote["text"] == session.text
    assert remote["revision"] == session.revision
    assert remote["diagnostics"] == []
    assert session.diagnostics == []
