"""HTTP facade tests driven through the in-process ASGI test client."""

import pytest
from fastapi.testclient import TestClient

from mtlspec.service import ServiceConfig, create_app


@pytest.fixture
def client():
    with TestClient(create_app(ServiceConfig())) as c:
        yield c


@pytest.fixture
def spec(client):
    """A fresh spec id plus its starting revision."""
    body = client.post("/specs", json={"name": "cruise"}).json()
    return body["id"], body["revision"]


def add_template(client, spec_id, revision, **fields):
    payload = {"group": 1, "revision": revision, **fields}
    resp = client.post(f"/specs/{spec_id}/templates", json=payload)
    assert resp.status_code == 201, resp.text
    return resp.json()


def build_cruise(client, spec_id, revision):
    """speed < 80 always implies rpm < 4000 always, one nested pair."""
    body = add_template(client, spec_id, revision)
    t1 = body["template"]
    body = client.patch(
        f"/specs/{spec_id}/templates/{t1}",
        json={
            "op": {"kind": "always", "outer": [0, 40]},
            "predicate": {"signal": "speed", "relation": "<", "threshold": 80},
            "revision": body["revision"],
        },
    ).json()
    body = add_template(client, spec_id, body["revision"], parent=t1, group=2)
    t2 = body["template"]
    body = client.patch(
        f"/specs/{spec_id}/templates/{t2}",
        json={
            "op": {"kind": "always", "outer": [0, 40]},
            "predicate": {"signal": "rpm", "relation": "<", "threshold": 4000},
            "revision": body["revision"],
        },
    ).json()
    return t1, t2, body["revision"]


# --- lifecycle ------------------------------------------------------------------------


def test_create_spec(client):
    resp = client.post("/specs", json={"name": "cruise", "description": "demo"})
    assert resp.status_code == 201
    body = resp.json()
    assert body["revision"] == 0
    assert body["spec"]["name"] == "cruise"
    assert body["mtl"]["accepted"] is False


def test_create_spec_rejects_unknown_fields(client):
    resp = client.post("/specs", json={"name": "x", "color": "red"})
    assert resp.status_code == 422
    assert resp.json()["error"] == "SchemaError"


def test_get_spec(client, spec):
    spec_id, _ = spec
    resp = client.get(f"/specs/{spec_id}")
    assert resp.status_code == 200
    assert resp.json()["id"] == spec_id


def test_get_unknown_spec(client):
    resp = client.get("/specs/nope")
    assert resp.status_code == 404
    assert resp.json()["error"] == "UnknownSpec"


def test_delete_spec(client, spec):
    spec_id, _ = spec
    resp = client.delete(f"/specs/{spec_id}")
    assert resp.status_code == 200
    assert resp.json()["deleted"] == spec_id
    assert client.get(f"/specs/{spec_id}").status_code == 404


def test_delete_with_stale_revision(client, spec):
    spec_id, rev = spec
    resp = client.delete(f"/specs/{spec_id}?revision={rev + 5}")
    assert resp.status_code == 409
    assert client.get(f"/specs/{spec_id}").status_code == 200


def test_healthz(client):
    resp = client.get("/healthz")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


# --- editing --------------------------------------------------------------------------


def test_full_authoring_flow(client, spec):
    spec_id, rev = spec
    t1, t2, rev = build_cruise(client, spec_id, rev)
    resp = client.get(f"/specs/{spec_id}/mtl")
    assert resp.status_code == 200
    preview = resp.json()
    assert preview["formula"] == "[]_[0,40]((speed < 80) -> []_[0,40](rpm < 4000))"
    assert preview["class"] == "ReactiveResponse"
    assert preview["accepted"] is True
    assert preview["mode"] == "extended"


def test_mtl_strict_mode(client, spec):
    spec_id, rev = spec
    build_cruise(client, spec_id, rev)
    resp = client.get(f"/specs/{spec_id}/mtl?mode=strict")
    assert resp.json()["mode"] == "strict"
    assert resp.json()["accepted"] is True


def test_mtl_unknown_mode(client, spec):
    spec_id, _ = spec
    resp = client.get(f"/specs/{spec_id}/mtl?mode=fancy")
    assert resp.status_code == 422


def test_mtl_preview_is_stable_across_calls(client, spec):
    spec_id, rev = spec
    build_cruise(client, spec_id, rev)
    first = client.get(f"/specs/{spec_id}/mtl").content
    second = client.get(f"/specs/{spec_id}/mtl").content
    assert first == second


def test_new_template_starts_as_empty_leaf(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    nodes = body["spec"]["nodes"]
    assert len(nodes) == 1
    assert nodes[0]["op"] == {"kind": "now"}
    assert "predicate" not in nodes[0] or nodes[0]["predicate"] is None
    assert body["mtl"]["accepted"] is False
    assert body["mtl"]["diagnostics"]


def test_stale_revision_conflict_reports_current(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    resp = client.post(
        f"/specs/{spec_id}/templates", json={"group": 1, "revision": rev}
    )
    assert resp.status_code == 409
    conflict = resp.json()
    assert conflict["error"] == "RevisionMismatch"
    assert conflict["revision"] == body["revision"]


def test_malformed_interval_rejected(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    resp = client.patch(
        f"/specs/{spec_id}/templates/{body['template']}",
        json={
            "op": {"kind": "always", "outer": [40, 0]},
            "revision": body["revision"],
        },
    )
    assert resp.status_code == 422
    assert resp.json()["error"] == "MalformedOperator"


def test_inner_without_outer_rejected(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    resp = client.patch(
        f"/specs/{spec_id}/templates/{body['template']}",
        json={
            "op": {"kind": "repeatedly_often", "inner": [0, 5]},
            "revision": body["revision"],
        },
    )
    assert resp.status_code == 422
    assert resp.json()["error"] == "MalformedOperator"


def test_patch_unknown_template(client, spec):
    spec_id, rev = spec
    resp = client.patch(
        f"/specs/{spec_id}/templates/t99",
        json={"group": 1, "revision": rev},
    )
    assert resp.status_code == 404
    assert resp.json()["error"] == "UnknownNode"


def test_predicate_can_be_cleared(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    tid = body["template"]
    body = client.patch(
        f"/specs/{spec_id}/templates/{tid}",
        json={
            "predicate": {"signal": "x", "relation": ">", "threshold": 1},
            "revision": body["revision"],
        },
    ).json()
    assert body["spec"]["nodes"][0]["predicate"]["signal"] == "x"
    body = client.patch(
        f"/specs/{spec_id}/templates/{tid}",
        json={"predicate": None, "revision": body["revision"]},
    ).json()
    node = body["spec"]["nodes"][0]
    assert node.get("predicate") is None


def test_invalid_predicate_relation(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    resp = client.patch(
        f"/specs/{spec_id}/templates/{body['template']}",
        json={
            "predicate": {"signal": "x", "relation": "=", "threshold": 1},
            "revision": body["revision"],
        },
    )
    assert resp.status_code == 422


def test_delete_template_requires_revision(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    tid = body["template"]
    resp = client.delete(f"/specs/{spec_id}/templates/{tid}")
    assert resp.status_code == 422
    resp = client.delete(
        f"/specs/{spec_id}/templates/{tid}?revision={body['revision']}"
    )
    assert resp.status_code == 200
    assert resp.json()["spec"]["nodes"] == []


def test_delete_last_template_yields_no_preview(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    body = client.delete(
        f"/specs/{spec_id}/templates/{body['template']}?revision={body['revision']}"
    ).json()
    assert body["mtl"]["formula"] is None
    assert body["mtl"]["diagnostics"]


def test_negated_toggle(client, spec):
    spec_id, rev = spec
    t1, t2, rev = build_cruise(client, spec_id, rev)
    body = client.post(
        f"/specs/{spec_id}/negated", json={"value": True, "revision": rev}
    ).json()
    assert body["spec"]["negated"] is True
    assert body["mtl"]["formula"].startswith("!(")
    assert body["mtl"]["negated"] is True


def test_after_positions_new_sibling(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    first = body["template"]
    body = add_template(client, spec_id, body["revision"])
    body = add_template(client, spec_id, body["revision"], after=first)
    ids = [n["id"] for n in body["spec"]["nodes"]]
    order = {n["id"]: n["order"] for n in body["spec"]["nodes"]}
    assert order[body["template"]] == 1
    assert len(ids) == 3


def test_group_must_keep_runs_contiguous(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev, group=1)
    body = add_template(client, spec_id, body["revision"], group=1)
    middle = body["template"]
    body = add_template(client, spec_id, body["revision"], group=1)
    resp = client.patch(
        f"/specs/{spec_id}/templates/{middle}",
        json={"group": 2, "revision": body["revision"]},
    )
    assert resp.status_code == 422


# --- exemplars ------------------------------------------------------------------------


def test_exemplars_endpoint(client, spec):
    spec_id, rev = spec
    t1, t2, rev = build_cruise(client, spec_id, rev)
    resp = client.get(f"/specs/{spec_id}/templates/{t2}/exemplars?n=2&seed=9")
    assert resp.status_code == 200
    body = resp.json()
    assert body["template"] == t2
    assert body["formula"] == "[]_[0,40](rpm < 4000)"
    assert body["signal"] == "rpm"
    assert body["negative"] is False
    assert len(body["exemplars"]) == 2
    for i, ex in enumerate(body["exemplars"]):
        assert ex["index"] == i
        assert len(ex["times"]) == len(ex["values"])
        assert all(v < 4000 for v in ex["values"])


def test_exemplars_are_deterministic(client, spec):
    spec_id, rev = spec
    t1, t2, rev = build_cruise(client, spec_id, rev)
    url = f"/specs/{spec_id}/templates/{t2}/exemplars?n=3&seed=5"
    assert client.get(url).content == client.get(url).content


def test_negative_exemplars_violate(client, spec):
    spec_id, rev = spec
    t1, t2, rev = build_cruise(client, spec_id, rev)
    resp = client.get(
        f"/specs/{spec_id}/templates/{t2}/exemplars?n=2&seed=9&negative=true"
    )
    body = resp.json()
    assert body["negative"] is True
    for ex in body["exemplars"]:
        assert any(v >= 4000 for v in ex["values"])


def test_exemplar_count_bounds(client, spec):
    spec_id, rev = spec
    t1, t2, rev = build_cruise(client, spec_id, rev)
    for bad in (0, 65, -1):
        resp = client.get(f"/specs/{spec_id}/templates/{t2}/exemplars?n={bad}&seed=1")
        assert resp.status_code == 422


def test_exemplars_need_a_predicate(client, spec):
    spec_id, rev = spec
    body = add_template(client, spec_id, rev)
    resp = client.get(
        f"/specs/{spec_id}/templates/{body['template']}/exemplars?n=1&seed=1"
    )
    assert resp.status_code == 422


# --- monitor -------------------------------------------------------------------------


def test_monitor_endpoint(client):
    trace = {
        "times": [i * 0.5 for i in range(100)],
        "signals": {"rpm": [3000.0] * 100},
    }
    resp = client.post(
        "/monitor", json={"formula": "[]_[0,36](rpm < 4000)", "trace": trace}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["result"] is True
    assert body["horizon"] == 36.0


def test_monitor_false_result(client):
    trace = {"times": [0.0, 1.0, 2.0], "signals": {"x": [1.0, 2.0, 3.0]}}
    resp = client.post("/monitor", json={"formula": "(x < 0)", "trace": trace})
    assert resp.json()["result"] is False


def test_monitor_at_parameter(client):
    trace = {"times": [0.0, 1.0, 2.0], "signals": {"x": [0.0, 5.0, 0.0]}}
    resp = client.post(
        "/monitor", json={"formula": "(x > 1)", "trace": trace, "at": 1}
    )
    assert resp.json()["result"] is True


def test_monitor_insufficient_horizon(client):
    trace = {"times": [0.0, 1.0], "signals": {"x": [0.0, 1.0]}}
    resp = client.post(
        "/monitor", json={"formula": "[]_[0,10](x < 5)", "trace": trace}
    )
    assert resp.status_code == 422
    body = resp.json()
    assert body["error"] == "InsufficientHorizon"
    assert body["required"] == 10.0
    assert body["available"] == 1.0


def test_monitor_syntax_error(client):
    trace = {"times": [0.0], "signals": {"x": [0.0]}}
    resp = client.post(
        "/monitor", json={"formula": "(x > 1) U (y < 2)", "trace": trace}
    )
    assert resp.status_code == 422
    assert resp.json()["error"] == "FormulaSyntaxError"


def test_monitor_invalid_trace(client):
    resp = client.post(
        "/monitor",
        json={"formula": "(x > 1)", "trace": {"times": [1.0], "signals": {"x": [0.0]}}},
    )
    assert resp.status_code == 422


def test_monitor_negative_at(client):
    trace = {"times": [0.0], "signals": {"x": [0.0]}}
    resp = client.post(
        "/monitor", json={"formula": "(x > 1)", "trace": trace, "at": -1}
    )
    assert resp.status_code == 422


# --- persistence ----------------------------------------------------------------------


def test_specs_survive_restart(tmp_path):
    config = ServiceConfig(persistence_dir=str(tmp_path))
    with TestClient(create_app(config)) as client:
        body = client.post("/specs", json={"name": "durable"}).json()
        spec_id, rev = body["id"], body["revision"]
        t1, t2, rev = build_cruise(client, spec_id, rev)
        formula = client.get(f"/specs/{spec_id}/mtl").json()["formula"]

    with TestClient(create_app(config)) as client:
        resp = client.get(f"/specs/{spec_id}")
        assert resp.status_code == 200
        assert resp.json()["spec"]["name"] == "durable"
        assert client.get(f"/specs/{spec_id}/mtl").json()["formula"] == formula


def test_restart_does_not_reuse_ids(tmp_path):
    config = ServiceConfig(persistence_dir=str(tmp_path))
    with TestClient(create_app(config)) as client:
        first = client.post("/specs", json={}).json()["id"]
    with TestClient(create_app(config)) as client:
        second = client.post("/specs", json={}).json()["id"]
    assert first != second
