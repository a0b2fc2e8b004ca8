"""HTTP facade for authoring sessions.

The store keeps one revision counter per spec. Mutating requests must echo
the revision they were built against; a mismatch is answered with 409 and
the current revision so the client can rebase. Validation failures are
answered with 422 and the name of the error class that rejected the input.
Mutations are serialized per spec and applied atomically: the tree visible
through the API always passes its structural checks.
"""

from __future__ import annotations

import re
import socket
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import (
    BindError,
    IntervalError,
    MalformedOperator,
    NoTemplates,
    PersistenceError,
    SpecError,
)
from .exemplars import GeneratorConfig, synthesize
from .fragment import classify, recognize
from .model import (
    Interval,
    OperatorKind,
    Predicate,
    SpecTree,
    TemporalOperator,
    add_template,
    find_node,
    new_spec,
    remove_template,
    set_group,
    set_negated,
    set_operator,
    set_predicate,
    validate_structure,
)
from .monitor import Trace, evaluate
from .mtl import format_formula, horizon, parse_formula
from .persistence import load_spec, save_spec, tree_to_document
from .translate import template_formula, translate

_SPEC_FILE_SUFFIX = ".vspec.json"
_STORED_ID = re.compile(r"^s(\d+)$")


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    persistence_dir: str | None = None
    allowed_origins: tuple[str, ...] = ("*",)


class ApiError(Exception):
    """Carries an HTTP status plus a JSON body naming the rejected input."""

    def __init__(self, status: int, name: str, detail: str, **extra: Any):
        super().__init__(detail)
        self.status = status
        self.body = {"error": name, "detail": detail, **extra}


class _Entry:
    __slots__ = ("tree", "revision", "lock")

    def __init__(self, tree: SpecTree):
        self.tree = tree
        self.revision = 0
        self.lock = threading.Lock()


class SpecStore:
    """In-memory spec registry, optionally mirrored to a directory."""

    def __init__(self, persistence_dir: str | None = None):
        self._lock = threading.Lock()
        self._entries: dict[str, _Entry] = {}
        self._counter = 0
        self._dir = Path(persistence_dir) if persistence_dir else None
        if self._dir is not None:
            try:
                self._dir.mkdir(parents=True, exist_ok=True)
                paths = sorted(self._dir.glob(f"*{_SPEC_FILE_SUFFIX}"))
            except OSError as exc:
                raise PersistenceError(str(exc)) from exc
            for path in paths:
                spec_id = path.name[: -len(_SPEC_FILE_SUFFIX)]
                self._entries[spec_id] = _Entry(load_spec(path))
                match = _STORED_ID.match(spec_id)
                if match:
                    self._counter = max(self._counter, int(match.group(1)))

    def create(self, tree: SpecTree) -> tuple[str, _Entry]:
        with self._lock:
            self._counter += 1
            spec_id = f"s{self._counter}"
            entry = _Entry(tree)
            self._entries[spec_id] = entry
        self._persist(spec_id, entry)
        return spec_id, entry

    def get(self, spec_id: str) -> _Entry:
        with self._lock:
            entry = self._entries.get(spec_id)
        if entry is None:
            raise ApiError(404, "UnknownSpec", f"no spec with id {spec_id!r}")
        return entry

    def delete(self, spec_id: str, revision: int | None) -> None:
        entry = self.get(spec_id)
        with entry.lock:
            if revision is not None and revision != entry.revision:
                raise ApiError(
                    409,
                    "RevisionMismatch",
                    f"expected revision {entry.revision}, got {revision}",
                    revision=entry.revision,
                )
            with self._lock:
                self._entries.pop(spec_id, None)
            if self._dir is not None:
                try:
                    (self._dir / f"{spec_id}{_SPEC_FILE_SUFFIX}").unlink(
                        missing_ok=True
                    )
                except OSError as exc:
                    raise PersistenceError(str(exc)) from exc

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._entries)

    def mutate(self, spec_id: str, revision: int, fn) -> tuple[_Entry, Any]:
        """Apply ``fn(tree) -> (new_tree, extra)`` under the spec's lock."""
        entry = self.get(spec_id)
        with entry.lock:
            if revision != entry.revision:
                raise ApiError(
                    409,
                    "RevisionMismatch",
                    f"expected revision {entry.revision}, got {revision}",
                    revision=entry.revision,
                )
            new_tree, extra = fn(entry.tree)
            # A predicate-less leaf is the normal in-progress state right
            # after adding a template; only corruption diagnostics block.
            blocking = [
                d
                for d in validate_structure(new_tree)
                if d.rule != "LeafWithoutPredicate"
            ]
            if blocking:
                raise ApiError(
                    422,
                    "StructurallyInvalid",
                    "; ".join(str(d) for d in blocking),
                )
            entry.tree = new_tree
            entry.revision += 1
            self._persist(spec_id, entry)
            return entry, extra

    def _persist(self, spec_id: str, entry: _Entry) -> None:
        if self._dir is None:
            return
        try:
            save_spec(entry.tree, self._dir / f"{spec_id}{_SPEC_FILE_SUFFIX}")
        except OSError as exc:
            raise PersistenceError(str(exc)) from exc


def _check_fields(payload: Any, allowed: set[str], required: set[str]) -> None:
    if not isinstance(payload, dict):
        raise ApiError(422, "SchemaError", "body must be a JSON object")
    unknown = set(payload) - allowed
    if unknown:
        raise ApiError(
            422, "SchemaError", f"unknown field {sorted(unknown)[0]!r}"
        )
    missing = required - set(payload)
    if missing:
        raise ApiError(
            422, "SchemaError", f"missing field {sorted(missing)[0]!r}"
        )


def _revision_of(payload: dict) -> int:
    value = payload.get("revision")
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ApiError(
            422, "SchemaError", "revision must be a non-negative integer"
        )
    return value


def _text_field(payload: dict, name: str, default: str = "") -> str:
    value = payload.get(name, default)
    if not isinstance(value, str):
        raise ApiError(422, "SchemaError", f"{name} must be a string")
    return value


def _interval_pair(value: Any, name: str) -> tuple[float, float]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise ApiError(
            422, "MalformedOperator", f"{name} must be a [lo, hi] pair of numbers"
        )
    return float(value[0]), float(value[1])


def _op_from_payload(payload: Any) -> TemporalOperator:
    _check_fields(payload, allowed={"kind", "outer", "inner"}, required={"kind"})
    kind_value = payload["kind"]
    try:
        kind = OperatorKind(kind_value)
    except ValueError:
        raise ApiError(
            422, "MalformedOperator", f"unknown operator kind {kind_value!r}"
        ) from None
    if "inner" in payload and "outer" not in payload:
        raise ApiError(422, "MalformedOperator", "inner given without outer")
    try:
        bounds = {
            name: Interval(*_interval_pair(payload[name], name))
            for name in ("outer", "inner")
            if name in payload
        }
        return TemporalOperator(kind, **bounds)
    except (MalformedOperator, IntervalError) as exc:
        raise ApiError(422, "MalformedOperator", str(exc)) from exc


def _predicate_from_payload(payload: Any) -> Predicate:
    _check_fields(
        payload,
        allowed={"signal", "relation", "threshold"},
        required={"signal", "relation", "threshold"},
    )
    threshold = payload["threshold"]
    if not isinstance(threshold, (int, float)) or isinstance(threshold, bool):
        raise ApiError(422, "InvalidPredicate", "threshold must be a number")
    try:
        return Predicate(payload["signal"], payload["relation"], threshold)
    except SpecError as exc:
        raise ApiError(422, type(exc).__name__, str(exc)) from exc
    except ValueError as exc:
        raise ApiError(422, "InvalidPredicate", str(exc)) from exc


def _preview(tree: SpecTree, mode: str) -> dict:
    diagnostics = validate_structure(tree)
    if diagnostics:
        return {
            "mode": mode,
            "formula": None,
            "class": None,
            "negated": tree.negated,
            "accepted": False,
            "diagnostics": [str(d) for d in diagnostics],
        }
    try:
        formula = translate(tree)
    except NoTemplates as exc:
        return {
            "mode": mode,
            "formula": None,
            "class": None,
            "negated": tree.negated,
            "accepted": False,
            "diagnostics": [f"NoTemplates: {exc}"],
        }
    recognition = recognize(formula, mode)
    label = classify(formula)
    diagnostics_out = []
    if not recognition.accepted:
        diagnostics_out.append(recognition.reason or "not in the target fragment")
    return {
        "mode": mode,
        "formula": format_formula(formula),
        "class": label.label.value,
        "negated": label.negated,
        "accepted": recognition.accepted,
        "diagnostics": diagnostics_out,
    }


def _resource(spec_id: str, entry: _Entry, **extra: Any) -> dict:
    body = {
        "id": spec_id,
        "revision": entry.revision,
        "spec": tree_to_document(entry.tree),
        "mtl": _preview(entry.tree, "extended"),
    }
    body.update(extra)
    return body


def _trace_from_payload(payload: Any) -> Trace:
    _check_fields(payload, allowed={"times", "signals"}, required={"times", "signals"})
    times = payload["times"]
    signals = payload["signals"]
    if not isinstance(times, list) or not all(
        isinstance(t, (int, float)) and not isinstance(t, bool) for t in times
    ):
        raise ApiError(422, "InvalidTrace", "times must be a list of numbers")
    if not isinstance(signals, dict) or not all(
        isinstance(k, str) and isinstance(v, list) for k, v in signals.items()
    ):
        raise ApiError(
            422, "InvalidTrace", "signals must map names to value lists"
        )
    try:
        return Trace(
            times=tuple(float(t) for t in times),
            signals={
                name: tuple(float(v) for v in values)
                for name, values in signals.items()
            },
        )
    except (ValueError, TypeError) as exc:
        raise ApiError(422, "InvalidTrace", str(exc)) from exc


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    store = SpecStore(config.persistence_dir)
    app = FastAPI(title="mtlspec service", docs_url=None, redoc_url=None)
    if config.allowed_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.allowed_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ApiError)
    async def _on_api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body)

    @app.exception_handler(SpecError)
    async def _on_spec_error(request: Request, exc: SpecError):
        status = 500 if isinstance(exc, PersistenceError) else 422
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def _on_request_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": "InvalidRequest", "detail": str(exc.errors())},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "specs": len(store.ids())}

    @app.post("/specs", status_code=201)
    def create_spec(payload: dict = Body(default={})):
        _check_fields(payload, allowed={"name", "description"}, required=set())
        tree = new_spec(
            name=_text_field(payload, "name"),
            description=_text_field(payload, "description"),
        )
        spec_id, entry = store.create(tree)
        return _resource(spec_id, entry)

    @app.get("/specs/{spec_id}")
    def get_spec(spec_id: str):
        return _resource(spec_id, store.get(spec_id))

    @app.delete("/specs/{spec_id}")
    def delete_spec(spec_id: str, revision: int | None = None):
        store.delete(spec_id, revision)
        return {"deleted": spec_id}

    @app.post("/specs/{spec_id}/templates", status_code=201)
    def create_template(spec_id: str, payload: dict = Body(...)):
        _check_fields(
            payload,
            allowed={"parent", "after", "group", "revision"},
            required={"group", "revision"},
        )
        revision = _revision_of(payload)
        group = payload["group"]
        parent = payload.get("parent")
        after = payload.get("after")
        for name, value in (("parent", parent), ("after", after)):
            if value is not None and not isinstance(value, str):
                raise ApiError(422, "SchemaError", f"{name} must be a template id")

        def apply(tree: SpecTree):
            try:
                return add_template(tree, parent=parent, after=after, group=group)
            except SpecError as exc:
                raise ApiError(422, type(exc).__name__, str(exc)) from exc
            except ValueError as exc:
                raise ApiError(422, "SchemaError", str(exc)) from exc

        entry, node_id = store.mutate(spec_id, revision, apply)
        return _resource(spec_id, entry, template=node_id)

    @app.patch("/specs/{spec_id}/templates/{template_id}")
    def update_template(spec_id: str, template_id: str, payload: dict = Body(...)):
        _check_fields(
            payload,
            allowed={"op", "predicate", "group", "revision"},
            required={"revision"},
        )
        revision = _revision_of(payload)
        op = _op_from_payload(payload["op"]) if payload.get("op") is not None else None
        predicate: Predicate | None = None
        clear_predicate = "predicate" in payload and payload["predicate"] is None
        if payload.get("predicate") is not None:
            predicate = _predicate_from_payload(payload["predicate"])

        def apply(tree: SpecTree):
            if find_node(tree, template_id) is None:
                raise ApiError(
                    404, "UnknownNode", f"no template with id {template_id!r}"
                )
            try:
                if op is not None:
                    tree = set_operator(tree, template_id, op)
                if predicate is not None or clear_predicate:
                    tree = set_predicate(tree, template_id, predicate)
                if "group" in payload:
                    tree = set_group(tree, template_id, payload["group"])
            except SpecError as exc:
                raise ApiError(422, type(exc).__name__, str(exc)) from exc
            except ValueError as exc:
                raise ApiError(422, "SchemaError", str(exc)) from exc
            return tree, None

        entry, _ = store.mutate(spec_id, revision, apply)
        return _resource(spec_id, entry)

    @app.delete("/specs/{spec_id}/templates/{template_id}")
    def delete_template(spec_id: str, template_id: str, revision: int):
        def apply(tree: SpecTree):
            if find_node(tree, template_id) is None:
                raise ApiError(
                    404, "UnknownNode", f"no template with id {template_id!r}"
                )
            return remove_template(tree, template_id), None

        entry, _ = store.mutate(spec_id, revision, apply)
        return _resource(spec_id, entry)

    @app.post("/specs/{spec_id}/negated")
    def update_negated(spec_id: str, payload: dict = Body(...)):
        _check_fields(payload, allowed={"value", "revision"}, required={"value", "revision"})
        revision = _revision_of(payload)
        value = payload["value"]
        if not isinstance(value, bool):
            raise ApiError(422, "SchemaError", "value must be a boolean")
        entry, _ = store.mutate(
            spec_id, revision, lambda tree: (set_negated(tree, value), None)
        )
        return _resource(spec_id, entry)

    @app.get("/specs/{spec_id}/mtl")
    def get_mtl(spec_id: str, mode: str = "extended"):
        if mode not in ("strict", "extended"):
            raise ApiError(
                422, "InvalidMode", f"mode must be strict or extended, got {mode!r}"
            )
        entry = store.get(spec_id)
        with entry.lock:
            preview = _preview(entry.tree, mode)
            preview["revision"] = entry.revision
        return preview

    @app.get("/specs/{spec_id}/templates/{template_id}/exemplars")
    def get_exemplars(
        spec_id: str,
        template_id: str,
        n: int = 3,
        seed: int = 0,
        negative: bool = False,
    ):
        if n < 1 or n > 64:
            raise ApiError(422, "InvalidCount", "n must be between 1 and 64")
        entry = store.get(spec_id)
        with entry.lock:
            tree = entry.tree
        node = find_node(tree, template_id)
        if node is None:
            raise ApiError(404, "UnknownNode", f"no template with id {template_id!r}")
        try:
            formula = template_formula(tree, template_id)
            exemplars = synthesize(formula, n, seed, satisfy=not negative)
        except SpecError as exc:
            raise ApiError(422, type(exc).__name__, str(exc)) from exc
        return {
            "template": template_id,
            "formula": format_formula(formula),
            "signal": node.predicate.signal,
            "relation": node.predicate.relation,
            "threshold": node.predicate.threshold,
            "seed": seed,
            "negative": negative,
            "exemplars": [
                {
                    "index": ex.index,
                    "archetype": ex.archetype,
                    "times": list(ex.trace.times),
                    "values": list(ex.trace.signals[node.predicate.signal]),
                }
                for ex in exemplars
            ],
        }

    @app.post("/monitor")
    def run_monitor(payload: dict = Body(...)):
        _check_fields(
            payload, allowed={"formula", "trace", "at"}, required={"formula", "trace"}
        )
        at = payload.get("at", 0)
        if not isinstance(at, int) or isinstance(at, bool) or at < 0:
            raise ApiError(422, "InvalidRequest", "at must be a non-negative integer")
        try:
            formula = parse_formula(_text_field(payload, "formula"))
        except SpecError as exc:
            raise ApiError(422, type(exc).__name__, str(exc)) from exc
        trace = _trace_from_payload(payload["trace"])
        try:
            verdict = evaluate(formula, trace, at=at)
        except SpecError as exc:
            extra = {}
            required = getattr(exc, "required", None)
            available = getattr(exc, "available", None)
            if required is not None:
                extra = {"required": required, "available": available}
            raise ApiError(422, type(exc).__name__, str(exc), **extra) from exc
        except ValueError as exc:
            raise ApiError(422, "InvalidRequest", str(exc)) from exc
        return {"result": verdict, "horizon": horizon(formula)}

    return app


def serve(config: ServiceConfig | None = None) -> None:
    """Run the service until interrupted. Raises BindError if the port is taken."""
    import uvicorn

    config = config or ServiceConfig()
    app = create_app(config)
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((config.host, config.port))
    except OSError as exc:
        sock.close()
        raise BindError(f"cannot bind {config.host}:{config.port}: {exc}") from exc
    server = uvicorn.Server(
        uvicorn.Config(app, host=config.host, port=config.port, log_level="warning")
    )
    try:
        server.run(sockets=[sock])
    finally:
        sock.close()
