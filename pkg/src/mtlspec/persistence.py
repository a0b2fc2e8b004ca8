"""Spec documents (.vspec.json) and trace CSV files.

A spec document is a flat adjacency list: every node row carries its id, an
optional parent id (absent for roots), its position among its siblings, its
group, operator and optional predicate. Loading is strict: unknown fields,
missing fields and mistyped values are rejected with :class:`SchemaError`,
and any unsupported ``version`` with :class:`VersionMismatch`. The mapping is
lossless, so ``load(save(tree)) == tree``.

Trace CSVs have a header whose first column is literally ``time``; the other
columns name the signals. Timestamps must start at 0 and strictly increase
(:class:`NonMonotoneTime` reports the offending 1-based row, header
included); malformed cells and ragged rows raise :class:`CsvError`.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .errors import CsvError, NonMonotoneTime, SchemaError, VersionMismatch
from .model import (
    Interval,
    OperatorKind,
    Predicate,
    RELATIONS,
    SpecTree,
    TemplateNode,
    TemporalOperator,
    _fmt_number,
)
from .monitor import Trace

FORMAT_VERSION = 1

_NODE_FIELDS = {"id", "parent", "order", "group", "op", "predicate"}
_OP_FIELDS = {"kind", "outer", "inner"}
_PREDICATE_FIELDS = {"signal", "relation", "threshold"}
_DOCUMENT_FIELDS = {"version", "name", "description", "negated", "nodes"}


# --- tree <-> document -----------------------------------------------------

def tree_to_document(tree: SpecTree) -> dict:
    nodes = []

    def emit(node: TemplateNode, parent: str | None):
        for order, child in enumerate(node.children):
            row = _node_row(child, node.id, order)
            nodes.append(row)
            emit(child, node.id)

    for order, root in enumerate(tree.roots):
        nodes.append(_node_row(root, None, order))
        emit(root, root.id)
    return {
        "version": FORMAT_VERSION,
        "name": tree.name,
        "description": tree.description,
        "negated": tree.negated,
        "nodes": nodes,
    }


def _node_row(node: TemplateNode, parent: str | None, order: int) -> dict:
    op: dict = {"kind": node.op.kind.value}
    if node.op.outer is not None:
        op["outer"] = [node.op.outer.lo, node.op.outer.hi]
    if node.op.inner is not None:
        op["inner"] = [node.op.inner.lo, node.op.inner.hi]
    row: dict = {"id": node.id, "order": order, "group": node.group, "op": op}
    if parent is not None:
        row["parent"] = parent
    if node.predicate is not None:
        row["predicate"] = {
            "signal": node.predicate.signal,
            "relation": node.predicate.relation,
            "threshold": node.predicate.threshold,
        }
    return row


def document_to_tree(doc: dict) -> SpecTree:
    if not isinstance(doc, dict):
        raise SchemaError("document", "expected a JSON object")
    unknown = set(doc) - _DOCUMENT_FIELDS
    if unknown:
        raise SchemaError(sorted(unknown)[0], "unknown field")
    if "version" not in doc:
        raise SchemaError("version", "missing")
    if doc["version"] != FORMAT_VERSION:
        raise VersionMismatch(doc["version"], FORMAT_VERSION)
    name = doc.get("name", "")
    description = doc.get("description", "")
    negated = doc.get("negated", False)
    if not isinstance(name, str):
        raise SchemaError("name", "expected a string")
    if not isinstance(description, str):
        raise SchemaError("description", "expected a string")
    if not isinstance(negated, bool):
        raise SchemaError("negated", "expected a boolean")
    rows = doc.get("nodes")
    if not isinstance(rows, list):
        raise SchemaError("nodes", "expected a list")

    parsed = [_parse_row(row, i) for i, row in enumerate(rows)]
    ids = [p["id"] for p in parsed]
    if len(set(ids)) != len(ids):
        raise SchemaError("nodes", "duplicate node id")
    by_parent: dict[str | None, list[dict]] = {}
    for p in parsed:
        parent = p["parent"]
        if parent is not None and parent not in set(ids):
            raise SchemaError("parent", f"unknown parent id {parent!r}")
        by_parent.setdefault(parent, []).append(p)
    for siblings in by_parent.values():
        orders = [s["order"] for s in siblings]
        if len(set(orders)) != len(orders):
            raise SchemaError("order", "duplicate order among siblings")
        siblings.sort(key=lambda s: s["order"])

    def build(row: dict) -> TemplateNode:
        children = tuple(build(c) for c in by_parent.get(row["id"], []))
        return TemplateNode(
            id=row["id"],
            group=row["group"],
            op=row["op"],
            predicate=row["predicate"],
            children=children,
        )

    roots = tuple(build(row) for row in by_parent.get(None, []))
    reachable = sum(1 for _ in _iter(roots))
    if reachable != len(parsed):
        raise SchemaError("parent", "parent links form a cycle")
    return SpecTree(name=name, description=description, negated=negated, roots=roots)


def _iter(nodes):
    for node in nodes:
        yield node
        yield from _iter(node.children)


def _parse_row(row, index: int) -> dict:
    where = f"nodes[{index}]"
    if not isinstance(row, dict):
        raise SchemaError(where, "expected an object")
    unknown = set(row) - _NODE_FIELDS
    if unknown:
        raise SchemaError(f"{where}.{sorted(unknown)[0]}", "unknown field")
    for required in ("id", "order", "group", "op"):
        if required not in row:
            raise SchemaError(f"{where}.{required}", "missing")
    node_id = row["id"]
    if not isinstance(node_id, str) or not node_id:
        raise SchemaError(f"{where}.id", "expected a non-empty string")
    parent = row.get("parent")
    if parent is not None and not isinstance(parent, str):
        raise SchemaError(f"{where}.parent", "expected a string")
    order = row["order"]
    if not isinstance(order, int) or isinstance(order, bool):
        raise SchemaError(f"{where}.order", "expected an integer")
    group = row["group"]
    if not isinstance(group, int) or isinstance(group, bool) or group < 1:
        raise SchemaError(f"{where}.group", "expected a positive integer")
    op = _parse_op(row["op"], f"{where}.op")
    predicate = None
    if "predicate" in row and row["predicate"] is not None:
        predicate = _parse_predicate(row["predicate"], f"{where}.predicate")
    return {
        "id": node_id,
        "parent": parent,
        "order": order,
        "group": group,
        "op": op,
        "predicate": predicate,
    }


def _parse_op(raw, where: str) -> TemporalOperator:
    if not isinstance(raw, dict):
        raise SchemaError(where, "expected an object")
    unknown = set(raw) - _OP_FIELDS
    if unknown:
        raise SchemaError(f"{where}.{sorted(unknown)[0]}", "unknown field")
    kind_raw = raw.get("kind")
    try:
        kind = OperatorKind(kind_raw)
    except ValueError:
        raise SchemaError(f"{where}.kind", f"unknown operator kind {kind_raw!r}") from None

    def interval(field: str) -> Interval | None:
        if field not in raw or raw[field] is None:
            return None
        value = raw[field]
        if (
            not isinstance(value, list)
            or len(value) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
        ):
            raise SchemaError(f"{where}.{field}", "expected [lo, hi]")
        try:
            return Interval(value[0], value[1])
        except Exception as exc:
            raise SchemaError(f"{where}.{field}", str(exc)) from None

    try:
        return TemporalOperator(kind, interval("outer"), interval("inner"))
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(where, str(exc)) from None


def _parse_predicate(raw, where: str) -> Predicate:
    if not isinstance(raw, dict):
        raise SchemaError(where, "expected an object")
    unknown = set(raw) - _PREDICATE_FIELDS
    if unknown:
        raise SchemaError(f"{where}.{sorted(unknown)[0]}", "unknown field")
    for required in _PREDICATE_FIELDS:
        if required not in raw:
            raise SchemaError(f"{where}.{required}", "missing")
    if raw["relation"] not in RELATIONS:
        raise SchemaError(f"{where}.relation", f"expected one of {RELATIONS}")
    threshold = raw["threshold"]
    if not isinstance(threshold, (int, float)) or isinstance(threshold, bool):
        raise SchemaError(f"{where}.threshold", "expected a number")
    try:
        return Predicate(raw["signal"], raw["relation"], threshold)
    except Exception as exc:
        raise SchemaError(where, str(exc)) from None


# --- file I/O -----------------------------------------------------------------

def save_spec(tree: SpecTree, path: str | Path) -> None:
    document = tree_to_document(tree)
    Path(path).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")


def load_spec(path: str | Path) -> SpecTree:
    text = Path(path).read_text(encoding="utf-8")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("document", f"not valid JSON: {exc}") from None
    return document_to_tree(document)


def dumps_spec(tree: SpecTree) -> str:
    return json.dumps(tree_to_document(tree), indent=2)


def loads_spec(text: str) -> SpecTree:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("document", f"not valid JSON: {exc}") from None
    return document_to_tree(document)


# --- trace CSV ------------------------------------------------------------------

def save_trace(trace: Trace, path: str | Path) -> None:
    Path(path).write_text(dumps_trace(trace), encoding="utf-8")


def dumps_trace(trace: Trace) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    names = list(trace.signals)
    writer.writerow(["time"] + names)
    for i, t in enumerate(trace.times):
        writer.writerow([_fmt_number(t)] + [_fmt_number(trace.signals[n][i]) for n in names])
    return out.getvalue()


def load_trace(path: str | Path) -> Trace:
    return loads_trace(Path(path).read_text(encoding="utf-8"))


def loads_trace(text: str) -> Trace:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvError(1, "time", "empty file") from None
    if not header or header[0].strip() != "time":
        raise CsvError(1, header[0].strip() if header else "", "first column must be 'time'")
    names = [h.strip() for h in header[1:]]
    if any(not n for n in names):
        raise CsvError(1, "", "empty signal name in header")
    if len(set(names)) != len(names):
        raise CsvError(1, "", "duplicate signal name in header")

    times: list[float] = []
    columns: dict[str, list[float]] = {n: [] for n in names}
    row_no = 1
    for row in reader:
        row_no += 1
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(names) + 1:
            raise CsvError(
                row_no, "", f"expected {len(names) + 1} cells, found {len(row)}"
            )
        t = _parse_cell(row[0], row_no, "time")
        if times:
            if t <= times[-1]:
                raise NonMonotoneTime(row_no)
        elif t != 0.0:
            raise CsvError(row_no, "time", f"trace must start at time 0, got {row[0].strip()}")
        times.append(t)
        for name, cell in zip(names, row[1:]):
            columns[name].append(_parse_cell(cell, row_no, name))
    if not times:
        raise CsvError(row_no, "time", "no samples")
    return Trace(
        times=tuple(times), signals={n: tuple(v) for n, v in columns.items()}
    )


def _parse_cell(cell: str, row: int, column: str) -> float:
    try:
        value = float(cell.strip())
    except ValueError:
        raise CsvError(row, column, f"not a number: {cell.strip()!r}") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise CsvError(row, column, "non-finite value")
    return value
