"""Template-tree data model with value semantics.

A specification is an ordered forest of templates. Every template carries a
sibling group number, a temporal operator and optionally a predicate; a
template without a predicate only groups its children. Trees are immutable:
every editing operation returns a new tree and leaves the input untouched, so
snapshots can be shared freely across threads.

Scalar invariants (interval ordering, operator arity, signal-name syntax,
threshold finiteness, positive groups) are enforced at construction time.
Tree-wide invariants (unique ids, leaves carry predicates, contiguous sibling
group runs) are checked by :func:`validate_structure` and preserved by the
editing operations.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterator

from .errors import (
    InvalidSignalName,
    IntervalError,
    MalformedOperator,
    NonContiguousGroup,
    NonFiniteThreshold,
    UnknownNode,
    UnknownParent,
    UnknownSibling,
)

RELATIONS = ("<", ">", "<=", ">=")

_SIGNAL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Interval:
    """Closed time interval [lo, hi] in seconds, with 0 <= lo <= hi, both finite."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise IntervalError(f"interval bounds must be finite, got [{self.lo},{self.hi}]")
        if lo < 0:
            raise IntervalError(f"interval bounds must be non-negative, got [{lo},{hi}]")
        if lo > hi:
            raise IntervalError(f"interval lower bound exceeds upper bound: [{lo},{hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __str__(self) -> str:
        return f"[{_fmt_number(self.lo)},{_fmt_number(self.hi)}]"


@dataclass(frozen=True)
class Predicate:
    """A single comparison ``signal relation threshold`` over one named signal."""

    signal: str
    relation: str
    threshold: float

    def __post_init__(self):
        if not isinstance(self.signal, str) or not _SIGNAL_RE.match(self.signal):
            raise InvalidSignalName(f"not a valid signal name: {self.signal!r}")
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {self.relation!r}")
        thr = float(self.threshold)
        if not math.isfinite(thr):
            raise NonFiniteThreshold(f"threshold must be finite, got {self.threshold!r}")
        object.__setattr__(self, "threshold", thr)

    def holds(self, value: float) -> bool:
        if self.relation == "<":
            return value < self.threshold
        if self.relation == ">":
            return value > self.threshold
        if self.relation == "<=":
            return value <= self.threshold
        return value >= self.threshold

    def __str__(self) -> str:
        return f"{self.signal} {self.relation} {_fmt_number(self.threshold)}"


class OperatorKind(Enum):
    """The five template operators.

    NOW wraps nothing. ALWAYS and AT_LEAST_ONCE take one interval.
    EVENTUALLY_ALWAYS (reach and hold) and REPEATEDLY_OFTEN_AND_FINALLY
    (recurring response) take an outer and an inner interval.
    """

    NOW = "now"
    ALWAYS = "always"
    AT_LEAST_ONCE = "at_least_once"
    EVENTUALLY_ALWAYS = "eventually_always"
    REPEATEDLY_OFTEN_AND_FINALLY = "repeatedly_often_and_finally"


_ONE_INTERVAL = (OperatorKind.ALWAYS, OperatorKind.AT_LEAST_ONCE)
_TWO_INTERVAL = (OperatorKind.EVENTUALLY_ALWAYS, OperatorKind.REPEATEDLY_OFTEN_AND_FINALLY)


@dataclass(frozen=True)
class TemporalOperator:
    """An operator kind with the interval arity that kind requires."""

    kind: OperatorKind
    outer: Interval | None = None
    inner: Interval | None = None

    def __post_init__(self):
        if not isinstance(self.kind, OperatorKind):
            raise MalformedOperator(f"unknown operator kind: {self.kind!r}")
        for bound in (self.outer, self.inner):
            if bound is not None and not isinstance(bound, Interval):
                raise MalformedOperator(f"not an interval: {bound!r}")
        if self.kind is OperatorKind.NOW:
            if self.outer is not None or self.inner is not None:
                raise MalformedOperator("the now operator takes no interval")
        elif self.kind in _ONE_INTERVAL:
            if self.outer is None or self.inner is not None:
                raise MalformedOperator(f"{self.kind.value} takes exactly one interval")
        else:
            if self.outer is None or self.inner is None:
                raise MalformedOperator(f"{self.kind.value} takes an outer and an inner interval")

    @staticmethod
    def now() -> "TemporalOperator":
        return TemporalOperator(OperatorKind.NOW)

    @staticmethod
    def always(lo: float, hi: float) -> "TemporalOperator":
        return TemporalOperator(OperatorKind.ALWAYS, Interval(lo, hi))

    @staticmethod
    def at_least_once(lo: float, hi: float) -> "TemporalOperator":
        return TemporalOperator(OperatorKind.AT_LEAST_ONCE, Interval(lo, hi))

    @staticmethod
    def eventually_always(outer: tuple, inner: tuple) -> "TemporalOperator":
        return TemporalOperator(OperatorKind.EVENTUALLY_ALWAYS, Interval(*outer), Interval(*inner))

    @staticmethod
    def repeatedly_often_and_finally(outer: tuple, inner: tuple) -> "TemporalOperator":
        return TemporalOperator(
            OperatorKind.REPEATEDLY_OFTEN_AND_FINALLY, Interval(*outer), Interval(*inner)
        )


@dataclass(frozen=True)
class TemplateNode:
    """One template: id, sibling group, operator, optional predicate, children."""

    id: str
    group: int
    op: TemporalOperator = field(default_factory=TemporalOperator.now)
    predicate: Predicate | None = None
    children: tuple["TemplateNode", ...] = ()

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("node id must be a non-empty string")
        if not isinstance(self.group, int) or isinstance(self.group, bool) or self.group < 1:
            raise ValueError(f"group must be a positive integer, got {self.group!r}")
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class SpecTree:
    """An ordered forest of templates plus a root-level negation flag."""

    name: str = ""
    description: str = ""
    negated: bool = False
    roots: tuple[TemplateNode, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(self.roots))


@dataclass(frozen=True)
class Diagnostic:
    """One structural finding from :func:`validate_structure`."""

    rule: str
    node: str | None
    message: str

    def __str__(self) -> str:
        where = f"({self.node})" if self.node else ""
        return f"{self.rule}{where}: {self.message}"


# --- traversal helpers ------------------------------------------------------

def iter_nodes(tree: SpecTree) -> Iterator[TemplateNode]:
    """Pre-order traversal of every template in the tree."""

    def walk(nodes):
        for node in nodes:
            yield node
            yield from walk(node.children)

    yield from walk(tree.roots)


def find_node(tree: SpecTree, node_id: str) -> TemplateNode | None:
    for node in iter_nodes(tree):
        if node.id == node_id:
            return node
    return None


def _fresh_id(tree: SpecTree) -> str:
    taken = {node.id for node in iter_nodes(tree)}
    n = 1
    while f"t{n}" in taken:
        n += 1
    return f"t{n}"


def _groups_contiguous(groups) -> bool:
    seen = set()
    prev = None
    for g in groups:
        if g != prev:
            if g in seen:
                return False
            seen.add(g)
        prev = g
    return True


# --- editing operations ------------------------------------------------------

def new_spec(name: str = "", description: str = "") -> SpecTree:
    """Create an empty specification. It has no templates yet, so it cannot
    be translated until at least one template is added."""
    return SpecTree(name=name, description=description)


def add_template(
    tree: SpecTree,
    parent: str | None = None,
    after: str | None = None,
    group: int = 1,
) -> tuple[SpecTree, str]:
    """Insert a fresh template and return ``(new_tree, new_node_id)``.

    The node lands in the root list when ``parent`` is None, otherwise under
    the given parent. ``after`` names the sibling to insert behind; when
    absent the node is appended. The new node starts as a bare ``now``
    template without a predicate; the insertion is refused when it would split
    an existing sibling group into non-adjacent runs.
    """
    if not isinstance(group, int) or isinstance(group, bool) or group < 1:
        raise ValueError(f"group must be a positive integer, got {group!r}")
    node_id = _fresh_id(tree)
    fresh = TemplateNode(id=node_id, group=group)

    def insert(siblings: tuple[TemplateNode, ...]) -> tuple[TemplateNode, ...]:
        if after is None:
            pos = len(siblings)
        else:
            ids = [s.id for s in siblings]
            if after not in ids:
                raise UnknownSibling(f"no sibling with id {after!r} at the insertion point")
            pos = ids.index(after) + 1
        updated = siblings[:pos] + (fresh,) + siblings[pos:]
        if not _groups_contiguous([s.group for s in updated]):
            raise NonContiguousGroup(
                f"inserting group {group} here would split an existing group run"
            )
        return updated

    if parent is None:
        return replace(tree, roots=insert(tree.roots)), node_id

    if find_node(tree, parent) is None:
        raise UnknownParent(f"no template with id {parent!r}")
    new_tree = _rebuild(tree, parent, lambda n: replace(n, children=insert(n.children)))
    return new_tree, node_id


def remove_template(tree: SpecTree, node: str) -> SpecTree:
    """Remove a template and its whole subtree."""
    if find_node(tree, node) is None:
        raise UnknownNode(f"no template with id {node!r}")
    return _rebuild(tree, node, None)


def set_operator(tree: SpecTree, node: str, op: TemporalOperator) -> SpecTree:
    if not isinstance(op, TemporalOperator):
        raise MalformedOperator(f"not a temporal operator: {op!r}")
    return _update(tree, node, lambda n: replace(n, op=op))


def set_predicate(tree: SpecTree, node: str, predicate: Predicate | None) -> SpecTree:
    if predicate is not None and not isinstance(predicate, Predicate):
        raise ValueError(f"not a predicate: {predicate!r}")
    return _update(tree, node, lambda n: replace(n, predicate=predicate))


def set_group(tree: SpecTree, node: str, group: int) -> SpecTree:
    if not isinstance(group, int) or isinstance(group, bool) or group < 1:
        raise ValueError(f"group must be a positive integer, got {group!r}")

    target = find_node(tree, node)
    if target is None:
        raise UnknownNode(f"no template with id {node!r}")
    new_tree = _update(tree, node, lambda n: replace(n, group=group))
    siblings = _sibling_list(new_tree, node)
    if not _groups_contiguous([s.group for s in siblings]):
        raise NonContiguousGroup(
            f"changing {node!r} to group {group} would split a sibling group run"
        )
    return new_tree


def set_negated(tree: SpecTree, value: bool) -> SpecTree:
    return replace(tree, negated=bool(value))


def validate_structure(tree: SpecTree) -> list[Diagnostic]:
    """Check the tree-wide invariants.

    Returns an empty list exactly when ids are unique, every leaf carries a
    predicate (a template without a predicate must group at least one child)
    and every sibling list keeps its group numbers in contiguous runs.
    """
    diagnostics: list[Diagnostic] = []
    seen: set[str] = set()
    for node in iter_nodes(tree):
        if node.id in seen:
            diagnostics.append(
                Diagnostic("DuplicateId", node.id, "node id appears more than once")
            )
        seen.add(node.id)
        if node.predicate is None and not node.children:
            diagnostics.append(
                Diagnostic("LeafWithoutPredicate", node.id, "leaf template has no predicate")
            )

    def check_list(siblings, owner):
        if not _groups_contiguous([s.group for s in siblings]):
            diagnostics.append(
                Diagnostic(
                    "NonContiguousGroup",
                    owner,
                    "sibling group numbers do not form contiguous runs",
                )
            )
        for s in siblings:
            check_list(s.children, s.id)

    check_list(tree.roots, None)
    return diagnostics


# --- internal rebuilding ------------------------------------------------------

def _update(tree: SpecTree, node_id: str, fn: Callable[[TemplateNode], TemplateNode]) -> SpecTree:
    if find_node(tree, node_id) is None:
        raise UnknownNode(f"no template with id {node_id!r}")
    return _rebuild(tree, node_id, fn)


def _rebuild(
    tree: SpecTree,
    node_id: str,
    fn: Callable[[TemplateNode], TemplateNode] | None,
) -> SpecTree:
    """Rebuild the path to ``node_id``, applying ``fn`` (None deletes).

    Untouched subtrees are shared between the old and new tree, which keeps
    edits cheap and makes the frame property (nothing else changed) literal.
    """

    def walk(nodes: tuple[TemplateNode, ...]) -> tuple[tuple[TemplateNode, ...], bool]:
        out = []
        hit = False
        for node in nodes:
            if node.id == node_id:
                hit = True
                if fn is not None:
                    out.append(fn(node))
                continue
            new_children, child_hit = walk(node.children)
            if child_hit:
                hit = True
                out.append(replace(node, children=new_children))
            else:
                out.append(node)
        return tuple(out), hit

    new_roots, _ = walk(tree.roots)
    return replace(tree, roots=new_roots)


def _sibling_list(tree: SpecTree, node_id: str) -> tuple[TemplateNode, ...]:
    if any(n.id == node_id for n in tree.roots):
        return tree.roots
    for node in iter_nodes(tree):
        if any(c.id == node_id for c in node.children):
            return node.children
    raise UnknownNode(f"no template with id {node_id!r}")


def _fmt_number(value: float) -> str:
    """Shortest decimal form: integers drop the decimal point."""
    f = float(value)
    if f == int(f) and abs(f) < 1e16:
        return str(int(f))
    return repr(f)
