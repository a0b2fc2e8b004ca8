"""Translation between template trees and MTL formulas.

``translate`` maps a tree to its formula. Sibling chains fold
right-associatively; the connective between two adjacent siblings is
conjunction when they share a group number and implication otherwise. A
template's predicate joins the chain of its children with conjunction when
the template shares its group with its first child, and with implication
otherwise. Operators wrap the result: ``now`` adds nothing, ``always`` and
``at least once`` add one bounded operator, ``eventually always`` becomes
eventually-over-always and ``repeatedly often and finally`` becomes
always-over-eventually. A negated tree wraps the whole formula in ``!``.

``reverse`` inverts the mapping: it rebuilds the canonical template tree of
any formula in the image of ``translate`` (no negation below the root).
Canonical trees renumber groups 1..k in first-use order, absorb a leading
atom of a conjunction or implication into the parent template's predicate,
merge eventually-over-always and always-over-eventually pairs into the
two-interval operators, and never contain a bare ``now`` grouping node with
a single child or in tail position (both would be redundant wrappers).
``translate(reverse(f)) == f`` holds on the whole image, which makes
``translate`` injective over canonical trees.
"""

from __future__ import annotations

from .errors import NoPredicate, NoTemplates, StructurallyInvalid, UnknownNode
from .model import (
    OperatorKind,
    Predicate,
    SpecTree,
    TemplateNode,
    TemporalOperator,
    find_node,
    validate_structure,
)
from .mtl import Always, And, Atom, Eventually, Formula, Implies, Not


def translate(tree: SpecTree) -> Formula:
    """Translate a structurally valid tree into its formula."""
    if not tree.roots:
        raise NoTemplates("the specification has no templates")
    diagnostics = validate_structure(tree)
    if diagnostics:
        raise StructurallyInvalid(diagnostics)
    body = _fold_siblings(tree.roots)
    return Not(body) if tree.negated else body


def template_formula(tree: SpecTree, node_id: str) -> Formula:
    """The formula of one template in isolation: its operator over its own
    predicate, ignoring children."""
    node = find_node(tree, node_id)
    if node is None:
        raise UnknownNode(f"no template with id {node_id!r}")
    if node.predicate is None:
        raise NoPredicate(f"template {node_id!r} has no predicate")
    return _wrap_operator(node.op, Atom(node.predicate))


def _formula_of(node: TemplateNode) -> Formula:
    return _wrap_operator(node.op, _body(node))


def _body(node: TemplateNode) -> Formula:
    if not node.children:
        return Atom(node.predicate)
    chain = _fold_siblings(node.children)
    if node.predicate is None:
        return chain
    atom = Atom(node.predicate)
    if node.group == node.children[0].group:
        return And(atom, chain)
    return Implies(atom, chain)


def _fold_siblings(nodes) -> Formula:
    formulas = [_formula_of(n) for n in nodes]
    result = formulas[-1]
    for i in range(len(nodes) - 2, -1, -1):
        if nodes[i].group == nodes[i + 1].group:
            result = And(formulas[i], result)
        else:
            result = Implies(formulas[i], result)
    return result


def _wrap_operator(op: TemporalOperator, body: Formula) -> Formula:
    if op.kind is OperatorKind.NOW:
        return body
    if op.kind is OperatorKind.ALWAYS:
        return Always(op.outer, body)
    if op.kind is OperatorKind.AT_LEAST_ONCE:
        return Eventually(op.outer, body)
    if op.kind is OperatorKind.EVENTUALLY_ALWAYS:
        return Eventually(op.outer, Always(op.inner, body))
    return Always(op.outer, Eventually(op.inner, body))


# --- reverse mapping ----------------------------------------------------------

class _GroupAlloc:
    def __init__(self):
        self.next = 1

    def fresh(self) -> int:
        g = self.next
        self.next += 1
        return g


class _IdAlloc:
    def __init__(self):
        self.next = 1

    def fresh(self) -> str:
        i = self.next
        self.next += 1
        return f"t{i}"


def reverse(formula: Formula, name: str = "") -> SpecTree:
    """Rebuild the canonical template tree of a formula produced by
    ``translate``. Raises ValueError when the formula contains negation below
    the root (such formulas are outside the image)."""
    negated = isinstance(formula, Not)
    core = formula.operand if negated else formula
    groups = _GroupAlloc()
    ids = _IdAlloc()
    roots = _nodes_of_chain(core, groups.fresh(), groups, ids)
    return SpecTree(name=name, negated=negated, roots=tuple(roots))


def canonicalize(tree: SpecTree) -> SpecTree:
    """The canonical tree with the same translation as ``tree``."""
    return reverse(translate(tree), name=tree.name)


def _split_chain(f: Formula):
    elements = []
    connectives = []
    while isinstance(f, (And, Implies)):
        elements.append(f.left)
        connectives.append(type(f))
        f = f.right
    elements.append(f)
    return elements, connectives


def _nodes_of_chain(f: Formula, first_group: int, groups: _GroupAlloc, ids: _IdAlloc):
    elements, connectives = _split_chain(f)
    nodes = []
    g = first_group
    for i, element in enumerate(elements):
        if i > 0:
            g = g if connectives[i - 1] is And else groups.fresh()
        nodes.append(_node_of(element, g, groups, ids))
    return nodes


def _strip_operator(f: Formula) -> tuple[TemporalOperator, Formula]:
    if isinstance(f, Eventually) and isinstance(f.operand, Always):
        op = TemporalOperator(
            OperatorKind.EVENTUALLY_ALWAYS, f.interval, f.operand.interval
        )
        return op, f.operand.operand
    if isinstance(f, Always) and isinstance(f.operand, Eventually):
        op = TemporalOperator(
            OperatorKind.REPEATEDLY_OFTEN_AND_FINALLY, f.interval, f.operand.interval
        )
        return op, f.operand.operand
    if isinstance(f, Always):
        return TemporalOperator(OperatorKind.ALWAYS, f.interval), f.operand
    if isinstance(f, Eventually):
        return TemporalOperator(OperatorKind.AT_LEAST_ONCE, f.interval), f.operand
    return TemporalOperator.now(), f


def _node_of(f: Formula, group: int, groups: _GroupAlloc, ids: _IdAlloc) -> TemplateNode:
    if isinstance(f, Not):
        raise ValueError("negation below the root is outside the translatable language")
    node_id = ids.fresh()
    op, body = _strip_operator(f)
    if isinstance(body, Atom):
        return TemplateNode(id=node_id, group=group, op=op, predicate=body.predicate)
    if isinstance(body, (And, Implies)) and isinstance(body.left, Atom):
        predicate: Predicate = body.left.predicate
        if isinstance(body, And):
            child_first = group
        else:
            child_first = groups.fresh()
        children = _nodes_of_chain(body.right, child_first, groups, ids)
        return TemplateNode(
            id=node_id, group=group, op=op, predicate=predicate, children=tuple(children)
        )
    if isinstance(body, Not):
        raise ValueError("negation below the root is outside the translatable language")
    # Grouping template: no predicate of its own, children carry the chain.
    children = _nodes_of_chain(body, groups.fresh(), groups, ids)
    return TemplateNode(id=node_id, group=group, op=op, children=tuple(children))
