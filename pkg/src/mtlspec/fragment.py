"""Fragment membership, specification-class labels, and random trees.

``recognize`` decides whether a formula belongs to the template-expressible
fragment. Strict mode checks exact derivability in the published pattern
grammar (negation only at the root, chains built from single comparisons or
singly-wrapped comparisons, nesting only underneath a temporal operator) and
returns a replayable derivation. Extended mode accepts the full closure of
the tree semantics, which is every formula of the language with negation
allowed only at the root; grouping templates make arbitrary conjunction and
implication nestings reachable, so the closure is exactly that set.

``classify`` assigns the Table-style specification class by shape alone:
intervals and thresholds never matter, and more specific patterns win over
less specific ones. A root negation is reported as a flag on the result.

``random_fragment_tree`` draws a deterministic pseudo-random template tree
for a seed. Every generated tree translates into an extended-mode formula;
generated trees whose sibling lists are all single group runs are also
strict-mode derivable by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .model import (
    OperatorKind,
    Predicate,
    RELATIONS,
    SpecTree,
    TemplateNode,
    TemporalOperator,
    Interval,
)
from .mtl import Always, And, Atom, Eventually, Formula, Implies, Not


class SpecificationClass(Enum):
    SAFETY = "Safety"
    REACHABILITY = "Reachability"
    STABILIZATION = "Stabilization"
    RECURRENCE = "Recurrence"
    IMPLICATION = "Implication"
    REACTIVE_RESPONSE = "ReactiveResponse"
    CONJUNCTION = "Conjunction"
    NON_STRICT_SEQUENCING = "NonStrictSequencing"
    COMPOSITE_OTHER = "CompositeOther"


@dataclass(frozen=True)
class Classification:
    label: SpecificationClass
    negated: bool = False

    def __str__(self) -> str:
        return f"{self.label.value} (negated)" if self.negated else self.label.value


def _is_temporal(f: Formula) -> bool:
    return isinstance(f, (Always, Eventually))


def classify(f: Formula) -> Classification:
    """Label a formula with its specification class.

    Classification looks only at the operator and connective shape, so
    changing intervals or thresholds never changes the label. A top-level
    negation classifies the operand and sets the ``negated`` flag.
    """
    negated = False
    if isinstance(f, Not):
        negated = True
        f = f.operand
    return Classification(_shape_label(f), negated)


def _shape_label(f: Formula) -> SpecificationClass:
    if isinstance(f, Eventually):
        inner = f.operand
        if isinstance(inner, Always):
            return SpecificationClass.STABILIZATION
        if isinstance(inner, Implies) and _is_temporal(inner.right):
            return SpecificationClass.REACTIVE_RESPONSE
        if isinstance(inner, And) and _is_temporal(inner.right):
            return SpecificationClass.NON_STRICT_SEQUENCING
        return SpecificationClass.REACHABILITY
    if isinstance(f, Always):
        inner = f.operand
        if isinstance(inner, Eventually):
            return SpecificationClass.RECURRENCE
        if isinstance(inner, Implies) and _is_temporal(inner.right):
            return SpecificationClass.REACTIVE_RESPONSE
        if isinstance(inner, And) and _is_temporal(inner.right):
            return SpecificationClass.NON_STRICT_SEQUENCING
        return SpecificationClass.SAFETY
    if isinstance(f, Implies):
        return SpecificationClass.IMPLICATION
    if isinstance(f, And):
        return SpecificationClass.CONJUNCTION
    return SpecificationClass.COMPOSITE_OTHER


# --- derivations ----------------------------------------------------------------

@dataclass(frozen=True)
class Derivation:
    """One production application; children derive the right-hand side."""

    production: str
    children: tuple["Derivation", ...] = ()

    def __str__(self) -> str:
        if not self.children:
            return self.production
        inner = ", ".join(str(c) for c in self.children)
        return f"{self.production} [{inner}]"


@dataclass(frozen=True)
class Recognition:
    accepted: bool
    mode: str
    derivation: Derivation | None = None
    reason: str | None = None


def recognize(f: Formula, mode: str = "extended") -> Recognition:
    """Decide fragment membership.

    ``mode`` is ``"strict"`` for the exact pattern grammar or ``"extended"``
    (the default) for the closure produced by template trees. Accepted
    formulas come back with a derivation that :func:`replay` can check;
    rejected formulas come back with a reason.
    """
    if mode not in ("strict", "extended"):
        raise ValueError(f"mode must be 'strict' or 'extended', got {mode!r}")
    if mode == "strict":
        derivation = _derive_S(f)
        if derivation is None:
            return Recognition(False, mode, reason=_strict_reason(f))
        return Recognition(True, mode, derivation=derivation)
    derivation, reason = _derive_extended_root(f)
    if derivation is None:
        return Recognition(False, mode, reason=reason)
    return Recognition(True, mode, derivation=derivation)


# strict grammar:
#   S -> ! T | T
#   T -> A | B | C
#   A -> P | (P /\ A) | (P -> A)
#   B -> []_I D | <>_I D
#   C -> []_I <>_J D | <>_I []_J D
#   D -> p | (p -> A) | (p /\ A) | (p -> B) | (p /\ B)
#   P -> p | []_I p | <>_I p
# Alternatives are tried in the order written; the search backtracks, so
# acceptance is exhaustive over all derivations even though only the first
# found derivation is returned.

def _derive_S(f: Formula) -> Derivation | None:
    if isinstance(f, Not):
        t = _derive_T(f.operand)
        return Derivation("S -> ! T", (t,)) if t else None
    t = _derive_T(f)
    return Derivation("S -> T", (t,)) if t else None


def _derive_T(f: Formula) -> Derivation | None:
    for production, derive in (
        ("T -> A", _derive_A),
        ("T -> B", _derive_B),
        ("T -> C", _derive_C),
    ):
        d = derive(f)
        if d:
            return Derivation(production, (d,))
    return None


def _derive_A(f: Formula) -> Derivation | None:
    p = _derive_P(f)
    if p:
        return Derivation("A -> P", (p,))
    if isinstance(f, (And, Implies)):
        left = _derive_P(f.left)
        right = _derive_A(f.right)
        if left and right:
            conn = "/\\" if isinstance(f, And) else "->"
            return Derivation(f"A -> (P {conn} A)", (left, right))
    return None


def _derive_B(f: Formula) -> Derivation | None:
    if isinstance(f, Always):
        d = _derive_D(f.operand)
        return Derivation("B -> []_I D", (d,)) if d else None
    if isinstance(f, Eventually):
        d = _derive_D(f.operand)
        return Derivation("B -> <>_I D", (d,)) if d else None
    return None


def _derive_C(f: Formula) -> Derivation | None:
    if isinstance(f, Always) and isinstance(f.operand, Eventually):
        d = _derive_D(f.operand.operand)
        return Derivation("C -> []_I <>_J D", (d,)) if d else None
    if isinstance(f, Eventually) and isinstance(f.operand, Always):
        d = _derive_D(f.operand.operand)
        return Derivation("C -> <>_I []_J D", (d,)) if d else None
    return None


def _derive_D(f: Formula) -> Derivation | None:
    if isinstance(f, Atom):
        return Derivation("D -> p")
    if isinstance(f, (And, Implies)) and isinstance(f.left, Atom):
        conn = "/\\" if isinstance(f, And) else "->"
        a = _derive_A(f.right)
        if a:
            return Derivation(f"D -> (p {conn} A)", (a,))
        b = _derive_B(f.right)
        if b:
            return Derivation(f"D -> (p {conn} B)", (b,))
    return None


def _derive_P(f: Formula) -> Derivation | None:
    if isinstance(f, Atom):
        return Derivation("P -> p")
    if isinstance(f, Always) and isinstance(f.operand, Atom):
        return Derivation("P -> []_I p")
    if isinstance(f, Eventually) and isinstance(f.operand, Atom):
        return Derivation("P -> <>_I p")
    return None


def _strict_reason(f: Formula) -> str:
    def has_inner_not(g: Formula, root: bool) -> bool:
        if isinstance(g, Not):
            if not root:
                return True
            return has_inner_not(g.operand, False)
        if isinstance(g, (And, Implies)):
            return has_inner_not(g.left, False) or has_inner_not(g.right, False)
        if isinstance(g, (Always, Eventually)):
            return has_inner_not(g.operand, False)
        return False

    if has_inner_not(f, True):
        return "negation is only allowed at the root"
    return "no derivation exists in the strict pattern grammar"


# extended closure grammar:
#   S -> ! X | X
#   X -> p | (X /\ X) | (X -> X) | []_I X | <>_I X

def _derive_extended_root(f: Formula):
    if isinstance(f, Not):
        x, reason = _derive_X(f.operand)
        if x is None:
            return None, reason
        return Derivation("S -> ! X", (x,)), None
    x, reason = _derive_X(f)
    if x is None:
        return None, reason
    return Derivation("S -> X", (x,)), None


def _derive_X(f: Formula):
    if isinstance(f, Not):
        return None, "negation is only allowed at the root"
    if isinstance(f, Atom):
        return Derivation("X -> p"), None
    if isinstance(f, (And, Implies)):
        left, reason = _derive_X(f.left)
        if left is None:
            return None, reason
        right, reason = _derive_X(f.right)
        if right is None:
            return None, reason
        conn = "/\\" if isinstance(f, And) else "->"
        return Derivation(f"X -> (X {conn} X)", (left, right)), None
    if isinstance(f, Always):
        x, reason = _derive_X(f.operand)
        if x is None:
            return None, reason
        return Derivation("X -> []_I X", (x,)), None
    if isinstance(f, Eventually):
        x, reason = _derive_X(f.operand)
        if x is None:
            return None, reason
        return Derivation("X -> <>_I X", (x,)), None
    return None, f"not a formula node: {f!r}"


# --- replay ----------------------------------------------------------------------

def replay(derivation: Derivation, f: Formula) -> bool:
    """Re-check a derivation against a formula, production by production."""
    try:
        return _replay(derivation, f)
    except (AttributeError, IndexError):
        return False


def _head(d: Derivation) -> str:
    return d.production.split(" ", 1)[0]


def _replay(d: Derivation, f: Formula) -> bool:
    p = d.production

    def kids(heads, subformulas) -> bool:
        if len(d.children) != len(heads):
            return False
        return all(
            _head(child) == head and _replay(child, sub)
            for child, head, sub in zip(d.children, heads, subformulas)
        )

    if p in ("S -> ! T", "S -> ! X"):
        return isinstance(f, Not) and kids([p[-1]], [f.operand])
    if p in ("S -> T", "S -> X"):
        return kids([p[-1]], [f])
    if p in ("T -> A", "T -> B", "T -> C"):
        return kids([p[-1]], [f])
    if p == "A -> P":
        return kids(["P"], [f])
    if p == "A -> (P /\\ A)":
        return isinstance(f, And) and kids(["P", "A"], [f.left, f.right])
    if p == "A -> (P -> A)":
        return isinstance(f, Implies) and kids(["P", "A"], [f.left, f.right])
    if p == "B -> []_I D":
        return isinstance(f, Always) and kids(["D"], [f.operand])
    if p == "B -> <>_I D":
        return isinstance(f, Eventually) and kids(["D"], [f.operand])
    if p == "C -> []_I <>_J D":
        return (
            isinstance(f, Always)
            and isinstance(f.operand, Eventually)
            and kids(["D"], [f.operand.operand])
        )
    if p == "C -> <>_I []_J D":
        return (
            isinstance(f, Eventually)
            and isinstance(f.operand, Always)
            and kids(["D"], [f.operand.operand])
        )
    if p == "D -> p":
        return isinstance(f, Atom) and not d.children
    if p in ("D -> (p /\\ A)", "D -> (p /\\ B)"):
        return (
            isinstance(f, And)
            and isinstance(f.left, Atom)
            and kids([p[-2]], [f.right])
        )
    if p in ("D -> (p -> A)", "D -> (p -> B)"):
        return (
            isinstance(f, Implies)
            and isinstance(f.left, Atom)
            and kids([p[-2]], [f.right])
        )
    if p == "P -> p":
        return isinstance(f, Atom) and not d.children
    if p == "P -> []_I p":
        return isinstance(f, Always) and isinstance(f.operand, Atom) and not d.children
    if p == "P -> <>_I p":
        return isinstance(f, Eventually) and isinstance(f.operand, Atom) and not d.children
    if p == "X -> p":
        return isinstance(f, Atom) and not d.children
    if p == "X -> (X /\\ X)":
        return isinstance(f, And) and kids(["X", "X"], [f.left, f.right])
    if p == "X -> (X -> X)":
        return isinstance(f, Implies) and kids(["X", "X"], [f.left, f.right])
    if p == "X -> []_I X":
        return isinstance(f, Always) and kids(["X"], [f.operand])
    if p == "X -> <>_I X":
        return isinstance(f, Eventually) and kids(["X"], [f.operand])
    return False


# --- random trees ------------------------------------------------------------------

DEFAULT_SIGNALS = ("speed", "rpm", "accel", "fuel", "temp")

_P_KINDS = (OperatorKind.NOW, OperatorKind.ALWAYS, OperatorKind.AT_LEAST_ONCE)
_B_KINDS = (OperatorKind.ALWAYS, OperatorKind.AT_LEAST_ONCE)


def random_fragment_tree(
    seed: int,
    max_depth: int = 3,
    signals: Sequence[str] = DEFAULT_SIGNALS,
) -> SpecTree:
    """Draw a pseudo-random template tree, deterministically in ``seed``.

    Roughly half the trees come from a recipe that stays inside the strict
    pattern grammar; the rest exercise the wider closure (grouping templates,
    nested two-interval operators, mixed chains) and always carry at least
    two root group runs, so they never masquerade as strict-shaped trees.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    rng = random.Random(seed)
    negated = rng.random() < 0.15
    if max_depth == 1 or rng.random() < 0.55:
        roots = _strict_recipe(rng, max_depth, signals)
    else:
        roots = _free_recipe(rng, max_depth, signals)
    tree = SpecTree(name=f"random-{seed}", negated=negated, roots=tuple(roots))
    return _assign_ids(tree)


def _random_predicate(rng: random.Random, signals) -> Predicate:
    return Predicate(
        signal=rng.choice(list(signals)),
        relation=rng.choice(RELATIONS),
        threshold=round(rng.uniform(-50.0, 150.0), 1),
    )


def _random_interval(rng: random.Random) -> Interval:
    lo = rng.choice((0.0, 0.0, 0.0, 0.5, 1.0, 2.0, 5.0))
    width = rng.choice((0.5, 1.0, 2.0, 5.0, 10.0))
    return Interval(lo, lo + width)


def _random_operator(rng: random.Random, kinds) -> TemporalOperator:
    kind = rng.choice(list(kinds))
    if kind is OperatorKind.NOW:
        return TemporalOperator.now()
    if kind in _B_KINDS:
        return TemporalOperator(kind, _random_interval(rng))
    return TemporalOperator(kind, _random_interval(rng), _random_interval(rng))


def _contiguous_groups(rng: random.Random, count: int, min_runs: int = 1) -> list[int]:
    runs = rng.randint(min(min_runs, count), count)
    runs = max(runs, min(min_runs, count))
    cuts = sorted(rng.sample(range(1, count), runs - 1)) if runs > 1 else []
    groups = []
    g = 1
    prev = 0
    for cut in cuts + [count]:
        groups.extend([g] * (cut - prev))
        prev = cut
        g += 1
    return groups


def _p_leaf(rng: random.Random, signals, group: int) -> TemplateNode:
    return TemplateNode(
        id="x",
        group=group,
        op=_random_operator(rng, _P_KINDS),
        predicate=_random_predicate(rng, signals),
    )


def _strict_recipe(rng: random.Random, depth: int, signals) -> list[TemplateNode]:
    roll = rng.random()
    if depth == 1 or roll < 0.35:
        return [
            TemplateNode(
                id="x",
                group=1,
                op=_random_operator(rng, list(OperatorKind)),
                predicate=_random_predicate(rng, signals),
            )
        ]
    if roll < 0.65:
        count = rng.randint(2, 4)
        groups = _contiguous_groups(rng, count)
        return [_p_leaf(rng, signals, g) for g in groups]
    return [_strict_template(rng, depth, signals, group=1, kinds=list(OperatorKind))]


def _strict_template(
    rng: random.Random, depth: int, signals, group: int, kinds
) -> TemplateNode:
    op = _random_operator(rng, kinds)
    predicate = _random_predicate(rng, signals)
    children: tuple[TemplateNode, ...] = ()
    if depth > 1:
        roll = rng.random()
        if op.kind is OperatorKind.NOW:
            # Without a temporal wrap only flat chains stay inside the
            # strict grammar, so nesting is not drawn here.
            make_chain = roll < 0.6
            make_nested = False
        else:
            make_chain = roll < 0.45
            make_nested = 0.45 <= roll < 0.8
        if make_chain:
            count = rng.randint(1, 3)
            child_groups = _contiguous_groups(rng, count)
            offset = group if rng.random() < 0.5 else group + 1
            children = tuple(
                _p_leaf(rng, signals, g - 1 + offset) for g in child_groups
            )
        elif make_nested:
            child_group = group if rng.random() < 0.5 else group + 1
            children = (
                _strict_template(
                    rng, depth - 1, signals, group=child_group, kinds=_B_KINDS
                ),
            )
    return TemplateNode(
        id="x", group=group, op=op, predicate=predicate, children=children
    )


def _free_recipe(rng: random.Random, depth: int, signals) -> list[TemplateNode]:
    count = rng.randint(2, 4)
    groups = _contiguous_groups(rng, count, min_runs=2)
    return [_free_template(rng, depth, signals, group=g) for g in groups]


def _free_template(rng: random.Random, depth: int, signals, group: int) -> TemplateNode:
    op = _random_operator(rng, list(OperatorKind))
    structural = depth > 1 and rng.random() < 0.25
    predicate = None if structural else _random_predicate(rng, signals)
    children: tuple[TemplateNode, ...] = ()
    if depth > 1:
        low = 1 if structural else 0
        count = rng.randint(low, 3)
        if count:
            child_groups = _contiguous_groups(rng, count)
            offset = group if rng.random() < 0.5 else group + 1
            children = tuple(
                _free_template(rng, depth - 1, signals, group=g - 1 + offset)
                for g in child_groups
            )
    return TemplateNode(
        id="x", group=group, op=op, predicate=predicate, children=children
    )


def _assign_ids(tree: SpecTree) -> SpecTree:
    counter = [0]

    def walk(node: TemplateNode) -> TemplateNode:
        counter[0] += 1
        node_id = f"t{counter[0]}"
        return TemplateNode(
            id=node_id,
            group=node.group,
            op=node.op,
            predicate=node.predicate,
            children=tuple(walk(c) for c in node.children),
        )

    return SpecTree(
        name=tree.name,
        description=tree.description,
        negated=tree.negated,
        roots=tuple(walk(r) for r in tree.roots),
    )
