import pytest

from conftest import ALW, NOW, ONCE, REACH_HOLD, RECUR, leaf, node, tree
from mtlspec import (
    And,
    Implies,
    NoPredicate,
    NoTemplates,
    Predicate,
    StructurallyInvalid,
    UnknownNode,
    format_formula,
    iter_nodes,
    parse_formula,
    translate,
    validate_structure,
)
from mtlspec.fragment import random_fragment_tree
from mtlspec.translate import canonicalize, reverse, template_formula


def text_of(t):
    return format_formula(translate(t))


# --- operator wrapping ----------------------------------------------------------


@pytest.mark.parametrize(
    "op,expected",
    [
        (NOW(), "(x > 1)"),
        (ALW(0, 5), "[]_[0,5](x > 1)"),
        (ONCE(2, 7), "<>_[2,7](x > 1)"),
        (REACH_HOLD((0, 30), (0, 10)), "<>_[0,30]([]_[0,10](x > 1))"),
        (RECUR((0, 30), (0, 10)), "[]_[0,30](<>_[0,10](x > 1))"),
    ],
)
def test_operator_wrapping(op, expected):
    assert text_of(tree(leaf("t1", 1, op, "x", ">", 1))) == expected


def test_negated_tree_wraps_once_at_the_root():
    t = tree(leaf("t1", 1, ALW(0, 5), "x", ">", 1), negated=True)
    assert text_of(t) == "!([]_[0,5](x > 1))"


# --- sibling folding -------------------------------------------------------------


def test_same_group_roots_conjoin():
    t = tree(
        leaf("t1", 1, ALW(0, 5), "a", ">", 0),
        leaf("t2", 1, ALW(0, 5), "b", ">", 0),
    )
    f = translate(t)
    assert isinstance(f, And)


def test_different_group_roots_imply():
    t = tree(
        leaf("t1", 1, ONCE(0, 5), "a", ">", 0),
        leaf("t2", 2, ONCE(0, 5), "b", ">", 0),
    )
    f = translate(t)
    assert isinstance(f, Implies)


def test_mixed_groups_fold_right_associatively():
    t = tree(
        leaf("t1", 1, NOW(), "a", ">", 0),
        leaf("t2", 1, NOW(), "b", ">", 0),
        leaf("t3", 2, NOW(), "c", ">", 0),
    )
    # groups [1, 1, 2]: a AND (b IMPLIES c)
    assert translate(t) == parse_formula("(a > 0) /\\ ((b > 0) -> (c > 0))")


def test_four_roots_two_runs():
    t = tree(
        leaf("t1", 1, NOW(), "a", ">", 0),
        leaf("t2", 2, NOW(), "b", ">", 0),
        leaf("t3", 2, NOW(), "c", ">", 0),
        leaf("t4", 3, NOW(), "d", ">", 0),
    )
    # groups [1, 2, 2, 3]: a -> (b /\ (c -> d))
    assert translate(t) == parse_formula("(a > 0) -> (b > 0) /\\ ((c > 0) -> (d > 0))")


def test_predicate_node_with_same_group_child_conjoins():
    t = tree(
        node("t1", 1, ONCE(0, 40), Predicate("speed", ">", 80),
             [leaf("t2", 1, ALW(0, 30), "rpm", ">", 4000)]),
    )
    assert text_of(t) == "<>_[0,40]((speed > 80) /\\ []_[0,30](rpm > 4000))"


def test_predicate_node_with_other_group_child_implies():
    t = tree(
        node("t1", 1, ONCE(0, 40), Predicate("speed", ">", 80),
             [leaf("t2", 2, ALW(0, 30), "rpm", ">", 4000)]),
    )
    assert text_of(t) == "<>_[0,40]((speed > 80) -> []_[0,30](rpm > 4000))"


def test_structural_node_translates_to_bare_chain():
    t = tree(
        node("t1", 1, ALW(0, 40), None, [
            leaf("t2", 1, NOW(), "v", ">", 10),
            leaf("t3", 1, NOW(), "v", "<", 20),
        ]),
    )
    assert text_of(t) == "[]_[0,40]((v > 10) /\\ (v < 20))"


def test_group_identity_only_matters_between_neighbors():
    base = tree(
        leaf("t1", 1, NOW(), "a", ">", 0),
        leaf("t2", 1, NOW(), "b", ">", 0),
        leaf("t3", 2, NOW(), "c", ">", 0),
    )
    relabeled = tree(
        leaf("t1", 4, NOW(), "a", ">", 0),
        leaf("t2", 4, NOW(), "b", ">", 0),
        leaf("t3", 9, NOW(), "c", ">", 0),
    )
    assert translate(base) == translate(relabeled)


# --- rejected inputs ---------------------------------------------------------------


def test_translate_empty_tree():
    with pytest.raises(NoTemplates):
        translate(tree())


def test_translate_invalid_tree_reports_diagnostics():
    t = tree(node("t1", 1, ALW(0, 5), None, []))
    with pytest.raises(StructurallyInvalid) as err:
        translate(t)
    assert any(d.rule == "LeafWithoutPredicate" for d in err.value.diagnostics)


# --- per-template formula -------------------------------------------------------------


def test_template_formula_ignores_children():
    t = tree(
        node("t1", 1, ALW(0, 40), Predicate("speed", "<", 80),
             [leaf("t2", 2, ALW(0, 40), "rpm", "<", 4000)]),
    )
    assert format_formula(template_formula(t, "t1")) == "[]_[0,40](speed < 80)"
    assert format_formula(template_formula(t, "t2")) == "[]_[0,40](rpm < 4000)"


def test_template_formula_unknown_node():
    with pytest.raises(UnknownNode):
        template_formula(tree(leaf("t1", 1, NOW(), "x", ">", 0)), "t9")


def test_template_formula_needs_a_predicate():
    t = tree(node("t1", 1, ALW(0, 5), None,
                  [leaf("t2", 1, NOW(), "x", ">", 0)]))
    with pytest.raises(NoPredicate):
        template_formula(t, "t1")


# --- reverse and canonical form ----------------------------------------------------------


def test_reverse_builds_preorder_ids_and_dense_groups():
    f = parse_formula("[]_[0,40]((speed < 80) -> []_[0,40](rpm < 4000))")
    t = reverse(f)
    assert [n.id for n in iter_nodes(t)] == ["t1", "t2"]
    assert [n.group for n in iter_nodes(t)] == [1, 2]
    assert translate(t) == f


def test_reverse_restores_root_negation():
    f = parse_formula("!([]_[0,40](<>_[0,10](speed > 100)))")
    t = reverse(f)
    assert t.negated
    assert translate(t) == f


def test_reverse_rejects_inner_negation():
    f = parse_formula("!(a > 0) -> (b > 0)")
    with pytest.raises(ValueError):
        reverse(f)


def test_reverse_merges_two_interval_operators():
    f = parse_formula("<>_[0,30]([]_[0,10](speed > 100))")
    t = reverse(f)
    nodes = list(iter_nodes(t))
    assert len(nodes) == 1
    assert nodes[0].op == REACH_HOLD((0, 30), (0, 10))


def test_reverse_handles_left_nested_conjunction():
    f = parse_formula("((a > 0) /\\ (b > 0)) /\\ (c > 0)")
    t = reverse(f)
    assert validate_structure(t) == []
    assert translate(t) == f


def test_canonicalize_preserves_translation():
    for seed in range(200):
        t = random_fragment_tree(seed)
        canon = canonicalize(t)
        assert validate_structure(canon) == []
        assert translate(canon) == translate(t), seed


def test_canonicalize_is_idempotent():
    for seed in range(200):
        canon = canonicalize(random_fragment_tree(seed))
        assert canonicalize(canon) == canon, seed


def test_reverse_then_translate_is_identity_on_canonical_trees():
    for seed in range(200):
        canon = canonicalize(random_fragment_tree(seed))
        f = translate(canon)
        assert reverse(f, name=canon.name) == canon, seed
