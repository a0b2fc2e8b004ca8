"""
Authoring a timed requirement as a template tree
================================================

Builds the cruise-control requirement step by step the way an editor
would: start empty, add templates, fill them in, preview the formula
after every edit.
"""

from mtlspec import (
    Predicate,
    SpecTree,
    TemporalOperator,
    add_template,
    classify,
    format_formula,
    recognize,
    save_spec,
    set_operator,
    set_predicate,
    translate,
    validate_structure,
)

# An empty tree is a valid starting point; it just has nothing to translate.
tree = SpecTree(name="cruise")
print("diagnostics on empty tree:", validate_structure(tree))

# add_template returns (new_tree, new_id); trees are immutable values.
tree, t1 = add_template(tree, parent=None, group=1)
print("fresh template diagnostics:", validate_structure(tree))

# The new node starts as a bare leaf. Give it an operator and a predicate:
# "during the first 40 seconds the speed stays below 80".
tree = set_operator(tree, t1, TemporalOperator.always(0, 40))
tree = set_predicate(tree, t1, Predicate("speed", "<", 80))
print("one-template formula:", format_formula(translate(tree)))

# Nest a child under it with a different group number. Different group
# means implication: whenever the parent's predicate holds, the child's
# clock starts.
tree, t2 = add_template(tree, parent=t1, group=2)
tree = set_operator(tree, t2, TemporalOperator.always(0, 40))
tree = set_predicate(tree, t2, Predicate("rpm", "<", 4000))

formula = translate(tree)
print("nested formula:  ", format_formula(formula))
print("requirement shape:", classify(formula))

# The strict recognizer replays a derivation to prove membership.
report = recognize(formula, "strict")
print("strict fragment:  ", "accepted" if report.accepted else report.reason)

# A sibling with the same group number as t1 would conjoin instead:
tree2, t3 = add_template(tree, parent=None, group=1)
tree2 = set_operator(tree2, t3, TemporalOperator.always(0, 60))
tree2 = set_predicate(tree2, t3, Predicate("temp", "<", 90))
print("with conjoined sibling:", format_formula(translate(tree2)))

# Save the two-template version for the other demos to pick up.
save_spec(tree, "cruise.vspec.json")
print("saved cruise.vspec.json")
