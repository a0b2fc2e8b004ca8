"""
A tour of the supported formula fragment
========================================

Samples random template trees, looks at which requirement shapes come
out, and shows the strict/extended recognizer verdicts side by side.
"""

from collections import Counter

from mtlspec import (
    classify,
    format_formula,
    iter_nodes,
    random_fragment_tree,
    recognize,
    reverse,
    translate,
)

# Every seed gives a reproducible tree; max_depth bounds the nesting.
tree = random_fragment_tree(seed=42, max_depth=1)
formula = translate(tree)
print("seed 42, depth 1:", format_formula(formula))
print("classified as:   ", classify(formula))

# Shapes over 300 random trees: the generator mixes single templates,
# sibling chains, and nested response patterns.
counts = Counter()
strict_accepted = 0
for seed in range(300):
    f = translate(random_fragment_tree(seed))
    counts[str(classify(f))] += 1
    if recognize(f, "strict").accepted:
        strict_accepted += 1

print("\nshape histogram over 300 trees:")
for shape, n in counts.most_common():
    print(f"  {shape:28} {n:4}")
print(f"strict grammar accepts {strict_accepted}/300",
      "(the rest need the extended closure)")

# The extended mode accepts exactly what trees can produce, so every
# generated formula passes it.
assert all(
    recognize(translate(random_fragment_tree(s)), "extended").accepted
    for s in range(300)
)
print("extended mode accepts all 300")

# Accepted strict formulas come with a derivation you can inspect.
report = recognize(translate(random_fragment_tree(seed=42, max_depth=1)), "strict")
print("\na strict derivation:")
print("  ", report.derivation)

# Formulas in the fragment round-trip back into canonical trees, so a
# text formula can be loaded into the editor as a tree.
canon = reverse(translate(random_fragment_tree(seed=9)))
print("\nround-tripped tree has", sum(1 for _ in iter_nodes(canon)), "templates")
