"""Reference corpus: known template trees with their expected formulas.

Every entry pins down one authored tree, the exact formula text it must
translate to, its specification class, and whether the strict pattern
grammar accepts the result. ``run_corpus`` re-checks all of that plus the
parse/format round trip, one result per entry, so a regression in any single
fixture points at exactly one entry.

Boolean propositions are encoded as numeric signals against a 0.5 threshold
(``> 0.5`` reads true, ``< 0.5`` false). An absolute bound ``|x| < c``
becomes the conjoined pair ``x < c`` and ``x > -c``; a band
``lo < x < hi`` becomes the conjoined pair of single comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fragment import Classification, SpecificationClass, classify, recognize
from .model import Predicate, SpecTree, TemplateNode, TemporalOperator
from .mtl import format_formula, parse_formula
from .translate import translate

_C = SpecificationClass


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    source: str
    tree: SpecTree
    expected_formula: str
    expected_class: Classification
    strict: bool


@dataclass(frozen=True)
class CorpusResult:
    entry: str
    ok: bool
    failures: tuple[str, ...]


@dataclass(frozen=True)
class CorpusReport:
    results: tuple[CorpusResult, ...]

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.ok)

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            if r.ok:
                out.append(f"PASS {r.entry}")
            else:
                out.append(f"FAIL {r.entry}: " + "; ".join(r.failures))
        out.append(f"{self.passed}/{self.total} corpus entries passed")
        return out


def _leaf(node_id, group, op, signal, relation, threshold) -> TemplateNode:
    return TemplateNode(
        id=node_id, group=group, op=op, predicate=Predicate(signal, relation, threshold)
    )


def _node(node_id, group, op, predicate, children) -> TemplateNode:
    return TemplateNode(
        id=node_id, group=group, op=op, predicate=predicate, children=tuple(children)
    )


def _tree(name, *roots, negated=False) -> SpecTree:
    return SpecTree(name=name, negated=negated, roots=tuple(roots))


_ALW = TemporalOperator.always
_ONCE = TemporalOperator.at_least_once
_NOW = TemporalOperator.now
_REACH_HOLD = TemporalOperator.eventually_always
_RECUR = TemporalOperator.repeatedly_often_and_finally


def _entry(entry_id, source, tree, formula, label, strict, negated=False) -> CorpusEntry:
    return CorpusEntry(
        id=entry_id,
        source=source,
        tree=tree,
        expected_formula=formula,
        expected_class=Classification(label, negated),
        strict=strict,
    )


@lru_cache(maxsize=1)
def build_corpus() -> tuple[CorpusEntry, ...]:
    entries = [
        _entry(
            "rpm-bound",
            "automotive",
            _tree("rpm-bound", _leaf("t1", 1, _ALW(0, 36), "rpm", "<", 4000)),
            "[]_[0,36](rpm < 4000)",
            _C.SAFETY,
            strict=True,
        ),
        _entry(
            "speed-reach",
            "automotive",
            _tree("speed-reach", _leaf("t1", 1, _ONCE(0, 39), "speed", ">", 100)),
            "<>_[0,39](speed > 100)",
            _C.REACHABILITY,
            strict=True,
        ),
        _entry(
            "speed-stabilize",
            "automotive",
            _tree(
                "speed-stabilize",
                _leaf("t1", 1, _REACH_HOLD((0, 30), (0, 10)), "speed", ">", 100),
            ),
            "<>_[0,30]([]_[0,10](speed > 100))",
            _C.STABILIZATION,
            strict=True,
        ),
        _entry(
            "speed-recur",
            "automotive",
            _tree(
                "speed-recur",
                _leaf("t1", 1, _RECUR((0, 30), (0, 10)), "speed", ">", 100),
            ),
            "[]_[0,30](<>_[0,10](speed > 100))",
            _C.RECURRENCE,
            strict=True,
        ),
        _entry(
            "speed-implies-rpm",
            "automotive",
            _tree(
                "speed-implies-rpm",
                _leaf("t1", 1, _ONCE(0, 40), "speed", ">", 100),
                _leaf("t2", 2, _ONCE(0, 30), "rpm", ">", 3000),
            ),
            "<>_[0,40](speed > 100) -> <>_[0,30](rpm > 3000)",
            _C.IMPLICATION,
            strict=True,
        ),
        _entry(
            "speed-and-rpm-bounds",
            "automotive",
            _tree(
                "speed-and-rpm-bounds",
                _leaf("t1", 1, _ALW(0, 40), "speed", "<", 100),
                _leaf("t2", 1, _ALW(0, 40), "rpm", "<", 4000),
            ),
            "[]_[0,40](speed < 100) /\\ []_[0,40](rpm < 4000)",
            _C.CONJUNCTION,
            strict=True,
        ),
        _entry(
            "slow-speed-caps-rpm",
            "automotive",
            _tree(
                "slow-speed-caps-rpm",
                _node(
                    "t1",
                    1,
                    _ALW(0, 40),
                    Predicate("speed", "<", 80),
                    [_leaf("t2", 2, _ALW(0, 40), "rpm", "<", 4000)],
                ),
            ),
            "[]_[0,40]((speed < 80) -> []_[0,40](rpm < 4000))",
            _C.REACTIVE_RESPONSE,
            strict=True,
        ),
        _entry(
            "branching-chain",
            "synthetic",
            _tree(
                "branching-chain",
                _node(
                    "n1",
                    1,
                    _ALW(0, 10),
                    Predicate("a", ">", 0),
                    [_leaf("n2", 1, _ONCE(0, 10), "b", ">", 0)],
                ),
                _node(
                    "n3",
                    2,
                    _NOW(),
                    None,
                    [
                        _leaf("n4", 2, _ALW(0, 10), "c", ">", 0),
                        _node(
                            "n5",
                            2,
                            _ONCE(0, 10),
                            Predicate("d", ">", 0),
                            [
                                _leaf("n6", 3, _NOW(), "a", ">", 0),
                                _leaf("n7", 3, _ALW(0, 10), "b", ">", 0),
                            ],
                        ),
                    ],
                ),
            ),
            "[]_[0,10]((a > 0) /\\ <>_[0,10](b > 0)) -> "
            "[]_[0,10](c > 0) /\\ <>_[0,10]((d > 0) -> (a > 0) /\\ []_[0,10](b > 0))",
            _C.IMPLICATION,
            strict=False,
        ),
        _entry(
            "needle-force-bound",
            "surgery",
            _tree(
                "needle-force-bound",
                _node(
                    "t1",
                    1,
                    _ALW(0, 30),
                    Predicate("puncturing", "<", 0.5),
                    [_leaf("t2", 2, _NOW(), "f", "<=", 10)],
                ),
            ),
            "[]_[0,30]((puncturing < 0.5) -> (f <= 10))",
            _C.SAFETY,
            strict=True,
        ),
        _entry(
            "stop-in-region",
            "surgery",
            _tree(
                "stop-in-region",
                _node(
                    "t1",
                    1,
                    _ONCE(0, 40),
                    Predicate("Stop", ">", 0.5),
                    [
                        _leaf("t2", 1, _NOW(), "n_x", ">", 5),
                        _leaf("t3", 1, _NOW(), "n_x", "<", 10),
                        _leaf("t4", 1, _NOW(), "n_y", ">", 5),
                        _leaf("t5", 1, _NOW(), "n_y", "<", 10),
                    ],
                ),
            ),
            "<>_[0,40]((Stop > 0.5) /\\ (n_x > 5) /\\ (n_x < 10) "
            "/\\ (n_y > 5) /\\ (n_y < 10))",
            _C.REACHABILITY,
            strict=True,
        ),
        _entry(
            "velocity-band",
            "surgery",
            _tree(
                "velocity-band",
                _node(
                    "t1",
                    1,
                    _ALW(0, 40),
                    None,
                    [
                        _leaf("t2", 1, _NOW(), "v_eff", ">", 10),
                        _leaf("t3", 1, _NOW(), "v_eff", "<", 20),
                    ],
                ),
            ),
            "[]_[0,40]((v_eff > 10) /\\ (v_eff < 20))",
            _C.SAFETY,
            strict=True,
        ),
        _entry(
            "attitude-envelope",
            "quadcopter",
            _tree(
                "attitude-envelope",
                _node(
                    "t1",
                    1,
                    _ALW(0, 40),
                    None,
                    [
                        _leaf("t2", 1, _NOW(), "alpha", "<", 45),
                        _leaf("t3", 1, _NOW(), "alpha", ">", -45),
                    ],
                ),
                _node(
                    "t4",
                    1,
                    _ALW(0, 40),
                    None,
                    [
                        _leaf("t5", 1, _NOW(), "beta", "<", 45),
                        _leaf("t6", 1, _NOW(), "beta", ">", -45),
                    ],
                ),
            ),
            "[]_[0,40]((alpha < 45) /\\ (alpha > -45)) "
            "/\\ []_[0,40]((beta < 45) /\\ (beta > -45))",
            _C.CONJUNCTION,
            strict=False,
        ),
        _entry(
            "approach-slowdown",
            "quadcopter",
            _tree(
                "approach-slowdown",
                _node(
                    "t1",
                    1,
                    _ALW(0, 40),
                    Predicate("dist", "<", 5),
                    [_leaf("t2", 2, _ALW(0, 20), "v", "<", 10)],
                ),
            ),
            "[]_[0,40]((dist < 5) -> []_[0,20](v < 10))",
            _C.REACTIVE_RESPONSE,
            strict=True,
        ),
        _entry(
            "task-01-safety",
            "task-survey",
            _tree("task-01", _leaf("t1", 1, _ALW(0, 40), "speed", "<", 160)),
            "[]_[0,40](speed < 160)",
            _C.SAFETY,
            strict=True,
        ),
        _entry(
            "task-02-reachability",
            "task-survey",
            _tree("task-02", _leaf("t1", 1, _ONCE(0, 30), "speed", ">", 120)),
            "<>_[0,30](speed > 120)",
            _C.REACHABILITY,
            strict=True,
        ),
        _entry(
            "task-03-stabilization",
            "task-survey",
            _tree(
                "task-03",
                _leaf("t1", 1, _REACH_HOLD((0, 30), (0, 20)), "speed", ">", 100),
            ),
            "<>_[0,30]([]_[0,20](speed > 100))",
            _C.STABILIZATION,
            strict=True,
        ),
        _entry(
            "task-04-recurrence",
            "task-survey",
            _tree(
                "task-04",
                _leaf("t1", 1, _RECUR((0, 40), (0, 10)), "speed", ">", 100),
            ),
            "[]_[0,40](<>_[0,10](speed > 100))",
            _C.RECURRENCE,
            strict=True,
        ),
        _entry(
            "task-05-negated-recurrence",
            "task-survey",
            _tree(
                "task-05",
                _leaf("t1", 1, _RECUR((0, 40), (0, 10)), "speed", ">", 100),
                negated=True,
            ),
            "!([]_[0,40](<>_[0,10](speed > 100)))",
            _C.RECURRENCE,
            strict=True,
            negated=True,
        ),
        _entry(
            "task-06-implication",
            "task-survey",
            _tree(
                "task-06",
                _leaf("t1", 1, _ONCE(0, 40), "speed", ">", 100),
                _leaf("t2", 2, _ONCE(0, 30), "rpm", ">", 3000),
            ),
            "<>_[0,40](speed > 100) -> <>_[0,30](rpm > 3000)",
            _C.IMPLICATION,
            strict=True,
        ),
        _entry(
            "task-07-reactive-response",
            "task-survey",
            _tree(
                "task-07",
                _node(
                    "t1",
                    1,
                    _ONCE(0, 40),
                    Predicate("speed", ">", 80),
                    [_leaf("t2", 2, _ALW(0, 30), "rpm", ">", 4000)],
                ),
            ),
            "<>_[0,40]((speed > 80) -> []_[0,30](rpm > 4000))",
            _C.REACTIVE_RESPONSE,
            strict=True,
        ),
        _entry(
            "task-08-conjunction",
            "task-survey",
            _tree(
                "task-08",
                _leaf("t1", 1, _ALW(0, 40), "speed", "<", 100),
                _leaf("t2", 1, _ALW(0, 40), "rpm", "<", 4000),
            ),
            "[]_[0,40](speed < 100) /\\ []_[0,40](rpm < 4000)",
            _C.CONJUNCTION,
            strict=True,
        ),
        _entry(
            "task-09-sequencing",
            "task-survey",
            _tree(
                "task-09",
                _node(
                    "t1",
                    1,
                    _ONCE(0, 40),
                    Predicate("speed", ">", 80),
                    [_leaf("t2", 1, _ALW(0, 30), "rpm", ">", 4000)],
                ),
            ),
            "<>_[0,40]((speed > 80) /\\ []_[0,30](rpm > 4000))",
            _C.NON_STRICT_SEQUENCING,
            strict=True,
        ),
        _entry(
            # The nested implication chain keeps the outermost response
            # shape, so the Table matcher labels it ReactiveResponse.
            "task-10-long-sequence",
            "task-survey",
            _tree(
                "task-10",
                _node(
                    "t1",
                    1,
                    _ONCE(0, 40),
                    Predicate("speed", ">", 80),
                    [
                        _node(
                            "t2",
                            2,
                            _ONCE(0, 20),
                            Predicate("rpm", ">", 4000),
                            [_leaf("t3", 3, _ALW(0, 30), "speed", ">", 100)],
                        )
                    ],
                ),
            ),
            "<>_[0,40]((speed > 80) -> <>_[0,20]((rpm > 4000) -> []_[0,30](speed > 100)))",
            _C.REACTIVE_RESPONSE,
            strict=True,
        ),
    ]
    return tuple(entries)


def corpus_entry(entry_id: str) -> CorpusEntry:
    for entry in build_corpus():
        if entry.id == entry_id:
            return entry
    raise KeyError(f"no corpus entry {entry_id!r}")


def check_entry(entry: CorpusEntry) -> CorpusResult:
    failures: list[str] = []
    try:
        actual = translate(entry.tree)
    except Exception as exc:
        return CorpusResult(entry.id, False, (f"translation failed: {exc}",))
    expected = parse_formula(entry.expected_formula)
    if actual != expected:
        failures.append(
            f"translated to {format_formula(actual)}, expected {entry.expected_formula}"
        )
    label = classify(actual)
    if label != entry.expected_class:
        failures.append(f"classified as {label}, expected {entry.expected_class}")
    if not recognize(actual, "extended").accepted:
        failures.append("extended recognizer rejected the formula")
    strict_accepted = recognize(actual, "strict").accepted
    if strict_accepted != entry.strict:
        failures.append(
            f"strict recognizer {'accepted' if strict_accepted else 'rejected'}, "
            f"expected {'accept' if entry.strict else 'reject'}"
        )
    roundtrip = parse_formula(format_formula(actual))
    if roundtrip != actual:
        failures.append("format/parse round trip changed the formula")
    return CorpusResult(entry.id, not failures, tuple(failures))


def run_corpus(entries=None) -> CorpusReport:
    if entries is None:
        entries = build_corpus()
    return CorpusReport(tuple(check_entry(e) for e in entries))
