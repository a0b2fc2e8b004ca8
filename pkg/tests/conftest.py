"""Shared builders for the test suite."""

import random

from mtlspec import Predicate, SpecTree, TemplateNode, TemporalOperator, Trace

ALW = TemporalOperator.always
ONCE = TemporalOperator.at_least_once
NOW = TemporalOperator.now
REACH_HOLD = TemporalOperator.eventually_always
RECUR = TemporalOperator.repeatedly_often_and_finally


def leaf(node_id, group, op, signal, relation, threshold):
    return TemplateNode(
        id=node_id,
        group=group,
        op=op,
        predicate=Predicate(signal, relation, threshold),
    )


def node(node_id, group, op, predicate, children):
    return TemplateNode(
        id=node_id, group=group, op=op, predicate=predicate, children=tuple(children)
    )


def tree(*roots, name="test", negated=False):
    return SpecTree(name=name, negated=negated, roots=tuple(roots))


def random_trace(rng: random.Random, names, duration, dt=0.5, lo=-10.0, hi=10.0):
    count = int(round(duration / dt)) + 1
    times = tuple(round(i * dt, 10) for i in range(count))
    signals = {
        name: tuple(rng.uniform(lo, hi) for _ in times) for name in names
    }
    return Trace(times=times, signals=signals)
