import random

import pytest

from conftest import random_trace
from mtlspec import (
    InsufficientHorizon,
    Trace,
    UnknownSignal,
    check_horizon,
    evaluate,
    parse_formula,
)
from mtlspec.fragment import random_fragment_tree
from mtlspec.translate import translate
from oracle import brute_force


def trace_of(values, dt=1.0, name="x"):
    times = tuple(i * dt for i in range(len(values)))
    return Trace(times=times, signals={name: tuple(float(v) for v in values)})


# --- trace invariants ------------------------------------------------------------


def test_trace_requires_time_zero_start():
    with pytest.raises(ValueError):
        Trace(times=(1.0, 2.0), signals={"x": (0.0, 0.0)})


def test_trace_requires_strictly_increasing_times():
    with pytest.raises(ValueError):
        Trace(times=(0.0, 1.0, 1.0), signals={"x": (0.0, 0.0, 0.0)})
    with pytest.raises(ValueError):
        Trace(times=(0.0, 2.0, 1.0), signals={"x": (0.0, 0.0, 0.0)})


def test_trace_requires_equal_signal_lengths():
    with pytest.raises(ValueError):
        Trace(times=(0.0, 1.0), signals={"x": (0.0,)})


def test_trace_rejects_non_finite_values():
    with pytest.raises(ValueError):
        Trace(times=(0.0, 1.0), signals={"x": (0.0, float("nan"))})


def test_trace_duration_and_length():
    t = trace_of([1, 2, 3], dt=0.5)
    assert t.duration == 1.0
    assert len(t) == 3


# --- direct evaluation ------------------------------------------------------------


def test_atom_evaluates_at_the_given_sample():
    t = trace_of([0, 5, 0])
    f = parse_formula("x > 3")
    assert not evaluate(f, t, at=0)
    assert evaluate(f, t, at=1)
    assert not evaluate(f, t, at=2)


def test_always_within_window():
    t = trace_of([5, 5, 5, 0, 5])
    assert evaluate(parse_formula("[]_[0,2](x > 3)"), t)
    assert not evaluate(parse_formula("[]_[0,3](x > 3)"), t)
    assert not evaluate(parse_formula("[]_[3,4](x > 3)"), t)
    assert evaluate(parse_formula("[]_[4,4](x > 3)"), t)


def test_eventually_within_window():
    t = trace_of([0, 0, 5, 0, 0])
    assert evaluate(parse_formula("<>_[0,4](x > 3)"), t)
    assert evaluate(parse_formula("<>_[2,2](x > 3)"), t)
    assert not evaluate(parse_formula("<>_[3,4](x > 3)"), t)


def test_window_is_relative_to_the_evaluation_point():
    t = trace_of([0, 0, 5, 0, 0])
    f = parse_formula("<>_[0,1](x > 3)")
    assert not evaluate(f, t, at=0)
    assert evaluate(f, t, at=1)
    assert evaluate(f, t, at=2)


def test_empty_window_semantics():
    # samples at 0,1,2 but window [0.3, 0.7] holds no sample
    t = trace_of([9, 9, 9])
    assert evaluate(parse_formula("[]_[0.3,0.7](x < 0)"), t)
    assert not evaluate(parse_formula("<>_[0.3,0.7](x > 0)"), t)


def test_boolean_connectives():
    t = trace_of([5])
    assert evaluate(parse_formula("(x > 3) /\\ (x < 6)"), t)
    assert not evaluate(parse_formula("(x > 3) /\\ (x > 6)"), t)
    assert evaluate(parse_formula("(x > 6) -> (x > 100)"), t)
    assert evaluate(parse_formula("!(x > 6)"), t)


def test_fractional_step_window_includes_endpoint_samples():
    # 0.1 steps are inexact in binary; the documented tolerance keeps the
    # nominal endpoint sample inside the window
    times = tuple(round(i * 0.1, 10) for i in range(11))
    t = Trace(times=times, signals={"x": (0.0,) * 10 + (5.0,)})
    assert evaluate(parse_formula("<>_[1,1](x > 3)"), t)
    assert evaluate(parse_formula("<>_[0.5,1](x > 3)"), t)


# --- preconditions -----------------------------------------------------------------


def test_unknown_signal_is_rejected_before_evaluation():
    t = trace_of([1, 2, 3])
    with pytest.raises(UnknownSignal):
        evaluate(parse_formula("y > 0"), t)


def test_insufficient_horizon_is_rejected():
    t = trace_of([1, 2, 3])  # duration 2
    with pytest.raises(InsufficientHorizon) as err:
        evaluate(parse_formula("[]_[0,5](x > 0)"), t)
    assert err.value.required == 5.0
    assert err.value.available == 2.0


def test_horizon_accounts_for_the_evaluation_point():
    t = trace_of([1, 2, 3])
    f = parse_formula("[]_[0,1](x > 0)")
    assert evaluate(f, t, at=1)
    with pytest.raises(InsufficientHorizon):
        evaluate(f, t, at=2)


def test_evaluation_index_bounds():
    t = trace_of([1, 2, 3])
    f = parse_formula("x > 0")
    with pytest.raises(ValueError):
        evaluate(f, t, at=3)
    with pytest.raises(ValueError):
        evaluate(f, t, at=-1)


def test_check_horizon_reports_requirements():
    t = trace_of([1, 2, 3])
    ok = check_horizon(parse_formula("[]_[0,2](x > 0)"), t)
    assert ok.ok and ok.required == 2.0 and ok.available == 2.0
    bad = check_horizon(parse_formula("[]_[0,9](x > 0)"), t)
    assert not bad.ok and bad.required == 9.0


# --- agreement with the brute-force expansion ----------------------------------------


def test_monitor_matches_brute_force_on_random_formulas():
    rng = random.Random(99)
    names = ("speed", "rpm", "accel", "fuel", "temp")
    mismatches = []
    for seed in range(150):
        tree = random_fragment_tree(seed)
        f = translate(tree)
        for round_ in range(3):
            trace = random_trace(rng, names, duration=120, dt=2.0, lo=-80, hi=180)
            got = evaluate(f, trace)
            want = brute_force(f, trace)
            if got != want:
                mismatches.append((seed, round_))
    assert mismatches == []


def test_monitor_matches_brute_force_at_interior_points():
    rng = random.Random(7)
    names = ("speed", "rpm", "accel", "fuel", "temp")
    for seed in range(40):
        f = translate(random_fragment_tree(seed))
        trace = random_trace(rng, names, duration=200, dt=2.0, lo=-80, hi=180)
        for at in (0, 3, 10):
            assert evaluate(f, trace, at=at) == brute_force(f, trace, at=at), (seed, at)


def test_negation_duality_always_eventually():
    rng = random.Random(17)
    for _ in range(60):
        trace = random_trace(rng, ("x",), duration=30, dt=1.0)
        lo = rng.choice((0, 1, 2))
        hi = lo + rng.choice((0, 3, 7))
        alw = parse_formula(f"[]_[{lo},{hi}](x > 0)")
        not_ev = parse_formula(f"!(<>_[{lo},{hi}](x <= 0))")
        assert evaluate(alw, trace) == evaluate(not_ev, trace)


def test_implication_duality():
    rng = random.Random(23)
    for _ in range(60):
        trace = random_trace(rng, ("x", "y"), duration=10, dt=1.0)
        imp = parse_formula("<>_[0,5](x > 0) -> <>_[0,5](y > 0)")
        dis = parse_formula("!(<>_[0,5](x > 0) /\\ !(<>_[0,5](y > 0)))")
        assert evaluate(imp, trace) == evaluate(dis, trace)
