import random

import pytest

from mtlspec import (
    Always,
    And,
    Atom,
    Eventually,
    FormulaSyntaxError,
    Implies,
    Interval,
    IntervalError,
    Not,
    Predicate,
    format_formula,
    horizon,
    parse_formula,
)


def atom(signal, relation, threshold):
    return Atom(Predicate(signal, relation, threshold))


# Frozen text/AST pairs. The text column is exactly what format_formula emits.
FIXTURES = [
    (
        "[]_[0,36](rpm < 4000)",
        Always(Interval(0, 36), atom("rpm", "<", 4000)),
    ),
    (
        "<>_[0,39](speed > 100)",
        Eventually(Interval(0, 39), atom("speed", ">", 100)),
    ),
    (
        "<>_[0,30]([]_[0,10](speed > 100))",
        Eventually(Interval(0, 30), Always(Interval(0, 10), atom("speed", ">", 100))),
    ),
    (
        "[]_[0,30](<>_[0,10](speed > 100))",
        Always(Interval(0, 30), Eventually(Interval(0, 10), atom("speed", ">", 100))),
    ),
    (
        "<>_[0,40](speed > 100) -> <>_[0,30](rpm > 3000)",
        Implies(
            Eventually(Interval(0, 40), atom("speed", ">", 100)),
            Eventually(Interval(0, 30), atom("rpm", ">", 3000)),
        ),
    ),
    (
        "[]_[0,40](speed < 100) /\\ []_[0,40](rpm < 4000)",
        And(
            Always(Interval(0, 40), atom("speed", "<", 100)),
            Always(Interval(0, 40), atom("rpm", "<", 4000)),
        ),
    ),
    (
        "[]_[0,40]((speed < 80) -> []_[0,40](rpm < 4000))",
        Always(
            Interval(0, 40),
            Implies(atom("speed", "<", 80), Always(Interval(0, 40), atom("rpm", "<", 4000))),
        ),
    ),
    (
        "!([]_[0,40](<>_[0,10](speed > 100)))",
        Not(Always(Interval(0, 40), Eventually(Interval(0, 10), atom("speed", ">", 100)))),
    ),
    (
        "(a > 0) /\\ (b > 0) /\\ (c > 0)",
        And(atom("a", ">", 0), And(atom("b", ">", 0), atom("c", ">", 0))),
    ),
    (
        "(a > 0) -> (b > 0) -> (c > 0)",
        Implies(atom("a", ">", 0), Implies(atom("b", ">", 0), atom("c", ">", 0))),
    ),
    (
        "(a > 0) /\\ (b > 0) -> (c > 0)",
        Implies(And(atom("a", ">", 0), atom("b", ">", 0)), atom("c", ">", 0)),
    ),
    (
        "((a > 0) -> (b > 0)) /\\ (c > 0)",
        And(Implies(atom("a", ">", 0), atom("b", ">", 0)), atom("c", ">", 0)),
    ),
    (
        "!(a > 0) -> (b > 0)",
        Implies(Not(atom("a", ">", 0)), atom("b", ">", 0)),
    ),
    (
        "[]_[0.5,2.5](x <= -4.5)",
        Always(Interval(0.5, 2.5), atom("x", "<=", -4.5)),
    ),
    (
        "<>_[3,3](x >= 0.25)",
        Eventually(Interval(3, 3), atom("x", ">=", 0.25)),
    ),
]


@pytest.mark.parametrize("text,ast", FIXTURES, ids=[t for t, _ in FIXTURES])
def test_parse_matches_expected_ast(text, ast):
    assert parse_formula(text) == ast


@pytest.mark.parametrize("text,ast", FIXTURES, ids=[t for t, _ in FIXTURES])
def test_format_is_canonical(text, ast):
    assert format_formula(ast) == text


@pytest.mark.parametrize("text,ast", FIXTURES, ids=[t for t, _ in FIXTURES])
def test_round_trip_on_fixtures(text, ast):
    assert parse_formula(format_formula(ast)) == ast


def test_parse_accepts_redundant_parentheses():
    assert parse_formula("((rpm < 4000))") == atom("rpm", "<", 4000)
    assert parse_formula("([]_[0,36]((rpm < 4000)))") == parse_formula(
        "[]_[0,36](rpm < 4000)"
    )


def test_parse_accepts_bare_comparison():
    assert parse_formula("rpm < 4000") == atom("rpm", "<", 4000)


def test_whitespace_is_insignificant():
    assert parse_formula("  []_[ 0 , 36 ]  ( rpm<4000 )  ") == parse_formula(
        "[]_[0,36](rpm < 4000)"
    )


def test_str_equals_format():
    f = FIXTURES[6][1]
    assert str(f) == format_formula(f)


# --- rejected inputs ----------------------------------------------------------


@pytest.mark.parametrize(
    "text",
    [
        "",
        "(",
        "rpm <",
        "< 4000",
        "rpm ! 4000",
        "[]_[0,36]",
        "[](rpm < 4000)",
        "[]_[0,36, 2](x < 1)",
        "(x > 1) U (y < 2)",
        "(x > 1) U_[0,3] (y < 2)",
        "[]_[0,inf](x > 1)",
        "x > 1 x",
        "x > 1e3",
        "x == 1",
        "(x > 1",
        "x > 1)",
        "/\\ (x > 1)",
    ],
)
def test_parse_rejects_malformed_text(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_syntax_error_carries_position():
    with pytest.raises(FormulaSyntaxError) as err:
        parse_formula("rpm <")
    assert err.value.line == 1
    assert err.value.column >= 5


def test_parse_rejects_reversed_interval():
    with pytest.raises(IntervalError):
        parse_formula("[]_[5,2](x < 1)")


def test_parse_rejects_negative_interval_bound():
    with pytest.raises(IntervalError):
        parse_formula("[]_[-1,2](x < 1)")


def test_negative_thresholds_parse_but_negative_bounds_do_not():
    assert parse_formula("x > -45") == atom("x", ">", -45)


# --- horizon -------------------------------------------------------------------


@pytest.mark.parametrize(
    "text,expected",
    [
        ("rpm < 4000", 0.0),
        ("[]_[0,36](rpm < 4000)", 36.0),
        ("[]_[0,40]((speed < 80) -> []_[0,40](rpm < 4000))", 80.0),
        ("<>_[0,30]([]_[0,10](speed > 100))", 40.0),
        ("!([]_[0,40](<>_[0,10](speed > 100)))", 50.0),
        ("[]_[0,5](a > 0) /\\ <>_[0,9](b > 0)", 9.0),
        ("(a > 0) -> <>_[2,3](b > 0)", 3.0),
    ],
)
def test_horizon(text, expected):
    assert horizon(parse_formula(text)) == expected


# --- randomized round trip ------------------------------------------------------


def random_formula(rng: random.Random, depth: int):
    choices = ["atom"] if depth == 0 else ["atom", "not", "and", "implies", "always", "eventually"]
    kind = rng.choice(choices)
    if kind == "atom":
        return atom(
            rng.choice(("a", "b", "speed", "rpm", "x_1")),
            rng.choice(("<", ">", "<=", ">=")),
            round(rng.uniform(-100, 100), 2),
        )
    if kind == "not":
        return Not(random_formula(rng, depth - 1))
    if kind in ("and", "implies"):
        cls = And if kind == "and" else Implies
        return cls(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    lo = round(rng.uniform(0, 20), 1)
    width = round(rng.uniform(0, 20), 1)
    cls = Always if kind == "always" else Eventually
    return cls(Interval(lo, lo + width), random_formula(rng, depth - 1))


def test_round_trip_on_random_asts():
    rng = random.Random(20260816)
    for _ in range(400):
        f = random_formula(rng, rng.randint(0, 5))
        assert parse_formula(format_formula(f)) == f
