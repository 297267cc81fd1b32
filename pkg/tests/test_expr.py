import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shishkin_bvp import EvaluationError, ExprSyntaxError, eval_expression, parse_expression
from shishkin_bvp.expr import BinOp, Call, Num, Var


def ev(text, x=0.0):
    return eval_expression(parse_expression(text), x)


def test_parse_tree_shape():
    assert parse_expression("4+sin(x)") == BinOp("+", Num(4.0), Call("sin", Var()))
    assert ev("4+sin(x)", 0) == 4.0


@pytest.mark.parametrize("text, x, expected", [
    ("2+x", 0.5, 2.5),
    ("x^2", 3, 9),
    ("(1+x)*(2*x+1)", 0.5, 3.0),
    ("2+3*4^2", 0, 50),
    ("-2^2", 0, -4),
    ("2^3^2", 0, 512),
    ("2^-1", 0, 0.5),
    ("8/4/2", 0, 1),
    ("1-2-3", 0, -4),
    ("  1.5e1 +  .5 ", 0, 15.5),
    ("abs(-3)+sqrt(4)+ln(1)", 0, 5),
    ("-x*2", 1.5, -3),
])
def test_evaluation(text, x, expected):
    assert ev(text, x) == expected


def test_negative_exponential():
    assert ev("-exp(x)", 1.0) == pytest.approx(-2.718281828459045, rel=1e-16)


@pytest.mark.parametrize("text, offset", [("2+*x", 2), ("", 0), ("sin x", 4), ("(1+x", 4), ("1+y", 2),
                                          ("3 $ 4", 2), ("2 3", 2)])
def test_syntax_errors(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression(text)
    assert info.value.offset == offset
    assert f"offset {offset}" in str(info.value)


@pytest.mark.parametrize("text, x", [("1/x", 0.0), ("ln(x)", 0.0), ("ln(x-1)", 0.5), ("sqrt(x-1)", 0.0),
                                     ("exp(1000*x)", 1.0)])
def test_evaluation_errors(text, x):
    with pytest.raises(EvaluationError):
        ev(text, x)


def test_vectorized_evaluation_matches_scalar():
    expr = parse_expression("4+sin(x) - x^2/3")
    xs = np.linspace(0, 1, 11)
    np.testing.assert_array_equal(expr.evaluate(xs), [eval_expression(expr, v) for v in xs])
    assert np.shape(parse_expression("2").evaluate(xs)) == (11,)


def _exprs():
    leaves = st.one_of(st.just("x"), st.floats(0, 100, allow_nan=False).map(repr))
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.tuples(inner, st.sampled_from("+-*"), inner).map(lambda t: f"{t[0]}{t[1]}{t[2]}"),
            inner.map(lambda e: f"-({e})"),
            inner.map(lambda e: f"sin({e})"),
            inner.map(lambda e: f"cos({e})"),
            inner.map(lambda e: f"({e})^2"),
        ),
        max_leaves=8,
    )


@settings(max_examples=100, deadline=None)
@given(_exprs(), st.lists(st.floats(0, 1), min_size=1, max_size=5))
def test_round_trip(text, xs):
    expr = parse_expression(text)
    again = parse_expression(expr.to_text())
    assert again == expr
    for x in xs:
        try:
            a = eval_expression(expr, x)
        except EvaluationError:
            continue
        assert eval_expression(again, x) == a


def test_round_trip_on_random_points():
    expr = parse_expression("-(1+x)^2/3 + exp(-x)*cos(2*x) - -2^-1")
    again = parse_expression(expr.to_text())
    for x in np.random.default_rng(5).uniform(0, 1, 100):
        assert eval_expression(again, x) == eval_expression(expr, x)
    assert not math.isnan(eval_expression(expr, 0.5))
