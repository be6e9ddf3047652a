from fractions import Fraction

import pytest

from homcr import expr
from homcr.fields import GRAPH_UNIT
from homcr.series import CR_CHART, GaussianRational, TruncatedSeries

FORMS = [
    "x*y^alpha + gamma*y^(alpha + 1)",
    "exp(x)*y*cos(y)",
    "x/y + gamma*log(y)",
    "-z - i*w2",
    "(1/2 - 3*i)*w3^2",
    "y^alpha*cos(beta*log(y))",
    "x - (y - 1)",
    "2^(-1)",
]


@pytest.mark.parametrize("text", FORMS)
def test_serialize_round_trip(text):
    node = expr.parse(text)
    out = expr.serialize(node)
    assert expr.serialize(expr.parse(out)) == out


def test_free_names():
    assert expr.free_names(expr.parse("x*y^alpha + gamma")) == {"x", "y", "alpha", "gamma"}


def test_parse_errors():
    with pytest.raises(expr.ExprError):
        expr.parse("x +")
    with pytest.raises(expr.ExprError):
        expr.parse("foo(x)")


def test_scalar_evaluation():
    assert expr.evaluate_scalar(expr.parse("1/2 + i"), {}) == GaussianRational(Fraction(1, 2), 1)
    assert expr.evaluate_scalar(expr.parse("alpha^2"), {"alpha": Fraction(3)}) == 9


def test_rational_power_series():
    env = {n: TruncatedSeries.variable(GRAPH_UNIT, n) for n in GRAPH_UNIT.names}
    env["y"] = env["y"] + 1
    s = expr.evaluate(expr.parse("y^(-3/2)"), env, 2)
    assert s[(0, 1, 0, 0)] == Fraction(-3, 2) and s[(0, 2, 0, 0)] == Fraction(15, 8)


def test_series_to_text_round_trip():
    env = {n: TruncatedSeries.variable(CR_CHART, n) for n in CR_CHART.names}
    for text in ["-z - i*w2 + (1/2 - 3*i)*w3^2", "(-1 - i)*z", "-2/3 + z^2*w3", "0"]:
        s = expr.evaluate(expr.parse(text), env)
        out = expr.series_to_text(s)
        assert expr.evaluate(expr.parse(out), env) == s
        assert expr.serialize(expr.parse(out)) == out
