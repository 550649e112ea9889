import math

import pytest
from hypothesis import given, strategies as st

from cavex import expr
from cavex.errors import DomainError, ParseError
from cavex.expr import BinOp, Const, Func, Neg, Pow, X

from .conftest import interior_points


# ---------------------------------------------------------------------------
# parsing

def test_parse_power():
    assert expr.parse("x^2") == Pow(X, 2.0)


def test_parse_quarter_circle_shape():
    ast = expr.parse("sqrt(1 - x*x)")
    assert ast == Func("sqrt", BinOp("-", Const(1.0), BinOp("*", X, X)))


def test_implicit_multiplication_rejected_with_offset():
    with pytest.raises(ParseError) as info:
        expr.parse("2x")
    assert info.value.offset == 1
    assert "end of input" in info.value.expected


def test_variable_exponent_rejected():
    with pytest.raises(ParseError):
        expr.parse("x^x")
    with pytest.raises(ParseError):
        expr.parse("x^(1 + x)")


def test_constant_exponent_expressions_fold():
    assert expr.parse("x^(3/2)") == Pow(X, 1.5)
    assert expr.parse("x^-1") == Pow(X, -1.0)
    assert expr.parse("x^2^2") == Pow(X, 4.0)  # right-associative


def test_unary_minus_binds_to_atom_before_power():
    # grammar: factor := unary ('^' factor)?  so -x^2 means (-x)^2
    assert expr.parse("-x^2") == Pow(Neg(X), 2.0)
    assert expr.parse("-2*x") == BinOp("*", Neg(Const(2.0)), X)


def test_unknown_identifier_offset_and_expectations():
    with pytest.raises(ParseError) as info:
        expr.parse("x + tan(x)")
    assert info.value.offset == 4
    assert "sin" in info.value.expected


def test_missing_parenthesis_reports_end_offset():
    with pytest.raises(ParseError) as info:
        expr.parse("sin(x")
    assert info.value.offset == 5


def test_dangling_operator():
    with pytest.raises(ParseError) as info:
        expr.parse("x +")
    assert info.value.offset == 3


def test_empty_expression():
    with pytest.raises(ParseError):
        expr.parse("   ")


def test_function_requires_parenthesis():
    with pytest.raises(ParseError) as info:
        expr.parse("sin x")
    assert info.value.offset == 4


def test_whitespace_insensitive():
    assert expr.parse(" x ^ 2 ") == expr.parse("x^2")
    assert expr.parse("sqrt( 1 - x * x )") == expr.parse("sqrt(1-x*x)")


def test_scientific_notation_numbers():
    assert expr.parse("1e-3") == Const(1e-3)
    assert expr.parse("2.5E2") == Const(250.0)


# ---------------------------------------------------------------------------
# pretty-print round trip

_atoms = st.one_of(
    st.just(X),
    st.builds(Const, st.floats(min_value=-1e6, max_value=1e6,
                               allow_nan=False, allow_infinity=False)),
)

_exponents = st.floats(min_value=-4, max_value=4,
                       allow_nan=False, allow_infinity=False)


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Pow, children, _exponents),
        st.builds(Func, st.sampled_from(expr.FUNCTIONS), children),
    )


_asts = st.recursive(_atoms, _extend, max_leaves=25)


@given(_asts)
def test_round_trip_through_source(ast):
    # Negative literals have no token of their own, so normalize once
    # through the parser; from then on print/parse must be a fixed point.
    normalized = expr.parse(expr.to_source(ast))
    assert expr.parse(expr.to_source(normalized)) == normalized


# ---------------------------------------------------------------------------
# dual evaluation

def test_square_value_and_slope():
    out = expr.eval_dual(expr.parse("x^2"), 3.0)
    assert (out.primal, out.tangent) == (9.0, 6.0)


def test_quarter_circle_point_six():
    out = expr.eval_dual(expr.parse("sqrt(1 - x*x)"), 0.6)
    assert out.primal == pytest.approx(0.8, abs=1e-15)
    assert out.tangent == pytest.approx(-0.75, abs=1e-15)
    # cross-check by central finite difference
    f = lambda x: expr.eval_primal(expr.parse("sqrt(1 - x*x)"), x)
    fd = (f(0.6 + 1e-6) - f(0.6 - 1e-6)) / 2e-6
    assert abs(out.tangent - fd) <= 1e-8


def test_log_domain_error_carries_subexpression():
    with pytest.raises(DomainError) as info:
        expr.eval_dual(expr.parse("log(x)"), 0.0)
    assert "log(x)" in str(info.value)


def test_division_by_zero_dual():
    with pytest.raises(DomainError):
        expr.eval_dual(expr.parse("1/(x - 1)"), 1.0)


def test_sqrt_at_zero_has_no_finite_slope():
    with pytest.raises(DomainError):
        expr.eval_dual(expr.parse("sqrt(x)"), 0.0)


def test_exp_overflow():
    with pytest.raises(OverflowError):
        expr.eval_dual(expr.parse("exp(x)"), 1000.0)


def test_integer_power_of_negative_base():
    out = expr.eval_dual(expr.parse("x^3"), -2.0)
    assert (out.primal, out.tangent) == (-8.0, 12.0)


def test_negative_integer_power():
    out = expr.eval_dual(expr.parse("x^-2"), 2.0)
    assert out.primal == pytest.approx(0.25)
    assert out.tangent == pytest.approx(-0.25)
    with pytest.raises(DomainError):
        expr.eval_dual(expr.parse("x^-2"), 0.0)


def test_fractional_power_requires_positive_base():
    out = expr.eval_dual(expr.parse("x^0.5"), 4.0)
    assert out.primal == pytest.approx(2.0)
    assert out.tangent == pytest.approx(0.25)
    with pytest.raises(DomainError):
        expr.eval_dual(expr.parse("x^0.5"), -1.0)
    with pytest.raises(DomainError):
        expr.eval_dual(expr.parse("x^2.5"), -3.0)


def test_trig_and_exp_chain_rule():
    out = expr.eval_dual(expr.parse("sin(x)*cos(x)"), 0.7)
    assert out.primal == pytest.approx(math.sin(0.7) * math.cos(0.7), rel=1e-15)
    assert out.tangent == pytest.approx(math.cos(1.4), rel=1e-12)
    out = expr.eval_dual(expr.parse("exp(2*x)"), 0.3)
    assert out.tangent == pytest.approx(2 * math.exp(0.6), rel=1e-14)


# ---------------------------------------------------------------------------
# derivative correctness against finite differences

def test_registry_slopes_match_central_differences(registry_curves, rng):
    h = 1e-6
    for cur in registry_curves.values():
        for x in interior_points(cur, 1000, rng):
            tangent = cur.df(x)
            fd = (cur.f(x + h) - cur.f(x - h)) / (2 * h)
            assert abs(tangent - fd) <= 1e-6 * (1 + abs(tangent)), cur.name
