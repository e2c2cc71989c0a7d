import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import functionals, polys
from poisson_bialg import DualFunctional, Polynomial, tensor
from poisson_bialg.parser import ParseError, Sum, TensorProduct, parse_expr, parse_functional, parse_poly, parse_tensor, parse_univariate


def test_parse_poly_examples():
    assert parse_poly("3*x^2*y - 1/2*y^3") == Polynomial({(2, 1): 3, (0, 3): Fraction(-1, 2)})
    assert parse_poly("x*(1+y)*(2+y)") == Polynomial({(1, 0): 2, (1, 1): 3, (1, 2): 1})
    with pytest.raises(ParseError):
        parse_poly("x^-1*y")
    assert parse_poly("x^-1*y", laurent=True) == Polynomial({(-1, 1): 1}, laurent=True)


def test_whitespace_and_unary_minus():
    assert parse_poly("  - x ^ 2\n + -y") == parse_poly("-x^2-y")
    assert parse_poly("(x+y)^2 / 2") == parse_poly("1/2*x^2 + x*y + 1/2*y^2")


def test_tensor_separator_vs_parenthesised_x():
    t = parse_tensor("x (x) y - y (x) x")
    assert t == tensor(Polynomial.x(), Polynomial.y()) - tensor(Polynomial.y(), Polynomial.x())
    assert parse_poly("2*(x)") == parse_poly("2*x")
    assert isinstance(parse_expr("x (x) y + y (x) x"), Sum)
    assert isinstance(parse_expr("x (x) y"), TensorProduct)


def test_dual_tensor():
    t = parse_tensor("phi (x) eps - eps (x) phi")
    assert t.dual and t.arity == 2


@pytest.mark.parametrize(
    "src",
    ["x +", "x ** y", "(x + y", "x^y", "z", "x (x) (y (x) x)", "phi + x", "x (x) y + x", "x/y", "x $ y", ""],
)
def test_syntax_errors(src):
    with pytest.raises(ParseError):
        parse_tensor(src) if "(x)" in src else parse_poly(src)


def test_error_position_and_expected_set():
    with pytest.raises(ParseError) as err:
        parse_poly("x +\n  * y")
    assert (err.value.line, err.value.col) == (2, 3)
    assert "INT" in err.value.expected


def test_family_checks():
    with pytest.raises(ParseError):
        parse_functional("x*y")
    with pytest.raises(ParseError):
        parse_poly("phi")
    with pytest.raises(ParseError):
        parse_functional("phi^-1")


def test_parse_univariate():
    assert parse_univariate("1 - phi - phi^2") == [1, -1, -1]
    assert parse_univariate("x^3") == [0, 0, 0, 1]
    with pytest.raises(ParseError):
        parse_univariate("x*y")


def _rand_terms(rng, k=4):
    terms = {}
    for _ in range(rng.randint(0, k)):
        terms[(rng.randint(0, 5), rng.randint(0, 5))] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return terms


def test_round_trip_1000_per_kind():
    rng = random.Random(20240611)
    for _ in range(1000):
        p = Polynomial(_rand_terms(rng))
        assert parse_poly(str(p)) == p
        f = DualFunctional(_rand_terms(rng))
        assert parse_functional(str(f)) == f
        arity = rng.choice((2, 3))
        dual = rng.random() < 0.5
        cls = DualFunctional if dual else Polynomial
        t = tensor(*(cls(_rand_terms(rng, 2)) for _ in range(arity)))
        t = t + tensor(*(cls(_rand_terms(rng, 2)) for _ in range(arity)))
        assert parse_tensor(str(t), dual=dual, arity=arity) == t


@given(polys())
def test_round_trip_poly(p):
    assert parse_poly(str(p)) == p


@given(functionals())
def test_round_trip_functional(f):
    assert parse_functional(str(f)) == f
