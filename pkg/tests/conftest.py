from fractions import Fraction

from hypothesis import settings, strategies as st

from poisson_bialg import DualFunctional, Polynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)
exps = st.tuples(st.integers(0, 4), st.integers(0, 4))


@st.composite
def polys(draw, max_terms=4):
    terms = draw(st.dictionaries(exps, small_q, max_size=max_terms))
    return Polynomial(terms)


@st.composite
def functionals(draw, max_terms=4):
    terms = draw(st.dictionaries(exps, small_q, max_size=max_terms))
    return DualFunctional(terms)


def mono(i, j, c=1):
    return Polynomial.monomial(i, j, Fraction(c))


def fn(i, j, c=1):
    return DualFunctional.monomial(i, j, Fraction(c))
