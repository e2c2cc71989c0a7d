import json
import random

import pytest

from conftest import fn
from poisson_bialg import Polynomial, RElement, dual_bracket_bruteforce, pairing
from poisson_bialg.closedforms import (
    TheoremParams,
    closed_form_bracket,
    closed_form_functional,
    random_params,
    thm42_bracket,
    thm43_bracket,
    thm45_bracket,
    thm46_bracket,
    thm46_bracket_positive_tail,
    verify_bialgebra_axioms,
    verify_theorem,
)
from poisson_bialg.parser import parse_functional

T = TheoremParams


def _oracle(p, u, v):
    return dual_bracket_bruteforce(fn(*u), fn(*v), p.r_element())


def test_params_validation():
    with pytest.raises(ValueError):
        T.t42(1, 1)
    with pytest.raises(ValueError):
        T.t42(-1, 0)
    with pytest.raises(ValueError):
        T.t43(1, [1, 0])
    with pytest.raises(ValueError):
        T.t43(1, [])
    with pytest.raises(ValueError, match="violates"):
        T.t45(1, 0, {(0, 1): 1})
    with pytest.raises(ValueError):
        T.t45(1, 1, {(2, 2): 0})
    assert T.t45(2, 1, [(2, 1), (4, 2)]).support == (((2, 1), 1), ((4, 2), 1))


def test_thm42_examples():
    p = T.t42(2, 0)
    assert thm42_bracket(p, (1, 1), (3, 0)) == fn(2, 1, 2)
    assert thm42_bracket(p, (2, 0), (3, 1)) == fn(3, 1, 2)
    assert thm42_bracket(p, (3, 2), (4, 5)).is_zero()
    for u, v in [((1, 1), (3, 0)), ((2, 0), (3, 1)), ((3, 2), (4, 5))]:
        assert thm42_bracket(p, u, v) == _oracle(p, u, v)


def test_thm43_examples():
    p = T.t43(1, [0, 1])
    assert thm43_bracket(p, (1, 1), (3, 1)) == fn(3, 0, 6) == _oracle(p, (1, 1), (3, 1))
    q = T.t43(0, [0, 0, 1])
    assert thm43_bracket(q, (1, 1), (4, 1)) == fn(3, 0, 6) == _oracle(q, (1, 1), (4, 1))
    assert thm43_bracket(q, (3, 2), (5, 4)).is_zero()


def test_thm45_examples():
    p = T.t45(1, 1, {(2, 2): 1})
    assert thm45_bracket(p, (1, 1), (2, 2)).is_zero() and _oracle(p, (1, 1), (2, 2)).is_zero()
    # S = {(k, l)} makes B proportional to A, so r = 0 and every bracket vanishes
    p = T.t45(2, 1, {(2, 1): 1})
    assert p.r_element().tensor.is_zero()
    assert thm45_bracket(p, (3, 3), (2, 1)).is_zero() and _oracle(p, (3, 3), (2, 1)).is_zero()
    # with (k, l) outside S the middle case (l(p+1) - k(q+1)) a_st applies
    p = T.t45(2, 1, {(4, 2): 1})
    assert thm45_bracket(p, (3, 3), (4, 2)) == fn(2, 3, -4) == _oracle(p, (3, 3), (4, 2))
    assert thm45_bracket(p, (3, 3), (5, 0)).is_zero()


def test_thm46_examples_and_constants():
    p = T.t46()
    assert thm46_bracket(p, (3, 1), (4, 2)).is_zero()
    assert thm46_bracket(p, (2, 0), (3, 0)) == parse_functional("-18*phi^3 + 4*phi^3*eps")
    assert thm46_bracket(p, (2, 0), (3, 0)) == _oracle(p, (2, 0), (3, 0))
    assert thm46_bracket(p, (1, 5), (4, 0)).is_zero()
    r = p.r_element()
    assert [pairing(fn(2, t), r.B) for t in range(5)] == list(p.k_consts)
    assert [pairing(fn(1, j), r.A) for j in range(3)] == list(p.c_consts)


def test_thm46_positive_tails_disagree_with_oracle():
    p = T.t46()
    positive = thm46_bracket_positive_tail(p, (1, 0), (1, 1))
    assert positive != _oracle(p, (1, 0), (1, 1))
    assert thm46_bracket(p, (1, 0), (1, 1)) == _oracle(p, (1, 0), (1, 1))
    rep = verify_theorem(p, 6, closed_form=lambda a, b: thm46_bracket_positive_tail(p, a, b), jacobi=False)
    assert rep.status == "fail"


def test_closed_form_functional_bilinear():
    p = T.t43(2, [1, -2, 3])
    u, v = parse_functional("phi*eps + 2*phi^3*eps^2"), parse_functional("phi^4*eps^7 - eps^2")
    r = p.r_element()
    assert closed_form_functional(p, u, v) == dual_bracket_bruteforce(u, v, r)


@pytest.mark.parametrize(
    "p",
    [T.t42(2, 3), T.t42(0, 0), T.t43(0, [2, -1, 1, 3]), T.t43(3, [1, 2]), T.t45(1, 1, {(0, 0): 2, (2, 2): 1}), T.t46()],
    ids=lambda p: p.id,
)
def test_verify_passes(p):
    rep = verify_theorem(p, 6, jacobi_window=4)
    assert rep.status == "pass", rep.counterexamples[:3]
    assert rep.counterexamples == [] and rep.checked["pairs"] == 36 * 36


def test_report_schema_and_determinism():
    p = T.t42(2, 3)
    a = verify_theorem(p, 5, jacobi=False).to_json(timing=False)
    b = verify_theorem(p, 5, jacobi=False).to_json(timing=False)
    assert a == b
    doc = json.loads(a)
    assert set(doc) >= {"theorem", "params", "window", "status", "counterexamples", "elapsed_ms"}
    assert doc["window"] == [5, 5] and doc["status"] == "pass"
    assert "status" in verify_theorem(p, 3, jacobi=False).to_text()


def test_parallel_matches_serial():
    p = T.t43(1, [1, 2])
    bad = RElement(Polynomial.monomial(1, 1), Polynomial({(0, 1): 1, (1, 2): 3}))
    serial = verify_theorem(p, 5, r=bad, jacobi_window=3, workers=1)
    parallel = verify_theorem(p, 5, r=bad, jacobi_window=3, workers=2)
    assert serial.status == "fail"
    assert serial.as_dict(timing=False) == parallel.as_dict(timing=False)


def test_mutation_k1_is_detected():
    p = T.t46(k_consts=(2, 8, 9, 5, 1))
    rep = verify_theorem(p, 6, r=T.t46().r_element(), jacobi=False)
    assert rep.status == "fail" and rep.counterexamples
    ce = rep.counterexamples[0]
    assert set(ce) >= {"u", "v", "closed", "oracle"}


def test_mutated_r_is_detected():
    p = T.t42(2, 0)
    rep = verify_theorem(p, 6, r=T.t42(3, 0).r_element(), jacobi=False)
    assert rep.status == "fail"


def test_t45_origin_exponent_needs_collinear_support():
    # with (k, l) = (0, 0) the admissibility condition holds for any S;
    # the closed form still assumes S lies on one ray, so a two-ray S fails
    p = T.t45(0, 0, {(1, 0): 1, (0, 2): 1})
    rep = verify_theorem(p, 4, jacobi=False)
    assert rep.status == "fail"
    assert any(ce["u"] == [0, 0] and ce["v"] == [0, 2] for ce in rep.counterexamples)
    ray = T.t45(0, 0, {(1, 1): 1, (2, 2): 3})
    assert verify_theorem(ray, 6, jacobi_window=4).status == "pass"


def test_random_params_admissible():
    rng = random.Random(1)
    for name in ("T42", "T43", "T45", "T46"):
        for _ in range(20):
            p = random_params(name, rng)
            assert p.id == name
            closed_form_bracket(p, (1, 1), (2, 3))


def test_bialgebra_axioms_small():
    for p in (T.t42(2, 0), T.t46()):
        assert verify_bialgebra_axioms(p.r_element(), degree=4) == []


def test_t45_coefficient_at_kl_drops_out():
    a = T.t45(2, 1, {(2, 1): 1, (4, 2): 3})
    b = T.t45(2, 1, {(2, 1): 5, (4, 2): 3})
    assert a.r_element().tensor == b.r_element().tensor
    for u, v in [((2, 1), (3, 3)), ((4, 2), (1, 0)), ((2, 1), (4, 2)), ((0, 1), (6, 3))]:
        assert thm45_bracket(a, u, v) == thm45_bracket(b, u, v)
