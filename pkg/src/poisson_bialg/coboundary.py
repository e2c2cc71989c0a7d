"""Coboundary Lie bialgebra structure on (Q[x, y], Jacobian bracket).

An r-matrix ``r = A (x) B - B (x) A`` gives the cobracket ``g -> g . r`` where
``g . (a (x) b) = [g, a] (x) b + a (x) [g, b]``.  The helpers below compute
that cobracket, the classical Yang-Baxter defect of ``r`` and the two axiom
defects (cocycle and co-Jacobi) whose vanishing certifies a Lie bialgebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .core import Bracket, Monomial, Polynomial, Tensor, Tensor2, Tensor3, poisson_bracket, tensor, tensor_class


@dataclass(frozen=True)
class RElement:
    """``r = A (x) B - B (x) A`` together with its generators."""

    A: Polynomial
    B: Polynomial
    tensor: Tensor2 = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tensor", tensor(self.A, self.B) - tensor(self.B, self.A))

    def __str__(self):
        return str(self.tensor)


class JacobiPairError(ValueError):
    def __init__(self, jacobian: Polynomial):
        self.jacobian = jacobian
        super().__init__(f"J(f, g) = {jacobian} is not a nonzero constant")


def _mono(m) -> Polynomial:
    return Polynomial.monomial(m[0], m[1])


def _bracket_cache(bracket: Bracket):
    """Memoise a bracket on monomial arguments."""

    @lru_cache(maxsize=None)
    def on_monomials(a: Monomial, b: Monomial) -> tuple:
        return tuple(bracket(_mono(a), _mono(b)).items())

    return on_monomials


_poisson_monomials = _bracket_cache(poisson_bracket)


def _monomial_bracket(bracket):
    if bracket is poisson_bracket:
        return _poisson_monomials
    return _bracket_cache(bracket)


def adjoint_action2(x: Polynomial, t: Tensor, bracket: Bracket = poisson_bracket) -> Tensor2:
    """``x . t`` for a 2-tensor, ``x . (a (x) b) = [x, a] (x) b + a (x) [x, b]``."""
    mb = _monomial_bracket(bracket)
    out: dict = {}
    for (a, b), c in t.items():
        for xm, xc in x.items():
            for m, d in mb(xm, a):
                k = (m, b)
                out[k] = out.get(k, 0) + c * xc * d
            for m, d in mb(xm, b):
                k = (a, m)
                out[k] = out.get(k, 0) + c * xc * d
    return Tensor2(out)


def cobracket_r(g: Polynomial, r: RElement, bracket: Bracket = poisson_bracket) -> Tensor2:
    return adjoint_action2(g, r.tensor, bracket)


def cybe_defect(r: RElement, bracket: Bracket = poisson_bracket) -> Tensor3:
    """``[r12, r13] + [r12, r23] + [r13, r23]`` computed inside A (x) A (x) A.

    ``r23`` places the two legs in slots 2 and 3 (``1 (x) a (x) b``).
    """
    mb = _monomial_bracket(bracket)
    terms = list(r.tensor.items())
    out: dict = {}

    def add(key, c):
        out[key] = out.get(key, 0) + c

    for (a, b), c in terms:
        for (p, q), d in terms:
            cd = c * d
            for m, e in mb(a, p):  # [r12, r13]
                add((m, b, q), cd * e)
            for m, e in mb(b, p):  # [r12, r23]
                add((a, m, q), cd * e)
            for m, e in mb(b, q):  # [r13, r23]
                add((a, p, m), cd * e)
    return Tensor3(out)


def cocycle_defect(x: Polynomial, y: Polynomial, bracket: Bracket, cobracket: Callable) -> Tensor2:
    """``delta([x, y]) - x . delta(y) + y . delta(x)``."""
    return (
        cobracket(bracket(x, y))
        - adjoint_action2(x, cobracket(y), bracket)
        + adjoint_action2(y, cobracket(x), bracket)
    )


def co_jacobi_defect3(delta: Callable, f, check_antisymmetry: bool = True) -> Tensor3:
    """``(1 + xi + xi^2)((delta (x) id) delta(f))`` with ``xi`` the cyclic slot rotation.

    ``delta`` maps an element (a :class:`Polynomial` or a dual functional) to a
    2-tensor; it is applied to basis elements built with ``type(f).monomial``.
    """
    first = delta(f)
    if check_antisymmetry and first.swap() != -first:
        raise ValueError(f"cobracket is not antisymmetric at {f}")
    basis = type(f).monomial
    out: dict = {}
    for (a, b), c in first.items():
        for (a1, a2), d in delta(basis(a.i, a.j)).items():
            k = (a1, a2, b)
            out[k] = out.get(k, 0) + c * d
    t = tensor_class(3, first.dual)(out, 3)
    return t + t.cyclic() + t.cyclic().cyclic()


def jacobi_pair_r(f: Polynomial, g: Polynomial) -> RElement:
    """r-matrix ``f (x) fg - fg (x) f`` of a Jacobi pair (constant nonzero Jacobian)."""
    jac = poisson_bracket(f, g)
    if jac.is_zero() or not jac.is_constant():
        raise JacobiPairError(jac)
    return RElement(f, f * g)


def bracket_eigen_check(k: int, l: int, f: Polynomial) -> tuple[bool, Fraction | None]:
    """Whether ``[x^k y^l, f] = c f`` for some nonzero c; returns ``(holds, c)``."""
    br = poisson_bracket(Polynomial.monomial(k, l), f)
    if br.is_zero() or f.is_zero():
        return False, None
    (m, c0), *_ = f.items()
    ratio = br.coeff(*m) / c0
    if ratio != 0 and br == f.scale(ratio):
        return True, ratio
    return False, None
