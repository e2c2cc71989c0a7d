"""Closed-form dual brackets for four triangular r-matrices on Q[x, y].

Each ``thmXX_bracket`` returns ``[phi^u, phi^v]`` on basis functionals as a
:class:`DualFunctional`, implementing one bracket table.  Argument
orders the table does not list are obtained from skew-symmetry, and any
output monomial with a negative exponent is zero.

:func:`verify_theorem` checks a table against :class:`DualityOracle`, which
dualises the cobracket of the same r-matrix cell by cell.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .coboundary import RElement, cocycle_defect
from .core import Monomial, Polynomial
from .dual import DualFunctional, DualityOracle, GuardRingViolation, support_margin
from .printing import format_terms

THEOREMS = ("T42", "T43", "T45", "T46")

T46_C = (2, 3, 1)
T46_K = (2, 7, 9, 5, 1)


@dataclass(frozen=True)
class TheoremParams:
    """Hypotheses of one closed-form theorem, validated on construction.

    Build instances with :meth:`t42`, :meth:`t43`, :meth:`t45` or :meth:`t46`.
    """

    id: str
    m: int | None = None
    n: int | None = None
    coeffs: tuple = ()
    k: int | None = None
    l: int | None = None
    support: tuple = ()  # ((i, j), a_ij) pairs for T45
    c_consts: tuple = T46_C
    k_consts: tuple = T46_K

    @classmethod
    def t42(cls, m: int, n: int) -> "TheoremParams":
        if m < 0 or n < 0:
            raise ValueError("m, n must be nonnegative")
        if (m, n) == (1, 1):
            raise ValueError("(m, n) = (1, 1) is excluded: a = b = xy gives r = 0")
        return cls("T42", m=m, n=n)

    @classmethod
    def t43(cls, m: int, coeffs) -> "TheoremParams":
        coeffs = tuple(Fraction(c) for c in coeffs)
        if m < 0:
            raise ValueError("m must be nonnegative")
        if not coeffs or coeffs[-1] == 0:
            raise ValueError("leading coefficient a_n must be nonzero")
        return cls("T43", m=m, coeffs=coeffs)

    @classmethod
    def t45(cls, k: int, l: int, support) -> "TheoremParams":
        """``support`` maps ``(i, j)`` to ``a_ij``; a plain iterable of pairs means all ones."""
        if not isinstance(support, dict):
            support = {tuple(p): 1 for p in support}
        if k < 0 or l < 0:
            raise ValueError("k, l must be nonnegative")
        items = []
        for (i, j), a in sorted(support.items()):
            if i < 0 or j < 0:
                raise ValueError(f"support point {(i, j)} has a negative exponent")
            if k * j - l * i != 0:
                raise ValueError(f"support point {(i, j)} violates k*j - l*i = 0 (value {k * j - l * i})")
            a = Fraction(a)
            if a == 0:
                raise ValueError(f"coefficient at {(i, j)} is zero")
            items.append(((i, j), a))
        if not items:
            raise ValueError("support must be nonempty")
        return cls("T45", k=k, l=l, support=tuple(items))

    @classmethod
    def t46(cls, c_consts=T46_C, k_consts=T46_K) -> "TheoremParams":
        return cls("T46", c_consts=tuple(c_consts), k_consts=tuple(k_consts))

    def r_element(self) -> RElement:
        x, y = Polynomial.x(), Polynomial.y()
        if self.id == "T42":
            return RElement(Polynomial.monomial(self.m, self.n), x * y)
        if self.id == "T43":
            B = Polynomial({(i, i + self.m): a for i, a in enumerate(self.coeffs)})
            return RElement(x * y, B)
        if self.id == "T45":
            return RElement(Polynomial.monomial(self.k, self.l), Polynomial(dict(self.support)))
        one = Polynomial.constant(1)
        return RElement(x * (one + y) * (y + 2), x**2 * (one + y) ** 3 * (y + 2))

    def as_dict(self) -> dict:
        if self.id == "T42":
            return {"m": self.m, "n": self.n}
        if self.id == "T43":
            return {"m": self.m, "coeffs": [str(c) for c in self.coeffs]}
        if self.id == "T45":
            return {"k": self.k, "l": self.l, "support": [[i, j, str(a)] for (i, j), a in self.support]}
        return {"c": list(self.c_consts), "k": list(self.k_consts)}


def _fn(terms) -> DualFunctional:
    """Sum ``coeff * phi^a eps^b`` over ``(coeff, a, b)`` triples."""
    acc: dict = {}
    for c, a, b in terms:
        if c and a >= 0 and b >= 0:
            acc[(a, b)] = acc.get((a, b), 0) + c
    return DualFunctional(acc)


ZERO = DualFunctional()


# -- T42: a = x^m y^n, b = xy -------------------------------------------------


def thm42_bracket(p: TheoremParams, u, v) -> DualFunctional:
    u, v = Monomial(*u), Monomial(*v)
    if u == v:
        return ZERO
    m, n = p.m, p.n
    if u == (1, 1):
        s, t = v
        return _fn([(m * (t + 1) - n * (s + 1), s + 1 - m, t + 1 - n)])
    if v == (1, 1):
        return -thm42_bracket(p, v, u)
    if u == (m, n):
        s, t = v
        return _fn([(s - t, s, t)])
    if v == (m, n):
        return -thm42_bracket(p, v, u)
    return ZERO


# -- T43: A = xy, B = sum a_i x^i y^(i+m) ---------------------------------------


def thm43_bracket(p: TheoremParams, u, v) -> DualFunctional:
    u, v = Monomial(*u), Monomial(*v)
    if u == v:
        return ZERO
    if v == (1, 1):
        return -thm43_bracket(p, v, u)
    a = p.coeffs
    n = len(a) - 1
    m = p.m
    (pp, q), (s, t) = u, v
    if m != 0:
        if pp == q:
            if pp != 1:
                return ZERO
            return _fn([(a[i] * (s * i + s * m + m - t * i), s - i + 1, t - i - m + 1) for i in range(n + 1)])
        terms = []
        for i in range(n + 1):
            if (s, t) == (i, i + m):
                terms.append(((pp - q) * a[i], pp, q))
            if (pp, q) == (i, i + m):
                terms.append((-(s - t) * a[i], s, t))
        return _fn(terms)
    if u == (1, 1):
        return _fn([(a[i] * (s - t) * i, s - i + 1, t - i + 1) for i in range(2, n + 1)])
    if pp == q:
        ap = a[pp] if pp <= n else 0
        return _fn([((t - s) * ap, s, t)])
    if s == t:
        return -thm43_bracket(p, v, u)
    return ZERO


# -- T45: A = x^k y^l, B supported on the line kj = li ---------------------------


def thm45_bracket(p: TheoremParams, u, v) -> DualFunctional:
    u, v = Monomial(*u), Monomial(*v)
    if u == v:
        return ZERO
    k, l = p.k, p.l
    S = dict(p.support)
    K = (k, l)

    def a(i, j):
        return S.get((i, j), 0)

    if u == K:
        s, t = v
        in_st, in_kl = (s, t) in S, K in S
        if in_st:
            terms = [((l - k) * a(s, t), 1, 1)]
            terms += [(aij * (j - i), s - i + 1, t - j + 1) for (i, j), aij in S.items()]
        else:
            terms = [(aij * (j * (s + 1) - i * (t + 1)), s - i + 1, t - j + 1) for (i, j), aij in S.items()]
        if in_kl:
            if in_st:
                terms.append((-(l - k) * a(k, l), s - k + 1, t - l + 1))
            else:
                terms.append((-(l * (s + 1) - k * (t + 1)) * a(k, l), s - k + 1, t - l + 1))
        return _fn(terms)
    if v == K:
        return -thm45_bracket(p, v, u)
    (pp, q), (s, t) = u, v
    in_u, in_v = (pp, q) in S, (s, t) in S
    if in_u and in_v:
        return _fn([((l - k) * a(s, t), pp - k + 1, q - l + 1), (-(l - k) * a(pp, q), s - k + 1, t - l + 1)])
    if in_v:
        return _fn([((l * (pp + 1) - k * (q + 1)) * a(s, t), pp - k + 1, q - l + 1)])
    if in_u:
        return -thm45_bracket(p, v, u)
    return ZERO


# -- T46: A = x(1+y)(2+y), B = x^2(1+y)^3(2+y) -------------------------------------


def _const(seq, idx):
    return seq[idx] if 0 <= idx < len(seq) else 0


def thm46_bracket(p: TheoremParams, u, v) -> DualFunctional:
    return _thm46(p, u, v, -1)


def thm46_bracket_positive_tail(p: TheoremParams, u, v) -> DualFunctional:
    """Variant with ``+4(t+1)`` tails in the i = 1 rows; kept as a known-bad control."""
    return _thm46(p, u, v, 1)


def _thm46(p: TheoremParams, u, v, tail: int) -> DualFunctional:
    u, v = Monomial(*u), Monomial(*v)
    if u == v:
        return ZERO

    def c(j):
        return _const(p.c_consts, j)

    def kk(t):
        return _const(p.k_consts, t)

    (i, j), (s, t) = u, v
    edge = (1, 2)
    if i == 1 and s not in edge:
        cj = c(j)
        return _fn(
            [
                (cj * (4 * s - 2 * t + 2), s - 1, t - 3),
                (cj * (15 * s - 10 * t + 5), s - 1, t - 2),
                (cj * 18 * (s - t), s - 1, t - 1),
                (cj * (7 * s - 14 * t - 7), s - 1, t),
                (tail * cj * 4 * (t + 1), s - 1, t + 1),
            ]
        )
    if i == 1 and s == 1:

        def row(e):
            return [
                ((6 - 2 * e), 0, e - 3),
                ((20 - 10 * e), 0, e - 2),
                (18 * (1 - e), 0, e - 1),
                (-14 * e, 0, e),
                (tail * 4 * (e + 1), 0, e + 1),
            ]

        return _fn([(c(j) * w, a, b) for w, a, b in row(t)] + [(-c(t) * w, a, b) for w, a, b in row(j)])
    if i == 1 and s == 2:
        return _fn(
            [
                (kk(t) * (3 - j), 1, j - 1),
                (kk(t) * 3 * (1 - j), 1, j),
                (-kk(t) * 2 * (j + 1), 1, j + 1),
                (c(j) * (10 - 2 * t), 1, t - 3),
                (c(j) * (35 - 10 * t), 1, t - 2),
                (c(j) * 18 * (2 - t), 1, t - 1),
                (c(j) * (7 - 14 * t), 1, t),
                (tail * c(j) * 4 * (t + 1), 1, t + 1),
            ]
        )
    if i == 2 and s not in edge:
        kj = kk(j)
        return _fn(
            [
                (-kj * (2 * s - t + 1), s, t - 1),
                (-kj * 3 * (s - t), s, t),
                (kj * 2 * (t + 1), s, t + 1),
            ]
        )
    if i == 2 and s == 2:
        return _fn(
            [
                (kk(t) * (5 - j), 2, j - 1),
                (kk(t) * 3 * (2 - j), 2, j),
                (-kk(t) * 2 * (j + 1), 2, j + 1),
                (-kk(j) * (5 - t), 2, t - 1),
                (-kk(j) * 3 * (2 - t), 2, t),
                (kk(j) * 2 * (t + 1), 2, t + 1),
            ]
        )
    if i not in edge and s not in edge:
        return ZERO
    return -_thm46(p, v, u, tail)


_DISPATCH = {"T42": thm42_bracket, "T43": thm43_bracket, "T45": thm45_bracket, "T46": thm46_bracket}


def closed_form_bracket(p: TheoremParams, u, v) -> DualFunctional:
    return _DISPATCH[p.id](p, u, v)


def closed_form_functional(p: TheoremParams, f: DualFunctional, g: DualFunctional, closed_form=None) -> DualFunctional:
    """Bilinear extension of the closed-form bracket to arbitrary functionals."""
    cf = closed_form or (lambda a, b: closed_form_bracket(p, a, b))
    out = DualFunctional()
    for a, c in f.items():
        for b, d in g.items():
            out = out + cf(a, b).scale(c * d)
    return out


def prop44_r_family(k: int, l: int, support, coeffs=None) -> RElement:
    """``x^k y^l (x) f - f (x) x^k y^l`` with ``Supp f`` on the line ``kj = li``.

    ``support`` lists the exponents of ``f``; ``coeffs`` defaults to all ones.
    """
    support = [tuple(s) for s in support]
    coeffs = [1] * len(support) if coeffs is None else list(coeffs)
    for (i, j) in support:
        if k * j - l * i != 0:
            raise ValueError(f"support point {(i, j)} violates k*j - l*i = 0 (value {k * j - l * i})")
    return RElement(Polynomial.monomial(k, l), Polynomial(dict(zip(support, coeffs))))


def prop44_xy_family(c: int, coeffs) -> RElement:
    """``xy (x) B - B (x) xy`` with ``B = sum a_i x^i y^(c+i)``."""
    if c < 0:
        raise ValueError("shift c must be nonnegative")
    B = Polynomial({(i, i + c): a for i, a in enumerate(coeffs)})
    return RElement(Polynomial.x() * Polynomial.y(), B)


COEFF_POOL = (-2, -1, 1, 2, 3)


def random_params(theorem: str, rng) -> TheoremParams:
    """Admissible random parameters for ``theorem`` drawn from ``rng`` (a ``random.Random``)."""
    tid = theorem.upper()
    if tid == "T42":
        m, n = (1, 1)
        while (m, n) == (1, 1):
            m, n = rng.randint(0, 4), rng.randint(0, 4)
        return TheoremParams.t42(m, n)
    if tid == "T43":
        return TheoremParams.t43(rng.randint(0, 3), [rng.choice(COEFF_POOL) for _ in range(rng.randint(1, 4))])
    if tid == "T45":
        k, l = 0, 0
        while (k, l) == (0, 0):
            k, l = rng.randint(0, 3), rng.randint(0, 3)
        g = math.gcd(k, l)
        step = (k // g, l // g)
        line = [(t * step[0], t * step[1]) for t in range(0, 7) if t * max(step) <= 6]
        pts = rng.sample(line, rng.randint(1, min(3, len(line))))
        return TheoremParams.t45(k, l, {pt: rng.choice(COEFF_POOL) for pt in pts})
    if tid == "T46":
        return TheoremParams.t46()
    raise ValueError(f"unknown theorem {theorem!r}")


# -- verification -----------------------------------------------------------------


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    window: tuple
    status: str = "pass"
    counterexamples: list = field(default_factory=list)
    elapsed_ms: float = 0.0
    checked: dict = field(default_factory=dict)

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "theorem": self.theorem,
            "params": self.params,
            "window": list(self.window),
            "status": self.status,
            "counterexamples": self.counterexamples,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else 0,
            "checked": self.checked,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), sort_keys=False)

    def to_text(self, timing: bool = True) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [
            f"{'theorem':<16}{self.theorem}",
            f"{'params':<16}{params or '-'}",
            f"{'window':<16}{self.window[0]}x{self.window[1]}",
            f"{'status':<16}{self.status}",
            f"{'checked':<16}" + ", ".join(f"{k}={v}" for k, v in self.checked.items()),
            f"{'counterexamples':<16}{len(self.counterexamples)}",
            f"{'elapsed_ms':<16}{round(self.elapsed_ms, 3) if timing else 0}",
        ]
        for ce in self.counterexamples[:20]:
            lines.append(f"  [{ce['check']}] u={ce['u']} v={ce['v']}  closed: {ce['closed']}  oracle: {ce['oracle']}")
        return "\n".join(lines)


def _as_number(c: Fraction):
    return c.numerator if c.denominator == 1 else c


class _BracketTable:
    """Memoised closed-form brackets on basis pairs, stored as ``{monomial: coeff}``."""

    def __init__(self, cf):
        self.cf = cf
        self.cache: dict = {}

    def __call__(self, a, b) -> dict:
        key = (a, b)
        hit = self.cache.get(key)
        if hit is None:
            hit = {m: _as_number(c) for m, c in self.cf(a, b).items()}
            self.cache[key] = hit
        return hit

    def apply(self, a, vec: dict) -> dict:
        out: dict = {}
        for b, c in vec.items():
            for m, d in self(a, b).items():
                out[m] = out.get(m, 0) + c * d
        return out


def jacobiator(table: _BracketTable, a, b, c) -> dict:
    out: dict = {}
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        for m, d in table.apply(x, table(y, z)).items():
            out[m] = out.get(m, 0) + d
    return {m: d for m, d in out.items() if d != 0}


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("POISSON_BIALG_THREADS", "1")))
    except ValueError:
        return 1


def _compare_rows(p, r, window, rows, closed_form=None):
    """Oracle and skew comparison for basis pairs whose first element is in ``rows``."""
    w, h = window
    M = support_margin(r)
    oracle = DualityOracle(r, (w + M, h + M))
    cf = closed_form or (lambda a, b: closed_form_bracket(p, a, b))
    basis = [Monomial(i, j) for i in range(w) for j in range(h)]
    bad = []
    for a in rows:
        for b in basis:
            table = oracle.basis_bracket(a, b)
            ring = [cell for cell, c in table.items() if cell in oracle.ring and c != 0]
            if ring:
                raise GuardRingViolation(DualFunctional.monomial(*a), DualFunctional.monomial(*b), ring)
            got = cf(a, b)
            want = DualFunctional(table)
            if got != want:
                bad.append({"check": "oracle", "u": list(a), "v": list(b), "closed": str(got), "oracle": str(want)})
            if a <= b:
                other = cf(b, a)
                if got != -other:
                    bad.append({"check": "skew", "u": list(a), "v": list(b), "closed": str(got), "oracle": str(-other)})
    return bad


def _jacobi_triples(p, triples, closed_form=None):
    cf = closed_form or (lambda a, b: closed_form_bracket(p, a, b))
    table = _BracketTable(cf)
    bad = []
    for a, b, c in triples:
        j = jacobiator(table, a, b, c)
        if j:
            bad.append({"check": "jacobi", "u": list(a), "v": list(b), "w": list(c), "closed": format_terms(j, ("phi", "eps")), "oracle": "0"})
    return bad


def _chunks(seq, n):
    size = max(1, -(-len(seq) // n))
    return [seq[k : k + size] for k in range(0, len(seq), size)]


def verify_theorem(
    p: TheoremParams,
    window=(8, 8),
    r: RElement | None = None,
    closed_form: Callable | None = None,
    jacobi: bool = True,
    jacobi_window=None,
    workers: int | None = None,
    max_counterexamples: int = 200,
) -> VerificationReport:
    """Certify a closed-form bracket on every basis pair of ``window``.

    Checks, all by exact equality:

    * closed form == brute-force dualisation of ``Delta_r`` (``r`` defaults to
      the theorem's own r-matrix; pass another one to run a mutation control),
    * skew-symmetry of the closed form,
    * the Jacobi identity on every basis triple of ``jacobi_window``.
    """
    start = time.perf_counter()
    if isinstance(window, int):
        window = (window, window)
    w, h = window
    r = r or p.r_element()
    workers = workers or worker_count()
    basis = [Monomial(i, j) for i in range(w) for j in range(h)]
    if jacobi_window is None:
        jacobi_window = window
    elif isinstance(jacobi_window, int):
        jacobi_window = (jacobi_window, jacobi_window)
    jbasis = [Monomial(i, j) for i in range(jacobi_window[0]) for j in range(jacobi_window[1])]
    triples = list(itertools.combinations(jbasis, 3)) if jacobi else []

    bad: list = []
    if workers > 1 and closed_form is None:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(_compare_rows, p, r, window, rows) for rows in _chunks(basis, workers)]
            futs += [ex.submit(_jacobi_triples, p, chunk) for chunk in _chunks(triples, workers)] if triples else []
            for f in futs:
                bad.extend(f.result())
    else:
        bad.extend(_compare_rows(p, r, window, basis, closed_form))
        if triples:
            bad.extend(_jacobi_triples(p, triples, closed_form))

    report = VerificationReport(
        theorem=p.id,
        params=p.as_dict(),
        window=(w, h),
        status="fail" if bad else "pass",
        counterexamples=bad[:max_counterexamples],
        checked={"pairs": len(basis) ** 2, "triples": len(triples), "failures": len(bad)},
    )
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def verify_bialgebra_axioms(r: RElement, degree: int = 6) -> list:
    """Monomial pairs ``(f, g)`` of total degree <= ``degree`` where the cocycle identity fails."""
    from .coboundary import cobracket_r
    from .core import monomials_up_to, poisson_bracket

    monos = [Polynomial.monomial(*m) for m in monomials_up_to(degree)]
    cache = {}

    def delta(g):
        key = g
        if key not in cache:
            cache[key] = cobracket_r(g, r)
        return cache[key]

    failures = []
    for f, g in itertools.combinations_with_replacement(monos, 2):
        if not cocycle_defect(f, g, poisson_bracket, delta).is_zero():
            failures.append((f, g))
    return failures
