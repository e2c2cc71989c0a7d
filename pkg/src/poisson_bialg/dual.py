"""Finitely supported functionals on Q[x, y] and the dual (co)algebra maps.

``phi^i eps^j`` is the functional dual to ``x^i y^j``.  Functionals carrying a
negative exponent are zero: constructors drop such monomials, which is what
lets the closed-form bracket formulas be written down without side cases.

The brute-force dual bracket lives here as well.  It never looks at a closed
form; it evaluates ``<[u, v], x^k y^l> = <u (x) v, Delta_r(x^k y^l)>`` cell by
cell over an exponent window.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Monomial, Polynomial, SparseElement, Tensor, poisson_bracket


class DualFunctional(SparseElement):
    __slots__ = ()
    variables = ("phi", "eps")

    def _admissible(self, m: Monomial) -> bool:
        return m.i >= 0 and m.j >= 0


class DualTensor(Tensor):
    __slots__ = ()
    dual = True


class DualTensor2(DualTensor):
    __slots__ = ()
    fixed_arity = 2


class DualTensor3(DualTensor):
    __slots__ = ()
    fixed_arity = 3


class CoeffSequence(tuple):
    """Truncated coefficient sequence ``f_0 .. f_N`` of a one-variable series."""

    def __new__(cls, values: Iterable):
        vals = tuple(Fraction(v) for v in values)
        if not vals:
            raise ValueError("a coefficient sequence needs at least one value")
        return super().__new__(cls, vals)


class GuardRingViolation(RuntimeError):
    """A brute-force bracket paired nonzero on the boundary of its window."""

    def __init__(self, u, v, cells):
        self.cells = sorted(cells)
        super().__init__(f"[{u}, {v}] pairs nonzero on guard-ring cells {self.cells[:6]}; window too small")


# -- pairings and the dual maps ---------------------------------------------


def pairing(u: DualFunctional, g: Polynomial) -> Fraction:
    if getattr(g, "laurent", False):
        raise ValueError("pairing is defined against Q[x, y]")
    return sum((c * g.coeff(*m) for m, c in u.items()), Fraction(0))


def pairing2(t, s: Tensor) -> Fraction:
    """``<t, s>`` where ``t`` is a dual 2-tensor or a pair ``(u, v)`` standing for ``u (x) v``."""
    if isinstance(t, tuple):
        u, v = t
        total = Fraction(0)
        for (a, b), c in s.items():
            total += c * u.coeff(*a) * v.coeff(*b)
        return total
    total = Fraction(0)
    for key, c in t.items():
        total += c * s.coeff(*key)
    return total


def mu_circ(u: DualFunctional) -> DualTensor2:
    """Deconcatenation coproduct, dual to polynomial multiplication."""
    out: dict = {}
    for (m, n), c in u.items():
        for k in range(m + 1):
            for l in range(n + 1):
                key = ((k, l), (m - k, n - l))
                out[key] = out.get(key, 0) + c
    return DualTensor2(out)


def _partial_circ_mono(axis: int, m) -> tuple[int, tuple]:
    i, j = m
    if axis == 1:
        return i + 1, (i + 1, j)
    return j + 1, (i, j + 1)


def partial_circ(axis: int, u: DualFunctional) -> DualFunctional:
    """Transpose of d/dx (axis 1) or d/dy (axis 2)."""
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    out: dict = {}
    for m, c in u.items():
        k, key = _partial_circ_mono(axis, m)
        out[key] = out.get(key, 0) + k * c
    return DualFunctional(out)


def delta_mu(u: DualFunctional) -> DualTensor2:
    """``(d1° (x) d2° - d2° (x) d1°) mu°(u)``, built by composing the maps."""
    out: dict = {}
    for (a, b), c in mu_circ(u).items():
        for first, second, sign in ((1, 2, 1), (2, 1, -1)):
            ka, ma = _partial_circ_mono(first, a)
            kb, mb = _partial_circ_mono(second, b)
            key = (ma, mb)
            out[key] = out.get(key, 0) + sign * c * ka * kb
    return DualTensor2(out)


def delta_closed(u: DualFunctional) -> DualTensor2:
    """Double-sum form ``sum_{k+s=m+1, l+t=n+1} (kt - ls) phi^k eps^l (x) phi^s eps^t``."""
    out: dict = {}
    for (m, n), c in u.items():
        for k in range(m + 2):
            s = m + 1 - k
            for l in range(n + 2):
                t = n + 1 - l
                w = k * t - l * s
                if w:
                    key = ((k, l), (s, t))
                    out[key] = out.get(key, 0) + c * w
    return DualTensor2(out)


# -- brute-force dual bracket --------------------------------------------------


def support_margin(r) -> int:
    return int(r.A.degree()) + int(r.B.degree()) + 2


def default_window(u: DualFunctional, v: DualFunctional, r) -> tuple[int, int]:
    """Bounding box of the supports grown by :func:`support_margin`."""
    pts = u.support() + v.support()
    wi = max((m.i for m in pts), default=0) + 1
    wj = max((m.j for m in pts), default=0) + 1
    M = support_margin(r)
    return wi + M, wj + M


def _as_box(window) -> tuple[int, int]:
    if isinstance(window, int):
        return window, window
    w, h = window
    return int(w), int(h)


def guard_ring(window) -> list[tuple[int, int]]:
    w, h = _as_box(window)
    return [(w, l) for l in range(h + 1)] + [(k, h) for k in range(w)]


class DualityOracle:
    """Brute-force transpose of ``Delta_r`` on a fixed exponent window.

    For every cell ``(k, l)`` of the window plus its guard ring the cobracket
    ``Delta_r(x^k y^l)`` is expanded once; the table is then inverted so that
    ``<[phi^a, phi^b], x^k y^l>`` can be read off for any basis pair.
    """

    def __init__(self, r, window, bracket=poisson_bracket):
        from .coboundary import cobracket_r

        self.r = r
        self.window = _as_box(window)
        w, h = self.window
        self.ring = set(guard_ring(self.window))
        cells = [(k, l) for k in range(w) for l in range(h)] + sorted(self.ring)
        table: dict = {}
        for cell in cells:
            g = Polynomial.monomial(*cell)
            for (a, b), c in cobracket_r(g, r, bracket).items():
                table.setdefault((a, b), {})[cell] = c
        self._table = table

    def basis_bracket(self, a, b) -> dict:
        """``{cell: coefficient}`` of ``[phi^a, phi^b]`` including guard cells."""
        return self._table.get((Monomial(*a), Monomial(*b)), {})

    def bracket(self, u: DualFunctional, v: DualFunctional) -> DualFunctional:
        out: dict = {}
        bad = set()
        for a, c in u.items():
            for b, d in v.items():
                for cell, e in self.basis_bracket(a, b).items():
                    out[cell] = out.get(cell, 0) + c * d * e
        for cell in self.ring:
            if out.get(cell, 0) != 0:
                bad.add(cell)
        if bad:
            raise GuardRingViolation(u, v, bad)
        return DualFunctional(out)


def dual_bracket_bruteforce(u: DualFunctional, v: DualFunctional, r, window=None, bracket=poisson_bracket) -> DualFunctional:
    """``sum_{(k,l) in window} <u (x) v, Delta_r(x^k y^l)> phi^k eps^l``.

    Raises :class:`GuardRingViolation` when the pairing is nonzero on the ring
    of cells just outside the window.
    """
    if window is None:
        window = default_window(u, v, r)
    return DualityOracle(r, window, bracket).bracket(u, v)


# -- translate spaces ----------------------------------------------------------


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    mat = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        mat.append([int(x * den) for x in row])
    if not mat:
        return 0
    ncols = len(mat[0])
    rk, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rk, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        p = mat[rk]
        for i in range(rk + 1, len(mat)):
            row = mat[i]
            mat[i] = [(p[col] * row[c] - row[col] * p[c]) // prev for c in range(ncols)]
        prev = p[col]
        rk += 1
        if rk == len(mat):
            break
    return rk


def translate(u: DualFunctional, a: Polynomial, action: str) -> DualFunctional:
    """``u . a`` with ``(u . a)(b) = u(ab)`` (product) or ``u([a, b])`` (poisson)."""
    pts = u.support()
    top_i = max((m.i for m in pts), default=0) + 2
    top_j = max((m.j for m in pts), default=0) + 2
    out = {}
    for p in range(top_i):
        for q in range(top_j):
            b = Polynomial.monomial(p, q)
            val = a * b if action == "product" else poisson_bracket(a, b)
            c = pairing(u, val)
            if c:
                out[(p, q)] = c
    return DualFunctional(out)


def translate_space_dim(u: DualFunctional, action: str, window) -> int:
    """Dimension of ``span{u . x^i y^j : (i, j) in window}``."""
    if action not in ("product", "poisson"):
        raise ValueError("action must be 'product' or 'poisson'")
    w, h = _as_box(window)
    rows = [translate(u, Polynomial.monomial(i, j), action) for i in range(w) for j in range(h)]
    cols = sorted({m for f in rows for m in f.support()})
    return rank([[f.coeff(*m) for m in cols] for f in rows])


# -- rational generating functions -------------------------------------------------


def _coeff_list(p) -> list[Fraction]:
    if isinstance(p, SparseElement):
        if any(m.j != 0 for m in p.support()):
            raise ValueError("expected a polynomial in one variable")
        top = max((m.i for m in p.support()), default=-1)
        return [p.coeff(i, 0) for i in range(top + 1)]
    return [Fraction(c) for c in p]


def rational_series_coeffs(g, h, N: int) -> CoeffSequence:
    """First ``N + 1`` power-series coefficients of ``g / h`` by exact long division."""
    g, h = _coeff_list(g), _coeff_list(h)
    if not h or h[0] == 0:
        raise ValueError("h(0) must be nonzero")
    f: list[Fraction] = []
    for n in range(N + 1):
        acc = g[n] if n < len(g) else Fraction(0)
        for i in range(1, min(n, len(h) - 1) + 1):
            acc -= h[i] * f[n - i]
        f.append(acc / h[0])
    return CoeffSequence(f)


def satisfies_recurrence(seq: Sequence, h: Sequence) -> bool:
    """``f_n = h_1 f_{n-1} + ... + h_r f_{n-r}`` for every ``r < n <= N``."""
    r = len(h)
    if len(seq) <= r:
        raise ValueError("sequence must be longer than the recurrence order")
    hs = [Fraction(c) for c in h]
    f = [Fraction(c) for c in seq]
    return all(f[n] == sum(hs[i - 1] * f[n - i] for i in range(1, r + 1)) for n in range(r + 1, len(f)))


def recurrence_of_rational(g, h) -> list[Fraction]:
    """Recurrence ``(h_1..h_r)`` obeyed by the coefficients of ``g / h``.

    The order is ``max(deg h, deg g)`` so that every ``n > r`` lies past the
    numerator.
    """
    g, h = _coeff_list(g), _coeff_list(h)
    if not h or h[0] == 0:
        raise ValueError("h(0) must be nonzero")
    r = max(len(h) - 1, len(g) - 1, 0)
    return [-(h[i] if i < len(h) else 0) / h[0] for i in range(1, r + 1)]


def rational_of_recurrence(initial: Sequence, h: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """``(g, h)`` whose expansion starts with ``initial`` (``r + 1`` values) and then follows ``h``."""
    r = len(h)
    if len(initial) != r + 1:
        raise ValueError("need exactly r + 1 initial values")
    den = [Fraction(1)] + [-Fraction(c) for c in h]
    f = [Fraction(c) for c in initial]
    num = [sum(den[i] * f[n - i] for i in range(min(n, r) + 1)) for n in range(r + 1)]
    return num, den
