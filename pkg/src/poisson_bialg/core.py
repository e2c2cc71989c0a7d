"""Exact sparse bivariate polynomials, tensors and the primal Lie brackets.

Everything here is immutable and exact: coefficients are
:class:`fractions.Fraction`, exponents are Python ints.  A polynomial is a
finitely supported map ``(i, j) -> c`` meaning ``sum c * x^i * y^j``; tensors
map tuples of exponent pairs to coefficients.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple


class Monomial(NamedTuple):
    i: int
    j: int

    @property
    def degree(self) -> int:
        return self.i + self.j


def grlex_key(m) -> tuple:
    """Graded lexicographic sort key: total degree, then i, then j."""
    return (m[0] + m[1], m[0], m[1])


def tensor_key(key) -> tuple:
    return tuple(grlex_key(m) for m in key)


class _NegInf:
    """Degree of the zero polynomial.  Compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class SparseElement:
    """Shared machinery for finitely supported linear combinations of monomials.

    Subclasses decide what a monomial means (``x^i y^j`` or ``phi^i eps^j``)
    and which exponents are admissible.
    """

    __slots__ = ("_terms", "_hash")
    variables = ("x", "y")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = _frac(c)
            if c == 0:
                continue
            m = Monomial(int(m[0]), int(m[1]))
            if not self._admissible(m):
                continue
            clean[m] = clean.get(m, 0) + c
        self._terms = {m: c for m, c in sorted(clean.items(), key=lambda kv: grlex_key(kv[0])) if c != 0}
        self._hash = None

    def _admissible(self, m: Monomial) -> bool:
        return True

    def _new(self, terms):
        return type(self)(terms)

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1):
        return cls({(i, j): coeff})

    @classmethod
    def zero(cls):
        return cls({})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def support(self) -> list[Monomial]:
        return list(self._terms)

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def _coerce(self, other):
        if isinstance(other, SparseElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self._new({(0, 0): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _frac(c)
        return self._new({m: c * v for m, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._new({(0, 0): other})
        if not isinstance(other, SparseElement):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __str__(self):
        from .printing import format_terms

        return format_terms(self._terms, self.variables)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class Polynomial(SparseElement):
    """Element of Q[x, y], or of Q[x^±1, y^±1] when ``laurent`` is set.

    Non-Laurent polynomials reject negative exponents at construction.
    """

    __slots__ = ("laurent",)

    def __init__(self, terms: Mapping | None = None, laurent: bool = False):
        self.laurent = laurent
        if not laurent:
            for m, c in (terms or {}).items():
                if (m[0] < 0 or m[1] < 0) and c != 0:
                    raise ValueError(f"negative exponent {tuple(m)} in a non-Laurent polynomial")
        super().__init__(terms)

    def _new(self, terms):
        return Polynomial(terms, self.laurent)

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1, laurent: bool = False):
        return cls({(i, j): coeff}, laurent)

    @classmethod
    def constant(cls, c, laurent: bool = False):
        return cls({(0, 0): c}, laurent)

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    def _coerce(self, other):
        other = super()._coerce(other)
        if isinstance(other, Polynomial) and other.laurent != self.laurent:
            if self.laurent:
                return Polynomial(other._terms, True)
            raise ValueError("cannot mix Laurent and non-Laurent polynomials")
        return other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        out = Polynomial.constant(1, self.laurent)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def degree(self):
        """Total degree; :data:`NEG_INF` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(m.i + m.j for m in self._terms)

    def to_laurent(self) -> "Polynomial":
        return Polynomial(self._terms, True)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)


# --------------------------------------------------------------------------
# tensors


class Tensor:
    """Finitely supported element of A^{(x)n}, keys are n-tuples of monomials."""

    __slots__ = ("_terms", "arity", "_hash")
    dual = False
    fixed_arity: int | None = None

    def __init__(self, terms: Mapping | None = None, arity: int | None = None):
        arity = arity if arity is not None else self.fixed_arity
        clean = {}
        for key, c in (terms or {}).items():
            c = _frac(c)
            if c == 0:
                continue
            key = tuple(Monomial(int(m[0]), int(m[1])) for m in key)
            if arity is None:
                arity = len(key)
            if len(key) != arity:
                raise ValueError(f"tensor key {key} does not have arity {arity}")
            if not self._admissible(key):
                continue
            clean[key] = clean.get(key, 0) + c
        if arity is None:
            raise ValueError("arity of an empty tensor must be given")
        self.arity = arity
        self._terms = {k: c for k, c in sorted(clean.items(), key=lambda kv: tensor_key(kv[0])) if c != 0}
        self._hash = None

    def _admissible(self, key) -> bool:
        if self.dual:
            return all(m.i >= 0 and m.j >= 0 for m in key)
        return True

    def _new(self, terms, arity=None):
        arity = self.arity if arity is None else arity
        return tensor_class(arity, self.dual)(terms, arity)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return iter(self._terms.items())

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, *key) -> Fraction:
        return self._terms.get(tuple(key), Fraction(0))

    def _check(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if other.arity != self.arity:
            raise ValueError("tensor arities differ")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = _frac(c)
        return self._new({k: c * v for k, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def permute(self, perm: tuple[int, ...]) -> "Tensor":
        """Return the tensor whose slot ``n`` holds old slot ``perm[n]``."""
        return self._new({tuple(k[p] for p in perm): c for k, c in self._terms.items()})

    def swap(self) -> "Tensor":
        if self.arity != 2:
            raise ValueError("swap is defined on 2-tensors")
        return self.permute((1, 0))

    def cyclic(self) -> "Tensor":
        """Cyclic slot rotation a(x)b(x)c -> c(x)a(x)b."""
        n = self.arity
        return self.permute(tuple((s - 1) % n for s in range(n)))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, tuple(self._terms.items())))
        return self._hash

    def __str__(self):
        from .printing import format_tensor

        return format_tensor(self._terms, ("phi", "eps") if self.dual else ("x", "y"))

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class Tensor2(Tensor):
    __slots__ = ()
    fixed_arity = 2


class Tensor3(Tensor):
    __slots__ = ()
    fixed_arity = 3


def tensor_class(arity: int, dual: bool = False):
    if dual:
        from . import dual as _dual

        return {2: _dual.DualTensor2, 3: _dual.DualTensor3}.get(arity, _dual.DualTensor)
    return {2: Tensor2, 3: Tensor3}.get(arity, Tensor)


def tensor(*factors: SparseElement) -> Tensor:
    """Outer product ``f1 (x) f2 (x) ...`` of sparse elements."""
    dual = any(getattr(f, "variables", None) == ("phi", "eps") for f in factors)
    out: dict = {(): Fraction(1)}
    for f in factors:
        nxt: dict = {}
        for key, c in out.items():
            for m, d in f.items():
                k = key + (m,)
                nxt[k] = nxt.get(k, 0) + c * d
        out = nxt
    return tensor_class(len(factors), dual)(out, len(factors))


# --------------------------------------------------------------------------
# arithmetic and derivations


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.laurent != g.laurent:
        raise ValueError("cannot multiply Laurent and non-Laurent polynomials")
    out: dict = {}
    for (a, b), c in f.items():
        for (p, q), d in g.items():
            k = (a + p, b + q)
            out[k] = out.get(k, 0) + c * d
    return Polynomial(out, f.laurent)


class DerivationSpec(enum.Enum):
    """The four derivations of Q[x^±1, y^±1] used as bracket ingredients."""

    D_X = "d/dx"
    D_Y = "d/dy"
    X_D_X = "x*d/dx"
    Y_D_Y = "y*d/dy"

    def apply_monomial(self, i: int, j: int) -> tuple[int, Monomial]:
        if self is DerivationSpec.D_X:
            return i, Monomial(i - 1, j)
        if self is DerivationSpec.D_Y:
            return j, Monomial(i, j - 1)
        if self is DerivationSpec.X_D_X:
            return i, Monomial(i, j)
        return j, Monomial(i, j)

    def commutes_with(self, other: "DerivationSpec") -> bool:
        pair = {self, other}
        return pair <= {DerivationSpec.D_X, DerivationSpec.D_Y} or pair <= {
            DerivationSpec.X_D_X,
            DerivationSpec.Y_D_Y,
        }


def partial(f: Polynomial, d: DerivationSpec) -> Polynomial:
    out: dict = {}
    for (i, j), c in f.items():
        k, m = d.apply_monomial(i, j)
        if k:
            out[m] = out.get(m, 0) + k * c
    return Polynomial(out, f.laurent)


def derivation_bracket(f: Polynomial, g: Polynomial, d1: DerivationSpec, d2: DerivationSpec) -> Polynomial:
    """``d1(f) d2(g) - d2(f) d1(g)`` for a commuting pair of derivations."""
    if not d1.commutes_with(d2):
        raise ValueError(f"derivations {d1.value} and {d2.value} do not commute")
    return partial(f, d1) * partial(g, d2) - partial(f, d2) * partial(g, d1)


def poisson_bracket(f: Polynomial, g: Polynomial) -> Polynomial:
    """Jacobian bracket ``f_x g_y - f_y g_x`` on Q[x, y]."""
    if f.laurent or g.laurent:
        raise ValueError("the Jacobian bracket is defined on Q[x, y] only")
    return derivation_bracket(f, g, DerivationSpec.D_X, DerivationSpec.D_Y)


def euler_bracket(f: Polynomial, g: Polynomial) -> Polynomial:
    """Bracket from the Euler pair ``x d/dx, y d/dy`` (Virasoro-like on Laurent monomials)."""
    return derivation_bracket(f, g, DerivationSpec.X_D_X, DerivationSpec.Y_D_Y)


def virasoro_like_bracket(alpha, beta) -> tuple[Fraction, tuple[int, int]]:
    """``[L_a, L_b] = (a1*b2 - b1*a2) L_{a+b}`` on the lattice Z^2."""
    a1, a2 = alpha
    b1, b2 = beta
    return Fraction(a1 * b2 - b1 * a2), (a1 + b1, a2 + b2)


Bracket = Callable[[Polynomial, Polynomial], Polynomial]


def leibniz_defect(a: Polynomial, b: Polynomial, c: Polynomial, bracket: Bracket = poisson_bracket) -> Polynomial:
    return bracket(a, b * c) - bracket(a, b) * c - b * bracket(a, c)


def jacobi_defect(a, b, c, bracket: Bracket = poisson_bracket):
    return bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))


def monomials_up_to(degree: int) -> Iterable[Monomial]:
    """All monomials x^i y^j with i, j >= 0 and i + j <= degree, in grlex order."""
    for d in range(degree + 1):
        for i in range(d + 1):
            yield Monomial(i, d - i)
