"""Recursive-descent parser for polynomial, functional and tensor expressions.

Grammar (whitespace is insignificant)::

    expr    := [+|-] tterm ((+|-) tterm)*
    tterm   := product ("(x)" product)*        -- tensor factors, top level only
    product := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ["^" [+|-] INT]
    atom    := INT | "x" | "y" | "phi" | "eps" | "(" expr ")"

``*`` is mandatory between factors, so ``(x)`` in operator position can only be
the tensor separator, while ``(x)`` in operand position is a parenthesised x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Polynomial, Tensor, tensor_class
from .dual import DualFunctional

PRIMAL = ("x", "y")
DUAL = ("phi", "eps")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1, expected=()):
        self.line, self.col, self.expected = line, col, tuple(sorted(expected))
        where = f"line {line}, column {col}"
        extra = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}: {message}{extra}")


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Power:
    base: object
    exp: int


@dataclass(frozen=True)
class Product:
    factors: tuple  # of (op, node), op in {"*", "/"}


@dataclass(frozen=True)
class Neg:
    expr: object


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class TensorProduct:
    factors: tuple


# -- lexer -------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    out = []
    line, col, k = 1, 1, 0
    n = len(src)
    while k < n:
        ch = src[k]
        if ch == "\n":
            line, col, k = line + 1, 1, k + 1
            continue
        if ch.isspace():
            col, k = col + 1, k + 1
            continue
        if ch.isdigit():
            e = k
            while e < n and src[e].isdigit():
                e += 1
            out.append(Token("INT", src[k:e], line, col))
            col, k = col + e - k, e
            continue
        if ch.isalpha():
            e = k
            while e < n and (src[e].isalnum() or src[e] == "_"):
                e += 1
            word = src[k:e]
            if word not in PRIMAL + DUAL:
                raise ParseError(f"unknown variable {word!r}", line, col, PRIMAL + DUAL)
            out.append(Token("NAME", word, line, col))
            col, k = col + e - k, e
            continue
        if ch in "+-*/^()":
            out.append(Token("OP", ch, line, col))
            col, k = col + 1, k + 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("END", "", line, col))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.pos = 0

    def peek(self, ahead=0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg, expected=()):
        t = self.peek()
        raise ParseError(msg, t.line, t.col, expected)

    def at_op(self, text) -> bool:
        t = self.peek()
        return t.kind == "OP" and t.text == text

    def at_tensor(self) -> bool:
        a, b, c = self.peek(), self.peek(1), self.peek(2)
        return (a.kind, a.text, b.kind, b.text, c.kind, c.text) == ("OP", "(", "NAME", "x", "OP", ")")

    def parse(self):
        node = self.expr(top=True)
        if self.peek().kind != "END":
            self.fail(f"unexpected {self.peek().text!r}", ["+", "-", "*", "/", "^", "(x)", "end of input"])
        return node

    def expr(self, top):
        terms = []
        sign = "+"
        if self.at_op("+") or self.at_op("-"):
            sign = self.next().text
        terms.append((sign, self.tterm(top)))
        while self.at_op("+") or self.at_op("-"):
            sign = self.next().text
            terms.append((sign, self.tterm(top)))
        if len(terms) == 1 and terms[0][0] == "+":
            return terms[0][1]
        return Sum(tuple(terms))

    def tterm(self, top):
        factors = [self.product()]
        while self.at_tensor():
            if not top:
                self.fail("tensor product is only allowed at top level")
            self.pos += 3
            factors.append(self.product())
        return factors[0] if len(factors) == 1 else TensorProduct(tuple(factors))

    def product(self):
        factors = [("*", self.unary())]
        while (self.at_op("*") or self.at_op("/")) and not self.at_tensor():
            op = self.next().text
            factors.append((op, self.unary()))
        return factors[0][1] if len(factors) == 1 else Product(tuple(factors))

    def unary(self):
        if self.at_op("-"):
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.next()
            sign = 1
            if self.at_op("-") or self.at_op("+"):
                sign = -1 if self.next().text == "-" else 1
            t = self.peek()
            if t.kind != "INT":
                self.fail("exponent must be an integer", ["INT"])
            self.next()
            return Power(base, sign * int(t.text))
        return base

    def atom(self):
        t = self.peek()
        if t.kind == "INT":
            self.next()
            return Num(int(t.text))
        if t.kind == "NAME":
            self.next()
            return Var(t.text)
        if self.at_op("("):
            self.next()
            node = self.expr(top=False)
            if not self.at_op(")"):
                self.fail("unbalanced parenthesis", [")"])
            self.next()
            return node
        self.fail(f"unexpected {t.text or 'end of input'!r}", ["INT", "(", *PRIMAL, *DUAL])


def parse_expr(src: str):
    """Parse ``src`` into an AST without interpreting it."""
    return _Parser(src).parse()


# -- lowering ----------------------------------------------------------------


class _Lowering:
    """Evaluates an AST to ``{key tuple: Fraction}`` plus arity, tracking the variable family."""

    def __init__(self):
        self.family = None

    def var(self, name):
        fam = PRIMAL if name in PRIMAL else DUAL
        if self.family is None:
            self.family = fam
        elif self.family != fam:
            raise ParseError("cannot mix x/y with phi/eps in one expression")
        return Polynomial({(1, 0) if name == fam[0] else (0, 1): 1}, laurent=True)

    def scalar(self, node) -> Polynomial:
        if isinstance(node, Num):
            return Polynomial.constant(node.value, laurent=True)
        if isinstance(node, Var):
            return self.var(node.name)
        if isinstance(node, Neg):
            return -self.scalar(node.expr)
        if isinstance(node, Power):
            base = self.scalar(node.base)
            if node.exp >= 0:
                return base ** node.exp
            if len(base) != 1:
                raise ParseError("negative powers are only allowed on monomials")
            (m, c), = base.items()
            e = node.exp
            return Polynomial({(m.i * e, m.j * e): Fraction(1) / c ** (-e)}, laurent=True)
        if isinstance(node, Product):
            out = Polynomial.constant(1, laurent=True)
            for op, f in node.factors:
                v = self.scalar(f)
                if op == "*":
                    out = out * v
                else:
                    if not v.is_constant() or v.is_zero():
                        raise ParseError("division is only allowed by a nonzero constant")
                    out = out.scale(1 / v.coeff(0, 0))
            return out
        if isinstance(node, Sum):
            out = Polynomial({}, laurent=True)
            for sign, t in node.terms:
                v = self.scalar(t)
                out = out - v if sign == "-" else out + v
            return out
        raise ParseError("tensor product is only allowed at top level")

    def top(self, node) -> tuple[int, dict]:
        if isinstance(node, TensorProduct):
            out = {(): Fraction(1)}
            for f in node.factors:
                v = self.scalar(f)
                out = {k + (m,): c * d for k, c in out.items() for m, d in v.items()}
            return len(node.factors), out
        if isinstance(node, Sum):
            arity, acc = None, {}
            for sign, t in node.terms:
                a, v = self.top(t)
                if arity is not None and a != arity:
                    raise ParseError("summands have different tensor arity")
                arity = a
                for k, c in v.items():
                    acc[k] = acc.get(k, 0) + (-c if sign == "-" else c)
            return arity, acc
        if isinstance(node, Neg):
            a, v = self.top(node.expr)
            return a, {k: -c for k, c in v.items()}
        v = self.scalar(node)
        return 1, {(m,): c for m, c in v.items()}


def _lower(src: str):
    low = _Lowering()
    arity, terms = low.top(parse_expr(src))
    return low.family, arity, terms


def _check_family(family, want, what):
    if family is not None and family != want:
        raise ParseError(f"{what} must use the variables {' and '.join(want)}")


def parse_poly(src: str, laurent: bool = False) -> Polynomial:
    family, arity, terms = _lower(src)
    _check_family(family, PRIMAL, "a polynomial")
    if arity != 1:
        raise ParseError("expected a polynomial, got a tensor")
    flat = {k[0]: c for k, c in terms.items() if c != 0}
    if not laurent and any(m.i < 0 or m.j < 0 for m in flat):
        raise ParseError("negative exponent outside Laurent mode")
    return Polynomial(flat, laurent)


def parse_functional(src: str) -> DualFunctional:
    """Parse a finitely supported functional in phi, eps (nonnegative powers only)."""
    family, arity, terms = _lower(src)
    _check_family(family, DUAL, "a functional")
    if arity != 1:
        raise ParseError("expected a functional, got a tensor")
    flat = {k[0]: c for k, c in terms.items() if c != 0}
    if any(m.i < 0 or m.j < 0 for m in flat):
        raise ParseError("functionals take nonnegative powers only")
    return DualFunctional(flat)


def parse_tensor(src: str, dual: bool | None = None, arity: int | None = None) -> Tensor:
    """Parse a sum of ``(x)``-separated products; ``arity`` is required to read back a zero tensor."""
    family, found, terms = _lower(src)
    if dual is None:
        dual = family == DUAL
    _check_family(family, DUAL if dual else PRIMAL, "a tensor")
    terms = {k: c for k, c in terms.items() if c != 0}
    if not terms and arity is not None:
        return tensor_class(arity, dual)({}, arity)
    if arity is not None and found != arity:
        raise ParseError(f"expected a tensor of arity {arity}, got arity {found}")
    arity = found
    if not dual and any(m.i < 0 or m.j < 0 for k in terms for m in k):
        raise ParseError("negative exponent outside Laurent mode")
    return tensor_class(arity, dual)(terms, arity)


def parse_univariate(src: str) -> list[Fraction]:
    """Coefficient list ``[c0, c1, ...]`` of a one-variable expression in x or phi."""
    family, arity, terms = _lower(src)
    if arity != 1:
        raise ParseError("expected a one-variable polynomial")
    coeffs: dict[int, Fraction] = {}
    for (m,), c in terms.items():
        if c == 0:
            continue
        if m.j != 0 or m.i < 0:
            raise ParseError("expected a polynomial in x or phi alone")
        coeffs[m.i] = coeffs.get(m.i, 0) + c
    top = max((i for i, c in coeffs.items() if c), default=-1)
    return [Fraction(coeffs.get(i, 0)) for i in range(top + 1)]
