"""Canonical text form of sparse elements and tensors.

The output is accepted by :mod:`poisson_bialg.parser`; ``parse(fmt(e)) == e``.
"""

from __future__ import annotations

from fractions import Fraction

from .core import grlex_key, tensor_key

TENSOR_SEP = " (x) "


def _coeff_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(m, variables=("x", "y")) -> str:
    """``x^2*y``; the empty monomial prints as ``""``."""
    parts = []
    for name, e in zip(variables, m):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _signed_terms(items, render) -> str:
    chunks = []
    for n, (key, c) in enumerate(items):
        body = render(key)
        mag = abs(c)
        if not body:
            text = _coeff_str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{_coeff_str(mag)}*{body}"
        if n == 0:
            chunks.append(("-" if c < 0 else "") + text)
        else:
            chunks.append((" - " if c < 0 else " + ") + text)
    return "".join(chunks) if chunks else "0"


def format_terms(terms: dict, variables=("x", "y")) -> str:
    items = sorted(terms.items(), key=lambda kv: grlex_key(kv[0]))
    return _signed_terms(items, lambda m: format_monomial(m, variables))


def format_tensor(terms: dict, variables=("x", "y")) -> str:
    items = sorted(terms.items(), key=lambda kv: tensor_key(kv[0]))

    def render(key):
        # a unit first factor still needs a placeholder so the separator has a left side
        slots = [format_monomial(m, variables) or "1" for m in key]
        first = format_monomial(key[0], variables)
        if not first:
            return "\x00" + TENSOR_SEP.join(slots[1:])
        return TENSOR_SEP.join(slots)

    text = _signed_terms(items, render)
    # unit first factor: "2*\x00..." -> "2 (x) ...", bare "\x00..." -> "1 (x) ..."
    text = text.replace("*\x00", TENSOR_SEP).replace("\x00", "1" + TENSOR_SEP)
    return text
