"""Parsing of element literals such as ``(1/2 + z) E[1,0] x[1,-1] t[0,1,0,1] - 3 d[0,0,0,1]``.

A literal is a signed sum of terms.  Each term is an optional coefficient
(a rational ``3/2`` or a parenthesised scalar ``(1/2 + z^3)``, optionally
followed by ``*``) and a product of bracketed factors; a bare coefficient or
``1`` denotes the identity.  Factor names are checked by the caller.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import CyclotomicField, Scalar, parse_scalar

_FACTOR = re.compile(r"([A-Za-z])\s*\[\s*([^\]]*)\]")
_NUMBER = re.compile(r"\d+(?:/\d+)?")


def parse_terms(field: CyclotomicField, text: str) -> list[tuple[Scalar, dict[str, tuple[int, ...]]]]:
    s = text.strip()
    if not s:
        raise ValueError("empty element literal")
    pos = 0
    terms = []
    n = len(s)

    def skip_ws(p):
        while p < n and s[p].isspace():
            p += 1
        return p

    first = True
    while True:
        pos = skip_ws(pos)
        if pos >= n:
            break
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos = skip_ws(pos + 1)
        elif not first:
            raise ValueError(f"expected '+' or '-' at position {pos} in {text!r}")
        first = False
        coef = field.one
        have_coef = False
        if pos < n and s[pos] == "(":
            depth, end = 0, pos
            while end < n:
                if s[end] == "(":
                    depth += 1
                elif s[end] == ")":
                    depth -= 1
                    if depth == 0:
                        break
                end += 1
            if end >= n:
                raise ValueError(f"unbalanced parenthesis in {text!r}")
            coef = parse_scalar(field, s[pos + 1 : end])
            pos = end + 1
            have_coef = True
        else:
            m = _NUMBER.match(s, pos)
            if m:
                coef = field.rational(Fraction(m.group()))
                pos = m.end()
                have_coef = True
        pos = skip_ws(pos)
        if have_coef and pos < n and s[pos] == "*":
            pos = skip_ws(pos + 1)
        factors: dict[str, tuple[int, ...]] = {}
        while pos < n:
            m = _FACTOR.match(s, pos)
            if not m:
                break
            name = m.group(1)
            if name in factors:
                raise ValueError(f"factor {name}[...] repeats in one term of {text!r}")
            body = m.group(2).strip()
            factors[name] = tuple(int(x) for x in body.split(",")) if body else ()
            pos = skip_ws(m.end())
        if not have_coef and not factors:
            raise ValueError(f"cannot parse term at position {pos} in {text!r}")
        terms.append((coef * sign, factors))
    return terms


def format_coefficient(c: Scalar, first: bool) -> tuple[str, str]:
    """Return (joiner, coefficient prefix) for a term with coefficient ``c``."""
    if c.is_rational():
        q = c.as_fraction()
        neg = q < 0
        mag = abs(q)
        body = "" if mag == 1 else f"{mag} "
        if first:
            return ("-" if neg else ""), body
        return (" - " if neg else " + "), body
    return ("" if first else " + "), f"({c}) "
