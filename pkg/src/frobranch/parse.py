"""Text grammars shared by the library and the CLI.

Three inputs are parsed: univariate polynomials in t (field moduli),
multivariate homogeneous polynomials over a declared variable list
(relations and ideal generators), and semigroup generator lists.  All
errors carry the offending position.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ParseError
from .ffield import Field, UniPoly
from .graded import HomogPoly
from .semigroup import AffineSemigroup


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            raise ParseError(self.pos, f"'{ch}'")

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError(start, "a decimal integer")
        return int(self.text[start : self.pos])

    def identifier(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            raise ParseError(start, "an identifier")
        return self.text[start : self.pos]

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_terms(text: str, var_names: Sequence[str]):
    """Sum of terms; a term is integer and variable-power factors with
    optional '*' separators.  Yields (position, sign*coeff, exponent mono)."""
    cur = _Cursor(text)
    index = {v: i for i, v in enumerate(var_names)}
    out = []
    first = True
    while not cur.done():
        term_pos = cur.pos
        sign = 1
        if cur.take("-"):
            sign = -1
        elif cur.take("+"):
            if first:
                raise ParseError(term_pos, "a term, not a leading '+'")
        elif not first:
            raise ParseError(cur.pos, "'+' or '-' between terms")
        first = False
        cur.skip_ws()
        term_pos = cur.pos  # point at the term body, past any sign
        coeff = None
        expo = [0] * len(var_names)
        saw_factor = False
        by_length = sorted(var_names, key=len, reverse=True)
        while True:
            cur.skip_ws()
            ch = cur.peek()
            if ch.isdigit():
                k = cur.integer()
                coeff = k if coeff is None else coeff * k
                saw_factor = True
            elif ch.isalpha() or ch == "_":
                pos = cur.pos
                name = next(
                    (v for v in by_length if cur.text.startswith(v, pos)), None
                )
                if name is None:
                    raise ParseError(pos, f"one of the declared variables {list(var_names)}")
                cur.pos = pos + len(name)
                k = 1
                if cur.take("^"):
                    k = cur.integer()
                    if k < 1:
                        raise ParseError(cur.pos, "an exponent >= 1")
                expo[index[name]] += k
                saw_factor = True
            else:
                break
            if not cur.take("*"):
                cur.skip_ws()
                nxt = cur.peek()
                if not (nxt.isalnum() or nxt == "_"):
                    break
        if not saw_factor:
            raise ParseError(cur.pos, "a coefficient or a variable")
        out.append((term_pos, sign * (1 if coeff is None else coeff), tuple(expo)))
    if not out:
        raise ParseError(0, "a nonempty polynomial")
    return out


def parse_unipoly(text: str, field: Field) -> UniPoly:
    """Univariate polynomial in t over the given field."""
    terms = _parse_terms(text, ("t",))
    top = max(m[0] for _, _, m in terms)
    coeffs = [0] * (top + 1)
    for _, c, m in terms:
        coeffs[m[0]] += c
    return UniPoly.from_ints(field, coeffs)


def parse_homog(text: str, field: Field, var_names: Sequence[str]) -> HomogPoly:
    """Homogeneous polynomial over the declared variables; mixed degrees are
    rejected with the offending term."""
    terms = _parse_terms(text, var_names)
    degree = sum(terms[0][2])
    coeffs: dict = {}
    for pos, c, m in terms:
        if sum(m) != degree:
            end = len(text)
            for i in range(pos + 1, len(text)):
                if text[i] in "+-":
                    end = i
                    break
            raise ParseError(
                pos,
                f"a term of degree {degree}; term '{text[pos:end].strip()}' has degree {sum(m)}",
            )
        coeffs[m] = coeffs.get(m, 0) + c
    return HomogPoly(field, len(var_names), degree, {m: field.from_int(c) for m, c in coeffs.items()})


def parse_vector_list(text: str, n: int, offset: int = 0) -> list[tuple[int, ...]]:
    """Semicolon-separated vectors, each a comma-list of n integers."""
    cur = _Cursor(text)
    vectors = []
    while True:
        vec = [cur.integer()]
        while cur.take(","):
            vec.append(cur.integer())
        if len(vec) != n:
            raise ParseError(offset + cur.pos, f"a vector of {n} coordinates, got {len(vec)}")
        vectors.append(tuple(vec))
        if not cur.take(";"):
            break
    if not cur.done():
        raise ParseError(offset + cur.pos, "';' or end of input")
    return vectors


def parse_semigroup(text: str) -> AffineSemigroup:
    """Semigroup generators: `n: v1; v2; ...` with comma-separated
    coordinates, or the numerical shorthand `a,b,c` (dimension 1)."""
    cur = _Cursor(text)
    if ":" in text:
        n = cur.integer()
        if n < 1:
            raise ParseError(0, "an ambient dimension >= 1")
        cur.expect(":")
        vectors = parse_vector_list(text[cur.pos :], n, offset=cur.pos)
    else:
        # numerical shorthand: commas (or semicolons) between single integers
        vals = [cur.integer()]
        while cur.take(",") or cur.take(";"):
            vals.append(cur.integer())
        if not cur.done():
            raise ParseError(cur.pos, "',' or end of input")
        vectors = [(v,) for v in vals]
    try:
        return AffineSemigroup(vectors)
    except ValueError as exc:
        raise ParseError(0, f"valid generators ({exc})") from exc
