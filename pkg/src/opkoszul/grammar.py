"""Text grammar for user-supplied presentations.

``relations := rel (';' rel)*``.  A set relation is a chain
``term '=' term ('=' term)*`` over plain products of the letters a, b, c,
e.g. ``(ab)c = (ba)c``.  A linear relation is a signed rational combination
of polarized terms built with ``[x,y]`` (antisymmetric) and ``x.y``
(symmetric), equated to 0 or to another combination, e.g.
``[a,[b,c]] = 0; [a,b].c = 0``.  Whitespace is insignificant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

# AST nodes for terms: ("leaf", i), ("app", op, left, right) with op one of
# "x" (plain product), "sym" (dot), "skew" (bracket)
LETTER_INDEX = {"a": 1, "b": 2, "c": 3}


@dataclass(frozen=True)
class SetRelations:
    pairs: tuple  # pairs of TreeMonomial


@dataclass(frozen=True)
class LinearRelations:
    vectors: tuple  # vectors over the 12-monomial basis, as coefficient tuples


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.text, self.pos)
        self.pos += 1

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)


def _parse_atom(s: _Scanner):
    ch = s.peek()
    if ch == "(":
        s.take("(")
        node = _parse_product(s)
        s.take(")")
        return node
    if ch == "[":
        s.take("[")
        left = _parse_product(s)
        s.take(",")
        right = _parse_product(s)
        s.take("]")
        return ("app", "skew", left, right)
    if ch in LETTER_INDEX:
        s.pos += 1
        return ("leaf", LETTER_INDEX[ch])
    s.error("expected a term")


def _parse_product(s: _Scanner):
    node = _parse_atom(s)
    while True:
        ch = s.peek()
        if ch == ".":
            s.take(".")
            node = ("app", "sym", node, _parse_atom(s))
        elif ch in LETTER_INDEX or ch in "([":
            node = ("app", "x", node, _parse_atom(s))
        else:
            return node


def _parse_rational(s: _Scanner) -> Fraction:
    s.skip_ws()
    start = s.pos
    while s.pos < len(s.text) and s.text[s.pos].isdigit():
        s.pos += 1
    if s.pos == start:
        s.error("expected a number")
    num = int(s.text[start : s.pos])
    if s.peek() == "/":
        s.take("/")
        s.skip_ws()
        dstart = s.pos
        while s.pos < len(s.text) and s.text[s.pos].isdigit():
            s.pos += 1
        if s.pos == dstart:
            s.error("expected a denominator")
        return Fraction(num, int(s.text[dstart : s.pos]))
    return Fraction(num)


def _parse_combination(s: _Scanner):
    """A signed sum of (coefficient, term) items, or the literal 0."""
    items = []
    sign = Fraction(1)
    first = True
    while True:
        ch = s.peek()
        if ch == "-":
            s.take("-")
            sign = Fraction(-1)
        elif ch == "+":
            s.take("+")
            sign = Fraction(1)
        elif not first:
            return items
        coeff = sign
        ch = s.peek()
        if ch.isdigit():
            coeff = sign * _parse_rational(s)
            if s.peek() == "*":
                s.take("*")
            elif s.peek() not in LETTER_INDEX and s.peek() not in "([":
                # a bare number: only 0 is meaningful, as the zero combination
                if coeff != 0:
                    s.error("a bare number other than 0 is not a relation side")
                first = False
                sign = Fraction(1)
                continue
        items.append((coeff, _parse_atom_chain(s)))
        first = False
        sign = Fraction(1)


def _parse_atom_chain(s: _Scanner):
    return _parse_product(s)


def term_uses_each_letter_once(node) -> bool:
    seen = []

    def walk(v):
        if v[0] == "leaf":
            seen.append(v[1])
        else:
            walk(v[2])
            walk(v[3])

    walk(node)
    return sorted(seen) == [1, 2, 3]


def term_is_plain(node) -> bool:
    if node[0] == "leaf":
        return True
    return node[1] == "x" and term_is_plain(node[2]) and term_is_plain(node[3])


def plain_term_to_tree(node):
    if node[0] == "leaf":
        return node[1]
    return (plain_term_to_tree(node[2]), plain_term_to_tree(node[3]))


def parse_relations(text: str):
    """Parse the full grammar; returns a list of relation records, one per
    ';'-separated relation: ('set', [(term, term), ...]) for chains of plain
    terms, ('linear', [combination, ...]) otherwise."""
    out = []
    s = _Scanner(text)
    while True:
        sides = [_parse_combination(s)]
        while s.peek() == "=":
            s.take("=")
            sides.append(_parse_combination(s))
        if len(sides) < 2:
            s.error("expected '=' in relation")
        plain = all(
            len(side) == 1 and side[0][0] == 1 and term_is_plain(side[0][1])
            for side in sides
        )
        for side in sides:
            for _, term in side:
                if not term_uses_each_letter_once(term):
                    s.error("each term must use each of a, b, c exactly once")
        out.append(("set" if plain else "linear", sides))
        if s.peek() == ";":
            s.take(";")
            continue
        s.skip_ws()
        if s.pos != len(s.text):
            s.error("unexpected input")
        return out
