"""Formula trees over {atom, !, &, |, X, F, U} and their text syntax.

Cost is the node count.  Text syntax precedence, tightest first:
{!, X, F} > U > & > |, with U right-associative.  The printer emits the
fewest parentheses that re-parse to the identical tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .traces import Alphabet


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    index: int


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class Next(Formula):
    child: Formula


@dataclass(frozen=True)
class Future(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


#: All operator names accepted in configuration, in canonical order.
OPERATOR_NAMES = ("not", "next", "future", "and", "until", "or")

#: Default enumeration grammar: disjunction is off unless asked for.
DEFAULT_OPERATORS = ("not", "next", "future", "and", "until")


def cost(f: Formula) -> int:
    """Node count of the formula tree."""
    if isinstance(f, Atom):
        return 1
    if isinstance(f, (Not, Next, Future)):
        return 1 + cost(f.child)
    return 1 + cost(f.left) + cost(f.right)


_PREC_UNARY = 4
_PREC_UNTIL = 3
_PREC_AND = 2
_PREC_OR = 1


def to_text(f: Formula, alphabet: Alphabet) -> str:
    """Render with minimal parentheses; ``parse_formula`` inverts this."""

    def render(g: Formula, floor: int) -> str:
        if isinstance(g, Atom):
            return alphabet.names[g.index]
        if isinstance(g, Not):
            return "!" + render(g.child, _PREC_UNARY)
        if isinstance(g, Next):
            return "X " + render(g.child, _PREC_UNARY)
        if isinstance(g, Future):
            return "F " + render(g.child, _PREC_UNARY)
        if isinstance(g, Until):
            # right-associative: the left operand needs the strictly tighter level
            s = render(g.left, _PREC_UNTIL + 1) + " U " + render(g.right, _PREC_UNTIL)
            return "(" + s + ")" if floor > _PREC_UNTIL else s
        if isinstance(g, And):
            s = render(g.left, _PREC_AND) + " & " + render(g.right, _PREC_AND + 1)
            return "(" + s + ")" if floor > _PREC_AND else s
        if isinstance(g, Or):
            s = render(g.left, _PREC_OR) + " | " + render(g.right, _PREC_OR + 1)
            return "(" + s + ")" if floor > _PREC_OR else s
        raise TypeError(f"not a formula node: {g!r}")

    return render(f, 0)


class FormulaSyntaxError(ValueError):
    """Unparseable formula text; ``position`` is the 0-based char offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at offset {position}")


_TOKEN_RE = re.compile(r"\s*(?:([!&|()])|([A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    # token kinds: sym, kw (X/F/U), atom, end
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            at = len(text) - len(stripped)
            if not stripped:
                break
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", at)
        if m.group(1):
            tokens.append(("sym", m.group(1), m.start(1)))
        else:
            word = m.group(2)
            kind = "kw" if word in ("X", "F", "U") else "atom"
            tokens.append((kind, word, m.start(2)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_formula(text: str, alphabet: Alphabet) -> Formula:
    """Parse formula text; atom names must belong to ``alphabet``."""
    tokens = _tokenize(text)
    idx = 0

    def peek() -> tuple[str, str, int]:
        return tokens[idx]

    def advance() -> tuple[str, str, int]:
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_or() -> Formula:
        node = parse_and()
        while peek()[:2] == ("sym", "|"):
            advance()
            node = Or(node, parse_and())
        return node

    def parse_and() -> Formula:
        node = parse_until()
        while peek()[:2] == ("sym", "&"):
            advance()
            node = And(node, parse_until())
        return node

    def parse_until() -> Formula:
        node = parse_unary()
        if peek()[:2] == ("kw", "U"):
            advance()
            return Until(node, parse_until())
        return node

    def parse_unary() -> Formula:
        kind, value, pos = peek()
        if (kind, value) == ("sym", "!"):
            advance()
            return Not(parse_unary())
        if (kind, value) == ("kw", "X"):
            advance()
            return Next(parse_unary())
        if (kind, value) == ("kw", "F"):
            advance()
            return Future(parse_unary())
        if (kind, value) == ("sym", "("):
            advance()
            node = parse_or()
            kind, value, pos = peek()
            if (kind, value) != ("sym", ")"):
                raise FormulaSyntaxError("expected ')'", pos)
            advance()
            return node
        if kind == "atom":
            advance()
            try:
                return Atom(alphabet.index(value))
            except Exception:
                raise FormulaSyntaxError(f"unknown atom {value!r}", pos) from None
        what = "end of input" if kind == "end" else repr(value)
        raise FormulaSyntaxError(f"expected formula, found {what}", pos)

    node = parse_or()
    kind, value, pos = peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected {value!r}", pos)
    return node
