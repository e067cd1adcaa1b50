"""Formula syntax: AST nodes, parser, printer and structural measures.

Concrete syntax (loosest to tightest binding)::

    <->   right associative
    ->    right associative
    |     left associative
    &     left associative
    ~ []  prefix; ``B`` is accepted for ``[]``

Atoms are ``[a-z][a-z0-9_]*``. ``#`` starts a comment that runs to the end of
the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Atom",
    "Not",
    "And",
    "Or",
    "Implies",
    "Iff",
    "Box",
    "Formula",
    "ParseError",
    "parse",
    "to_text",
    "subformulas",
    "modal_depth",
    "atoms",
    "connectives",
    "node_count",
]

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*")


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not:
    operand: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Box:
    operand: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


Formula = Union[Atom, Not, Box, And, Or, Implies, Iff]

UNARY = (Not, Box)
BINARY = (And, Or, Implies, Iff)


def children(f: Formula) -> tuple:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, UNARY):
        return (f.operand,)
    return (f.left, f.right)


# ---------------------------------------------------------------------------
# Parsing


class ParseError(ValueError):
    """Malformed formula text.

    ``offset`` is a byte offset into the UTF-8 encoding of the input and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, text: str, index: int, expected):
        self.text = text
        self.offset = len(text[:index].encode("utf-8"))
        self.expected = frozenset(expected)
        found = text[index:index + 1] or "end of input"
        super().__init__(
            f"syntax error at byte {self.offset}: found {found!r}, "
            f"expected one of {', '.join(sorted(self.expected))}"
        )


_TOKEN_RE = re.compile(r"<->|->|\[\]|[~&|()B]|[a-z][a-z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            nl = text.find("\n", i)
            i = n if nl < 0 else nl + 1
            continue
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(text, i, {"~", "[]", "B", "(", "<atom>", "&", "|", "->", "<->", ")"})
        tok = m.group()
        kind = "atom" if tok[0].islower() else tok
        tokens.append((kind, tok, i))
        i = m.end()
    tokens.append(("eof", "", n))
    return tokens


_PRIMARY_START = {"~", "[]", "B", "(", "<atom>"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected):
        raise ParseError(self.text, self.tokens[self.pos][2], expected)

    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        operands = [self.impl()]
        while self.peek() == "<->":
            self.advance()
            operands.append(self.impl())
        result = operands.pop()
        while operands:
            result = Iff(operands.pop(), result)
        return result

    def impl(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.advance()
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        result = self.conj()
        while self.peek() == "|":
            self.advance()
            result = Or(result, self.conj())
        return result

    def conj(self) -> Formula:
        result = self.unary()
        while self.peek() == "&":
            self.advance()
            result = And(result, self.unary())
        return result

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "~":
            self.advance()
            return Not(self.unary())
        if kind in ("[]", "B"):
            self.advance()
            return Box(self.unary())
        if kind == "atom":
            return Atom(self.advance()[1])
        if kind == "(":
            self.advance()
            inner = self.formula()
            if self.peek() != ")":
                self.fail({")", "&", "|", "->", "<->"})
            self.advance()
            return inner
        self.fail(_PRIMARY_START)


def parse(text: str) -> Formula:
    """Parse ``text`` into a formula, raising :class:`ParseError` if malformed."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    p = _Parser(text)
    result = p.formula()
    if p.peek() != "eof":
        p.fail({"&", "|", "->", "<->", "<end of input>"})
    return result


# ---------------------------------------------------------------------------
# Printing

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_RIGHT_ASSOC = (Iff, Implies)
_TOP = 5


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), _TOP)


def to_text(f: Formula) -> str:
    """Render with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, UNARY):
        op = "~" if isinstance(f, Not) else "[]"
        inner = to_text(f.operand)
        if _prec(f.operand) < _TOP:
            inner = f"({inner})"
        return op + inner
    p = _PREC[type(f)]
    left, right = to_text(f.left), to_text(f.right)
    if isinstance(f, _RIGHT_ASSOC):
        wrap_left, wrap_right = _prec(f.left) <= p, _prec(f.right) < p
    else:
        wrap_left, wrap_right = _prec(f.left) < p, _prec(f.right) <= p
    if wrap_left:
        left = f"({left})"
    if wrap_right:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


# ---------------------------------------------------------------------------
# Structural measures


def _walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(children(g))


def subformulas(f: Formula) -> frozenset:
    return frozenset(_walk(f))


def atoms(f: Formula) -> frozenset:
    return frozenset(g for g in _walk(f) if isinstance(g, Atom))


def node_count(f: Formula) -> int:
    return sum(1 for _ in _walk(f))


def connectives(f: Formula) -> int:
    """Number of non-atomic nodes; ``[]`` counts as a connective."""
    return sum(1 for g in _walk(f) if not isinstance(g, Atom))


def modal_depth(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Box):
        return 1 + modal_depth(f.operand)
    return max(modal_depth(c) for c in children(f))
