"""Propositional formulas: AST, parser and printer.

Grammar (ASCII, Unicode aliases in brackets)::

    imp   := or ( '->' [→] imp )?          right-associative
    or    := and ( '|' [∨] and )*          left-associative
    and   := unary ( '&' [∧] unary )*      left-associative
    unary := '~' [¬] unary | 'p'<n> | 'F' [⊥] | '(' imp ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterator

from ..errors import ParseError

__all__ = [
    "Formula", "Atom", "Bot", "Not", "And", "Or", "Imp",
    "parse", "conj", "disj", "p",
]


class Formula:
    """Base class; subclasses are frozen dataclasses so formulas hash structurally."""

    prec = 9

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __rshift__(self, other):
        return Imp(self, other)

    def __invert__(self):
        return Not(self)

    def children(self) -> tuple["Formula", ...]:
        return ()

    @cached_property
    def atoms(self) -> frozenset[int]:
        return frozenset().union(*(c.atoms for c in self.children()))

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children()), default=-1)

    def __len__(self):
        return 1 + sum(len(c) for c in self.children())

    def subformulas(self) -> Iterator["Formula"]:
        """Post-order traversal (children before parents), duplicates included."""
        for c in self.children():
            yield from c.subformulas()
        yield self

    @property
    def is_positive(self) -> bool:
        """Free of ¬ and ⊥."""
        return not any(isinstance(s, (Not, Bot)) for s in self.subformulas())

    def __str__(self):
        return _show(self)


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    index: int
    prec = 5

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("atom indices are non-negative")

    @cached_property
    def atoms(self):
        return frozenset([self.index])

    def __repr__(self):
        return f"p{self.index}"


@dataclass(frozen=True, eq=True)
class Bot(Formula):
    prec = 5

    def __repr__(self):
        return "F"


@dataclass(frozen=True, eq=True)
class Not(Formula):
    arg: Formula
    prec = 4

    def children(self):
        return (self.arg,)

    def __repr__(self):
        return f"Not({self.arg!r})"


@dataclass(frozen=True, eq=True)
class And(Formula):
    left: Formula
    right: Formula
    prec = 3

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, eq=True)
class Or(Formula):
    left: Formula
    right: Formula
    prec = 2

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, eq=True)
class Imp(Formula):
    left: Formula
    right: Formula
    prec = 1

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"Imp({self.left!r}, {self.right!r})"


def p(i: int) -> Atom:
    return Atom(i)


def conj(parts) -> Formula:
    """Left-nested conjunction of a nonempty sequence."""
    return reduce(And, parts)


def disj(parts) -> Formula:
    return reduce(Or, parts)


_SYMBOL = {And: " & ", Or: " | ", Imp: " -> "}


def _show(f: Formula) -> str:
    if isinstance(f, Atom):
        return f"p{f.index}"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Not):
        inner = _show(f.arg)
        return "~" + (inner if f.arg.prec >= Not.prec else f"({inner})")
    left, right = _show(f.left), _show(f.right)
    if isinstance(f, Imp):
        left_ok = f.left.prec > f.prec
        right_ok = f.right.prec >= f.prec
    else:
        left_ok = f.left.prec >= f.prec
        right_ok = f.right.prec > f.prec
    if not left_ok:
        left = f"({left})"
    if not right_ok:
        right = f"({right})"
    return left + _SYMBOL[type(f)] + right


_TOKEN = re.compile(r"\s*(?:(p\d+)|(->|→)|([~¬&∧|∨()])|(F|⊥))")
_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "⊥": "F"}


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        tok = next(g for g in m.groups() if g is not None)
        out.append((_ALIASES.get(tok, tok), m.start(m.lastindex)))
        pos = m.end()
    out.append(("$", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, expected: str | None = None) -> str:
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            what = "end of input" if tok == "$" else repr(tok)
            raise ParseError(f"expected {expected!r}, found {what}", pos)
        self.i += 1
        return tok

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok, pos = self.toks[self.i]
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.imp()
            self.take(")")
            return f
        if tok == "F":
            self.take()
            return Bot()
        if tok.startswith("p"):
            self.take()
            return Atom(int(tok[1:]))
        what = "end of input" if tok == "$" else repr(tok)
        raise ParseError(f"expected a formula, found {what}", pos)


def parse(text: str) -> Formula:
    """Parse a formula; raises :class:`ParseError` carrying the offending position."""
    parser = _Parser(text)
    f = parser.imp()
    tok, pos = parser.toks[parser.i]
    if tok != "$":
        raise ParseError(f"unexpected {tok!r} after a complete formula", pos)
    return f
