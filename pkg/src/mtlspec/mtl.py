"""Bounded MTL fragment: formula AST, concrete syntax, and horizon.

The fragment has atoms (single comparisons over named signals), negation,
conjunction, implication, and the two bounded temporal operators always and
eventually. Until and unbounded operators are not part of the language and
the parser rejects them.

Concrete ASCII syntax::

    formula   := implies
    implies   := and ( "->" implies )?          right-associative
    and       := unary ( "/\\" unary )*          folded right-associatively
    unary     := "!" unary | temporal | "(" formula ")" | atom
    temporal  := ( "[]" | "<>" ) "_[" number "," number "]" unary
    atom      := "(" ident rel number ")" | ident rel number
    rel       := "<=" | ">=" | "<" | ">"

Whitespace is insignificant. ``[]`` reads always, ``<>`` eventually, ``!``
not, ``/\\`` and, ``->`` implies. Numbers may carry a leading minus sign;
interval bounds must still be non-negative and ordered.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FormulaSyntaxError, IntervalError
from .model import Interval, Predicate, _fmt_number


class Formula:
    """Base class of all formula nodes. Instances are immutable and compare
    structurally."""

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    predicate: Predicate


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Always(Formula):
    interval: Interval
    operand: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    interval: Interval
    operand: Formula


# --- formatting ---------------------------------------------------------------

_PREC_IMPLIES = 1
_PREC_AND = 2
_PREC_UNARY = 3


def _prec(f: Formula) -> int:
    if isinstance(f, Implies):
        return _PREC_IMPLIES
    if isinstance(f, And):
        return _PREC_AND
    return _PREC_UNARY


def format_formula(f: Formula) -> str:
    """Deterministic concrete syntax for a formula.

    Atoms always print inside parentheses. The operand of ``!``, ``[]`` and
    ``<>`` is always parenthesized. Operands of the binary connectives are
    parenthesized only where the precedence rules require it, with ``/\\``
    and ``->`` both treated as right-associative. ``format_formula`` composed
    with ``parse_formula`` is the identity on ASTs.
    """
    if isinstance(f, Atom):
        return f"({f.predicate})"
    if isinstance(f, Not):
        return "!" + _wrap_unary(f.operand)
    if isinstance(f, Always):
        return f"[]_{f.interval}" + _wrap_unary(f.operand)
    if isinstance(f, Eventually):
        return f"<>_{f.interval}" + _wrap_unary(f.operand)
    if isinstance(f, And):
        left = format_formula(f.left)
        if _prec(f.left) <= _PREC_AND:
            left = f"({left})"
        right = format_formula(f.right)
        if _prec(f.right) < _PREC_AND:
            right = f"({right})"
        return f"{left} /\\ {right}"
    if isinstance(f, Implies):
        left = format_formula(f.left)
        if _prec(f.left) <= _PREC_IMPLIES:
            left = f"({left})"
        right = format_formula(f.right)
        return f"{left} -> {right}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap_unary(operand: Formula) -> str:
    text = format_formula(operand)
    if isinstance(operand, Atom):
        return text
    return f"({text})"


# --- horizon -------------------------------------------------------------------

def horizon(f: Formula) -> float:
    """Trace length (seconds past the evaluation point) needed to decide ``f``."""
    if isinstance(f, Atom):
        return 0.0
    if isinstance(f, Not):
        return horizon(f.operand)
    if isinstance(f, (And, Implies)):
        return max(horizon(f.left), horizon(f.right))
    if isinstance(f, (Always, Eventually)):
        return f.interval.hi + horizon(f.operand)
    raise TypeError(f"not a formula: {f!r}")


# --- lexer ----------------------------------------------------------------------

_SYMBOLS = ("[]", "<>", "_[", "->", "/\\", "<=", ">=", "<", ">", "!", "(", ")", ",", "]")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            pos += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        matched = False
        for sym in _SYMBOLS:
            if text.startswith(sym, pos):
                tokens.append(_Token(sym, sym, line, col))
                pos += len(sym)
                col += len(sym)
                matched = True
                break
        if matched:
            continue
        if ch.isdigit() or (ch == "-" and pos + 1 < n and text[pos + 1].isdigit()):
            start = pos
            pos += 1
            while pos < n and text[pos].isdigit():
                pos += 1
            if pos < n and text[pos] == "." and pos + 1 < n and text[pos + 1].isdigit():
                pos += 1
                while pos < n and text[pos].isdigit():
                    pos += 1
            lexeme = text[start:pos]
            tokens.append(_Token("number", lexeme, line, col))
            col += pos - start
            continue
        if ch.isalpha():
            start = pos
            pos += 1
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            lexeme = text[start:pos]
            tokens.append(_Token("ident", lexeme, line, col))
            col += pos - start
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


# --- parser ---------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise FormulaSyntaxError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                tok.line,
                tok.column,
            )
        return self.advance()

    def parse(self) -> Formula:
        f = self.formula()
        tok = self.peek()
        if tok.kind != "eof":
            raise FormulaSyntaxError(
                f"unexpected trailing input {tok.text!r}", tok.line, tok.column
            )
        return f

    def formula(self) -> Formula:
        left = self.conjunction()
        if self.peek().kind == "->":
            self.advance()
            right = self.formula()
            return Implies(left, right)
        return left

    def conjunction(self) -> Formula:
        items = [self.unary()]
        while self.peek().kind == "/\\":
            self.advance()
            items.append(self.unary())
        result = items[-1]
        for item in reversed(items[:-1]):
            result = And(item, result)
        return result

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "!":
            self.advance()
            return Not(self.unary())
        if tok.kind in ("[]", "<>"):
            self.advance()
            interval = self.interval(tok)
            operand = self.unary()
            if tok.kind == "[]":
                return Always(interval, operand)
            return Eventually(interval, operand)
        if tok.kind == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            return self.atom()
        raise FormulaSyntaxError(
            f"expected a formula, found {tok.text or 'end of input'!r}",
            tok.line,
            tok.column,
        )

    def interval(self, op_tok: _Token) -> Interval:
        self.expect("_[")
        lo_tok = self.expect("number")
        self.expect(",")
        hi_tok = self.expect("number")
        self.expect("]")
        try:
            return Interval(float(lo_tok.text), float(hi_tok.text))
        except IntervalError as exc:
            raise IntervalError(
                f"{exc} (line {op_tok.line}, column {op_tok.column})"
            ) from None

    def atom(self) -> Formula:
        sig = self.expect("ident")
        rel = self.peek()
        if rel.kind not in ("<", ">", "<=", ">="):
            raise FormulaSyntaxError(
                f"expected a comparison after {sig.text!r}, found "
                f"{rel.text or 'end of input'!r}",
                rel.line,
                rel.column,
            )
        self.advance()
        num = self.expect("number")
        return Atom(Predicate(sig.text, rel.kind, float(num.text)))


def parse_formula(text: str) -> Formula:
    """Parse concrete syntax into a formula AST.

    Raises :class:`FormulaSyntaxError` with 1-based line and column on
    malformed input, and :class:`IntervalError` when an interval is
    syntactically well-formed but has negative or misordered bounds.
    """
    return _Parser(text).parse()
