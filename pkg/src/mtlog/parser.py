"""Recursive-descent parser for programs (``.mtl``) and datasets (``.facts``).

Concrete syntax::

    NoMoreParacetamol(x) :- Adult(x), diamondminus[0,6] TakesParacetamol(x).
    P :- Q S[0,2] R, not boxplus[1,1] Q.     % comment
    TakesParacetamol(John)@8
    Adult(John)@(-inf,+inf)

Identifiers starting with a lowercase letter or ``_`` are variables in term
position; capitalised identifiers, integers and double-quoted strings are
constants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    ArityError,
    BottomInHeadError,
    InfiniteHeadRangeError,
    NonGroundFactError,
    ParseError,
    SafetyError,
)
from .syntax import (
    Atom,
    Bottom,
    BoxMinus,
    BoxPlus,
    Const,
    Dataset,
    DiamondMinus,
    DiamondPlus,
    Fact,
    Program,
    Rule,
    Since,
    Top,
    Until,
    Var,
    atoms_of,
    is_head_atom,
    safe_variables,
    variables,
    walk,
)
from .temporal import NEG_INF, POS_INF, Interval

UNARY_KEYWORDS = {
    "diamondminus": DiamondMinus,
    "diamondplus": DiamondPlus,
    "boxminus": BoxMinus,
    "boxplus": BoxPlus,
}
BINARY_KEYWORDS = {"S": Since, "U": Until}
RESERVED = set(UNARY_KEYWORDS) | {"not", "top", "bottom"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<arrow>:-)
  | (?P<inf>[+-]?inf\b)
  | (?P<int>[+-]?\d+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],.@;])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tok_text = m.group()
            tokens.append(Token(kind if kind != "punct" else tok_text, tok_text, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _unescape(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s[1:-1])


class Parser:
    def __init__(self, text: str, arities: dict | None = None):
        self.tokens = tokenize(text)
        self.i = 0
        self.arities = {} if arities is None else arities

    # -- token helpers -------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, msg: str, tok: Token | None = None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.col)

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        return self.advance()

    def at_name(self, text: str) -> bool:
        return self.tok.kind == "name" and self.tok.text == text

    # -- intervals -----------------------------------------------------
    def bound(self):
        tok = self.tok
        if tok.kind == "inf":
            self.advance()
            return NEG_INF if tok.text.startswith("-") else POS_INF
        if tok.kind == "int":
            self.advance()
            return int(tok.text)
        raise self.error(f"expected an interval endpoint, found {tok.text or 'end of input'!r}")

    def interval(self) -> Interval:
        start = self.tok
        if start.kind == "int":
            self.advance()
            return Interval.point(int(start.text))
        if start.kind not in ("[", "("):
            raise self.error("expected an interval")
        self.advance()
        lo = self.bound()
        self.expect(",")
        hi = self.bound()
        if self.tok.kind not in ("]", ")"):
            raise self.error("expected ']' or ')'")
        close = self.advance()
        try:
            return Interval.make(lo, hi, start.kind == "[", close.kind == "]")
        except ValueError as exc:
            raise self.error(str(exc), start) from None

    def metric_interval(self) -> Interval:
        tok = self.tok
        iv = self.interval()
        if not iv.non_negative:
            raise self.error(f"metric interval {iv} must be non-negative", tok)
        return iv

    # -- atoms ---------------------------------------------------------
    def term(self):
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return Const(str(int(tok.text)))
        if tok.kind == "string":
            self.advance()
            return Const(_unescape(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text[0].islower() or tok.text[0] == "_":
                return Var(tok.text)
            return Const(tok.text)
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")

    def relational_atom(self) -> Atom:
        tok = self.tok
        if tok.kind != "name" or tok.text in RESERVED:
            raise self.error(f"expected a predicate, found {tok.text or 'end of input'!r}")
        self.advance()
        args = []
        if self.tok.kind == "(":
            self.advance()
            args.append(self.term())
            while self.tok.kind == ",":
                self.advance()
                args.append(self.term())
            self.expect(")")
        arity = self.arities.setdefault(tok.text, len(args))
        if arity != len(args):
            raise self.error(
                f"predicate {tok.text} used with arity {len(args)}, previously {arity}", tok, ArityError
            )
        return Atom(tok.text, tuple(args))

    def unary(self):
        tok = self.tok
        if tok.kind == "name":
            if tok.text == "top":
                self.advance()
                return Top()
            if tok.text == "bottom":
                self.advance()
                return Bottom()
            if tok.text in UNARY_KEYWORDS:
                self.advance()
                iv = self.metric_interval()
                return UNARY_KEYWORDS[tok.text](iv, self.unary())
            return self.relational_atom()
        if tok.kind == "(":
            self.advance()
            m = self.metric()
            self.expect(")")
            return m
        raise self.error(f"expected a metric atom, found {tok.text or 'end of input'!r}")

    def metric(self):
        left = self.unary()
        while self.tok.kind == "name" and self.tok.text in BINARY_KEYWORDS and self.peek().kind in ("[", "(", "int"):
            op = BINARY_KEYWORDS[self.advance().text]
            iv = self.metric_interval()
            left = op(left, iv, self.unary())
        return left

    # -- statements ----------------------------------------------------
    def rule(self) -> Rule:
        start = self.tok
        head = self.metric()
        positive, negative = [], []
        if self.tok.kind == "arrow":
            self.advance()
            while True:
                if self.at_name("not"):
                    self.advance()
                    negative.append(self.metric())
                else:
                    positive.append(self.metric())
                if self.tok.kind != ",":
                    break
                self.advance()
        self.expect(".")
        if any(isinstance(n, Bottom) for n in walk(head)):
            raise self.error("bottom is not allowed in rule heads", start, BottomInHeadError)
        if not is_head_atom(head):
            raise self.error(f"{head} is not a head atom (only top, atoms, boxminus, boxplus)", start)
        for n in walk(head):
            if isinstance(n, (BoxMinus, BoxPlus)) and not n.interval.is_bounded:
                raise self.error(f"head interval {n.interval} is unbounded", start, InfiniteHeadRangeError)
        return Rule(head, tuple(positive), tuple(negative))

    def program(self) -> Program:
        rules = []
        while self.tok.kind != "eof":
            rules.append(self.rule())
        return Program(tuple(rules))

    def fact_line(self) -> list:
        start = self.tok
        atom = self.relational_atom()
        if not atom.is_ground():
            raise self.error(f"fact {atom} is not ground", start, NonGroundFactError)
        self.expect("@")
        facts = [Fact(atom, self.interval())]
        while self.tok.kind == ";":
            self.advance()
            facts.append(Fact(atom, self.interval()))
        return facts

    def dataset(self) -> Dataset:
        facts = []
        while self.tok.kind != "eof":
            facts.extend(self.fact_line())
            if self.tok.kind == ".":
                self.advance()
        return Dataset(tuple(facts))


def check_safety(rule: Rule) -> None:
    """Head variables and variables under ``not`` must occur in a positive
    body atom outside the left operand of Since/Until."""
    bound = set()
    for m in rule.positive:
        bound |= safe_variables(m)
    needed = sorted(variables(rule.head), key=str)
    for m in rule.negative:
        needed += sorted(variables(m) - set(needed), key=str)
    for v in needed:
        if v not in bound:
            raise SafetyError(v.name, rule)


def parse_program(text: str, arities: dict | None = None) -> Program:
    program = Parser(text, arities).program()
    for rule in program:
        check_safety(rule)
    return program


def parse_dataset(text: str, arities: dict | None = None) -> Dataset:
    return Parser(text, arities).dataset()


def parse_metric_atom(text: str, arities: dict | None = None):
    p = Parser(text, arities)
    m = p.metric()
    p.expect("eof")
    return m


def parse_rule(text: str, arities: dict | None = None) -> Rule:
    p = Parser(text, arities)
    r = p.rule()
    p.expect("eof")
    check_safety(r)
    return r


__all__ = [
    "parse_program",
    "parse_dataset",
    "parse_metric_atom",
    "parse_rule",
    "check_safety",
    "tokenize",
    "atoms_of",
]
