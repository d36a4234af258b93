"""Abstract syntax of DatalogMTL with negation, and its pretty-printer.

The printed form is the concrete syntax accepted by :mod:`mtlog.parser`, so
``parse(str(x)) == x`` for every node.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .temporal import Interval

_PLAIN_CONST = re.compile(r"[A-Z][A-Za-z0-9_]*|-?\d+")


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Const:
    name: str

    def __str__(self):
        if _PLAIN_CONST.fullmatch(self.name):
            return self.name
        escaped = self.name.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'


Term = Union[Var, Const]


@dataclass(frozen=True, order=True)
class Atom:
    """A relational atom ``P(s)``."""

    pred: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def is_ground(self) -> bool:
        return all(isinstance(a, Const) for a in self.args)

    def __str__(self):
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "top"


@dataclass(frozen=True)
class Bottom:
    def __str__(self):
        return "bottom"


@dataclass(frozen=True)
class _Unary:
    interval: Interval
    sub: "MetricAtom"
    keyword = ""

    def __str__(self):
        return f"{self.keyword}{self.interval} {_operand(self.sub)}"


class DiamondMinus(_Unary):
    keyword = "diamondminus"


class DiamondPlus(_Unary):
    keyword = "diamondplus"


class BoxMinus(_Unary):
    keyword = "boxminus"


class BoxPlus(_Unary):
    keyword = "boxplus"


@dataclass(frozen=True)
class _Binary:
    left: "MetricAtom"
    interval: Interval
    right: "MetricAtom"
    keyword = ""

    def __str__(self):
        return f"{_operand(self.left)} {self.keyword}{self.interval} {_operand(self.right)}"


class Since(_Binary):
    keyword = "S"


class Until(_Binary):
    keyword = "U"


MetricAtom = Union[Top, Bottom, Atom, DiamondMinus, DiamondPlus, BoxMinus, BoxPlus, Since, Until]
UNARY = (DiamondMinus, DiamondPlus, BoxMinus, BoxPlus)
BINARY = (Since, Until)


def _operand(m) -> str:
    return f"({m})" if isinstance(m, BINARY) else str(m)


def children(m) -> tuple:
    if isinstance(m, _Unary):
        return (m.sub,)
    if isinstance(m, _Binary):
        return (m.left, m.right)
    return ()


def walk(m):
    stack = [m]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(children(node))


def atoms_of(m) -> list:
    return [n for n in walk(m) if isinstance(n, Atom)]


def depth(m) -> int:
    kids = children(m)
    return 1 + max(map(depth, kids)) if kids else 1


def variables(m) -> set:
    return {a for atom in atoms_of(m) for a in atom.args if isinstance(a, Var)}


def safe_variables(m) -> set:
    """Variables of ``m`` outside any left operand of Since/Until."""
    if isinstance(m, Atom):
        return {a for a in m.args if isinstance(a, Var)}
    if isinstance(m, _Unary):
        return safe_variables(m.sub)
    if isinstance(m, _Binary):
        return safe_variables(m.right)
    return set()


def is_head_atom(m) -> bool:
    if isinstance(m, (Top, Atom)):
        return True
    if isinstance(m, (BoxMinus, BoxPlus)):
        return is_head_atom(m.sub)
    return False


def head_atom(m):
    """The relational atom inside a head, or None for ``top``."""
    while isinstance(m, (BoxMinus, BoxPlus)):
        m = m.sub
    return m if isinstance(m, Atom) else None


def substitute(m, theta: dict):
    if isinstance(m, Atom):
        return Atom(m.pred, tuple(theta.get(a, a) if isinstance(a, Var) else a for a in m.args))
    if isinstance(m, _Unary):
        return type(m)(m.interval, substitute(m.sub, theta))
    if isinstance(m, _Binary):
        return type(m)(substitute(m.left, theta), m.interval, substitute(m.right, theta))
    return m


@dataclass(frozen=True)
class Literal:
    atom: MetricAtom
    negated: bool = False

    def __str__(self):
        return f"not {self.atom}" if self.negated else str(self.atom)


@dataclass(frozen=True)
class Rule:
    head: MetricAtom
    positive: tuple = ()
    negative: tuple = ()

    @property
    def body(self) -> tuple:
        return tuple(Literal(m) for m in self.positive) + tuple(Literal(m, True) for m in self.negative)

    def variables(self) -> set:
        out = variables(self.head)
        for m in self.positive + self.negative:
            out |= variables(m)
        return out

    def is_ground(self) -> bool:
        return not self.variables()

    def substitute(self, theta: dict) -> "Rule":
        return Rule(
            substitute(self.head, theta),
            tuple(substitute(m, theta) for m in self.positive),
            tuple(substitute(m, theta) for m in self.negative),
        )

    def __str__(self):
        body = ", ".join(map(str, self.body))
        return f"{self.head} :- {body}." if body else f"{self.head}."


@dataclass(frozen=True)
class Program:
    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(dict.fromkeys(self.rules)))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __str__(self):
        return "".join(f"{r}\n" for r in self.rules)


@dataclass(frozen=True)
class Fact:
    atom: Atom
    interval: Interval

    def __str__(self):
        iv = self.interval
        when = str(iv.lo) if iv.is_point else str(iv)
        return f"{self.atom}@{when}"


@dataclass(frozen=True)
class Dataset:
    facts: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "facts", tuple(dict.fromkeys(self.facts)))

    def __iter__(self):
        return iter(self.facts)

    def __len__(self):
        return len(self.facts)

    def __str__(self):
        return "".join(f"{f}\n" for f in self.facts)


def predicates(program: Program, dataset: Dataset | None = None) -> dict:
    """Map predicate name to arity over a program and dataset."""
    out = {}
    for rule in program:
        for m in (rule.head,) + rule.positive + rule.negative:
            for a in atoms_of(m):
                out.setdefault(a.pred, a.arity)
    for f in dataset or ():
        out.setdefault(f.atom.pred, f.atom.arity)
    return out


def constants(program: Program, dataset: Dataset | None = None) -> set:
    out = set()
    for rule in program:
        for m in (rule.head,) + rule.positive + rule.negative:
            for a in atoms_of(m):
                out.update(x for x in a.args if isinstance(x, Const))
    for f in dataset or ():
        out.update(f.atom.args)
    return out
