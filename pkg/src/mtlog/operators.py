"""Immediate consequence operator and its three-valued approximator.

Both operators fire every ground rule on the whole timeline at once: the
body is evaluated to an interval set and pushed through the head with
:func:`~mtlog.semantics.head_apply`.  ``t_op_pointwise`` and
``a_op_pointwise`` recompute the same operators one timepoint at a time on a
window and exist only for cross-checking.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import temporal as tm
from .aft import Pair
from .grounding import active_constants, ground, herbrand_base
from .semantics import (
    Interpretation,
    ThreeValuedInterpretation,
    body_set,
    dataset_interpretation,
    eval2_body_at,
    eval3_at,
    head_apply,
    head_points,
)
from .syntax import Atom, Dataset, Program, Top, head_atom
from .temporal import FULL


@dataclass(frozen=True)
class ReasoningInstance:
    dataset: Dataset
    ground_program: tuple
    herbrand: frozenset
    program: Program | None = None

    @property
    def facts(self) -> Interpretation:
        # cached on first use; the dataclass is frozen
        cached = self.__dict__.get("_facts")
        if cached is None:
            cached = dataset_interpretation(self.dataset)
            object.__setattr__(self, "_facts", cached)
        return cached

    @property
    def lattice(self) -> "InterpretationLattice":
        cached = self.__dict__.get("_lattice")
        if cached is None:
            cached = InterpretationLattice(self.herbrand)
            object.__setattr__(self, "_lattice", cached)
        return cached

    def approximator(self) -> "Approximator":
        return Approximator(self)


def make_instance(program: Program, dataset: Dataset | None = None) -> ReasoningInstance:
    dataset = dataset or Dataset()
    consts = active_constants(program, dataset)
    gp = tuple(ground(program, consts))
    herbrand = set(herbrand_base(program, dataset, consts))
    for r in gp:
        a = head_atom(r.head)
        if a is not None:
            herbrand.add(a)
    herbrand.update(f.atom for f in dataset)
    return ReasoningInstance(dataset, gp, frozenset(herbrand), program)


class InterpretationLattice:
    """Interpretations over a fixed Herbrand base, ordered by inclusion."""

    def __init__(self, herbrand):
        self.herbrand = frozenset(herbrand)
        self.bottom = Interpretation()
        self.top = Interpretation({a: FULL for a in self.herbrand})

    def leq(self, x: Interpretation, y: Interpretation) -> bool:
        return x.issubset(y)

    def join(self, x, y):
        return x.union(y)

    def meet(self, x, y):
        return x.intersection(y)


def _fire(inst: ReasoningInstance, firing) -> Interpretation:
    """Dataset facts plus the head obligations of each ``(rule, body_set)``."""
    ext = {a: s for a, s in inst.facts.items()}
    for rule, s in firing:
        if not s or isinstance(rule.head, Top):
            continue
        for atom, pts in head_apply(rule.head, s):
            ext[atom] = tm.union(ext[atom], pts) if atom in ext else pts
    return Interpretation(ext)


def t_op(inst: ReasoningInstance, i: Interpretation) -> Interpretation:
    return _fire(inst, ((r, body_set(r.positive, r.negative, i, i)) for r in inst.ground_program))


def a1(inst: ReasoningInstance, lo: Interpretation, hi: Interpretation) -> Interpretation:
    """Facts derivable where bodies are true: positives in lo, negations against hi."""
    return _fire(inst, ((r, body_set(r.positive, r.negative, lo, hi)) for r in inst.ground_program))


def a2(inst: ReasoningInstance, lo: Interpretation, hi: Interpretation) -> Interpretation:
    """Facts derivable where bodies are not false: positives in hi, negations against lo."""
    return _fire(inst, ((r, body_set(r.positive, r.negative, hi, lo)) for r in inst.ground_program))


def a_op(inst: ReasoningInstance, j: ThreeValuedInterpretation) -> ThreeValuedInterpretation:
    return ThreeValuedInterpretation(a1(inst, j.lo, j.hi), a2(inst, j.lo, j.hi), check=False)


class Approximator:
    """``a_op`` packaged for :mod:`mtlog.aft`; counts component applications."""

    def __init__(self, inst: ReasoningInstance):
        self.inst = inst
        self.lattice = inst.lattice
        self.calls = 0

    def a1(self, lo, hi):
        self.calls += 1
        return a1(self.inst, lo, hi)

    def a2(self, lo, hi):
        self.calls += 1
        return a2(self.inst, lo, hi)


def as_pair(j: ThreeValuedInterpretation) -> Pair:
    return Pair(j.lo, j.hi)


def from_pair(p: Pair) -> ThreeValuedInterpretation:
    return ThreeValuedInterpretation(p.lo, p.hi, check=False)


# ---------------------------------------------------------------------------
# pointwise reference versions


def _head_span(head) -> int:
    span = 0
    while not isinstance(head, (Atom, Top)):
        span += head.interval.hi
        head = head.sub
    return span


def _pointwise(inst, window, fires) -> set:
    lo, hi = window
    out = {(f.atom, t) for f in inst.dataset for t in range(lo, hi + 1) if t in f.interval}
    for r in inst.ground_program:
        if isinstance(r.head, Top):
            continue
        span = _head_span(r.head)
        for t in range(lo - span, hi + span + 1):
            if fires(r, t):
                out |= {(a, u) for a, u in head_points(r.head, t) if lo <= u <= hi}
    return out


def t_op_pointwise(inst: ReasoningInstance, i: Interpretation, window: tuple) -> set:
    """``(atom, t)`` pairs of ``t_op(inst, i)`` with ``t`` in the window."""
    return _pointwise(inst, window, lambda r, t: eval2_body_at(r.body, i, t))


def a_op_pointwise(inst: ReasoningInstance, j: ThreeValuedInterpretation, window: tuple) -> tuple:
    from .semantics import TruthValue3

    first = _pointwise(inst, window, lambda r, t: eval3_at(r.body, j, t) is TruthValue3.TRUE)
    second = _pointwise(inst, window, lambda r, t: eval3_at(r.body, j, t) is not TruthValue3.FALSE)
    return first, second
