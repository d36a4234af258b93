"""Two- and three-valued evaluation of ground metric atoms and rule bodies.

Two evaluators live side by side.  ``eval2_at``/``eval3_at`` decide truth
at a single timepoint by direct quantification over the timeline and serve
as the reference; ``eval2_set``/``eval3_body_sets`` compute the whole set of
timepoints where an expression holds with interval-set algebra and are what
the operators use.
"""
from __future__ import annotations

import math
from enum import IntEnum
from typing import Iterable, Mapping, Sequence

from . import temporal as tm
from .errors import InfiniteHeadRangeError
from .syntax import (
    Atom,
    Bottom,
    BoxMinus,
    BoxPlus,
    Dataset,
    DiamondMinus,
    DiamondPlus,
    Literal,
    Since,
    Top,
    Until,
    children,
    walk,
)
from .temporal import EMPTY, FULL, IntervalSet


class Interpretation:
    """Total map from ground relational atoms to interval sets.

    Atoms that are not listed are false everywhere; empty extensions are
    dropped so equality is semantic.
    """

    __slots__ = ("_ext", "_hash")

    def __init__(self, ext: Mapping[Atom, IntervalSet] | Iterable = ()):
        items = ext.items() if isinstance(ext, Mapping) else ext
        self._ext = {a: s for a, s in items if s}
        self._hash = None

    @classmethod
    def from_points(cls, points: Iterable) -> "Interpretation":
        """Build from ``(atom, t)`` pairs."""
        by_atom = {}
        for atom, t in points:
            by_atom.setdefault(atom, []).append(t)
        return cls({a: IntervalSet.points(ts) for a, ts in by_atom.items()})

    def get(self, atom: Atom) -> IntervalSet:
        return self._ext.get(atom, EMPTY)

    __getitem__ = get

    def atoms(self) -> list:
        return sorted(self._ext, key=str)

    def items(self):
        return ((a, self._ext[a]) for a in self.atoms())

    def holds(self, atom: Atom, t) -> bool:
        return tm.contains(self.get(atom), t)

    def union(self, other: "Interpretation") -> "Interpretation":
        ext = dict(self._ext)
        for a, s in other._ext.items():
            ext[a] = tm.union(ext[a], s) if a in ext else s
        return Interpretation(ext)

    def intersection(self, other: "Interpretation") -> "Interpretation":
        return Interpretation({a: tm.intersect(s, other.get(a)) for a, s in self._ext.items()})

    def difference(self, other: "Interpretation") -> "Interpretation":
        return Interpretation(
            {a: tm.intersect(s, tm.complement(other.get(a))) for a, s in self._ext.items()}
        )

    def issubset(self, other: "Interpretation") -> bool:
        return all(s.issubset(other.get(a)) for a, s in self._ext.items())

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset

    def __bool__(self):
        return bool(self._ext)

    def __eq__(self, other):
        return isinstance(other, Interpretation) and self._ext == other._ext

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._ext.items()))
        return self._hash

    def __repr__(self):
        return f"Interpretation({{{', '.join(f'{a}: {s}' for a, s in self.items())}}})"

    def dump(self) -> str:
        return "".join(f"{a}@{s}\n" for a, s in self.items())


class ThreeValuedInterpretation:
    """A consistent pair ``lo ⊆ hi``: true in lo, undef in hi \\ lo, false outside hi."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Interpretation, hi: Interpretation, check: bool = True):
        if check and not lo.issubset(hi):
            raise ValueError("inconsistent three-valued interpretation: lo is not contained in hi")
        self.lo = lo
        self.hi = hi

    @classmethod
    def exact(cls, i: Interpretation) -> "ThreeValuedInterpretation":
        return cls(i, i, check=False)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def value(self, atom: Atom, t) -> "TruthValue3":
        return TruthValue3.from_pair(self.lo.holds(atom, t), self.hi.holds(atom, t))

    def __iter__(self):
        return iter((self.lo, self.hi))

    def __eq__(self, other):
        return isinstance(other, ThreeValuedInterpretation) and (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"ThreeValuedInterpretation(lo={self.lo!r}, hi={self.hi!r})"

    def dump(self) -> str:
        return "# true\n" + self.lo.dump() + "# undef\n" + (self.hi - self.lo).dump()


class TruthValue3(IntEnum):
    FALSE = 0
    UNDEF = 1
    TRUE = 2

    @classmethod
    def from_bool(cls, b: bool) -> "TruthValue3":
        return cls.TRUE if b else cls.FALSE

    @classmethod
    def from_pair(cls, lo: bool, hi: bool) -> "TruthValue3":
        if lo and not hi:
            raise AssertionError("pair (true, false) violates consistency")
        return cls(int(lo) + int(hi))

    def invert(self) -> "TruthValue3":
        return TruthValue3(2 - self)

    def meet(self, other) -> "TruthValue3":
        return min(self, other)

    def precision_leq(self, other) -> bool:
        return self is TruthValue3.UNDEF or self is other

    def __str__(self):
        return self.name.lower()


# ---------------------------------------------------------------------------
# pointwise reference semantics


def _radius(m) -> int:
    r = 1
    for node in walk(m):
        r += 1
        iv = getattr(node, "interval", None)
        if iv is not None:
            r += sum(int(b) for b in (iv.lo, iv.hi) if not math.isinf(b))
    return r


def _extent(i: Interpretation) -> int:
    e = 0
    for _, s in i.items():
        for lo, hi in s.spans:
            e = max(e, *(abs(int(b)) for b in (lo, hi) if not math.isinf(b)), 0)
    return e


def _clamped(lo, hi, h: int) -> range:
    """Integer points of [lo, hi] mapped through clamp(., -h, h)."""
    a = int(min(max(lo, -h), h))
    b = int(min(max(hi, -h), h))
    return range(a, b + 1)


def eval2_at(m, i: Interpretation, t: int) -> bool:
    """Truth of a ground metric atom at ``t``, by direct quantification.

    Beyond the largest finite endpoint of ``i`` plus the operator radius of
    ``m`` every subformula is constant in time, so ranges over the infinite
    timeline are clamped to a horizon past that point without changing any
    quantifier's outcome.
    """
    r = _radius(m)
    h = max(abs(t), _extent(i) + r) + r + 2
    return _Pointwise(i, h).ev(m, t)


class _Pointwise:
    def __init__(self, i: Interpretation, h: int):
        self.i = i
        self.h = h
        self.memo = {}

    def ev(self, m, t: int) -> bool:
        key = (id(m), t)
        v = self.memo.get(key)
        if v is None:
            v = self.memo[key] = _ev(self, m, t)
        return v


def _ev(ctx: _Pointwise, m, t: int) -> bool:
    i, h, ev = ctx.i, ctx.h, ctx.ev
    if isinstance(m, Top):
        return True
    if isinstance(m, Bottom):
        return False
    if isinstance(m, Atom):
        return i.holds(m, t)
    if isinstance(m, (DiamondMinus, BoxMinus, DiamondPlus, BoxPlus)):
        d1, d2 = m.interval.lo, m.interval.hi
        if isinstance(m, (DiamondMinus, BoxMinus)):
            pts = _clamped(t - d2, t - d1, h)
        else:
            pts = _clamped(t + d1, t + d2, h)
        if isinstance(m, (DiamondMinus, DiamondPlus)):
            return any(ev(m.sub, u) for u in pts)
        return all(ev(m.sub, u) for u in pts)
    if isinstance(m, Since):
        d1, d2 = m.interval.lo, m.interval.hi
        for u in _clamped(t - d2, t - d1, h):
            if ev(m.right, u) and all(ev(m.left, v) for v in range(u + 1, t)):
                return True
        return False
    if isinstance(m, Until):
        d1, d2 = m.interval.lo, m.interval.hi
        for u in _clamped(t + d1, t + d2, h):
            if ev(m.right, u) and all(ev(m.left, v) for v in range(t + 1, u)):
                return True
        return False
    raise TypeError(f"not a metric atom: {m!r}")


def _as_body(e) -> Sequence[Literal]:
    if isinstance(e, Literal):
        return (e,)
    if isinstance(e, (list, tuple)):
        return tuple(x if isinstance(x, Literal) else Literal(x) for x in e)
    return (Literal(e),)


def eval2_body_at(body, i: Interpretation, t: int) -> bool:
    return all(eval2_at(lit.atom, i, t) != lit.negated for lit in _as_body(body))


def eval3_at(e, j: ThreeValuedInterpretation, t: int) -> TruthValue3:
    """Three-valued truth of a metric atom, literal or body at ``t``."""
    value = TruthValue3.TRUE
    for lit in _as_body(e):
        v = TruthValue3.from_pair(eval2_at(lit.atom, j.lo, t), eval2_at(lit.atom, j.hi, t))
        if lit.negated:
            v = v.invert()
        value = value.meet(v)
    return value


# ---------------------------------------------------------------------------
# symbolic semantics


def eval2_set(m, i: Interpretation) -> IntervalSet:
    """All timepoints where the ground metric atom ``m`` is true under ``i``."""
    if isinstance(m, Atom):
        return i.get(m)
    if isinstance(m, Top):
        return FULL
    if isinstance(m, Bottom):
        return EMPTY
    if isinstance(m, DiamondMinus):
        return tm.dilate_past(eval2_set(m.sub, i), m.interval)
    if isinstance(m, DiamondPlus):
        return tm.dilate_future(eval2_set(m.sub, i), m.interval)
    if isinstance(m, BoxMinus):
        return tm.erode_past(eval2_set(m.sub, i), m.interval)
    if isinstance(m, BoxPlus):
        return tm.erode_future(eval2_set(m.sub, i), m.interval)
    if isinstance(m, Since):
        return tm.since_set(eval2_set(m.left, i), eval2_set(m.right, i), m.interval)
    if isinstance(m, Until):
        return tm.until_set(eval2_set(m.left, i), eval2_set(m.right, i), m.interval)
    raise TypeError(f"not a metric atom: {m!r}")


def body_set(positive, negative, pos_interp: Interpretation, neg_interp: Interpretation) -> IntervalSet:
    """Where every positive atom holds in ``pos_interp`` and every negated
    atom fails in ``neg_interp``."""
    s = FULL
    for m in positive:
        s = tm.intersect(s, eval2_set(m, pos_interp))
        if not s:
            return s
    for m in negative:
        s = tm.intersect(s, tm.complement(eval2_set(m, neg_interp)))
        if not s:
            return s
    return s


def _split(body) -> tuple:
    lits = _as_body(body)
    return (
        tuple(lit.atom for lit in lits if not lit.negated),
        tuple(lit.atom for lit in lits if lit.negated),
    )


def eval2_body_set(body, i: Interpretation) -> IntervalSet:
    pos, neg = _split(body)
    return body_set(pos, neg, i, i)


def eval3_body_sets(body, j: ThreeValuedInterpretation) -> tuple:
    """``(true_set, notfalse_set)`` of a body under a three-valued interpretation."""
    pos, neg = _split(body)
    return body_set(pos, neg, j.lo, j.hi), body_set(pos, neg, j.hi, j.lo)


# ---------------------------------------------------------------------------
# heads


def head_points(m, t: int) -> set:
    """The ``(atom, timepoint)`` obligations created by deriving head ``m`` at ``t``."""
    if isinstance(m, Top):
        raise ValueError("head_points is undefined for top")
    if isinstance(m, (BoxMinus, BoxPlus)):
        iv = m.interval
        if not iv.is_bounded:
            raise InfiniteHeadRangeError(f"head interval {iv} is unbounded")
        if isinstance(m, BoxMinus):
            us = range(t - iv.hi, t - iv.lo + 1)
        else:
            us = range(t + iv.lo, t + iv.hi + 1)
        out = set()
        for u in us:
            out |= head_points(m.sub, u)
        return out
    if isinstance(m, Atom):
        return {(m, t)}
    raise TypeError(f"not a head atom: {m!r}")


def head_apply(m, s: IntervalSet) -> list:
    """Symbolic transpose of :func:`head_points` over a firing set ``s``."""
    if isinstance(m, Top):
        return []
    if isinstance(m, BoxMinus):
        return head_apply(m.sub, tm.dilate_future(s, m.interval))
    if isinstance(m, BoxPlus):
        return head_apply(m.sub, tm.dilate_past(s, m.interval))
    if isinstance(m, Atom):
        return [(m, s)]
    raise TypeError(f"not a head atom: {m!r}")


# ---------------------------------------------------------------------------
# models


def dataset_interpretation(dataset: Dataset) -> Interpretation:
    by_atom = {}
    for f in dataset:
        by_atom.setdefault(f.atom, []).append(f.interval)
    return Interpretation({a: IntervalSet(ivs) for a, ivs in by_atom.items()})


def _models_dataset(i: Interpretation, dataset) -> bool:
    d = dataset if isinstance(dataset, Interpretation) else dataset_interpretation(dataset)
    return d.issubset(i)


def is_model2(i: Interpretation, dataset, ground_rules) -> bool:
    if not _models_dataset(i, dataset):
        return False
    for r in ground_rules:
        if not body_set(r.positive, r.negative, i, i).issubset(eval2_set(r.head, i)):
            return False
    return True


def is_model3(j: ThreeValuedInterpretation, dataset, ground_rules) -> bool:
    if not _models_dataset(j.lo, dataset):
        return False
    for r in ground_rules:
        if not body_set(r.positive, r.negative, j.lo, j.hi).issubset(eval2_set(r.head, j.lo)):
            return False
        if not body_set(r.positive, r.negative, j.hi, j.lo).issubset(eval2_set(r.head, j.hi)):
            return False
    return True


__all__ = [
    "Interpretation",
    "ThreeValuedInterpretation",
    "TruthValue3",
    "eval2_at",
    "eval2_body_at",
    "eval3_at",
    "eval2_set",
    "eval2_body_set",
    "eval3_body_sets",
    "body_set",
    "head_points",
    "head_apply",
    "dataset_interpretation",
    "is_model2",
    "is_model3",
    "children",
]
