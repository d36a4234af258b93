"""Intervals and canonical interval sets over the integer timeline.

Finite endpoints are plain ``int``; the two infinities are the float values
``NEG_INF`` and ``POS_INF``.  Every interval is stored in closed form
``[lo, hi]`` (an open finite bracket is shifted by one when it is built), so
an infinite endpoint is the only kind of open endpoint that survives.

The metric operators are realised here as whole-timeline set transforms:
``dilate_*`` for the diamonds, ``erode_*`` for the boxes and ``since_set`` /
``until_set`` for the binary operators.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

NEG_INF = -math.inf
POS_INF = math.inf

Bound = Union[int, float]
Span = tuple  # (lo, hi), closed, lo <= hi


def format_bound(b: Bound) -> str:
    if b == POS_INF:
        return "+inf"
    if b == NEG_INF:
        return "-inf"
    return str(b)


@dataclass(frozen=True, order=True)
class Interval:
    """A non-empty convex set of integers, stored as the closed span ``[lo, hi]``."""

    lo: Bound
    hi: Bound

    def __post_init__(self):
        for b in (self.lo, self.hi):
            if isinstance(b, float) and not math.isinf(b):
                raise ValueError(f"finite interval endpoints must be integers, got {b!r}")
        if self.lo == POS_INF or self.hi == NEG_INF or self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def make(cls, lo: Bound, hi: Bound, lo_closed: bool = True, hi_closed: bool = True) -> "Interval":
        """Build from bracket notation, normalising open finite endpoints.

        Infinite endpoints must be open.  Raises ``ValueError`` when the result
        contains no integer.
        """
        if math.isinf(lo) and lo_closed:
            raise ValueError("infinite endpoints must use an open bracket")
        if math.isinf(hi) and hi_closed:
            raise ValueError("infinite endpoints must use an open bracket")
        if not lo_closed and not math.isinf(lo):
            lo = lo + 1
        if not hi_closed and not math.isinf(hi):
            hi = hi - 1
        return cls(lo, hi)

    @classmethod
    def point(cls, t: int) -> "Interval":
        return cls(t, t)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return not (math.isinf(self.lo) or math.isinf(self.hi))

    @property
    def non_negative(self) -> bool:
        return self.lo >= 0

    def __contains__(self, t) -> bool:
        return self.lo <= t <= self.hi

    def __str__(self) -> str:
        left = "(" if self.lo == NEG_INF else "["
        right = ")" if self.hi == POS_INF else "]"
        return f"{left}{format_bound(self.lo)},{format_bound(self.hi)}{right}"


FULL_INTERVAL = Interval(NEG_INF, POS_INF)

_BOUND = r"\s*([+-]?(?:inf|\d+))\s*"
_INTERVAL_RE = re.compile(r"\s*([\[(])" + _BOUND + "," + _BOUND + r"([\])])\s*$")


def _parse_bound(text: str) -> Bound:
    if text.lstrip("+-") == "inf":
        return NEG_INF if text.startswith("-") else POS_INF
    return int(text)


def parse_interval(text: str) -> Interval:
    """Parse ``[a,b]``, ``(a,b]``, ``[a,b)``, ``(a,b)`` or a bare integer."""
    text = text.strip()
    if re.fullmatch(r"[+-]?\d+", text):
        return Interval.point(int(text))
    m = _INTERVAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed interval {text!r}")
    left, lo, hi, right = m.groups()
    return Interval.make(_parse_bound(lo), _parse_bound(hi), left == "[", right == "]")


def _normalize(spans: Iterable[Span]) -> tuple:
    out = []
    for lo, hi in sorted(spans):
        if out and lo <= out[-1][1] + 1:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


class IntervalSet:
    """Canonical finite union of pairwise non-adjacent integer intervals.

    Two sets denoting the same timepoints are structurally equal, so ``==``
    and ``hash`` are semantic.
    """

    __slots__ = ("_spans",)

    def __init__(self, intervals: Iterable[Union[Interval, Span]] = ()):
        spans = []
        for iv in intervals:
            if isinstance(iv, Interval):
                spans.append((iv.lo, iv.hi))
            else:
                lo, hi = iv
                if lo <= hi:
                    spans.append((lo, hi))
        self._spans = _normalize(spans)

    @classmethod
    def _raw(cls, spans: tuple) -> "IntervalSet":
        obj = cls.__new__(cls)
        obj._spans = spans
        return obj

    @classmethod
    def full(cls) -> "IntervalSet":
        return FULL

    @classmethod
    def empty(cls) -> "IntervalSet":
        return EMPTY

    @classmethod
    def points(cls, ts: Iterable[int]) -> "IntervalSet":
        return cls((t, t) for t in ts)

    @property
    def spans(self) -> tuple:
        return self._spans

    @property
    def intervals(self) -> list:
        return [Interval(lo, hi) for lo, hi in self._spans]

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self._spans)

    def __bool__(self) -> bool:
        return bool(self._spans)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self._spans == other._spans

    def __hash__(self) -> int:
        return hash(self._spans)

    def __repr__(self) -> str:
        return f"IntervalSet({str(self) or '{}'})"

    def __str__(self) -> str:
        return ";".join(str(iv) for iv in self.intervals)

    @property
    def is_bounded(self) -> bool:
        return not self._spans or (self._spans[0][0] != NEG_INF and self._spans[-1][1] != POS_INF)

    @property
    def is_full(self) -> bool:
        return self._spans == ((NEG_INF, POS_INF),)

    def hull(self) -> Interval | None:
        if not self._spans:
            return None
        return Interval(self._spans[0][0], self._spans[-1][1])

    def contains(self, t) -> bool:
        return contains(self, t)

    __contains__ = contains

    def to_points(self) -> list:
        """Enumerate the members of a bounded set."""
        if not self.is_bounded:
            raise ValueError("cannot enumerate an unbounded interval set")
        return [t for lo, hi in self._spans for t in range(lo, hi + 1)]

    def issubset(self, other: "IntervalSet") -> bool:
        return intersect(self, other) == self

    def __le__(self, other: "IntervalSet") -> bool:
        return self.issubset(other)

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return intersect(self, complement(other))

    def __invert__(self):
        return complement(self)


EMPTY = IntervalSet._raw(())
FULL = IntervalSet._raw(((NEG_INF, POS_INF),))


def contains(s: IntervalSet, t) -> bool:
    for lo, hi in s.spans:
        if t < lo:
            return False
        if t <= hi:
            return True
    return False


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    if not a.spans:
        return b
    if not b.spans:
        return a
    return IntervalSet._raw(_normalize(a.spans + b.spans))


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    xs, ys = a.spans, b.spans
    if not xs or not ys:
        return EMPTY
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        lo = max(xs[i][0], ys[j][0])
        hi = min(xs[i][1], ys[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if xs[i][1] < ys[j][1]:
            i += 1
        else:
            j += 1
    # pieces of two canonical sets are already separated by gaps
    return IntervalSet._raw(tuple(out))


def complement(a: IntervalSet) -> IntervalSet:
    out = []
    start = NEG_INF
    for lo, hi in a.spans:
        if lo != NEG_INF and start <= lo - 1:
            out.append((start, lo - 1))
        start = hi + 1
        if start == POS_INF:
            return IntervalSet._raw(tuple(out))
    out.append((start, POS_INF))
    return IntervalSet._raw(tuple(out))


def shift(s: IntervalSet, d: int) -> IntervalSet:
    return IntervalSet._raw(tuple((lo + d, hi + d) for lo, hi in s.spans))


def reflect(s: IntervalSet) -> IntervalSet:
    """The mirror image ``{-t | t in s}``."""
    return IntervalSet._raw(tuple((-hi, -lo) for lo, hi in reversed(s.spans)))


def _check_delta(delta: Interval) -> None:
    if not delta.non_negative:
        raise ValueError(f"metric interval {delta} must be non-negative")


def dilate_past(s: IntervalSet, delta: Interval) -> IntervalSet:
    """``{t | exists t' in s with t - t' in delta}``."""
    _check_delta(delta)
    d1, d2 = delta.lo, delta.hi
    return IntervalSet(((lo + d1, hi + d2) for lo, hi in s.spans))


def dilate_future(s: IntervalSet, delta: Interval) -> IntervalSet:
    """``{t | exists t' in s with t' - t in delta}``."""
    _check_delta(delta)
    d1, d2 = delta.lo, delta.hi
    return IntervalSet(((lo - d2, hi - d1) for lo, hi in s.spans))


def erode_past(s: IntervalSet, delta: Interval) -> IntervalSet:
    """``{t | every t' with t - t' in delta lies in s}``."""
    _check_delta(delta)
    d1, d2 = delta.lo, delta.hi
    out = []
    for lo, hi in s.spans:
        if d2 == POS_INF:
            if lo != NEG_INF:
                continue
            new_lo = NEG_INF
        else:
            new_lo = lo + d2
        new_hi = hi + d1
        if new_lo <= new_hi:
            out.append((new_lo, new_hi))
    return IntervalSet(out)


def erode_future(s: IntervalSet, delta: Interval) -> IntervalSet:
    """``{t | every t' with t' - t in delta lies in s}``."""
    _check_delta(delta)
    return reflect(erode_past(reflect(s), delta))


def since_set(s1: IntervalSet, s2: IntervalSet, delta: Interval) -> IntervalSet:
    """``{t | exists t' in s2, t - t' in delta, and (t', t) ∩ Z ⊆ s1}``.

    A witness ``t'`` reaches forward to the end of the ``s1`` run starting at
    ``t' + 1`` (plus one), or only to ``t' + 1`` when no such run exists.
    """
    _check_delta(delta)
    d1, d2 = delta.lo, delta.hi
    out = []
    covered = []
    for a, b in s1.spans:
        # witnesses t' with t' + 1 in [a, b]
        lead = IntervalSet._raw(((a - 1, b - 1),))
        covered.append((a - 1, b - 1))
        for p, q in intersect(s2, lead).spans:
            q2 = min(q, b + 1 - d1)
            if q2 < p:
                continue
            out.append((p + d1, min(b + 1, q2 + d2)))
    rest = intersect(s2, complement(IntervalSet(covered)))
    if d1 <= 1:
        top = min(1, d2)
        out.extend((lo + d1, hi + top) for lo, hi in rest.spans)
    return IntervalSet(out)


def until_set(s1: IntervalSet, s2: IntervalSet, delta: Interval) -> IntervalSet:
    """``{t | exists t' in s2, t' - t in delta, and (t, t') ∩ Z ⊆ s1}``."""
    return reflect(since_set(reflect(s1), reflect(s2), delta))
