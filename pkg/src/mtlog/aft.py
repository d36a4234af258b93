"""Approximation fixpoint machinery over an abstract complete lattice.

Nothing here knows about time or rules; the DatalogMTL instantiation lives
in :mod:`mtlog.operators`.  Fixpoints are detected by equality of
consecutive iterates, so every instantiation must either have finite
ascending chains or accept a :class:`NonTermination` after ``max_iters``.
"""
from __future__ import annotations

from typing import Callable, Generic, NamedTuple, Protocol, TypeVar

from .errors import NonTermination

T = TypeVar("T")

DEFAULT_MAX_ITERS = 10_000


class Lattice(Protocol[T]):
    bottom: T
    top: T

    def leq(self, x: T, y: T) -> bool: ...

    def join(self, x: T, y: T) -> T: ...

    def meet(self, x: T, y: T) -> T: ...


class Pair(NamedTuple):
    lo: object
    hi: object


class Approximator(Protocol):
    lattice: Lattice

    def a1(self, lo, hi): ...

    def a2(self, lo, hi): ...


def is_consistent(lattice: Lattice, p: Pair) -> bool:
    return lattice.leq(p.lo, p.hi)


def precision_leq(lattice: Lattice, p: Pair, q: Pair) -> bool:
    """``p <=p q``: q is at least as precise as p."""
    return lattice.leq(p.lo, q.lo) and lattice.leq(q.hi, p.hi)


def apply(approx: Approximator, p: Pair) -> Pair:
    return Pair(approx.a1(p.lo, p.hi), approx.a2(p.lo, p.hi))


class PowersetLattice:
    """Subsets of a finite universe ordered by inclusion."""

    def __init__(self, universe):
        self.universe = frozenset(universe)
        self.bottom = frozenset()
        self.top = self.universe

    def leq(self, x, y):
        return x <= y

    def join(self, x, y):
        return x | y

    def meet(self, x, y):
        return x & y

    def elements(self):
        items = sorted(self.universe, key=repr)
        for mask in range(1 << len(items)):
            yield frozenset(e for i, e in enumerate(items) if mask >> i & 1)


class ExactLift(Generic[T]):
    """The approximator ``(x, y) -> (f(x), f(y))`` of a monotone ``f``."""

    def __init__(self, f: Callable[[T], T], lattice: Lattice):
        self.f = f
        self.lattice = lattice

    def a1(self, lo, hi):
        return self.f(lo)

    def a2(self, lo, hi):
        return self.f(hi)


class ConstantApproximator:
    def __init__(self, value: Pair, lattice: Lattice):
        self.value = value
        self.lattice = lattice

    def a1(self, lo, hi):
        return self.value.lo

    def a2(self, lo, hi):
        return self.value.hi


def iterate(f: Callable[[T], T], start: T, max_iters: int = DEFAULT_MAX_ITERS) -> tuple[T, int]:
    """Iterate ``f`` from ``start`` until two consecutive values are equal.

    Returns the fixpoint and the number of applications of ``f``.
    """
    x = y = start
    for n in range(1, max_iters + 1):
        x, y = y, f(y)
        if y == x:
            return x, n
    exc = NonTermination(max_iters)
    exc.state = (x, y)
    raise exc


def lfp(f: Callable[[T], T], start: T, max_iters: int = DEFAULT_MAX_ITERS) -> T:
    """Least fixpoint of a monotone ``f`` above the post-fixpoint ``start``."""
    return iterate(f, start, max_iters)[0]


def stable_revision(approx: Approximator, p: Pair, max_iters: int = DEFAULT_MAX_ITERS) -> Pair:
    bottom = approx.lattice.bottom
    lo = lfp(lambda x: approx.a1(x, p.hi), bottom, max_iters)
    hi = lfp(lambda y: approx.a2(p.lo, y), bottom, max_iters)
    return Pair(lo, hi)


def kripke_kleene(approx: Approximator, max_iters: int = DEFAULT_MAX_ITERS) -> Pair:
    lat = approx.lattice
    return lfp(lambda p: apply(approx, p), Pair(lat.bottom, lat.top), max_iters)


def well_founded(approx: Approximator, max_iters: int = DEFAULT_MAX_ITERS) -> Pair:
    lat = approx.lattice
    return lfp(lambda p: stable_revision(approx, p, max_iters), Pair(lat.bottom, lat.top), max_iters)


def is_stable_fixpoint(approx: Approximator, p: Pair, max_iters: int = DEFAULT_MAX_ITERS) -> bool:
    return stable_revision(approx, p, max_iters) == p
