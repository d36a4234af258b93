"""Generic AFT layer on small powerset lattices, checked by exhaustion."""
import itertools
import random

import pytest

from mtlog import aft
from mtlog.aft import ConstantApproximator, ExactLift, Pair, PowersetLattice
from mtlog.errors import NonTermination

L = PowersetLattice({"a", "b"})
BOT, TOP = L.bottom, L.top
A, B = frozenset({"a"}), frozenset({"b"})


def fixpoints(f, lat):
    return [x for x in lat.elements() if f(x) == x]


def least(xs, leq):
    lows = [x for x in xs if all(leq(x, y) for y in xs)]
    assert len(lows) == 1
    return lows[0]


def consistent_pairs(lat):
    return [Pair(x, y) for x in lat.elements() for y in lat.elements() if x <= y]


def plq(p, q):
    return aft.precision_leq(L, p, q)


# --- lfp -------------------------------------------------------------------


def test_lfp_identity():
    assert aft.lfp(lambda s: s, BOT) == BOT


def test_lfp_add_a_matches_exhaustion():
    f = lambda s: s | A  # noqa: E731
    assert aft.lfp(f, BOT) == A
    assert least(fixpoints(f, L), L.leq) == A


def test_lfp_oscillation_raises():
    f = lambda s: A if "b" in s else B  # noqa: E731
    with pytest.raises(NonTermination) as info:
        aft.lfp(f, BOT, max_iters=50)
    assert {info.value.state[0], info.value.state[1]} == {A, B}


def test_lfp_chunking_invariant():
    rng = random.Random(3)
    big = PowersetLattice(range(5))
    for _ in range(50):
        gen = {e: frozenset(rng.sample(range(5), rng.randint(0, 2))) for e in range(5)}
        seeds = frozenset(rng.sample(range(5), 1))

        def f(s):
            out = set(seeds)
            for e in s:
                out |= gen[e]
            return frozenset(out)

        assert aft.lfp(f, big.bottom) == aft.lfp(lambda s: f(f(s)), big.bottom)


# --- stable revision, KK, WF -----------------------------------------------


def test_stable_revision_identity():
    assert aft.stable_revision(ExactLift(lambda s: s, L), Pair(BOT, TOP)) == Pair(BOT, BOT)


def test_stable_revision_constant():
    m = Pair(A, A)
    assert aft.stable_revision(ConstantApproximator(m, L), Pair(BOT, TOP)) == m


def test_kripke_kleene_generic():
    add_a = ExactLift(lambda s: s | A, L)
    # {a,b} is also a fixpoint of S -> S | {a}, so the upper bound stays at top
    fixed = [p for p in consistent_pairs(L) if aft.apply(add_a, p) == p]
    assert least(fixed, plq) == Pair(A, TOP)
    assert aft.kripke_kleene(add_a) == Pair(A, TOP)
    assert aft.kripke_kleene(ExactLift(lambda s: s, L)) == Pair(BOT, TOP)
    assert aft.kripke_kleene(ConstantApproximator(Pair(A, A), L)) == Pair(A, A)


def test_well_founded_generic():
    assert aft.well_founded(ExactLift(lambda s: s, L)) == Pair(BOT, BOT)
    assert aft.well_founded(ExactLift(lambda s: s | A, L)) == Pair(A, A)


def test_well_founded_of_constant_bottom_top():
    # the constant (bot, top) map revises to itself: both lfps of a constant
    # function are that constant
    c = ConstantApproximator(Pair(BOT, TOP), L)
    expected = least([p for p in consistent_pairs(L) if aft.stable_revision(c, p) == p], plq)
    assert expected == Pair(BOT, TOP)
    assert aft.well_founded(c) == expected


# --- exhaustive checks over all monotone maps of the 4-element lattice -----

ELEMS = list(L.elements())


def monotone_maps():
    for image in itertools.product(ELEMS, repeat=len(ELEMS)):
        f = dict(zip(ELEMS, image))
        if all(f[x] <= f[y] for x in ELEMS for y in ELEMS if x <= y):
            yield f


MAPS = list(monotone_maps())


def test_there_are_monotone_maps():
    assert len(MAPS) > 10


@pytest.mark.parametrize("k", range(0, len(MAPS), 1))
def test_exact_lift_ordering_chain(k):
    f = MAPS[k]
    approx = ExactLift(f.__getitem__, L)
    pairs = consistent_pairs(L)
    kk = aft.kripke_kleene(approx)
    wf = aft.well_founded(approx)
    fixed = [p for p in pairs if aft.apply(approx, p) == p]
    stable = [p for p in pairs if aft.is_stable_fixpoint(approx, p)]
    assert kk == least(fixed, plq)
    assert wf == least(stable, plq)
    assert plq(kk, wf)
    assert all(plq(wf, s) for s in stable)
    for p in pairs:
        assert aft.is_consistent(L, aft.apply(approx, p))
        assert aft.is_consistent(L, aft.stable_revision(approx, p))
        for q in pairs:
            if plq(p, q):
                assert plq(aft.apply(approx, p), aft.apply(approx, q))


# --- approximators of tiny propositional normal programs -------------------

SUBSETS = list(L.elements())
ALL_RULES = [(h, pos, neg) for h in ("a", "b") for pos in SUBSETS for neg in SUBSETS]


class RuleApproximator:
    """Positive body read in the first argument, negation against the second."""

    def __init__(self, rules):
        self.rules = rules
        self.lattice = L

    def a1(self, lo, hi):
        return frozenset(h for h, pos, neg in self.rules if pos <= lo and not (neg & hi))

    def a2(self, lo, hi):
        return self.a1(hi, lo)


@pytest.mark.parametrize("seed", range(300))
def test_program_approximator_chain(seed):
    rng = random.Random(seed)
    approx = RuleApproximator(rng.sample(ALL_RULES, rng.randint(1, 3)))
    pairs = consistent_pairs(L)
    fixed = [p for p in pairs if aft.apply(approx, p) == p]
    stable = [p for p in pairs if aft.is_stable_fixpoint(approx, p)]
    kk, wf = aft.kripke_kleene(approx), aft.well_founded(approx)
    assert kk == least(fixed, plq)
    assert wf == least(stable, plq)
    assert plq(kk, wf) and all(plq(wf, s) for s in stable)
    assert set(stable) <= set(fixed)
    for p in pairs:
        assert aft.is_consistent(L, aft.apply(approx, p))
        for q in pairs:
            if plq(p, q):
                assert plq(aft.apply(approx, p), aft.apply(approx, q))


def test_p_not_p_has_no_exact_stable_fixpoint():
    approx = RuleApproximator([("a", BOT, A)])
    assert aft.well_founded(approx) == Pair(BOT, A)
    assert not any(aft.is_stable_fixpoint(approx, Pair(x, x)) for x in ELEMS)
