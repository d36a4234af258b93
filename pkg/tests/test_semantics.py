import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtlog.errors import InfiniteHeadRangeError
from mtlog.parser import parse_metric_atom, parse_program
from mtlog.randgen import random_head, random_metric_atom
from mtlog.semantics import (
    Interpretation,
    ThreeValuedInterpretation,
    TruthValue3,
    eval2_at,
    eval2_body_at,
    eval2_body_set,
    eval2_set,
    eval3_at,
    eval3_body_sets,
    head_apply,
    head_points,
    is_model2,
    is_model3,
)
from mtlog.syntax import Atom, Bottom, BoxPlus, Literal, Top
from mtlog.temporal import EMPTY, FULL, Interval, IntervalSet

from oracles import PROP_ATOMS, rand_interp, rand_pair, rand_refine, rand_set

T, U, F = TruthValue3.TRUE, TruthValue3.UNDEF, TruthValue3.FALSE
P, Q, R = PROP_ATOMS
JOHN_TAKES = parse_metric_atom("TakesParacetamol(John)")
WINDOW = (-5, 15)


def I(**ext):
    return Interpretation({Atom(k): IntervalSet(v) for k, v in ext.items()})


# --- truth values -----------------------------------------------------------


def test_truth_value_algebra():
    assert U.invert() is U and T.invert() is F and F.invert() is T
    assert T.meet(U) is U and U.meet(F) is F
    assert U.precision_leq(T) and U.precision_leq(F) and not T.precision_leq(F)
    with pytest.raises(AssertionError):
        TruthValue3.from_pair(True, False)


# --- two-valued pointwise -----------------------------------------------------


def test_eval2_at_examples():
    assert eval2_at(Top(), Interpretation(), 123)
    takes = Interpretation({JOHN_TAKES: IntervalSet([(8, 8)])})
    assert eval2_at(parse_metric_atom("diamondminus[0,6] TakesParacetamol(John)"), takes, 10)
    assert not eval2_at(parse_metric_atom("boxminus[1,2] P"), I(P=[(0, 10)]), 1)
    assert not eval2_at(Bottom(), Interpretation(), 0)


def test_eval2_body_at_examples():
    assert eval2_body_at([], Interpretation(), 0)
    assert eval2_body_at([Literal(Q, True)], Interpretation(), 4)
    assert not eval2_body_at([Literal(P), Literal(P, True)], I(P=[(0, 0)]), 0)


def test_unbounded_quantifiers_over_full_line():
    full_p = I(P=[(-math.inf, math.inf)])
    assert eval2_at(parse_metric_atom("boxminus[0,+inf) P"), full_p, 0)
    assert not eval2_at(parse_metric_atom("boxminus[0,+inf) P"), I(P=[(-100, math.inf)]), 0)
    assert eval2_at(parse_metric_atom("diamondplus[5,+inf) P"), I(P=[(1000, 1000)]), 0)


# --- three-valued pointwise -----------------------------------------------------


def test_eval3_at_examples():
    j = ThreeValuedInterpretation(Interpretation(), I(Q=[(-math.inf, math.inf)]))
    assert eval3_at(Literal(Q, True), j, 7) is U
    lo = I(P=[(0, 0)])
    j2 = ThreeValuedInterpretation(lo, I(P=[(0, 0)], Q=[(0, 0)]))
    assert eval3_at([Literal(P), Literal(Q, True)], j2, 0) is U


def test_eval3_exact_lift_example():
    i = I(P=[(0, 3)])
    m = parse_metric_atom("diamondplus[1,2] P")
    j = ThreeValuedInterpretation.exact(i)
    for t in range(-3, 6):
        assert eval3_at(m, j, t) is TruthValue3.from_bool(eval2_at(m, i, t))


# --- symbolic ---------------------------------------------------------------


def test_eval2_set_examples():
    takes = Interpretation({JOHN_TAKES: IntervalSet([(8, 8)])})
    m = parse_metric_atom("diamondminus[0,6] TakesParacetamol(John)")
    assert eval2_set(m, takes) == IntervalSet([(8, 14)])
    assert {t for t in range(0, 21) if eval2_at(m, takes, t)} == set(range(8, 15))
    assert eval2_set(Bottom(), takes) == EMPTY
    s = IntervalSet([(1, 4), (9, 9)])
    assert eval2_set(P, Interpretation({P: s})) == s


def test_eval3_body_sets_examples():
    j = ThreeValuedInterpretation(Interpretation(), I(Q=[(-math.inf, math.inf)]))
    assert eval3_body_sets([Literal(Q, True)], j) == (EMPTY, FULL)
    e = ThreeValuedInterpretation.exact(I(P=[(0, 3)]))
    assert eval3_body_sets([Literal(P)], e) == (IntervalSet([(0, 3)]), IntervalSet([(0, 3)]))
    assert eval3_body_sets([], e) == (FULL, FULL)


def random_atom(rng, depth=3):
    return random_metric_atom(rng, depth, ("P", "Q", "R"), max_end=3, constants=True, unbounded=0.15)


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_symbolic_agrees_with_pointwise(rng):
    m = random_atom(rng)
    i = rand_interp(rng, PROP_ATOMS, WINDOW)
    s = eval2_set(m, i)
    for t in range(WINDOW[0] - 6, WINDOW[1] + 7):
        assert s.contains(t) == eval2_at(m, i, t), (str(m), t)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_body_sets_agree_with_pointwise(rng):
    body = [Literal(random_atom(rng, 2), rng.random() < 0.4) for _ in range(rng.randint(0, 3))]
    j = rand_pair(rng, PROP_ATOMS, WINDOW)
    true_set, notfalse = eval3_body_sets(body, j)
    two = eval2_body_set(body, j.lo)
    for t in range(WINDOW[0] - 4, WINDOW[1] + 5):
        v = eval3_at(body, j, t)
        assert true_set.contains(t) == (v is T)
        assert notfalse.contains(t) == (v is not F)
        assert two.contains(t) == eval2_body_at(body, j.lo, t)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_exactness(rng):
    m = random_atom(rng)
    i = rand_interp(rng, PROP_ATOMS, WINDOW)
    j = ThreeValuedInterpretation.exact(i)
    for t in range(WINDOW[0], WINDOW[1] + 1, 2):
        v = eval3_at(Literal(m, rng.random() < 0.5), j, t)
        assert v is not U


# --- heads --------------------------------------------------------------------


def test_head_points_examples():
    assert head_points(P, 5) == {(P, 5)}
    assert head_points(parse_metric_atom("boxplus[0,1] P"), 3) == {(P, 3), (P, 4)}
    assert head_points(parse_metric_atom("boxminus[1,2] boxplus[0,0] P"), 5) == {(P, 3), (P, 4)}


def test_head_points_rejects_top_and_unbounded():
    with pytest.raises(ValueError):
        head_points(Top(), 0)
    with pytest.raises(InfiniteHeadRangeError):
        head_points(BoxPlus(Interval(0, math.inf), P), 0)


def test_head_apply_examples():
    assert head_apply(P, IntervalSet([(0, 3)])) == [(P, IntervalSet([(0, 3)]))]
    assert head_apply(parse_metric_atom("boxminus[1,2] P"), IntervalSet([(5, 5)])) == [(P, IntervalSet([(3, 4)]))]
    assert head_apply(parse_metric_atom("boxplus[0,2] P"), EMPTY) == [(P, EMPTY)]


def random_head_atom(rng):
    return random_head(rng, ("P", "Q", "R"), max_end=3, depth=rng.randint(1, 4))


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_head_transpose(rng):
    m = random_head_atom(rng)
    s = rand_set(rng, (-5, 10), density=0)
    forced = set()
    for t in s.to_points():
        forced |= head_points(m, t)
    ((atom, got),) = head_apply(m, s)
    assert {(atom, u) for u in got.to_points()} == forced


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_head_meet_characterisation(rng):
    m = random_head_atom(rng)
    j = rand_pair(rng, PROP_ATOMS, WINDOW)
    for t in range(WINDOW[0], WINDOW[1] + 1):
        pts = head_points(m, t)
        assert eval2_at(m, j.lo, t) == all(j.lo.holds(a, u) for a, u in pts)
        meet = T
        for a, u in pts:
            meet = meet.meet(eval3_at(a, j, u))
        assert eval3_at(m, j, t) is meet


# --- monotonicity -------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_two_valued_monotone(rng):
    m = random_atom(rng)
    small = rand_interp(rng, PROP_ATOMS, WINDOW)
    big = small | rand_interp(rng, PROP_ATOMS, WINDOW)
    assert eval2_set(m, small).issubset(eval2_set(m, big))
    for t in range(WINDOW[0], WINDOW[1] + 1, 3):
        assert eval2_at(m, small, t) <= eval2_at(m, big, t)


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_three_valued_precision_monotone(rng):
    body = [Literal(random_atom(rng, 2), rng.random() < 0.5) for _ in range(rng.randint(1, 3))]
    j = rand_pair(rng, PROP_ATOMS, WINDOW)
    k = rand_refine(rng, j)
    for t in range(WINDOW[0], WINDOW[1] + 1, 2):
        assert eval3_at(body, j, t).precision_leq(eval3_at(body, k, t))


# --- models ---------------------------------------------------------------------


def ground_rules(text):
    return parse_program(text).rules


def test_counterexample_pair_is_not_a_three_valued_model():
    j = ThreeValuedInterpretation(Interpretation(), I(Q=[(-math.inf, math.inf)]))
    assert is_model3(j, Interpretation(), ground_rules("P :- not Q.")) is False


def test_dataset_closure_models_empty_program():
    i = I(P=[(0, 1)])
    assert is_model2(i, i, ())


def test_full_line_model_of_p_not_q():
    i = I(P=[(-math.inf, math.inf)])
    rules = ground_rules("P :- not Q.")
    assert is_model2(i, Interpretation(), rules)
    for t in range(-2, 3):
        assert eval2_body_at([Literal(Q, True)], i, t) <= i.holds(P, t)
    assert not is_model2(I(P=[(-5, 5)]), Interpretation(), rules)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_model_checks_agree_with_pointwise(rng):
    from mtlog.randgen import random_instance
    from mtlog.operators import make_instance

    program, dataset = random_instance(rng)
    inst = make_instance(program, dataset)
    j = rand_pair(rng, PROP_ATOMS, (0, 6), unbounded=False)
    j = ThreeValuedInterpretation(j.lo | inst.facts, j.hi | inst.facts)
    # extensions are bounded, so any violation shows up within the radius
    window = range(-12, 19)
    two = all(
        eval2_body_at(r.body, j.lo, t) <= (True if isinstance(r.head, Top) else eval2_at(r.head, j.lo, t))
        for r in inst.ground_program
        for t in window
    )
    three = all(
        eval3_at(r.body, j, t) <= (T if isinstance(r.head, Top) else eval3_at(r.head, j, t))
        for r in inst.ground_program
        for t in window
    )
    assert is_model2(j.lo, inst.facts, inst.ground_program) == two
    assert is_model3(j, inst.facts, inst.ground_program) == three
