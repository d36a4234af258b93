"""Seeded random instances for property tests and the differential harness."""
from __future__ import annotations

import random

from .syntax import (
    Atom,
    Bottom,
    BoxMinus,
    BoxPlus,
    Dataset,
    DiamondMinus,
    DiamondPlus,
    Fact,
    Program,
    Rule,
    Since,
    Top,
    Until,
)
from .temporal import Interval

UNARY = (DiamondMinus, DiamondPlus, BoxMinus, BoxPlus)
BINARY = (Since, Until)
PREDICATES = ("P", "Q", "R")


def random_delta(rng: random.Random, max_end: int = 2, unbounded: float = 0.0) -> Interval:
    a = rng.randint(0, max_end)
    if unbounded and rng.random() < unbounded:
        return Interval(a, float("inf"))
    return Interval(a, rng.randint(a, max_end))


def random_metric_atom(
    rng: random.Random,
    depth: int = 2,
    preds=PREDICATES,
    max_end: int = 2,
    constants: bool = False,
    unbounded: float = 0.0,
    leaf: float = 0.35,
):
    """A ground metric atom of nesting depth at most ``depth``.

    With ``constants=True`` the leaves may be ``top`` or ``bottom``.  ``leaf``
    is the chance of stopping early at each level.
    """
    if depth <= 1 or rng.random() < leaf:
        if constants and rng.random() < 0.15:
            return rng.choice((Top(), Bottom()))
        return Atom(rng.choice(preds))
    sub = lambda: random_metric_atom(rng, depth - 1, preds, max_end, constants, unbounded)  # noqa: E731
    if rng.random() < 0.7:
        return rng.choice(UNARY)(random_delta(rng, max_end, unbounded), sub())
    return rng.choice(BINARY)(sub(), random_delta(rng, max_end, unbounded), sub())


def random_head(rng: random.Random, preds=PREDICATES, max_end: int = 2, depth: int = 2):
    atom = Atom(rng.choice(preds))
    head = atom
    for _ in range(rng.randint(0, depth - 1)):
        head = rng.choice((BoxMinus, BoxPlus))(random_delta(rng, max_end), head)
    return head


def random_interval(rng: random.Random, window=(0, 3)) -> Interval:
    a = rng.randint(*window)
    return Interval(a, rng.randint(a, window[1]))


def random_instance(
    rng: random.Random,
    n_preds: int = 3,
    max_rules: int = 3,
    depth: int = 2,
    max_end: int = 2,
    window=(0, 3),
    max_facts: int = 3,
) -> tuple:
    """A propositional program and dataset.

    Every rule has a positive body atom without ``top``, so no rule can fire
    on an unbounded part of the timeline and all derived extensions stay
    finite.
    """
    preds = PREDICATES[:n_preds]
    facts = [Fact(Atom(rng.choice(preds)), random_interval(rng, window)) for _ in range(rng.randint(1, max_facts))]
    given = tuple(sorted({f.atom.pred for f in facts}))
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        # guards mostly talk about asserted predicates so that rules fire
        guard_preds = given if rng.random() < 0.7 else preds
        positive = [random_metric_atom(rng, depth, guard_preds, max_end, leaf=0.6)]
        positive += [random_metric_atom(rng, depth, preds, max_end, constants=True) for _ in range(rng.randint(0, 1))]
        negative = [random_metric_atom(rng, depth, preds, max_end, constants=True, leaf=0.5) for _ in range(rng.randint(0, 2))]
        rules.append(Rule(random_head(rng, preds, max_end), tuple(positive), tuple(negative)))
    return Program(tuple(rules)), Dataset(tuple(facts))


DIFF_BUDGET = 1 << 10
DIFF_MAX_ITERS = 500


def diff_config(window=(0, 3), budget: int = DIFF_BUDGET, max_iters: int = DIFF_MAX_ITERS):
    from .engines import EngineConfig

    return EngineConfig(mode="bounded", window=tuple(window), max_iters=max_iters, enumeration_budget=budget)


def check_instance(program: Program, dataset: Dataset, cfg):
    """Differential check plus ordering chain; ``None`` if the instance is
    outside the budget or does not converge within ``cfg.max_iters``."""
    from .engines import candidate_space, differential_stable_check, ordering_chain_check
    from .errors import BudgetExceeded, NonTermination
    from .operators import make_instance

    inst = make_instance(program, dataset)
    try:
        space = candidate_space(inst, cfg)
        diff = differential_stable_check(inst, cfg)
        chain = ordering_chain_check(inst, cfg, space)
    except (BudgetExceeded, NonTermination):
        return None
    return diff, chain


def _check_pair(args):
    program, dataset, cfg = args
    return check_instance(program, dataset, cfg)


def random_suite(n: int, seed: int, cfg=None, jobs: int = 1, **gen):
    """Draw instances from ``random.Random(seed)`` until ``n`` are accepted.

    Returns ``(results, rejected)`` where ``results`` lists
    ``(index, program, dataset, diff, chain)`` in draw order.
    """
    cfg = cfg or diff_config()
    rng = random.Random(seed)
    results, rejected, index = [], 0, 0
    pool = None
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        pool = ProcessPoolExecutor(jobs)
    try:
        while len(results) < n:
            batch = []
            for _ in range(max(n - len(results), 1)):
                batch.append((index,) + random_instance(rng, window=cfg.window, **gen))
                index += 1
            args = [(p, d, cfg) for _, p, d in batch]
            outs = pool.map(_check_pair, args) if pool else map(_check_pair, args)
            for (k, p, d), out in zip(batch, outs):
                if out is None:
                    rejected += 1
                elif len(results) < n:
                    results.append((k, p, d) + out)
    finally:
        if pool:
            pool.shutdown()
    return results, rejected
