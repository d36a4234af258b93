from __future__ import annotations

from itertools import product

from .syntax import Atom, Const, Dataset, Program, Rule, constants, predicates

FRESH_CONSTANT = Const("C0")


def active_constants(program: Program, dataset: Dataset | None = None) -> set:
    """Constants of ``program`` and ``dataset``; one fresh constant if there
    are none but some rule has variables."""
    consts = constants(program, dataset)
    if not consts and any(rule.variables() for rule in program):
        consts = {FRESH_CONSTANT}
    return consts


def ground_rule(rule: Rule, consts) -> list:
    vs = sorted(rule.variables())
    if not vs:
        return [rule]
    cs = sorted(consts)
    return [rule.substitute(dict(zip(vs, combo))) for combo in product(cs, repeat=len(vs))]


def ground(program: Program, consts) -> list:
    out = {}
    for rule in program:
        for g in ground_rule(rule, consts):
            out.setdefault(g, None)
    return list(out)


def herbrand_base(program: Program, dataset: Dataset | None, consts) -> frozenset:
    cs = sorted(consts)
    return frozenset(
        Atom(pred, tuple(args))
        for pred, arity in predicates(program, dataset).items()
        for args in product(cs, repeat=arity)
    )
