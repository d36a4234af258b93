"""Model computation and checking.

Kripke-Kleene, well-founded, supported and stable models come from the
approximator through :mod:`mtlog.aft`.  The here-and-there (HT) side is
implemented directly from its definition and decided by brute force over a
finite candidate space, which is what the differential harness compares
against the fixpoint side.

Candidate spaces
----------------
Every stable model ``I`` (under either definition) satisfies
``facts ⊆ I ⊆ U`` where ``U`` is the least model of the program with all
negated literals deleted.  The free region ``U \\ facts`` is split into
blocks: one block per timepoint inside the window, and one block per
maximal interval outside it.  A candidate switches each block fully on or
off.  When no block lies outside the window the enumeration is complete;
with ``widen`` (the default) a bounded free region is always brought inside
by enlarging the window.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import aft
from . import temporal as tm
from .errors import BudgetExceeded, NonTermination
from .operators import (
    ReasoningInstance,
    _fire,
    a1,
    a_op,
    as_pair,
    from_pair,
    make_instance,
)
from .semantics import (
    Interpretation,
    ThreeValuedInterpretation,
    body_set,
    eval2_set,
    is_model2,
)
from .syntax import Dataset, Program, head_atom
from .temporal import Interval, IntervalSet

KINDS = ("kripke-kleene", "well-founded", "supported", "stable3", "stable2", "ht", "stable-ht")


@dataclass(frozen=True)
class EngineConfig:
    mode: str = "symbolic"  # or "bounded"
    window: tuple | None = None
    max_iters: int = aft.DEFAULT_MAX_ITERS
    enumeration_budget: int = 1 << 16
    widen: bool = True

    def __post_init__(self):
        if self.mode not in ("symbolic", "bounded"):
            raise ValueError(f"unknown engine mode {self.mode!r}")
        if self.mode == "bounded":
            if self.window is None or self.window[0] > self.window[1]:
                raise ValueError("bounded mode needs a non-empty window")
        if self.max_iters <= 0 or self.enumeration_budget <= 0:
            raise ValueError("budgets must be positive")

    def require_bounded(self, what: str) -> None:
        if self.mode != "bounded":
            raise ValueError(f"{what} needs bounded-window mode")


@dataclass
class ModelReport:
    kind: str
    value: object  # ThreeValuedInterpretation or Interpretation
    iterations: int = 0

    @property
    def exact(self) -> bool:
        if isinstance(self.value, ThreeValuedInterpretation):
            return self.value.is_exact
        return True

    def to_text(self) -> str:
        head = f"kind: {self.kind}\niterations: {self.iterations}\nexact: {str(self.exact).lower()}\n"
        return head + self.value.dump()


def parse_report(text: str) -> ModelReport:
    """Inverse of :meth:`ModelReport.to_text`."""
    from .parser import parse_dataset
    from .semantics import dataset_interpretation

    header = {}
    blocks = {"": []}
    current = ""
    for line in text.splitlines():
        if line.startswith("# "):
            current = line[2:].strip()
            blocks[current] = []
        elif current == "" and ":" in line and "@" not in line:
            key, _, val = line.partition(":")
            header[key.strip()] = val.strip()
        elif line.strip():
            blocks[current].append(line)

    def interp(lines):
        return dataset_interpretation(parse_dataset("\n".join(lines)))

    if "true" in blocks:
        lo = interp(blocks["true"])
        value = ThreeValuedInterpretation(lo, lo | interp(blocks.get("undef", [])))
    else:
        value = interp(blocks[""])
    return ModelReport(header["kind"], value, int(header.get("iterations", 0)))


def _diagnose(inst: ReasoningInstance, exc: NonTermination) -> NonTermination:
    state = getattr(exc, "state", None)
    if state is None:
        return exc
    before, after = state
    views = zip(before, after) if isinstance(before, aft.Pair) else [(before, after)]
    grew = {a for b, c in views for a in inst.herbrand if b.get(a) != c.get(a)}
    rules = [str(r) for r in inst.ground_program if head_atom(r.head) in grew]
    detail = "still growing: " + ", ".join(sorted(map(str, grew)))
    if rules:
        detail += "; rules: " + " ".join(rules)
    out = NonTermination(exc.iterations, detail)
    out.state = state
    return out


def kripke_kleene_model(inst: ReasoningInstance, cfg: EngineConfig = EngineConfig()) -> ModelReport:
    approx = inst.approximator()
    lat = inst.lattice
    try:
        pair, n = aft.iterate(lambda p: aft.apply(approx, p), aft.Pair(lat.bottom, lat.top), cfg.max_iters)
    except NonTermination as exc:
        raise _diagnose(inst, exc) from None
    return ModelReport("kripke-kleene", from_pair(pair), n)


def well_founded_model(inst: ReasoningInstance, cfg: EngineConfig = EngineConfig()) -> ModelReport:
    approx = inst.approximator()
    lat = inst.lattice
    try:
        pair, n = aft.iterate(
            lambda p: aft.stable_revision(approx, p, cfg.max_iters), aft.Pair(lat.bottom, lat.top), cfg.max_iters
        )
    except NonTermination as exc:
        raise _diagnose(inst, exc) from None
    return ModelReport("well-founded", from_pair(pair), n)


def stable_revision(inst: ReasoningInstance, j: ThreeValuedInterpretation, cfg: EngineConfig = EngineConfig()):
    try:
        return from_pair(aft.stable_revision(inst.approximator(), as_pair(j), cfg.max_iters))
    except NonTermination as exc:
        raise _diagnose(inst, exc) from None


def is_supported_model(inst: ReasoningInstance, j: ThreeValuedInterpretation, cfg: EngineConfig = EngineConfig()) -> bool:
    return a_op(inst, j) == j


def is_stable3(inst: ReasoningInstance, j: ThreeValuedInterpretation, cfg: EngineConfig = EngineConfig()) -> bool:
    return stable_revision(inst, j, cfg) == j


def is_stable2(inst: ReasoningInstance, i: Interpretation, cfg: EngineConfig = EngineConfig()) -> bool:
    """Two-valued stable: a model of the dataset and program whose exact pair
    is a stable fixpoint.  Both conjuncts are checked."""
    if not is_model2(i, inst.facts, inst.ground_program):
        return False
    return is_stable3(inst, ThreeValuedInterpretation.exact(i), cfg)


# ---------------------------------------------------------------------------
# HT semantics


def is_ht_model(inst: ReasoningInstance, j: ThreeValuedInterpretation) -> bool:
    """HT-model check.  Condition 1 reads positive atoms in ``lo`` and negated
    atoms in ``hi``; condition 2 reads both in ``hi``."""
    lo, hi = j.lo, j.hi
    if not inst.facts.issubset(lo):
        return False
    for r in inst.ground_program:
        if not body_set(r.positive, r.negative, lo, hi).issubset(eval2_set(r.head, lo)):
            return False
        if not body_set(r.positive, r.negative, hi, hi).issubset(eval2_set(r.head, hi)):
            return False
    return True


class _HTCompanions:
    """Fast repeated checks of ``(J, I)`` for a fixed ``I``: condition 2 and the
    negated literals depend on ``I`` only."""

    def __init__(self, inst: ReasoningInstance, i: Interpretation):
        self.inst = inst
        self.i = i
        self.cond2 = all(
            body_set(r.positive, r.negative, i, i).issubset(eval2_set(r.head, i)) for r in inst.ground_program
        )
        self.neg = [body_set((), r.negative, i, i) for r in inst.ground_program]

    def check(self, j: Interpretation) -> bool:
        if not self.cond2 or not j.issubset(self.i):
            return False
        if not self.inst.facts.issubset(j):
            return False
        for r, neg in zip(self.inst.ground_program, self.neg):
            s = neg
            for m in r.positive:
                if not s:
                    break
                s = tm.intersect(s, eval2_set(m, j))
            if s and not s.issubset(eval2_set(r.head, j)):
                return False
        return True


# ---------------------------------------------------------------------------
# candidate spaces


def positive_closure(inst: ReasoningInstance, cfg: EngineConfig = EngineConfig()) -> Interpretation:
    """Least model of the program with every negated literal deleted."""
    try:
        return aft.lfp(
            lambda x: _fire(inst, ((r, body_set(r.positive, (), x, x)) for r in inst.ground_program)),
            Interpretation(),
            cfg.max_iters,
        )
    except NonTermination as exc:
        raise _diagnose(inst, exc) from None


@dataclass(frozen=True)
class Block:
    atom: object
    span: tuple  # closed (lo, hi)

    def as_set(self) -> IntervalSet:
        return IntervalSet._raw((self.span,))


def blocks_of(region: Interpretation, window: tuple) -> tuple:
    """Split ``region`` into window points and maximal outside intervals.

    Returns ``(blocks, complete)`` with ``complete`` false when some block
    lies outside the window.
    """
    w = IntervalSet([Interval(*window)])
    outside = tm.complement(w)
    blocks = []
    complete = True
    for atom, s in region.items():
        for t in tm.intersect(s, w).to_points():
            blocks.append(Block(atom, (t, t)))
        for span in tm.intersect(s, outside).spans:
            blocks.append(Block(atom, span))
            complete = False
    return blocks, complete


def _assemble(base: Interpretation, chosen) -> Interpretation:
    ext = {a: s for a, s in base.items()}
    for b in chosen:
        ext[b.atom] = tm.union(ext[b.atom], b.as_set()) if b.atom in ext else b.as_set()
    return Interpretation(ext)


@dataclass
class CandidateSpace:
    base: Interpretation
    upper: Interpretation
    blocks: list
    window: tuple
    complete: bool

    @property
    def size(self) -> int:
        return 1 << len(self.blocks)

    def __iter__(self):
        for mask in range(self.size):
            yield _assemble(self.base, (b for k, b in enumerate(self.blocks) if mask >> k & 1))

    def pairs(self):
        """Consistent pairs ``(lo, hi)`` with each block false, undef or true."""
        for code in itertools.product((0, 1, 2), repeat=len(self.blocks)):
            lo = _assemble(self.base, (b for b, c in zip(self.blocks, code) if c == 2))
            hi = _assemble(self.base, (b for b, c in zip(self.blocks, code) if c >= 1))
            yield ThreeValuedInterpretation(lo, hi, check=False)


def candidate_space(inst: ReasoningInstance, cfg: EngineConfig) -> CandidateSpace:
    cfg.require_bounded("enumeration")
    base = inst.facts
    upper = positive_closure(inst, cfg) | base
    free = upper - base
    window = tuple(cfg.window)
    if cfg.widen:
        hulls = [s.hull() for _, s in free.items()]
        if all(h is not None and h.is_bounded for h in hulls) and hulls:
            window = (min([window[0]] + [h.lo for h in hulls]), max([window[1]] + [h.hi for h in hulls]))
    blocks, complete = blocks_of(free, window)
    space = CandidateSpace(base, upper, blocks, window, complete)
    if space.size > cfg.enumeration_budget:
        raise BudgetExceeded(space.size, cfg.enumeration_budget)
    return space


def _sort_dump(models) -> list:
    return sorted(models, key=lambda i: i.dump())


def enumerate_stable2_bounded(inst: ReasoningInstance, cfg: EngineConfig, space: CandidateSpace | None = None) -> list:
    space = space or candidate_space(inst, cfg)
    return _sort_dump(i for i in space if is_stable2(inst, i, cfg))


def enumerate_stable3_bounded(inst: ReasoningInstance, cfg: EngineConfig, space: CandidateSpace | None = None) -> list:
    space = space or candidate_space(inst, cfg)
    n = 3 ** len(space.blocks)
    if n > cfg.enumeration_budget:
        raise BudgetExceeded(n, cfg.enumeration_budget, "three-valued candidates")
    return sorted((j for j in space.pairs() if is_stable3(inst, j, cfg)), key=lambda j: j.dump())


def ht_companion_glb(inst: ReasoningInstance, i: Interpretation, cfg: EngineConfig) -> tuple:
    """Meet of every ``J ⊆ I`` with ``(J, I)`` an HT-model.

    ``J`` ranges over the facts plus any selection of blocks of ``I \\ facts``.
    Restricting to ``J ⊆ I`` loses nothing: if ``(J, I)`` is an HT-model so is
    ``(J ∩ I, I)``.  Returns ``(glb or None, complete)``.
    """
    window = cfg.window if cfg.window is not None else (0, -1)
    region = i - inst.facts
    if cfg.widen:
        h = [s.hull() for _, s in region.items()]
        if h and all(x.is_bounded for x in h):
            window = (min([window[0]] + [x.lo for x in h]), max([window[1]] + [x.hi for x in h]))
    blocks, complete = blocks_of(region, window)
    if (1 << len(blocks)) > cfg.enumeration_budget:
        raise BudgetExceeded(1 << len(blocks), cfg.enumeration_budget, "HT companions")
    comp = _HTCompanions(inst, i)
    glb = None
    for mask in range(1 << len(blocks)):
        j = _assemble(inst.facts, (b for k, b in enumerate(blocks) if mask >> k & 1))
        if comp.check(j):
            glb = j if glb is None else glb & j
    return glb, complete


def is_stable_ht(inst: ReasoningInstance, i: Interpretation, cfg: EngineConfig) -> bool:
    cfg.require_bounded("stable HT check")
    if not is_ht_model(inst, ThreeValuedInterpretation.exact(i)):
        return False
    glb, _ = ht_companion_glb(inst, i, cfg)
    return glb == i


def enumerate_stable_ht_bounded(inst: ReasoningInstance, cfg: EngineConfig, space: CandidateSpace | None = None) -> list:
    space = space or candidate_space(inst, cfg)
    return _sort_dump(i for i in space if is_stable_ht(inst, i, cfg))


def check_lemma_prefixpoint(inst: ReasoningInstance, j: ThreeValuedInterpretation) -> bool:
    """If ``j`` is an HT-model then ``j.lo`` is a pre-fixpoint of ``A1(., j.hi)``."""
    if not is_ht_model(inst, j):
        return True
    return a1(inst, j.lo, j.hi).issubset(j.lo)


# ---------------------------------------------------------------------------
# differential harness


@dataclass
class DiffReport:
    agree: bool
    stable_ht: list
    stable_aft: list
    window: tuple
    complete: bool
    candidates: int
    program: Program | None = None
    dataset: Dataset | None = None
    witness: Interpretation | None = None

    def to_text(self) -> str:
        lines = [
            f"agree: {str(self.agree).lower()}",
            f"window: {self.window[0]} {self.window[1]}",
            f"complete: {str(self.complete).lower()}",
            f"candidates: {self.candidates}",
            f"stable-ht: {len(self.stable_ht)}",
            f"stable-aft: {len(self.stable_aft)}",
        ]
        if not self.agree:
            lines.append("# program")
            lines.append(str(self.program).rstrip("\n"))
            lines.append("# dataset")
            lines.append(str(self.dataset).rstrip("\n"))
            lines.append("# witness")
            lines.append(self.witness.dump().rstrip("\n"))
        return "\n".join(lines) + "\n"


def _disagreement(inst: ReasoningInstance, cfg: EngineConfig, space: CandidateSpace):
    ht, st, witness = [], [], None
    for i in space:
        a = is_stable2(inst, i, cfg)
        h = is_stable_ht(inst, i, cfg)
        if a:
            st.append(i)
        if h:
            ht.append(i)
        if a != h and witness is None:
            witness = i
    return _sort_dump(ht), _sort_dump(st), witness


def _minimize(program: Program, dataset: Dataset, cfg: EngineConfig):
    """Greedily drop rules and facts while some candidate still disagrees."""

    def still_fails(p, d):
        try:
            inst = make_instance(p, d)
            _, _, w = _disagreement(inst, cfg, candidate_space(inst, cfg))
        except (BudgetExceeded, NonTermination):
            return None
        return w

    rules, facts = list(program.rules), list(dataset.facts)
    changed = True
    while changed:
        changed = False
        for seq in (rules, facts):
            for k in range(len(seq)):
                trial = seq[:k] + seq[k + 1:]
                p = Program(tuple(trial if seq is rules else rules))
                d = Dataset(tuple(trial if seq is facts else facts))
                if still_fails(p, d) is not None:
                    seq[:] = trial
                    changed = True
                    break
    p, d = Program(tuple(rules)), Dataset(tuple(facts))
    return p, d, still_fails(p, d)


def differential_stable_check(inst: ReasoningInstance, cfg: EngineConfig) -> DiffReport:
    """Compare stable HT-models with two-valued AFT-stable models on every
    candidate of the bounded space."""
    space = candidate_space(inst, cfg)
    ht, st, witness = _disagreement(inst, cfg, space)
    report = DiffReport(witness is None and ht == st, ht, st, space.window, space.complete, space.size)
    if not report.agree:
        program = inst.program or Program()
        p, d, w = _minimize(program, inst.dataset, cfg)
        report.program, report.dataset, report.witness = p, d, (w if w is not None else witness)
    return report


def precision_leq(j: ThreeValuedInterpretation, k: ThreeValuedInterpretation) -> bool:
    return j.lo.issubset(k.lo) and k.hi.issubset(j.hi)


@dataclass
class ChainReport:
    kk_below_wf: bool
    wf_stable: bool
    wf_below_stable: bool
    stable_models: int
    three_valued: bool = field(default=False)

    @property
    def ok(self) -> bool:
        return self.kk_below_wf and self.wf_stable and self.wf_below_stable


def ordering_chain_check(inst: ReasoningInstance, cfg: EngineConfig, space: CandidateSpace | None = None) -> ChainReport:
    """KK ≤p WF, WF is stable, and WF ≤p every enumerated stable model.

    Three-valued stable models are enumerated when ``3**blocks`` fits the
    budget; otherwise the exact pairs of the two-valued stable models are used.
    """
    kk = kripke_kleene_model(inst, cfg).value
    wf = well_founded_model(inst, cfg).value
    space = space or candidate_space(inst, cfg)
    try:
        models = enumerate_stable3_bounded(inst, cfg, space)
        three = True
    except BudgetExceeded:
        models = [ThreeValuedInterpretation.exact(i) for i in enumerate_stable2_bounded(inst, cfg, space)]
        three = False
    return ChainReport(
        precision_leq(kk, wf),
        is_stable3(inst, wf, cfg),
        all(precision_leq(wf, m) for m in models),
        len(models),
        three,
    )


__all__ = [
    "EngineConfig",
    "ModelReport",
    "parse_report",
    "kripke_kleene_model",
    "well_founded_model",
    "stable_revision",
    "is_supported_model",
    "is_stable3",
    "is_stable2",
    "is_ht_model",
    "is_stable_ht",
    "ht_companion_glb",
    "positive_closure",
    "candidate_space",
    "enumerate_stable2_bounded",
    "enumerate_stable3_bounded",
    "enumerate_stable_ht_bounded",
    "check_lemma_prefixpoint",
    "differential_stable_check",
    "ordering_chain_check",
]
