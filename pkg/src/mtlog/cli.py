"""Command-line entry point.

Exit codes: 0 success, 1 semantic negative, 2 usage/parse/safety error,
3 non-termination or budget overrun.  Output is assembled completely before
anything is written, so error paths never leave partial dumps behind.
"""
from __future__ import annotations

import argparse
import sys

from . import engines as en
from .errors import BudgetExceeded, MtlogError, NonTermination
from .grounding import active_constants, ground
from .operators import make_instance
from .parser import parse_dataset, parse_metric_atom, parse_program
from .semantics import (
    Interpretation,
    ThreeValuedInterpretation,
    dataset_interpretation,
    eval2_at,
    eval3_at,
)
from .syntax import Dataset, Program

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(args) -> tuple:
    arities: dict = {}
    program = parse_program(_read(args.program), arities) if args.program else Program()
    dataset = parse_dataset(_read(args.dataset), arities) if args.dataset else Dataset()
    return program, dataset


def _interp_file(path: str):
    """An interpretation file: dataset syntax, or a ``# true`` / ``# undef``
    report for three-valued input."""
    text = _read(path)
    if any(line.strip() == "# true" for line in text.splitlines()):
        return en.parse_report("kind: input\n" + text).value
    return dataset_interpretation(parse_dataset(text))


def _config(args, bounded: bool = False, budget: int | None = None) -> en.EngineConfig:
    window = tuple(args.window) if getattr(args, "window", None) else None
    if bounded and window is None:
        raise UsageError("this command needs --window LO HI")
    budget = args.budget if getattr(args, "budget", None) else budget or 1 << 16
    return en.EngineConfig(
        mode="bounded" if window is not None else "symbolic",
        window=window,
        max_iters=args.max_iters,
        enumeration_budget=budget,
    )


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> tuple:
    program, _ = _load(args)
    return EXIT_OK, str(program)


def cmd_ground(args) -> tuple:
    program, dataset = _load(args)
    rules = ground(program, active_constants(program, dataset))
    return EXIT_OK, "".join(f"{r}\n" for r in rules)


def cmd_kk(args) -> tuple:
    program, dataset = _load(args)
    return EXIT_OK, en.kripke_kleene_model(make_instance(program, dataset), _config(args)).to_text()


def cmd_wf(args) -> tuple:
    program, dataset = _load(args)
    return EXIT_OK, en.well_founded_model(make_instance(program, dataset), _config(args)).to_text()


def _models_text(space, models) -> str:
    out = [
        f"window: {space.window[0]} {space.window[1]}",
        f"complete: {str(space.complete).lower()}",
        f"models: {len(models)}",
    ]
    for k, m in enumerate(models, 1):
        out.append(f"# model {k}")
        out.append(m.dump().rstrip("\n"))
    return "\n".join(x for x in out if x) + "\n"


def cmd_stable(args) -> tuple:
    program, dataset = _load(args)
    inst = make_instance(program, dataset)
    if args.enumerate:
        cfg = _config(args, bounded=True)
        space = en.candidate_space(inst, cfg)
        if args.three:
            return EXIT_OK, _models_text(space, en.enumerate_stable3_bounded(inst, cfg, space))
        return EXIT_OK, _models_text(space, en.enumerate_stable2_bounded(inst, cfg, space))
    cfg = _config(args)
    value = _interp_file(args.check)
    if isinstance(value, ThreeValuedInterpretation):
        ok = en.is_stable3(inst, value, cfg)
    else:
        ok = en.is_stable2(inst, value, cfg)
    return (EXIT_OK if ok else EXIT_NEGATIVE), f"{str(ok).lower()}\n"


def cmd_supported(args) -> tuple:
    program, dataset = _load(args)
    inst = make_instance(program, dataset)
    value = _interp_file(args.check)
    if isinstance(value, Interpretation):
        value = ThreeValuedInterpretation.exact(value)
    ok = en.is_supported_model(inst, value, _config(args))
    return (EXIT_OK if ok else EXIT_NEGATIVE), f"{str(ok).lower()}\n"


def cmd_eval(args) -> tuple:
    program, dataset = _load(args)
    atom = parse_metric_atom(args.atom)
    if args.interp:
        value = _interp_file(args.interp)
    else:
        value = en.well_founded_model(make_instance(program, dataset), _config(args)).value
    if args.three:
        if isinstance(value, Interpretation):
            value = ThreeValuedInterpretation.exact(value)
        return EXIT_OK, f"{eval3_at(atom, value, args.at)}\n"
    if isinstance(value, ThreeValuedInterpretation):
        if not value.is_exact:
            raise UsageError("the interpretation is three-valued; use --three")
        value = value.lo
    return EXIT_OK, f"{str(eval2_at(atom, value, args.at)).lower()}\n"


def cmd_diff(args) -> tuple:
    from .randgen import DIFF_BUDGET, random_suite

    cfg = _config(args, bounded=True, budget=DIFF_BUDGET)
    if args.random is None:
        program, dataset = _load(args)
        report = en.differential_stable_check(make_instance(program, dataset), cfg)
        return (EXIT_OK if report.agree else EXIT_NEGATIVE), report.to_text()
    results, rejected = random_suite(args.random, args.seed, cfg, jobs=args.jobs)
    lines = [f"seed: {args.seed}", f"instances: {len(results)}", f"rejected: {rejected}"]
    failures = 0
    for k, p, d, diff, chain in results:
        if diff.agree and chain.ok:
            continue
        failures += 1
        lines.append(f"# instance {k}")
        lines.append(f"chain: {'ok' if chain.ok else 'broken'}")
        lines.append(diff.to_text().rstrip("\n"))
        if diff.agree:
            lines += ["# program", str(p).rstrip("\n"), "# dataset", str(d).rstrip("\n")]
    lines.append(f"discrepancies: {failures}")
    return (EXIT_NEGATIVE if failures else EXIT_OK), "\n".join(lines) + "\n"


COMMANDS = {
    "check": cmd_check,
    "ground": cmd_ground,
    "kk": cmd_kk,
    "wf": cmd_wf,
    "stable": cmd_stable,
    "supported": cmd_supported,
    "eval": cmd_eval,
    "diff": cmd_diff,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mtlog", description="Reasoning for DatalogMTL with negation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, program_required=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--program", required=program_required, help="program file (.mtl)")
        p.add_argument("--dataset", help="dataset file (.facts)")
        p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"))
        p.add_argument("--max-iters", type=int, default=10_000)
        p.add_argument("--budget", type=int, help="enumeration budget (candidate count)")
        return p

    add("check", "parse and safety-check a program")
    add("ground", "print the grounding of a program")
    add("kk", "Kripke-Kleene model")
    add("wf", "well-founded model")
    p = add("stable", "check or enumerate stable models")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", metavar="FILE", help="interpretation to verify")
    mode.add_argument("--enumerate", action="store_true")
    p.add_argument("--three", action="store_true", help="enumerate three-valued stable models")
    p = add("supported", "check a supported model")
    p.add_argument("--check", metavar="FILE", required=True)
    p = add("eval", "truth value of a ground metric atom", program_required=False)
    p.add_argument("--atom", required=True)
    p.add_argument("--at", type=int, required=True)
    p.add_argument("--three", action="store_true")
    p.add_argument("--interp", metavar="FILE", help="interpretation (default: the well-founded model)")
    p = add("diff", "differential stable-model check", program_required=False)
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(window=None)
    return parser


def run(argv=None) -> tuple:
    """Returns ``(exit_code, stdout_text, stderr_text)``."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "diff":
            if args.window is None:
                args.window = [0, 3]
            if args.random is None and not args.program:
                raise UsageError("diff needs --random N or --program")
        if args.command == "eval" and not (args.program or args.interp):
            raise UsageError("eval needs --program or --interp")
        code, out = COMMANDS[args.command](args)
        return code, out, ""
    except UsageError as exc:
        return EXIT_USAGE, "", f"mtlog: error: {exc}\n"
    except (NonTermination, BudgetExceeded) as exc:
        return EXIT_LIMIT, "", f"mtlog: {exc}\n"
    except (MtlogError, ValueError) as exc:
        return EXIT_USAGE, "", f"mtlog: {exc}\n"


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
