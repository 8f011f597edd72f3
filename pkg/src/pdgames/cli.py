"""Command-line interface.

Every command prints a human-readable report, then a ``---`` line, then
``key=value`` lines.  Exit codes: 0 success or positive verdict, 1 negative
verdict or failed check, 2 usage, parse or validation error, 3 exhausted
resource bound.  Object arguments are file paths or catalog identifiers.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import acceptance, catalog, textio
from .automata import Configuration, FinalStates, Pda, accepts_finite, classify_pda, validate_pda
from .games import (
    DEAD_END_EVE_LOSES,
    DEAD_END_MOVER_LOSES,
    BoundExhausted,
    GameInstance,
    Outcome,
    PushdownProcess,
    default_bounds,
    solve_bounded,
    validate_process,
    winning_set_slice,
)
from .omega import ResourceExhausted, accepts_omega, analyze_run
from .triangle import TriangleChain, chain_validate, complement_chain, triangle_member
from .words import Lasso, format_limit, format_word, parse_word, parse_word_or_lasso, parse_lasso

OK, NEGATIVE, USAGE, EXHAUSTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    exit_code: int
    lines: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    @property
    def report(self) -> str:
        body = list(self.lines) + ["---"] + [f"{k}={v}" for k, v in self.values.items()]
        return "\n".join(body) + "\n"


def _bool(x: bool) -> str:
    return "true" if x else "false"


def resolve(arg: str):
    """A file path or a catalog identifier, parsed into its object."""
    path = Path(arg)
    if path.is_file():
        return textio.load(path)
    try:
        return catalog.lookup(arg)
    except KeyError:
        raise UsageError(f"no such file or catalog identifier: {arg}") from None


def _automaton(obj) -> tuple:
    if isinstance(obj, Pda):
        return obj, None
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], Pda):
        return obj
    raise UsageError("expected an automaton")


def _chain(obj) -> TriangleChain:
    if isinstance(obj, GameInstance):
        return obj.condition
    if isinstance(obj, TriangleChain):
        return obj
    raise UsageError("expected a chain or a game")


def _game(obj) -> GameInstance:
    if not isinstance(obj, GameInstance):
        raise UsageError("expected a game")
    return obj


# --------------------------------------------------------------- commands


def cmd_validate(args) -> CommandResult:
    obj = resolve(args.target)
    if isinstance(obj, GameInstance):
        diags = obj.diagnostics() + chain_validate(obj.condition)
    elif isinstance(obj, TriangleChain):
        diags = chain_validate(obj)
    elif isinstance(obj, PushdownProcess):
        diags = validate_process(obj)
    elif isinstance(obj, catalog.NamedLanguage):
        diags = []
    else:
        p, cond = _automaton(obj)
        diags = validate_pda(p, cond)
    res = CommandResult(USAGE if diags else OK, [f"error: {d}" for d in diags])
    res.values = {"valid": _bool(not diags), "diagnostics": len(diags)}
    return res


def cmd_classify(args) -> CommandResult:
    p, _ = _automaton(resolve(args.target))
    c = classify_pda(p)
    return CommandResult(OK, [], {
        "deterministic": _bool(c.deterministic),
        "realTime": _bool(c.real_time),
        "states": len(p.states),
    })


def cmd_accepts(args) -> CommandResult:
    obj = resolve(args.target)
    word = parse_word_or_lasso(args.word)
    if isinstance(obj, catalog.NamedLanguage):
        verdict = catalog.oracle_language(obj.name, word)
    else:
        p, cond = _automaton(obj)
        if cond is None:
            raise UsageError("the automaton has no acceptance condition")
        if isinstance(word, Lasso):
            if isinstance(cond, FinalStates):
                raise UsageError("final-state acceptance needs a finite word")
            verdict = accepts_omega(p, cond, word)
        else:
            if not isinstance(cond, FinalStates):
                raise UsageError("omega acceptance needs a lasso word")
            verdict = accepts_finite(p, cond.states, word)
    return CommandResult(OK if verdict else NEGATIVE, [], {"verdict": _bool(verdict)})


def cmd_limit(args) -> CommandResult:
    p, cond = _automaton(resolve(args.target))
    colors = cond.as_dict() if hasattr(cond, "as_dict") else None
    r = analyze_run(p, parse_lasso(args.lasso), colors)
    values = {
        "completeness": r.completeness,
        "transient": r.transient_steps,
        "period": r.period_steps,
        "strictlyUnbounded": _bool(r.strictly_unbounded),
        "limit": format_limit(r.stack_limit),
        "infStates": " ".join(sorted(r.inf_states)) if r.inf_states is not None else "",
    }
    if r.min_inf_color is not None:
        values["minInfColor"] = r.min_inf_color
    return CommandResult(OK, [], values)


def cmd_triangle_member(args) -> CommandResult:
    c = _chain(resolve(args.chain))
    verdict = triangle_member(c, parse_lasso(args.lasso))
    return CommandResult(OK if verdict else NEGATIVE, [], {"verdict": _bool(verdict)})


def cmd_triangle_complement(args) -> CommandResult:
    c = _chain(resolve(args.chain))
    cc = complement_chain(c)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "complement.chain"
    path.write_text(textio.format_chain(cc), encoding="utf-8")
    return CommandResult(OK, [f"wrote {path}"], {
        "path": str(path),
        "automata": len(cc.automata()),
        "states": sum(len(p.states) for p in cc.automata()),
    })


def _config(text: str, bottom: str) -> Configuration:
    state, sep, stack = text.partition(":")
    if not sep or not state.strip():
        raise UsageError("configurations are written state:stack, e.g. 'q:⊥ a b'")
    word = parse_word(stack)
    if not word or word[0] != bottom:
        word = (bottom,) + word
    return Configuration(state.strip(), word)


def _bounds(args, n: int) -> tuple:
    depth, height = default_bounds(n)
    return args.depth or depth, args.height or height


def cmd_game_solve(args) -> CommandResult:
    g = _game(resolve(args.game))
    c = _config(args.config, g.process.bottom)
    if c.state not in g.process.states:
        raise UsageError(f"unknown state {c.state}")
    depth, height = _bounds(args, len(c.stack) - 1)
    v = solve_bounded(g, c, depth, height, args.dead_end)
    code = {Outcome.EVE_WINS: OK, Outcome.ADAM_WINS: NEGATIVE, Outcome.UNKNOWN: EXHAUSTED}
    lines = [f"reason: {v.reason}"] if v.reason else []
    return CommandResult(code[v.outcome], lines, {"verdict": v.outcome.value})


def cmd_game_slice(args) -> CommandResult:
    g = _game(resolve(args.game))
    alphabet = parse_word(args.alphabet) if args.alphabet else None
    bounds = (args.depth, args.height) if args.depth and args.height else None
    won = winning_set_slice(g, args.state, args.n, bounds, alphabet, args.dead_end)
    lines = [format_word(u) for u in sorted(won, key=lambda u: (len(u), u))]
    return CommandResult(OK, lines, {"count": len(won), "maxLength": args.n})


def cmd_catalog_export(args) -> CommandResult:
    obj = resolve(args.name)
    try:
        text = textio.format_any(obj)
    except TypeError:
        raise UsageError(f"{args.name} has no text form") from None
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return CommandResult(OK, [f"wrote {args.output}"], {"path": args.output})
    return CommandResult(OK, text.rstrip("\n").splitlines(), {"name": args.name})


def cmd_catalog_list(args) -> CommandResult:
    names = catalog.catalog_names()
    return CommandResult(OK, names, {"count": len(names)})


def cmd_suite(args) -> CommandResult:
    only = [int(x) for x in args.only.split(",")] if args.only else list(acceptance.CRITERIA)
    if any(n not in acceptance.CRITERIA for n in only):
        raise UsageError(f"criteria are numbered 1 to {len(acceptance.CRITERIA)}")
    lines, failed, exhausted = [], [], []
    for number in only:
        fn = acceptance.CRITERIA[number]
        try:
            if number == 4 and args.mutate == "prop46-partition":
                r = fn(mutate=True)
            else:
                r = fn()
        except (ResourceExhausted, BoundExhausted) as e:
            lines.append(f"[EXHAUSTED] {number}. {e}")
            exhausted.append(str(number))
            continue
        lines.append(r.line())
        if not r.ok:
            failed.append(str(number))
    values = {
        "passed": len(only) - len(failed) - len(exhausted),
        "failed": len(failed),
        "exhausted": len(exhausted),
    }
    if failed:
        values["failedCriteria"] = ",".join(failed)
    if exhausted:
        values["exhaustedCriteria"] = ",".join(exhausted)
    code = EXHAUSTED if exhausted else NEGATIVE if failed else OK
    return CommandResult(code, lines, values)


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pdgames", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def bounded(p):
        p.add_argument("--depth", type=int, default=None)
        p.add_argument("--height", type=int, default=None)
        p.add_argument("--dead-end", choices=(DEAD_END_MOVER_LOSES, DEAD_END_EVE_LOSES),
                       default=DEAD_END_MOVER_LOSES)

    p = sub.add_parser("validate", help="structural checks")
    p.add_argument("target")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("classify", help="determinism and real-time profile")
    p.add_argument("target")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("accepts", help="membership of a finite word or a lasso")
    p.add_argument("target")
    p.add_argument("word")
    p.set_defaults(fn=cmd_accepts)

    p = sub.add_parser("limit", help="run analysis on a lasso")
    p.add_argument("target")
    p.add_argument("lasso")
    p.set_defaults(fn=cmd_limit)

    tri = sub.add_parser("triangle", help="chain membership and complement").add_subparsers(
        dest="action", required=True)
    p = tri.add_parser("member")
    p.add_argument("chain")
    p.add_argument("lasso")
    p.set_defaults(fn=cmd_triangle_member)
    p = tri.add_parser("complement")
    p.add_argument("chain")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_triangle_complement)

    game = sub.add_parser("game", help="bounded game solving").add_subparsers(
        dest="action", required=True)
    p = game.add_parser("solve")
    p.add_argument("game")
    p.add_argument("config", help="state:stack, e.g. 'q:⊥ a b c'")
    bounded(p)
    p.set_defaults(fn=cmd_game_solve)
    p = game.add_parser("slice")
    p.add_argument("game")
    p.add_argument("state")
    p.add_argument("n", type=int)
    p.add_argument("--alphabet", default=None, help="letters for u, e.g. 'a b ←'")
    bounded(p)
    p.set_defaults(fn=cmd_game_slice)

    cat = sub.add_parser("catalog", help="catalog objects").add_subparsers(
        dest="action", required=True)
    p = cat.add_parser("export")
    p.add_argument("name")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=cmd_catalog_export)
    p = cat.add_parser("list")
    p.set_defaults(fn=cmd_catalog_list)

    p = sub.add_parser("suite", help="run the acceptance battery")
    p.add_argument("--mutate", choices=("prop46-partition",), default=None)
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    p.set_defaults(fn=cmd_suite)
    return ap


def run_command(argv) -> CommandResult:
    parser = build_parser()
    err = io.StringIO()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(list(argv))
    except SystemExit as e:
        msg = err.getvalue().strip()
        code = USAGE if e.code else OK
        return CommandResult(code, msg.splitlines() if msg else [], {"error": "usage"} if code else {})
    try:
        return args.fn(args)
    except (ResourceExhausted, BoundExhausted) as e:
        return CommandResult(EXHAUSTED, [f"error: {e}"], {"error": "exhausted"})
    except (UsageError, ValueError, KeyError, OSError, NotImplementedError) as e:
        return CommandResult(USAGE, [f"error: {e}"], {"error": "invalid"})


def main(argv=None) -> int:
    res = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.report)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
