"""Deterministic runs of pushdown automata on lasso words.

The run of a deterministic automaton on ``u.v^omega`` is eventually periodic.
``analyze_run`` finds the period by watching *low points*: times whose stack
height is not undercut later.  Two low points with the same state, the same
position inside the input cycle and the same top symbol certify that the
segment between them repeats forever, because the run never looked below
the earlier top symbol in between.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional

from .automata import LAMBDA, Buchi, FinalStates, Muller, Parity, Pda, Pop, Push
from .words import Lasso, WordLimit, lasso_normalize

DEFAULT_STEP_CEILING = 1_000_000

COMPLETE = "Complete"
LAMBDA_DIVERGENT = "LambdaDivergent"
BLOCKED = "Blocked"


class ResourceExhausted(RuntimeError):
    """A simulation hit its configured step ceiling."""


class NondeterministicError(ValueError):
    pass


def step_ceiling(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("WORKBENCH_STEP_CEILING")
    return int(env) if env else DEFAULT_STEP_CEILING


@dataclass(frozen=True)
class RunAnalysis:
    completeness: str
    transient_steps: int
    period_steps: int
    pumped: tuple
    stack_limit: WordLimit
    strictly_unbounded: bool
    inf_states: Optional[frozenset]
    min_inf_color: Optional[int]
    # configuration at the start of the detected period
    entry_state: Optional[str] = None
    entry_stack: tuple = ()
    entry_position: int = 0
    final_stack: tuple = ()

    @property
    def complete(self) -> bool:
        return self.completeness == COMPLETE


def _input_position(pos: int, w: Lasso) -> int:
    n = len(w.spoke)
    return pos if pos < n else n + (pos - n) % len(w.cycle)


def analyze_run(
    p: Pda,
    w: Lasso,
    colors: Optional[dict] = None,
    max_steps: Optional[int] = None,
) -> RunAnalysis:
    ceiling = step_ceiling(max_steps)
    delta = p.delta
    state = p.initial
    stack = [p.bottom]
    pos = 0
    t = 0
    lows: list = []  # (height, key, time, input position)
    where: dict = {}  # key -> index into lows
    trace = [state]

    while True:
        h = len(stack)
        while lows and lows[-1][0] > h:
            del where[lows.pop()[1]]
        key = (state, _input_position(pos, w), stack[-1])
        if key in where:
            h0, _, t0, pos0 = lows[where[key]]
            return _certified(p, w, colors, stack, trace, h0, t0, t, pos0, pos)
        where[key] = len(lows)
        lows.append((h, key, t, pos))

        top = stack[-1]
        acts = delta.get((state, LAMBDA, top))
        consumed = False
        if acts is None:
            acts = delta.get((state, w.letter(pos), top))
            consumed = True
        if not acts:
            final = tuple(stack)
            return RunAnalysis(
                BLOCKED, t, 0, (), final, False, None, None, state, final, pos, final
            )
        if len(acts) > 1:
            raise NondeterministicError(f"several actions on {(state, top)}")
        (act,) = acts
        if isinstance(act, Push):
            stack.append(act.symbol)
        elif isinstance(act, Pop):
            stack.pop()
        state = act.target
        if consumed:
            pos += 1
        t += 1
        trace.append(state)
        if t > ceiling:
            raise ResourceExhausted(f"run exceeded {ceiling} steps")


def _certified(p, w, colors, stack, trace, h0, t0, t, pos0, pos) -> RunAnalysis:
    entry = tuple(stack[:h0])
    pumped = tuple(stack[h0:])
    final = tuple(stack)
    if pos == pos0:
        return RunAnalysis(
            LAMBDA_DIVERGENT, t0, t - t0, pumped, entry, False, None, None,
            trace[t0], entry, pos0, final,
        )
    inf = frozenset(trace[t0:t])
    min_color = min(colors[q] for q in inf) if colors is not None else None
    if pumped:
        limit: WordLimit = lasso_normalize(Lasso(entry, pumped))
    else:
        limit = entry
    return RunAnalysis(
        COMPLETE, t0, t - t0, pumped, limit, bool(pumped), inf, min_color,
        trace[t0], entry, pos0, final,
    )


def accepts_omega(p: Pda, cond, w: Lasso, max_steps: Optional[int] = None) -> bool:
    if isinstance(cond, FinalStates):
        raise TypeError("final-state acceptance does not apply to infinite words")
    colors = cond.as_dict() if isinstance(cond, Parity) else None
    r = analyze_run(p, w, colors, max_steps)
    if not r.complete:
        return False
    return condition_holds(cond, r.inf_states)


def condition_holds(cond, inf_states: frozenset) -> bool:
    if isinstance(cond, Buchi):
        return bool(inf_states & cond.states)
    if isinstance(cond, Muller):
        return frozenset(inf_states) in cond.sets
    if isinstance(cond, Parity):
        colors = cond.as_dict()
        return min(colors[q] for q in inf_states) % 2 == 0
    raise TypeError(f"not an omega condition: {cond!r}")


def stack_limit_lasso(r: RunAnalysis) -> Optional[Lasso]:
    """The normalized infinite limit, or None when the limit is finite."""
    if isinstance(r.stack_limit, Lasso):
        return lasso_normalize(r.stack_limit)
    return None


# ------------------------------------------------------------- continuity


@dataclass(frozen=True)
class ContinuityReport:
    continuous: bool
    witness: Optional[Lasso] = None
    completeness: Optional[str] = None

    def __bool__(self):
        return self.continuous


def perturbations(w: Lasso, alphabet: Iterable[str], bound: int = 8):
    """All lassos differing from ``w`` in one of its first ``bound`` letters."""
    alphabet = sorted(alphabet)
    letters = list(w.spoke) + list(w.cycle)
    for i in range(min(bound, len(letters))):
        for a in alphabet:
            if a == letters[i]:
                continue
            v = letters[:i] + [a] + letters[i + 1 :]
            yield Lasso(tuple(v[: len(w.spoke)]), tuple(v[len(w.spoke) :]))


def check_continuity(
    p: Pda,
    samples: Iterable[Lasso],
    perturb_bound: int = 8,
    max_steps: Optional[int] = None,
) -> ContinuityReport:
    for w in samples:
        for v in (w, *perturbations(w, p.input_alphabet, perturb_bound)):
            r = analyze_run(p, v, max_steps=max_steps)
            if not r.complete:
                return ContinuityReport(False, v, r.completeness)
    return ContinuityReport(True)
