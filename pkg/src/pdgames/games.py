"""Pushdown games with stack-limit winning conditions.

Eve wins an infinite play when the process stack is strictly unbounded and
its limit is accepted by the condition chain.  Plays here are closed into
lassos: either a configuration repeats (stationary, finite limit) or the play
returns to the same state and top symbol above a low point (ascending, the
net word between the two visits is pumped forever).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .automata import Configuration, Pop, Push, Skip, apply_action
from .triangle import TriangleChain, triangle_member
from .words import Lasso, WordLimit, lasso_normalize

EVE = "Eve"
ADAM = "Adam"


@dataclass(frozen=True, eq=True)
class PushdownProcess:
    states: frozenset
    stack_alphabet: frozenset
    bottom: str
    delta: dict  # (state, top) -> frozenset[Action]
    owner: dict  # state -> EVE | ADAM

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "stack_alphabet", frozenset(self.stack_alphabet))
        object.__setattr__(self, "delta", {k: frozenset(v) for k, v in self.delta.items() if v})
        object.__setattr__(self, "owner", dict(self.owner))

    def __hash__(self):
        return hash((self.states, self.bottom, frozenset(self.delta.items()),
                     frozenset(self.owner.items())))

    def with_owner(self, owner: dict) -> "PushdownProcess":
        return PushdownProcess(self.states, self.stack_alphabet, self.bottom, self.delta, owner)


def validate_process(p: PushdownProcess) -> list:
    diags = []
    if p.bottom not in p.stack_alphabet:
        diags.append(f"bottom symbol {p.bottom} not in stack alphabet")
    for q in sorted(p.states):
        if p.owner.get(q) not in (EVE, ADAM):
            diags.append(f"state {q} has no owner")
    for q in sorted(set(p.owner) - set(p.states)):
        diags.append(f"owner given for unknown state {q}")
    for (q, z) in sorted(p.delta):
        where = f"delta({q}, {z})"
        if q not in p.states:
            diags.append(f"{where}: unknown state {q}")
        if z not in p.stack_alphabet:
            diags.append(f"{where}: stack symbol {z} not in stack alphabet")
        for act in sorted(p.delta[(q, z)], key=str):
            if act.target not in p.states:
                diags.append(f"{where}: target {act.target} not a state")
            if isinstance(act, Pop) and z == p.bottom:
                diags.append(f"{where}: pops the bottom symbol")
            if isinstance(act, Push) and (act.symbol == p.bottom or act.symbol not in p.stack_alphabet):
                diags.append(f"{where}: pushes invalid symbol {act.symbol}")
    return diags


def moves(p: PushdownProcess, c: Configuration) -> list:
    """Applicable actions at ``c`` in a fixed order."""
    return sorted(p.delta.get((c.state, c.stack[-1]), ()), key=str)


def successors(p: PushdownProcess, c: Configuration) -> list:
    return [Configuration(a.target, apply_action(a, c.stack)) for a in moves(p, c)]


@dataclass(frozen=True)
class GameInstance:
    process: PushdownProcess
    condition: TriangleChain
    name: str = ""

    def diagnostics(self) -> list:
        diags = validate_process(self.process)
        if self.condition.input_alphabet != self.process.stack_alphabet:
            diags.append("condition input alphabet differs from the process stack alphabet")
        return diags


# ------------------------------------------------------------------ plays

STATIONARY = "Stationary"
ASCENDING = "Ascending"


@dataclass(frozen=True)
class PlayLasso:
    start: Configuration
    prefix_moves: tuple  # ((player, action), ...)
    cycle_moves: tuple
    kind: str
    net: tuple = ()

    def replay(self, cycles: int = 1) -> list:
        """Configurations visited by prefix then ``cycles`` rounds of the cycle."""
        out = [self.start]
        c = self.start
        for _, act in self.prefix_moves + self.cycle_moves * cycles:
            c = Configuration(act.target, apply_action(act, c.stack))
            out.append(c)
        return out

    @property
    def entry(self) -> Configuration:
        return self.replay(0)[-1]

    def limit(self) -> WordLimit:
        entry = self.entry.stack
        if self.kind == ASCENDING:
            return lasso_normalize(Lasso(entry, self.net))
        path = self.replay(1)[len(self.prefix_moves):]
        return min((c.stack for c in path), key=len)


def eve_wins_play(pl: PlayLasso, cond: TriangleChain, max_steps: Optional[int] = None) -> bool:
    lim = pl.limit()
    if not isinstance(lim, Lasso):
        return False
    return triangle_member(cond, lim, max_steps)


# ----------------------------------------------------------------- solver


class Outcome(enum.Enum):
    EVE_WINS = "EveWins"
    ADAM_WINS = "AdamWins"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    reason: str = ""

    def __str__(self):
        return self.outcome.value + (f"({self.reason})" if self.reason else "")


EVE_WINS = Verdict(Outcome.EVE_WINS)
ADAM_WINS = Verdict(Outcome.ADAM_WINS)

DEAD_END_MOVER_LOSES = "mover-loses"
DEAD_END_EVE_LOSES = "eve-loses"


class BoundExhausted(RuntimeError):
    def __init__(self, message: str, word=None):
        super().__init__(message)
        self.word = word


def _close(path: list, actions: list) -> Optional[PlayLasso]:
    """Close the path into a lasso if its last configuration repeats one."""
    last = path[-1]
    h = len(last.stack)
    floor = h
    for i in range(len(path) - 2, -1, -1):
        c = path[i]
        hi = len(c.stack)
        if c.state == last.state and c.stack[-1] == last.stack[-1] and hi <= floor:
            if c.stack == last.stack:
                return PlayLasso(path[0], tuple(actions[:i]), tuple(actions[i:]), STATIONARY)
            if hi < h and last.stack[:hi] == c.stack:
                return PlayLasso(path[0], tuple(actions[:i]), tuple(actions[i:]),
                                 ASCENDING, last.stack[hi:])
        floor = min(floor, hi)
    return None


def explore(g: GameInstance, start: Configuration, depth: int, height: int):
    """Yield every branch of the play tree as ``(path_actions, outcome)``.

    ``outcome`` is a PlayLasso, ``("dead", player)`` or ``("overflow", why)``.
    """
    proc = g.process

    def go(path, actions):
        c = path[-1]
        if len(path) > 1:
            closed = _close(path, actions)
            if closed is not None:
                yield actions, closed
                return
        if len(actions) >= depth:
            yield actions, ("overflow", f"depth {depth}")
            return
        if len(c.stack) > height:
            yield actions, ("overflow", f"height {height}")
            return
        acts = moves(proc, c)
        if not acts:
            yield actions, ("dead", proc.owner[c.state])
            return
        player = proc.owner[c.state]
        for a in acts:
            n = Configuration(a.target, apply_action(a, c.stack))
            yield from go(path + [n], actions + [(player, a)])

    yield from go([start], [])


def solve_bounded(
    g: GameInstance,
    start: Configuration,
    depth: int,
    height: int,
    dead_end: str = DEAD_END_MOVER_LOSES,
    max_steps: Optional[int] = None,
) -> Verdict:
    """Winner from ``start`` by alternating search over closed plays.

    Exact on games where every configuration after the first move has at
    most one successor; anything else, or any branch running past the depth
    or height bound, gives ``Unknown``.
    """
    if depth <= 0:
        return Verdict(Outcome.UNKNOWN, "depth 0")
    proc = g.process
    cache: dict = {}

    def value(path, actions) -> Verdict:
        c = path[-1]
        if len(path) > 1:
            closed = _close(path, actions)
            if closed is not None:
                key = (closed.entry, closed.kind, closed.net, _cycle_key(closed))
                if key not in cache:
                    cache[key] = eve_wins_play(closed, g.condition, max_steps)
                return EVE_WINS if cache[key] else ADAM_WINS
        if len(actions) >= depth:
            return Verdict(Outcome.UNKNOWN, f"depth {depth} exhausted at {c}")
        if len(c.stack) > height:
            return Verdict(Outcome.UNKNOWN, f"height {height} exhausted at {c}")
        acts = moves(proc, c)
        player = proc.owner[c.state]
        if not acts:
            if dead_end == DEAD_END_EVE_LOSES:
                return ADAM_WINS
            return ADAM_WINS if player == EVE else EVE_WINS
        if len(acts) > 1 and len(path) > 1:
            return Verdict(Outcome.UNKNOWN, f"branching after the first move at {c}")
        results = [
            value(path + [Configuration(a.target, apply_action(a, c.stack))],
                  actions + [(player, a)])
            for a in acts
        ]
        mine = EVE_WINS if player == EVE else ADAM_WINS
        if any(r == mine for r in results):
            return mine
        unknown = [r for r in results if r.outcome is Outcome.UNKNOWN]
        if unknown:
            return unknown[0]
        return ADAM_WINS if player == EVE else EVE_WINS

    return value([start], [])


def _cycle_key(pl: PlayLasso) -> tuple:
    return tuple(str(a) for _, a in pl.cycle_moves)


def default_bounds(n: int) -> tuple:
    return 4 * (n + 4), n + 8


def winning_set_slice(
    g: GameInstance,
    q: str,
    max_len: int,
    bounds: Optional[tuple] = None,
    alphabet: Optional[Iterable[str]] = None,
    dead_end: str = DEAD_END_MOVER_LOSES,
) -> set:
    """Words ``u`` with ``|u| <= max_len`` such that Eve wins from ``(q, bottom u)``."""
    proc = g.process
    if q not in proc.states:
        raise ValueError(f"unknown state {q}")
    depth, height = bounds or default_bounds(max_len)
    letters = sorted(alphabet if alphabet is not None else proc.stack_alphabet - {proc.bottom})
    won = set()
    for n in range(max_len + 1):
        for u in itertools.product(letters, repeat=n):
            v = solve_bounded(g, Configuration(q, (proc.bottom,) + u), depth, height, dead_end)
            if v.outcome is Outcome.UNKNOWN:
                raise BoundExhausted(f"bounds exhausted for u={' '.join(u) or 'λ'}: {v.reason}", u)
            if v.outcome is Outcome.EVE_WINS:
                won.add(u)
    return won
