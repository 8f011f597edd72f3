"""Pushdown automata: definitions, structural checks and finite-word semantics.

The stack is a tuple with the bottom symbol first and the top symbol last.
Transition keys are ``(state, letter, top)`` where ``letter`` is ``None``
for a lambda move.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

LAMBDA = None


@dataclass(frozen=True)
class Skip:
    target: str

    def __str__(self):
        return f"skip({self.target})"


@dataclass(frozen=True)
class Pop:
    target: str

    def __str__(self):
        return f"pop({self.target})"


@dataclass(frozen=True)
class Push:
    target: str
    symbol: str

    def __str__(self):
        return f"push({self.target}, {self.symbol})"


Action = Union[Skip, Pop, Push]


def apply_action(action: Action, stack: tuple) -> tuple:
    if isinstance(action, Skip):
        return stack
    if isinstance(action, Pop):
        return stack[:-1]
    return stack + (action.symbol,)


@dataclass(frozen=True)
class Configuration:
    state: str
    stack: tuple

    @property
    def top(self) -> str:
        return self.stack[-1]

    def __str__(self):
        return f"({self.state}, {' '.join(self.stack)})"


# ------------------------------------------------------------ acceptance


@dataclass(frozen=True)
class FinalStates:
    states: frozenset


@dataclass(frozen=True)
class Buchi:
    states: frozenset


@dataclass(frozen=True)
class Muller:
    sets: frozenset  # frozenset of frozensets


@dataclass(frozen=True)
class Parity:
    colors: tuple  # sorted (state, color) pairs

    @classmethod
    def of(cls, mapping: dict) -> "Parity":
        return cls(tuple(sorted(mapping.items())))

    def color(self, state: str) -> int:
        return dict(self.colors)[state]

    def as_dict(self) -> dict:
        return dict(self.colors)


AcceptanceCondition = Union[FinalStates, Buchi, Muller, Parity]


def condition_states(cond) -> set:
    if isinstance(cond, (FinalStates, Buchi)):
        return set(cond.states)
    if isinstance(cond, Muller):
        return set().union(*cond.sets) if cond.sets else set()
    return {q for q, _ in cond.colors}


# ------------------------------------------------------------------ PDA


@dataclass(frozen=True, eq=True)
class Pda:
    states: frozenset
    input_alphabet: frozenset
    stack_alphabet: frozenset
    bottom: str
    initial: str
    delta: dict = field(compare=True)  # (q, letter|None, Z) -> frozenset[Action]

    def __hash__(self):
        return hash((self.states, self.bottom, self.initial, frozenset(self.delta.items())))

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet))
        object.__setattr__(self, "stack_alphabet", frozenset(self.stack_alphabet))
        object.__setattr__(
            self, "delta", {k: frozenset(v) for k, v in self.delta.items() if v}
        )

    def actions(self, state: str, letter: Optional[str], top: str) -> frozenset:
        return self.delta.get((state, letter, top), frozenset())

    def lambda_enabled(self, state: str, top: str) -> bool:
        return (state, LAMBDA, top) in self.delta

    def initial_config(self) -> Configuration:
        return Configuration(self.initial, (self.bottom,))


class PdaBuilder:
    """Accumulates transitions; used by the catalog and the constructions."""

    def __init__(self, input_alphabet=(), stack_alphabet=(), bottom="⊥", initial=None):
        self.states = set()
        self.input_alphabet = set(input_alphabet)
        self.stack_alphabet = set(stack_alphabet) | {bottom}
        self.bottom = bottom
        self.initial = initial
        self.delta: dict = {}
        if initial is not None:
            self.states.add(initial)

    def add(self, state, letter, top, action: Action):
        self.states.add(state)
        self.states.add(action.target)
        self.delta.setdefault((state, letter, top), set()).add(action)
        return self

    def has(self, state, letter, top) -> bool:
        return (state, letter, top) in self.delta

    def build(self) -> Pda:
        return Pda(
            states=self.states,
            input_alphabet=self.input_alphabet,
            stack_alphabet=self.stack_alphabet,
            bottom=self.bottom,
            initial=self.initial,
            delta=self.delta,
        )


def validate_pda(p: Pda, cond=None) -> list:
    """Every structural violation, one message per offending transition."""
    diags = []
    if p.bottom not in p.stack_alphabet:
        diags.append(f"bottom symbol {p.bottom} not in stack alphabet")
    if p.initial not in p.states:
        diags.append(f"initial state {p.initial} not a state")
    for key in sorted(p.delta, key=repr):
        q, a, z = key
        where = f"delta({q}, {'_' if a is None else a}, {z})"
        if q not in p.states:
            diags.append(f"{where}: unknown state {q}")
        if a is not None and a not in p.input_alphabet:
            diags.append(f"{where}: letter {a} not in input alphabet")
        if z not in p.stack_alphabet:
            diags.append(f"{where}: stack symbol {z} not in stack alphabet")
        for act in sorted(p.delta[key], key=str):
            if act.target not in p.states:
                diags.append(f"{where}: target {act.target} not a state")
            if isinstance(act, Pop) and z == p.bottom:
                diags.append(f"{where}: pops the bottom symbol")
            if isinstance(act, Push):
                if act.symbol == p.bottom:
                    diags.append(f"{where}: pushes the bottom symbol")
                elif act.symbol not in p.stack_alphabet:
                    diags.append(f"{where}: pushes {act.symbol} outside the stack alphabet")
    if cond is not None:
        for q in sorted(condition_states(cond) - set(p.states)):
            diags.append(f"acceptance: unknown state {q}")
        if isinstance(cond, Parity):
            missing = set(p.states) - {q for q, _ in cond.colors}
            for q in sorted(missing):
                diags.append(f"acceptance: state {q} has no color")
            for q, c in cond.colors:
                if not isinstance(c, int) or c < 0:
                    diags.append(f"acceptance: color of {q} is not a natural number")
    return diags


@dataclass(frozen=True)
class PdaClass:
    deterministic: bool
    real_time: bool


def classify_pda(p: Pda) -> PdaClass:
    deterministic = all(len(v) <= 1 for v in p.delta.values())
    if deterministic:
        for (q, a, z) in p.delta:
            if a is LAMBDA and any(
                (q, b, z) in p.delta for b in p.input_alphabet
            ):
                deterministic = False
                break
    real_time = all(a is not LAMBDA for (_, a, _) in p.delta)
    return PdaClass(deterministic, real_time)


def step_config(p: Pda, c: Configuration, letter: Optional[str]) -> set:
    return {
        Configuration(act.target, apply_action(act, c.stack))
        for act in p.actions(c.state, letter, c.stack[-1])
    }


def _lambda_closure(p: Pda, configs: Iterable[Configuration]) -> set:
    # revisits are cut; net growth above the entry height is capped, beyond
    # which a pumping lambda cycle exists and adds no new reachable states
    cap = len(p.states) * len(p.stack_alphabet) + 1
    out = set()
    for start in configs:
        limit = len(start.stack) + cap
        seen = {start}
        todo = deque([start])
        while todo:
            c = todo.popleft()
            for n in step_config(p, c, LAMBDA):
                if n not in seen and len(n.stack) <= limit:
                    seen.add(n)
                    todo.append(n)
        out |= seen
    return out


def accepts_finite(p: Pda, final: Iterable[str], x: Iterable[str]) -> bool:
    """Final-state acceptance; trailing lambda moves after ``x`` count."""
    final = set(final)
    current = _lambda_closure(p, [p.initial_config()])
    for a in x:
        nxt = set()
        for c in current:
            nxt |= step_config(p, c, a)
        if not nxt:
            return False
        current = _lambda_closure(p, nxt)
    return any(c.state in final for c in current)
