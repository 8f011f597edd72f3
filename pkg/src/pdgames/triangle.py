"""Chains of deterministic pushdown automata read through their stack limits.

A chain ``A1 > ... > An > T`` accepts an infinite word when each ``Ai`` has a
strictly unbounded stack on its input, its stack limit is fed to the next
automaton, and the terminal automaton ``T`` accepts the last limit under its
own omega-condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .automata import (
    LAMBDA,
    Buchi,
    Muller,
    Parity,
    Pda,
    PdaBuilder,
    Pop,
    Push,
    Skip,
    classify_pda,
    validate_pda,
)
from .omega import accepts_omega, analyze_run
from .words import Lasso


@dataclass(frozen=True)
class TriangleChain:
    chain: tuple  # of Pda
    terminal: Pda
    condition: object  # Buchi | Parity | Muller
    real_time: bool = True

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(self.chain))

    @property
    def input_alphabet(self) -> frozenset:
        return (self.chain[0] if self.chain else self.terminal).input_alphabet

    def automata(self) -> tuple:
        return self.chain + (self.terminal,)

    def tail(self) -> "TriangleChain":
        return TriangleChain(self.chain[1:], self.terminal, self.condition, self.real_time)


def chain_validate(c: TriangleChain) -> list:
    diags = []
    names = [f"A{i + 1}" for i in range(len(c.chain))] + ["terminal"]
    for name, p in zip(names, c.automata()):
        cond = c.condition if name == "terminal" else None
        diags += [f"{name}: {d}" for d in validate_pda(p, cond)]
        kind = classify_pda(p)
        if not kind.deterministic:
            diags.append(f"{name}: not deterministic")
        if c.real_time and not kind.real_time:
            diags.append(f"{name}: has lambda moves but the chain claims real-time")
    for i, (p, nxt) in enumerate(zip(c.automata(), c.automata()[1:])):
        if nxt.input_alphabet != p.stack_alphabet:
            diags.append(
                f"{names[i + 1]}: input alphabet differs from the stack alphabet of {names[i]}"
            )
    if not isinstance(c.condition, (Buchi, Parity, Muller)):
        diags.append(f"terminal: unsupported condition {type(c.condition).__name__}")
    return diags


def triangle_member(c: TriangleChain, w: Lasso, max_steps: Optional[int] = None) -> bool:
    for p in c.chain:
        r = analyze_run(p, w, max_steps=max_steps)
        if not r.strictly_unbounded:
            return False
        w = r.stack_limit
    return accepts_omega(c.terminal, c.condition, w, max_steps)


# ------------------------------------------------------ segment languages


def segment_trace(p: Pda, q: str, a: str, sigma: tuple) -> tuple:
    """Deterministic run from the one-symbol stack ``a`` on ``sigma``.

    Returns ``(trace, status)`` where ``trace`` lists ``(state, stack,
    consumed)`` and ``status`` is ``"done"``, ``"dead"`` (the run popped the
    entry symbol or blocked) or ``"loop"`` (a lambda loop was cut).
    """
    sigma = tuple(sigma)
    cap = len(p.states) * len(p.stack_alphabet) + 1
    state, stack, i = q, (a,), 0
    trace = [(state, stack, 0)]
    seen = {(state, stack)}
    base = 1
    while True:
        top = stack[-1]
        acts = p.actions(state, LAMBDA, top)
        consumed = False
        if not acts:
            if i == len(sigma):
                return trace, "done"
            acts = p.actions(state, sigma[i], top)
            consumed = True
        if not acts:
            return trace, "dead"
        (act,) = acts
        if isinstance(act, Pop):
            if len(stack) == 1:
                return trace, "dead"
            stack = stack[:-1]
        elif isinstance(act, Push):
            stack = stack + (act.symbol,)
        state = act.target
        if consumed:
            i += 1
            seen = set()
            base = len(stack)
        elif (state, stack) in seen or len(stack) > base + cap:
            return trace, "loop"
        seen.add((state, stack))
        trace.append((state, stack, i))


def seg_member_L(p: Pda, q: str, q2: str, a: str, b: str, sigma) -> bool:
    sigma = tuple(sigma)
    trace, _ = segment_trace(p, q, a, sigma)
    return any(s == q2 and st == (a, b) and k == len(sigma) for s, st, k in trace)


@dataclass(frozen=True)
class SegmentReport:
    cond_a: bool
    cond_b: bool
    cond_c: bool

    @property
    def member(self) -> bool:
        return self.cond_a and self.cond_b and self.cond_c

    @property
    def c_decisive(self) -> bool:
        """True when (a) and (b) hold and only (c) excludes the word."""
        return self.cond_a and self.cond_b and not self.cond_c


def seg_report_U(p: Pda, q: str, q2: str, a: str, b: str, sigma) -> SegmentReport:
    sigma = tuple(sigma)
    trace, _ = segment_trace(p, q, a, sigma)
    return _report(trace, len(sigma), q2, a, b)


def seg_reports(p: Pda, q: str, a: str, sigma) -> dict:
    """``(q2, b) -> (in L, SegmentReport)`` for every target reached by the run.

    Targets missing from the result are in neither language.
    """
    sigma = tuple(sigma)
    n = len(sigma)
    trace, _ = segment_trace(p, q, a, sigma)
    targets = {(s, st[1]) for s, st, k in trace if k == n and len(st) == 2}
    return {(q2, b): (True, _report(trace, n, q2, a, b)) for q2, b in targets}


def _report(trace, n: int, q2: str, a: str, b: str) -> SegmentReport:
    ab = (a, b)
    cond_a = any(s == q2 and st == ab and k == n for s, st, k in trace)

    # (b) every visit of stack a.b on a strict prefix returns to stack a
    cond_b = True
    for i, (_, st, k) in enumerate(trace):
        if k < n and st == ab:
            if not any(st2 == (a,) for _, st2, _ in trace[i + 1 :]):
                cond_b = False
                break

    # (c) literal reading on the unique run, over configurations that have
    # consumed all of sigma
    cond_c = True
    for i, (s, st, k) in enumerate(trace):
        if k != n or st != ab or s == q2:
            continue
        earlier = any(
            s1 == q2 and st1 == ab and k1 == n for s1, st1, k1 in trace[:i]
        )
        later = False
        for j in range(i + 1, len(trace)):
            if trace[j][1] == (a,):
                later = any(
                    s3 == q2 and st3 == ab for s3, st3, _ in trace[j + 1 :]
                )
                break
        if not (earlier or later):
            cond_c = False
            break
    return SegmentReport(cond_a, cond_b, cond_c)


def seg_member_U(p: Pda, q: str, q2: str, a: str, b: str, sigma) -> bool:
    return seg_report_U(p, q, q2, a, b, sigma).member


@dataclass(frozen=True)
class Decomposition:
    segments: tuple  # of finite words
    boundaries: tuple  # ((state, symbol), ...) at times n_1 .. n_{k+1}
    times: tuple  # n_1 .. n_{k+1}, 0-based step indices
    limit_prefix: tuple
    all_in_U: bool
    segmentations: int  # chained-U segmentations of the consumed prefix (capped at 2)
    alternative: Optional[tuple] = None

    @property
    def unique(self) -> bool:
        return self.all_in_U and self.segmentations == 1


def decompose_unique(p: Pda, w: Lasso, k: int, max_steps: Optional[int] = None) -> Decomposition:
    r = analyze_run(p, w, max_steps=max_steps)
    if not r.strictly_unbounded:
        raise ValueError("input is not strictly unbounded under the automaton")
    alpha = r.stack_limit.prefix(k + 1)
    periods = 1
    while len(r.entry_stack) + periods * len(r.pumped) < k + 1:
        periods += 1
    horizon = r.transient_steps + (periods + 1) * r.period_steps

    states, consumed, agree = [], [], []
    state, stack, pos = p.initial, (p.bottom,), 0
    for t in range(horizon + 1):
        states.append(state)
        consumed.append(pos)
        m = 0
        while m < min(len(stack), len(alpha)) and stack[m] == alpha[m]:
            m += 1
        agree.append(m)
        acts = p.actions(state, LAMBDA, stack[-1])
        if acts:
            (act,) = acts
        else:
            (act,) = p.actions(state, w.letter(pos), stack[-1])
            pos += 1
        if isinstance(act, Pop):
            stack = stack[:-1]
        elif isinstance(act, Push):
            stack = stack + (act.symbol,)
        state = act.target

    times = []
    for j in range(1, k + 2):
        bad = [t for t, m in enumerate(agree) if m < j]
        times.append(bad[-1] + 1 if bad else 0)
    segments = tuple(
        w.prefix(consumed[times[j + 1]])[consumed[times[j]] :] for j in range(k)
    )
    boundaries = tuple((states[times[j]], alpha[j]) for j in range(k + 1))
    all_in_U = all(
        seg_member_U(p, boundaries[j][0], boundaries[j + 1][0], alpha[j], alpha[j + 1], segments[j])
        for j in range(k)
    )
    found = _chained_segmentations(p, sum(segments, ()), k, limit=2)
    alternative = next((f for f in found if f != segments), None)
    return Decomposition(
        segments, boundaries, tuple(times), alpha, all_in_U, len(found), alternative
    )


def _chained_segmentations(p: Pda, word: tuple, k: int, limit: int = 2) -> list:
    """Segmentations of ``word`` into ``k`` chained U-segments from (q_in, bottom)."""
    states = sorted(p.states)
    symbols = sorted(p.stack_alphabet)
    out: list = []

    def go(pos, s, a, j, acc):
        if len(out) >= limit:
            return
        if j == k:
            if pos == len(word):
                out.append(tuple(acc))
            return
        for end in range(pos, len(word) + 1):
            piece = word[pos:end]
            for t, b in itertools.product(states, symbols):
                if seg_member_U(p, s, t, a, b, piece):
                    go(end, t, b, j + 1, acc + [piece])

    go(0, p.initial, p.bottom, 0, [])
    return out


# ------------------------------------------------------- complementation


def fresh_prime(alphabet) -> dict:
    """Map each symbol to a primed copy disjoint from ``alphabet``."""
    alphabet = set(alphabet)
    k = 1
    while any(z + "'" * k in alphabet for z in alphabet):
        k += 1
    return {z: z + "'" * k for z in sorted(alphabet)}


def fresh_symbol(stem: str, taken) -> str:
    taken = set(taken)
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


def _namer(states, tag: str):
    """``q -> q.tag`` with ``tag`` numbered until it occurs in no state name."""
    n = 1
    while True:
        suffix = f".{tag}" if n == 1 else f".{tag}{n}"
        if not any(suffix in q for q in states):
            return lambda q: f"{q}{suffix}"
        n += 1


def _translate(act, simulate_next, on_pop):
    if isinstance(act, Skip):
        return Skip(simulate_next(act.target))
    if isinstance(act, Push):
        return Push(simulate_next(act.target), act.symbol)
    return Pop(on_pop(act.target))


def pad_transform(p: Pda) -> Pda:
    """Padded copy of ``p`` whose stack is strictly unbounded on complete runs.

    Before every simulated step a primed copy of the current block letter is
    pushed by a lambda move; a pop of ``Z`` removes the whole block ``Z Z'...``.
    Erasing the primed letters from the new limit gives the old limit.
    """
    prime = fresh_prime(p.stack_alphabet)
    base = {v: k for k, v in prime.items()}
    full = set(p.stack_alphabet) | set(prime.values())

    pad = _namer(p.states, "pad")
    unwind = _namer(p.states, "unwind")

    b = PdaBuilder(p.input_alphabet, full, p.bottom, pad(p.initial))
    for q in sorted(p.states):
        b.states |= {q, pad(q), unwind(q)}
        for x in full:
            b.add(pad(q), LAMBDA, x, Push(q, prime[base.get(x, x)]))
        for z in p.stack_alphabet:
            zp = prime[z]
            lam = p.actions(q, LAMBDA, z)
            if lam:
                (act,) = lam
                b.add(q, LAMBDA, zp, _translate(act, pad, unwind))
                continue
            for letter in p.input_alphabet:
                acts = p.actions(q, letter, z)
                if acts:
                    (act,) = acts
                    b.add(q, letter, zp, _translate(act, pad, unwind))
        for x in full:
            if x in base:
                b.add(unwind(q), LAMBDA, x, Pop(unwind(q)))
            elif x != p.bottom:
                b.add(unwind(q), LAMBDA, x, Pop(pad(q)))
    return b.build()


def primed_letters(original: Pda, padded: Pda) -> frozenset:
    return padded.stack_alphabet - original.stack_alphabet


def _as_parity(p: Pda, cond) -> Parity:
    if isinstance(cond, Parity):
        return cond
    if isinstance(cond, Buchi):
        return Parity.of({q: 0 if q in cond.states else 1 for q in p.states})
    raise NotImplementedError("Muller terminals cannot be lifted; use a parity condition")


def lift_accepting(p: Pda, cond, pad_letters) -> tuple:
    """Terminal acceptor over ``input + pad_letters``.

    Accepts when the pad-free projection is finite, or infinite and accepted
    by ``p``.  Pad letters are read by skip moves into copies of the current
    state colored with the smallest even color above every color of ``p``.
    """
    colors = _as_parity(p, cond).as_dict()
    top_color = max(colors.values())
    c_pad = top_color + 1 if top_color % 2 else top_color + 2
    pad_letters = set(pad_letters)

    padded = _namer(p.states, "skip")

    b = PdaBuilder(set(p.input_alphabet) | pad_letters, p.stack_alphabet, p.bottom, p.initial)
    new_colors = dict(colors)
    for key, acts in p.delta.items():
        for act in acts:
            b.add(*key, act)
    for q in sorted(p.states):
        b.states |= {q, padded(q)}
        new_colors[padded(q)] = c_pad
        for z in p.stack_alphabet:
            if p.lambda_enabled(q, z):
                continue
            for x in pad_letters:
                b.add(q, x, z, Skip(padded(q)))
                b.add(padded(q), x, z, Skip(padded(q)))
            for letter in p.input_alphabet:
                for act in p.actions(q, letter, z):
                    b.add(padded(q), letter, z, act)
    return b.build(), Parity.of(new_colors)


def lift_chain_automaton(p: Pda, pad_letters, marker: str) -> Pda:
    """Intermediate chain automaton made transparent to pad letters.

    Pad letters push ``marker``; the next real letter first unwinds the
    markers by lambda pops, then acts as ``p``.  On a word whose pad-free
    projection is infinite, the stack limit is the limit of ``p`` on that
    projection; when the projection is finite the limit ends in
    ``marker^omega``.
    """
    pad_letters = set(pad_letters)

    flush_tag = _namer(p.states, "flush")

    def flush(q, a):
        return f"{flush_tag(q)}.{a}"

    b = PdaBuilder(
        set(p.input_alphabet) | pad_letters,
        set(p.stack_alphabet) | {marker},
        p.bottom,
        p.initial,
    )
    for key, acts in p.delta.items():
        for act in acts:
            b.add(*key, act)
    for q in sorted(p.states):
        b.states.add(q)
        for x in pad_letters:
            b.add(q, x, marker, Push(q, marker))
        for z in p.stack_alphabet:
            if not p.lambda_enabled(q, z):
                for x in pad_letters:
                    b.add(q, x, z, Push(q, marker))
        for a in p.input_alphabet:
            f = flush(q, a)
            b.add(q, a, marker, Pop(f))
            b.add(f, LAMBDA, marker, Pop(f))
            for z in p.stack_alphabet:
                if p.lambda_enabled(q, z):
                    continue
                for act in p.actions(q, a, z):
                    b.add(f, LAMBDA, z, act)
    return b.build()


def complement_terminal(p: Pda, cond) -> tuple:
    if isinstance(cond, Muller):
        if len(p.states) > 12:
            raise NotImplementedError("Muller complement limited to 12 states")
        states = sorted(p.states)
        every = {
            frozenset(s)
            for r in range(1, len(states) + 1)
            for s in itertools.combinations(states, r)
        }
        return p, Muller(frozenset(every - set(cond.sets)))
    colors = _as_parity(p, cond).as_dict()
    return p, Parity.of({q: c + 1 for q, c in colors.items()})


def complement_chain(c: TriangleChain) -> TriangleChain:
    """Chain accepting exactly the words the input chain rejects.

    Exact when every automaton of ``c`` has complete runs on all inputs
    (see :func:`pdgames.omega.check_continuity`).
    """
    diags = chain_validate(c)
    if diags:
        raise ValueError("invalid chain: " + "; ".join(diags))
    if not c.chain:
        term, cond = complement_terminal(c.terminal, c.condition)
        return TriangleChain((), term, cond, c.real_time)
    tail = complement_chain(c.tail())
    head = pad_transform(c.chain[0])
    pads = primed_letters(c.chain[0], head)
    lifted = [head]
    for p in tail.chain:
        taken = set(p.stack_alphabet) | set(p.input_alphabet) | set(pads)
        marker = fresh_symbol("$", taken)
        lifted.append(lift_chain_automaton(p, pads, marker))
        pads = {marker}
    term, cond = lift_accepting(tail.terminal, tail.condition, pads)
    return TriangleChain(tuple(lifted), term, cond, real_time=False)
