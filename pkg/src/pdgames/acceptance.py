"""The acceptance battery: nine exact checks on the catalog constructions.

Each ``criterion_N`` returns a :class:`CriterionResult`.  Bound exhaustion in
the solver or the run engine propagates as an exception so callers can map
it to their own convention.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .automata import LAMBDA, Configuration, Pop, Push, classify_pda
from .catalog import (
    build_game_lemma42,
    build_game_prop45,
    build_game_prop46,
    catalog_automata,
    eraser_dpda,
    ltilde_oracle,
    oracle_language,
    counting_automaton,
)
from .games import (
    ADAM,
    EVE,
    BoundExhausted,
    GameInstance,
    Outcome,
    default_bounds,
    solve_bounded,
    winning_set_slice,
)
from .omega import accepts_omega, analyze_run
from .sampling import SamplerConfig, sample_lassos
from .triangle import (
    complement_chain,
    decompose_unique,
    pad_transform,
    primed_letters,
    seg_reports,
    triangle_member,
)
from .words import ERASER, Lasso, limits_equal, project_erase, tilde_member


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        return f"[{mark}] {self.number}. {self.title}: {self.detail}"


def _timed(number: int, title: str, body: Callable[[], tuple]) -> CriterionResult:
    t = time.perf_counter()
    ok, detail = body()
    return CriterionResult(number, title, bool(ok), detail, time.perf_counter() - t)


def _eve_wins(g: GameInstance, state: str, u: tuple) -> bool:
    start = Configuration(state, (g.process.bottom,) + tuple(u))
    v = solve_bounded(g, start, *default_bounds(len(u)))
    if v.outcome is Outcome.UNKNOWN:
        raise BoundExhausted(f"solver bounds exhausted at {start}: {v.reason}", u)
    return v.outcome is Outcome.EVE_WINS


def _anbn(u) -> bool:
    n = len(u) // 2
    return n >= 1 and tuple(u) == ("a",) * n + ("b",) * n


# -------------------------------------------------------------- 1 and 2


def criterion_1(n: int = 6) -> CriterionResult:
    def body():
        g = build_game_lemma42()
        letters = ("a", "b", ERASER)
        got = winning_set_slice(g, "q", n, alphabet=letters)
        want = {
            u for k in range(n + 1) for u in itertools.product(letters, repeat=k)
            if ltilde_oracle(u)
        }
        return got == want, f"{len(got)} winning words, oracle {len(want)}, |u| <= {n}"

    return _timed(1, "eraser game slice equals the erased-language oracle", body)


def criterion_2(n_max: int = 5) -> CriterionResult:
    def body():
        g = build_game_lemma42()
        bad = []
        for n in range(1, n_max + 1):
            yes = ("a",) * n + ("b",) * n + (ERASER,) * (2 * n) + ("a", "b")
            no = ("a",) * (n + 1) + ("b",) * (n + 1) + (ERASER,) * (2 * n) + ("a", "b")
            checks = [
                tilde_member(_anbn, yes), not tilde_member(_anbn, no),
                _eve_wins(g, "q", yes), not _eve_wins(g, "q", no),
            ]
            if not all(checks):
                bad.append(n)
        return not bad, f"witness pairs for n = 1..{n_max}" + (f", failing n = {bad}" if bad else "")

    return _timed(2, "eraser witnesses in and out of the erased language", body)


# -------------------------------------------------------------- 3 and 4


def _abc_slice(g: GameInstance, n_max: int) -> set:
    out = set()
    for n, m, p in itertools.product(range(1, n_max + 1), repeat=3):
        u = ("a",) * n + ("b",) * m + ("c",) * p
        if _eve_wins(g, "q", u):
            out.add((n, m, p))
    return out


def _swap_partition(g: GameInstance) -> GameInstance:
    flip = {EVE: ADAM, ADAM: EVE}
    owner = {q: flip[o] for q, o in g.process.owner.items()}
    return GameInstance(g.process.with_owner(owner), g.condition, g.name + ".swapped")


def criterion_3(n_max: int = 6) -> CriterionResult:
    def body():
        got = _abc_slice(build_game_prop45(), n_max)
        want = {t for t in itertools.product(range(1, n_max + 1), repeat=3)
                if t[0] == t[1] or t[1] == t[2]}
        return got == want, f"{len(got)} of {n_max ** 3} words a^n b^m c^p won by Eve, expected {len(want)}"

    return _timed(3, "ambiguous game slice on a+b+c+", body)


def criterion_4(n_max: int = 6, mutate: bool = False) -> CriterionResult:
    """With ``mutate`` the game under test has its partition wrongly swapped."""

    def body():
        g = build_game_prop46()
        if mutate:
            g = _swap_partition(g)
        got = _abc_slice(g, n_max)
        want = {(n, n, n) for n in range(1, n_max + 1)}
        mutant = _abc_slice(_swap_partition(g), n_max)
        union = {t for t in itertools.product(range(1, n_max + 1), repeat=3)
                 if t[0] == t[1] or t[1] == t[2]}
        ok = got == want and mutant == union
        return ok, (f"{len(got)} words won (expected {len(want)}); "
                    f"swapped partition wins {len(mutant)} (expected {len(union)})")

    return _timed(4, "intersection game slice and its partition mutant", body)


# ------------------------------------------------------------------- 5


def criterion_5(samples: int = 1000, exhaustive: int = 5, seed: int = 5) -> CriterionResult:
    def body():
        chains = {
            "lemma42": build_game_lemma42().condition,
            "prop45": build_game_prop45().condition,
        }
        checked, bad = 0, []
        for name, c in chains.items():
            cc = complement_chain(c)
            words = list(sample_lassos(c.input_alphabet, samples, SamplerConfig(10, 0.5, seed)))
            body_letters = sorted(c.input_alphabet - {"⊥", "#"})
            for k in range(exhaustive + 1):
                for u in itertools.product(body_letters, repeat=k):
                    words.append(Lasso(("⊥",) + u, ("#",)))
            for w in words:
                checked += 1
                if triangle_member(cc, w) == triangle_member(c, w):
                    bad.append((name, str(w)))
        detail = f"{checked} words over 2 chains"
        if bad:
            detail += f", {len(bad)} disagreements, first {bad[0]}"
        return not bad, detail

    return _timed(5, "complement chain is the exact complement", body)


# ------------------------------------------------------------------- 6


def _brute_run(p, w: Lasso, steps: int):
    """States and stacks over ``steps`` steps, by plain simulation."""
    state, stack, pos = p.initial, (p.bottom,), 0
    states, stacks = [state], [stack]
    for _ in range(steps):
        acts = p.delta.get((state, LAMBDA, stack[-1]))
        if acts is None:
            acts = p.delta.get((state, w.letter(pos), stack[-1]))
            pos += 1
        if not acts:
            break
        (act,) = acts
        if isinstance(act, Push):
            stack = stack + (act.symbol,)
        elif isinstance(act, Pop):
            stack = stack[:-1]
        state = act.target
        states.append(state)
        stacks.append(stack)
    return states, stacks


def _lcp(words) -> tuple:
    words = list(words)
    first = words[0]
    n = min(len(x) for x in words)
    for i in range(n):
        if any(x[i] != first[i] for x in words):
            return first[:i]
    return first[:n]


def check_run_against_brute(p, w: Lasso, k: int = 12) -> Optional[str]:
    """None when the analysis agrees with plain simulation, else a reason."""
    r = analyze_run(p, w)
    if not r.complete:
        states, stacks = _brute_run(p, w, r.transient_steps + 1)
        if r.completeness == "Blocked" and stacks[-1] != r.final_stack:
            return "blocked stack differs"
        return None
    T, P = r.transient_steps, r.period_steps
    states, stacks = _brute_run(p, w, T + 24 * P)
    window = stacks[T + 12 * P : T + 24 * P + 1]
    lim = r.stack_limit
    want = lim.prefix(k) if isinstance(lim, Lasso) else tuple(lim)[:k]
    if _lcp(window)[:k] != want:
        return f"limit prefix {want} differs from simulation {_lcp(window)[:k]}"
    if frozenset(states[T : T + 10 * P]) != r.inf_states:
        return "recurring states differ"
    early = min(len(s) for s in stacks[T:])
    late = min(len(s) for s in window)
    if (late - early >= k) != r.strictly_unbounded:
        return "height floor disagrees with strict unboundedness"
    return None


def deterministic_catalog() -> dict:
    return {
        name: p for name, (p, _) in catalog_automata().items()
        if classify_pda(p).deterministic
    }


def criterion_6(samples: int = 500, seed: int = 6) -> CriterionResult:
    def body():
        autos = deterministic_catalog()
        bad = []
        for name, p in autos.items():
            for w in sample_lassos(p.input_alphabet, samples, SamplerConfig(seed=seed)):
                why = check_run_against_brute(p, w)
                if why:
                    bad.append((name, str(w), why))
        detail = f"{len(autos)} automata x {samples} lassos"
        if bad:
            detail += f", {len(bad)} mismatches, first {bad[0]}"
        return not bad, detail

    return _timed(6, "run engine agrees with brute-force simulation", body)


# ------------------------------------------------------------------- 7


def segment_inclusion_failures(p, max_len: int) -> list:
    """Segments in U but not in L, over every state and symbol pair."""
    out = []
    letters = sorted(p.input_alphabet)
    for n in range(max_len + 1):
        for sigma in itertools.product(letters, repeat=n):
            for q, a in itertools.product(sorted(p.states), sorted(p.stack_alphabet)):
                for (q2, b), (in_l, rep) in seg_reports(p, q, a, sigma).items():
                    if rep.member and not in_l:
                        out.append((q, q2, a, b, sigma))
    return out


def criterion_7(max_len: int = 6, k_max: int = 4, samples: int = 60, seed: int = 7) -> CriterionResult:
    def body():
        failures = segment_inclusion_failures(eraser_dpda(), max_len)
        failures += segment_inclusion_failures(build_game_lemma42().condition.chain[0], max_len)
        decomposed, ambiguous = 0, []
        for name, (p, _) in catalog_automata().items():
            if not classify_pda(p).deterministic:
                continue
            for w in sample_lassos(p.input_alphabet, samples, SamplerConfig(seed=seed)):
                if not analyze_run(p, w).strictly_unbounded:
                    continue
                for k in range(1, k_max + 1):
                    d = decompose_unique(p, w, k)
                    decomposed += 1
                    if not d.all_in_U or d.alternative is not None:
                        ambiguous.append((name, str(w), k))
        ok = not failures and not ambiguous
        detail = (f"U within L for both eraser automata, |σ| <= {max_len}"
                  f" ({len(failures)} failures); {decomposed} decompositions,"
                  f" {len(ambiguous)} not unique")
        return ok, detail

    return _timed(7, "segment languages and unique decomposition", body)


# ------------------------------------------------------------------- 8


def criterion_8(n_max: int = 8) -> CriterionResult:
    def body():
        autos = {name: counting_automaton(name) for name in ("L1", "L2", "L3", "L4")}
        bad = []
        for n, m, p in itertools.product(range(1, n_max + 1), repeat=3):
            w = Lasso(("a",) * n + ("b",) * m + ("c",) * p, ("d",))
            got = {name: accepts_omega(a, c, w) for name, (a, c) in autos.items()}
            both = got["L1"] and got["L2"]
            equal = n == m == p
            if both != equal or both != oracle_language("L1∩L2", w):
                bad.append((n, m, p))
            elif (got["L3"] or got["L4"]) == equal:
                bad.append((n, m, p))
        return not bad, f"{n_max ** 3} words a^n b^m c^p d^ω" + (f", failing {bad[:3]}" if bad else "")

    return _timed(8, "intersection of two deterministic languages", body)


# ------------------------------------------------------------------- 9


def criterion_9(samples: int = 500, seed: int = 9) -> CriterionResult:
    def body():
        bad, checked = [], 0
        for name, (p, _) in catalog_automata().items():
            if not classify_pda(p).deterministic:
                continue
            padded = pad_transform(p)
            primes = primed_letters(p, padded)
            rng = random.Random(seed)
            got = 0
            for w in sample_lassos(p.input_alphabet, 20 * samples, rng=rng):
                if got == samples:
                    break
                r = analyze_run(p, w)
                if not r.complete:
                    continue
                got += 1
                r2 = analyze_run(padded, w)
                if not (r2.complete and r2.strictly_unbounded):
                    bad.append((name, str(w), "padded run not strictly unbounded"))
                elif not limits_equal(project_erase(r2.stack_limit, primes), r.stack_limit):
                    bad.append((name, str(w), "projected limit differs"))
            checked += got
            if got < samples:
                bad.append((name, f"only {got} complete samples"))
        detail = f"{checked} complete runs"
        if bad:
            detail += f", {len(bad)} failures, first {bad[0]}"
        return not bad, detail

    return _timed(9, "padding makes stacks strictly unbounded and keeps limits", body)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_all(mutate: Optional[str] = None) -> list:
    results = []
    for number, fn in CRITERIA.items():
        if number == 4 and mutate == "prop46-partition":
            results.append(fn(mutate=True))
        else:
            results.append(fn())
    return results
