"""Concrete automata, games and reference languages.

Oracles in this module decide membership by counting letters directly and
never consult an automaton, so they can serve as independent checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .automata import (
    LAMBDA,
    Buchi,
    FinalStates,
    Parity,
    Pda,
    PdaBuilder,
    Pop,
    Push,
    Skip,
    classify_pda,
)
from .games import ADAM, EVE, GameInstance, PushdownProcess
from .triangle import TriangleChain
from .words import ERASER, Lasso, eraser_evaluate, lasso_normalize

BOT = "⊥"
BOT1 = "⊥₁"
BOT2 = "⊥₂"
HASH = "#"
SIGMA = ("a", "b")


# ------------------------------------------------------------- automata


@lru_cache(maxsize=None)
def eraser_dpda() -> Pda:
    """One-state eraser over {a, b, ←}: push letters, ← pops (or skips on ⊥₁)."""
    b = PdaBuilder(SIGMA + (ERASER,), SIGMA, BOT1, "s")
    for z in (BOT1,) + SIGMA:
        for c in SIGMA:
            b.add("s", c, z, Push("s", c))
        b.add("s", ERASER, z, Skip("s") if z == BOT1 else Pop("s"))
    return b.build()


@lru_cache(maxsize=None)
def anbn_dpda() -> tuple:
    """Real-time DPDA for {a^n b^n | n >= 1} with its final states."""
    b = PdaBuilder(SIGMA, ("X0", "X"), BOT2, "p0")
    b.add("p0", "a", BOT2, Push("pa", "X0"))
    for z in ("X0", "X"):
        b.add("pa", "a", z, Push("pa", "X"))
    for st in ("pa", "pb"):
        b.add(st, "b", "X", Pop("pb"))
        b.add(st, "b", "X0", Pop("pf"))
    b.states.add("pf")
    return b.build(), FinalStates(frozenset({"pf"}))


def _total(b: PdaBuilder, sink: str, states=None):
    """Send every undefined (state, letter, top) to ``sink`` by a skip."""
    for q in sorted(states if states is not None else b.states):
        for z in sorted(b.stack_alphabet):
            if b.has(q, LAMBDA, z):
                continue
            for a in sorted(b.input_alphabet):
                if not b.has(q, a, z):
                    b.add(q, a, z, Skip(sink))


def build_eraser_A1(sigma=SIGMA) -> Pda:
    """Reads ⊥.u.#^ω, keeping u evaluated under the eraser on its stack.

    States: ``i`` before ⊥, ``s`` while reading u, ``h`` while reading #,
    ``z`` frozen (stack never changes again).
    """
    sigma = tuple(sigma)
    letters = sigma + (BOT, ERASER, HASH)
    b = PdaBuilder(letters, sigma + (HASH,), BOT1, "i")
    b.add("i", BOT, BOT1, Skip("s"))
    for z in (BOT1,) + sigma + (HASH,):
        for c in sigma:
            b.add("s", c, z, Push("s", c))
        b.add("s", ERASER, z, Skip("s") if z == BOT1 else Pop("s"))
        b.add("s", HASH, z, Push("h", HASH))
        b.add("h", HASH, z, Push("h", HASH))
    b.states.add("z")
    _total(b, "z")
    return b.build()


def build_terminal_from_recognizer(rec: Pda, final: FinalStates, bottom_in: str = BOT1) -> tuple:
    """Parity DPDA accepting ``bottom_in . L . #^ω`` where ``L`` is recognised by ``rec``.

    Recognizer states are paired with a flag recording whether a final state
    occurred since the last letter, so trailing lambda moves count.
    """
    if not classify_pda(rec).deterministic:
        raise ValueError("recognizer must be deterministic")
    F = set(final.states)
    letters = set(rec.input_alphabet) | {bottom_in, HASH}

    def tag(q, seen):
        return f"{q}.{'f' if seen else 'n'}"

    b = PdaBuilder(letters, rec.stack_alphabet, rec.bottom, "start")
    b.add("start", bottom_in, rec.bottom, Skip(tag(rec.initial, rec.initial in F)))
    for q in sorted(rec.states):
        for seen in (False, True):
            here = tag(q, seen)
            b.states.add(here)
            for z in sorted(rec.stack_alphabet):
                lam = rec.actions(q, LAMBDA, z)
                if lam:
                    (act,) = lam
                    nxt = tag(act.target, seen or act.target in F)
                    b.add(here, LAMBDA, z, _retarget(act, nxt))
                    continue
                for a in sorted(rec.input_alphabet):
                    for act in rec.actions(q, a, z):
                        b.add(here, a, z, _retarget(act, tag(act.target, act.target in F)))
                b.add(here, HASH, z, Skip("acc" if seen else "rej"))
    for z in sorted(rec.stack_alphabet):
        b.add("acc", HASH, z, Skip("acc"))
    b.states |= {"acc", "rej"}
    _total(b, "rej")
    p = b.build()
    return p, Parity.of({q: 0 if q == "acc" else 1 for q in p.states})


def _retarget(act, target):
    if isinstance(act, Skip):
        return Skip(target)
    if isinstance(act, Pop):
        return Pop(target)
    return Push(target, act.symbol)


def build_prop45_A1() -> Pda:
    """Pushes a's and b's, pops one b per c, pushes # only after a^n b^m c^m or a^n b^m."""
    letters = (BOT, "a", "b", "c", HASH)
    b = PdaBuilder(letters, ("a", "b", HASH), BOT1, "i")
    b.add("i", BOT, BOT1, Skip("A0"))
    b.add("A0", "a", BOT1, Push("A", "a"))
    for z in ("a", "b"):
        b.add("A", "a", z, Push("A", "a"))
        b.add("A", "b", z, Push("B", "b"))
        b.add("B", "b", z, Push("B", "b"))
    b.add("B", "c", "b", Pop("C"))
    b.add("B", HASH, "b", Push("H", HASH))
    b.add("C", "c", "b", Pop("C"))
    b.add("C", HASH, "a", Push("H", HASH))
    b.add("H", HASH, HASH, Push("H", HASH))
    b.states.add("z")
    _total(b, "z")
    return b.build()


def build_prop45_A2() -> tuple:
    """Parity DPDA for ⊥₁.a^n.b^n.#^ω ∪ ⊥₁.a^n.#^ω (n >= 1)."""
    letters = (BOT1, "a", "b", HASH)
    b = PdaBuilder(letters, ("X0", "X"), BOT2, "s0")
    b.add("s0", BOT1, BOT2, Skip("s1"))
    b.add("s1", "a", BOT2, Push("A", "X0"))
    for z in ("X0", "X"):
        b.add("A", "a", z, Push("A", "X"))
        b.add("A", HASH, z, Skip("acc"))
    for st in ("A", "B"):
        b.add(st, "b", "X", Pop("B"))
        b.add(st, "b", "X0", Pop("E"))
    b.add("E", HASH, BOT2, Skip("acc"))
    for z in (BOT2, "X0", "X"):
        b.add("acc", HASH, z, Skip("acc"))
    b.states |= {"rej"}
    _total(b, "rej")
    p = b.build()
    return p, Parity.of({q: 0 if q == "acc" else 1 for q in p.states})


@lru_cache(maxsize=None)
def count_ab_dpda() -> Pda:
    """Reads a^n b^m c^p d^ω and ends in D.eq iff n = m, in D.ne iff n != m."""
    letters = ("a", "b", "c", "d")
    b = PdaBuilder(letters, ("X0", "X"), BOT2, "s0")
    b.add("s0", "a", BOT2, Push("A", "X0"))
    for z in ("X0", "X"):
        b.add("A", "a", z, Push("A", "X"))
    for st in ("A", "B"):
        b.add(st, "b", "X", Pop("B"))
        b.add(st, "b", "X0", Pop("E"))
    for z in ("X0", "X"):
        b.add("B", "c", z, Skip("C.ne"))
    b.add("E", "b", BOT2, Skip("G"))
    b.add("E", "c", BOT2, Skip("C.eq"))
    b.add("G", "b", BOT2, Skip("G"))
    b.add("G", "c", BOT2, Skip("C.ne"))
    _tail_cd(b)
    return b.build()


@lru_cache(maxsize=None)
def count_bc_dpda() -> Pda:
    """Reads a^n b^m c^p d^ω and ends in D.eq iff m = p, in D.ne iff m != p."""
    letters = ("a", "b", "c", "d")
    b = PdaBuilder(letters, ("X0", "X"), BOT2, "s0")
    b.add("s0", "a", BOT2, Skip("A"))
    b.add("A", "a", BOT2, Skip("A"))
    b.add("A", "b", BOT2, Push("B", "X0"))
    for z in ("X0", "X"):
        b.add("B", "b", z, Push("B", "X"))
    for st in ("B", "Cm"):
        b.add(st, "c", "X", Pop("Cm"))
        b.add(st, "c", "X0", Pop("Ce"))
    for z in ("X0", "X"):
        b.add("Cm", "d", z, Skip("D.ne"))
    b.add("Ce", "c", BOT2, Skip("Cg"))
    b.add("Ce", "d", BOT2, Skip("D.eq"))
    b.add("Cg", "c", BOT2, Skip("Cg"))
    b.add("Cg", "d", BOT2, Skip("D.ne"))
    for st in ("D.eq", "D.ne"):
        for z in (BOT2, "X0", "X"):
            b.add(st, "d", z, Skip(st))
    b.states.add("rej")
    _total(b, "rej")
    return b.build()


def _tail_cd(b: PdaBuilder):
    for flag in ("eq", "ne"):
        for z in (BOT2, "X0", "X"):
            b.add(f"C.{flag}", "c", z, Skip(f"C.{flag}"))
            b.add(f"C.{flag}", "d", z, Skip(f"D.{flag}"))
            b.add(f"D.{flag}", "d", z, Skip(f"D.{flag}"))
    b.states.add("rej")
    _total(b, "rej")


def _colored(p: Pda, good: str) -> Parity:
    return Parity.of({q: 0 if q == good else 1 for q in p.states})


def counting_automaton(name: str) -> tuple:
    """(DPDA, parity condition) for L1 (n=m), L2 (m=p), L3 (n!=m), L4 (m!=p)."""
    table = {
        "L1": (count_ab_dpda, "D.eq"),
        "L2": (count_bc_dpda, "D.eq"),
        "L3": (count_ab_dpda, "D.ne"),
        "L4": (count_bc_dpda, "D.ne"),
    }
    build, good = table[name]
    p = build()
    return p, _colored(p, good)


# ---------------------------------------------------------------- games


def build_game_eraser(rec: Pda = None, final: FinalStates = None, name="game:lemma42:anbn") -> GameInstance:
    """Two-state process pushing # forever, judged by the eraser chain."""
    if rec is None:
        rec, final = anbn_dpda()
    if not classify_pda(rec).deterministic:
        raise ValueError("recognizer must be deterministic")
    sigma = tuple(sorted(rec.input_alphabet))
    gamma = set(sigma) | {BOT, ERASER, HASH}
    delta = {("q", c): {Push("p", HASH)} for c in set(sigma) | {BOT, ERASER}}
    delta[("p", HASH)] = {Push("p", HASH)}
    proc = PushdownProcess({"p", "q"}, gamma, BOT, delta, {"p": EVE, "q": EVE})
    a1 = _eraser_A1(sigma)
    a2, cond = build_terminal_from_recognizer(rec, final)
    return GameInstance(proc, TriangleChain((a1,), a2, cond, True), name)


@lru_cache(maxsize=None)
def _eraser_A1(sigma: tuple) -> Pda:
    return build_eraser_A1(sigma)


def _prop45_process(owner: dict) -> PushdownProcess:
    delta = {
        ("q", "c"): {Pop("q'"), Skip("q''")},
        ("q'", "c"): {Pop("q'")},
        ("q'", "b"): {Push("p", HASH)},
        ("q''", "c"): {Push("p", HASH)},
        ("p", HASH): {Push("p", HASH)},
    }
    return PushdownProcess({"q", "q'", "q''", "p"}, {BOT, "a", "b", "c", HASH}, BOT, delta, owner)


@lru_cache(maxsize=None)
def _prop45_chain() -> TriangleChain:
    a2, cond = build_prop45_A2()
    return TriangleChain((build_prop45_A1(),), a2, cond, True)


@lru_cache(maxsize=None)
def build_game_prop45() -> GameInstance:
    owner = {"q": EVE, "q'": ADAM, "q''": ADAM, "p": ADAM}
    return GameInstance(_prop45_process(owner), _prop45_chain(), "game:prop45")


@lru_cache(maxsize=None)
def build_game_prop46() -> GameInstance:
    owner = {"q": ADAM, "q'": EVE, "q''": EVE, "p": EVE}
    return GameInstance(_prop45_process(owner), _prop45_chain(), "game:prop46")


@lru_cache(maxsize=None)
def build_game_lemma42() -> GameInstance:
    return build_game_eraser()


# ------------------------------------------------------------ languages


def _runs(word) -> list:
    """Maximal blocks of equal letters: [(letter, count), ...]."""
    out = []
    for c in word:
        if out and out[-1][0] == c:
            out[-1][1] += 1
        else:
            out.append([c, 1])
    return [tuple(x) for x in out]


def _abc_counts(word):
    """(n, m, p) when ``word`` is a^n b^m c^p with n, m, p >= 1, else None."""
    blocks = _runs(word)
    if [c for c, _ in blocks] != ["a", "b", "c"]:
        return None
    return tuple(k for _, k in blocks)


def _is_anbn(word) -> bool:
    blocks = _runs(word)
    return [c for c, _ in blocks] == ["a", "b"] and blocks[0][1] == blocks[1][1]


def _abcd_counts(w: Lasso):
    """(n, m, p) when ``w`` is a^n b^m c^p d^ω with n, m, p >= 1, else None."""
    w = lasso_normalize(w)
    if w.cycle != ("d",):
        return None
    return _abc_counts(w.spoke)


def _hash_tail(w: Lasso, head: str):
    """The middle part x when ``w`` is ``head . x . #^ω`` with x free of #, else None."""
    w = lasso_normalize(w)
    if w.cycle != (HASH,) or not w.spoke or w.spoke[0] != head:
        return None
    x = w.spoke[1:]
    return None if HASH in x else x


def _lemma42_terminal_lang(w: Lasso) -> bool:
    x = _hash_tail(w, BOT1)
    return x is not None and _is_anbn(x)


def _prop45_terminal_lang(w: Lasso) -> bool:
    x = _hash_tail(w, BOT1)
    if x is None:
        return False
    blocks = [c for c, _ in _runs(x)]
    return _is_anbn(x) or blocks == ["a"]


def _ltilde(u) -> bool:
    return set(u) <= {"a", "b", ERASER} and _is_anbn(eraser_evaluate(u))


def _v(u) -> bool:
    t = _abc_counts(u)
    return t is not None and (t[0] == t[1] or t[1] == t[2])


def _anbncn(u) -> bool:
    t = _abc_counts(u)
    return t is not None and t[0] == t[1] == t[2]


def _omega(pred):
    def f(w: Lasso) -> bool:
        t = _abcd_counts(w)
        return t is not None and pred(*t)
    return f


@dataclass(frozen=True)
class NamedLanguage:
    name: str
    kind: str  # "finitary" | "omega"
    oracle: Callable


def _l5(w: Lasso) -> bool:
    t = _abcd_counts(w)
    return t is None or (t[0] == t[1] == t[2])


LANGUAGES = {
    lang.name: lang
    for lang in [
        NamedLanguage("anbn", "finitary", _is_anbn),
        NamedLanguage("Ltilde", "finitary", _ltilde),
        NamedLanguage("V", "finitary", _v),
        NamedLanguage("anbncn", "finitary", _anbncn),
        NamedLanguage("L1", "omega", _omega(lambda n, m, p: n == m)),
        NamedLanguage("L2", "omega", _omega(lambda n, m, p: m == p)),
        NamedLanguage("L3", "omega", _omega(lambda n, m, p: n != m)),
        NamedLanguage("L4", "omega", _omega(lambda n, m, p: m != p)),
        NamedLanguage("L5", "omega", _l5),
        NamedLanguage("L1∩L2", "omega", _omega(lambda n, m, p: n == m == p)),
        NamedLanguage("lemma42:A2", "omega", _lemma42_terminal_lang),
        NamedLanguage("prop45:A2", "omega", _prop45_terminal_lang),
    ]
}


def oracle_language(name: str, word) -> bool:
    if name not in LANGUAGES:
        raise KeyError(f"unknown language {name!r}")
    lang = LANGUAGES[name]
    if (lang.kind == "omega") != isinstance(word, Lasso):
        raise TypeError(f"language {name} expects a {'lasso' if lang.kind == 'omega' else 'finite'} word")
    return bool(lang.oracle(tuple(word) if lang.kind == "finitary" else word))


def ltilde_oracle(u) -> bool:
    return oracle_language("Ltilde", tuple(u))


# -------------------------------------------------------------- registry


def catalog_automata() -> dict:
    """Every catalog automaton by identifier: name -> (Pda, condition or None)."""
    anbn, anbn_final = anbn_dpda()
    g42, g45 = build_game_lemma42(), build_game_prop45()
    out = {
        "dpda:eraser": (eraser_dpda(), None),
        "dpda:anbn": (anbn, anbn_final),
        "game:lemma42:anbn.A1": (g42.condition.chain[0], None),
        "game:lemma42:anbn.A2": (g42.condition.terminal, g42.condition.condition),
        "game:prop45.A1": (g45.condition.chain[0], None),
        "game:prop45.A2": (g45.condition.terminal, g45.condition.condition),
    }
    for name in ("L1", "L2", "L3", "L4"):
        out[f"dpda:{name}"] = counting_automaton(name)
    return out


def catalog_games() -> dict:
    return {
        "game:lemma42:anbn": build_game_lemma42(),
        "game:prop45": build_game_prop45(),
        "game:prop46": build_game_prop46(),
    }


def catalog_chains() -> dict:
    out = {f"{k}.chain": g.condition for k, g in catalog_games().items()}
    for name in ("L1", "L2", "L3", "L4"):
        p, cond = counting_automaton(name)
        out[f"chain:{name}"] = TriangleChain((), p, cond, True)
    return out


def lookup(name: str):
    """Resolve a catalog identifier to its object."""
    for table in (catalog_games(), catalog_chains(), catalog_automata()):
        if name in table:
            return table[name]
    if name.startswith("lang:") and name[5:] in LANGUAGES:
        return LANGUAGES[name[5:]]
    raise KeyError(f"unknown catalog identifier {name!r}")


def catalog_names() -> list:
    names = list(catalog_games()) + list(catalog_chains()) + list(catalog_automata())
    return names + [f"lang:{k}" for k in LANGUAGES]
