import itertools

import pytest

from pdgames.automata import PdaBuilder, Push, Skip, accepts_finite, classify_pda
from pdgames.catalog import (
    BOT1,
    LANGUAGES,
    anbn_dpda,
    build_game_eraser,
    catalog_automata,
    catalog_names,
    lookup,
    oracle_language,
    counting_automaton,
)
from pdgames.omega import accepts_omega, analyze_run
from pdgames.words import ERASER, Lasso, parse_lasso, parse_word

OMEGA_PAIRS = {
    "dpda:L1": "L1",
    "dpda:L2": "L2",
    "dpda:L3": "L3",
    "dpda:L4": "L4",
    "game:lemma42:anbn.A2": "lemma42:A2",
    "game:prop45.A2": "prop45:A2",
}


def all_lassos(letters, max_total):
    for total in range(1, max_total + 1):
        for s in range(total):
            for spoke in itertools.product(letters, repeat=s):
                for cycle in itertools.product(letters, repeat=total - s):
                    yield Lasso(spoke, cycle)


def test_oracle_examples():
    assert oracle_language("V", parse_word("aabbc"))
    assert oracle_language("L1∩L2", parse_lasso("abc(d)"))
    assert not oracle_language("anbncn", parse_word("aabbc"))
    with pytest.raises(KeyError):
        oracle_language("nope", ())


def test_every_name_resolves():
    for name in catalog_names():
        assert lookup(name) is not None
    with pytest.raises(KeyError):
        lookup("game:missing")


def test_anbn_agrees_with_oracle_up_to_8():
    p, final = anbn_dpda()
    assert classify_pda(p).real_time
    for n in range(9):
        for x in itertools.product("ab", repeat=n):
            assert accepts_finite(p, final.states, x) == oracle_language("anbn", x)


@pytest.mark.parametrize("name", sorted(OMEGA_PAIRS))
def test_omega_automata_agree_with_oracles(name):
    p, cond = catalog_automata()[name]
    lang = OMEGA_PAIRS[name]
    for w in all_lassos(sorted(p.input_alphabet), 6):
        assert accepts_omega(p, cond, w) == oracle_language(lang, w), w


@pytest.mark.parametrize("name", sorted(OMEGA_PAIRS))
def test_omega_automata_on_block_words_up_to_8(name):
    p, cond = catalog_automata()[name]
    lang = OMEGA_PAIRS[name]
    letters = sorted(p.input_alphabet)
    for head in itertools.product(letters, repeat=2):
        for n, m in itertools.product(range(0, 4), repeat=2):
            for x, y, z in itertools.permutations(letters, 3):
                w = Lasso(head + (x,) * n + (y,) * m, (z,))
                assert accepts_omega(p, cond, w) == oracle_language(lang, w), w


def test_counting_identities_up_to_8():
    autos = {k: counting_automaton(k) for k in ("L1", "L2", "L3", "L4")}
    for n, m, p in itertools.product(range(1, 9), repeat=3):
        w = Lasso(("a",) * n + ("b",) * m + ("c",) * p, ("d",))
        got = {k: accepts_omega(a, c, w) for k, (a, c) in autos.items()}
        assert (got["L1"] and got["L2"]) == (n == m == p)
        assert (got["L3"] or got["L4"]) == (not n == m == p) != oracle_language("L5", w)


def test_eraser_game_alphabet_and_limits():
    g = build_game_eraser()
    assert set(g.process.stack_alphabet) == {"⊥", "a", "b", ERASER, "#"}
    assert g.process.delta[("p", "#")] == {Push("p", "#")}
    a1 = g.condition.chain[0]
    for n in range(5):
        for u in itertools.product(("a", "b", ERASER), repeat=n):
            r = analyze_run(a1, Lasso(("⊥",) + u, ("#",)))
            kept = []
            for x in u:
                if x != ERASER:
                    kept.append(x)
                elif kept:
                    kept.pop()
            assert r.strictly_unbounded
            assert r.stack_limit.prefix(len(kept) + 1) == (BOT1, *kept)
            assert r.stack_limit.prefix(len(kept) + 4)[len(kept) + 1 :] == ("#",) * 3
    assert not analyze_run(a1, parse_lasso("⊥ a ⊥ b ( # )")).strictly_unbounded


def test_eraser_game_rejects_nondeterministic_recognizer():
    b = PdaBuilder(("a", "b"), ("X",), "⊥", "p")
    b.add("p", "a", "⊥", Skip("p")).add("p", "a", "⊥", Push("p", "X"))
    with pytest.raises(ValueError):
        build_game_eraser(b.build(), None)


def test_bottoms_are_distinct():
    bottoms = {p.bottom for p, _ in catalog_automata().values()}
    assert BOT1 in bottoms and "⊥" not in {p.bottom for n, (p, _) in catalog_automata().items() if n.endswith("A1")}


def test_language_kinds():
    assert {lang.kind for lang in LANGUAGES.values()} == {"finitary", "omega"}
