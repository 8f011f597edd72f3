import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdgames.automata import Buchi, Muller, Parity, PdaBuilder, Push, Skip, classify_pda, validate_pda
from pdgames.catalog import (
    BOT1,
    anbn_dpda,
    build_game_lemma42,
    build_game_prop45,
    build_terminal_from_recognizer,
    eraser_dpda,
    ltilde_oracle,
)
from pdgames.omega import analyze_run
from pdgames.sampling import sample_lassos
from pdgames.triangle import (
    SegmentReport,
    TriangleChain,
    chain_validate,
    complement_chain,
    decompose_unique,
    lift_accepting,
    pad_transform,
    primed_letters,
    seg_member_L,
    seg_member_U,
    seg_report_U,
    triangle_member,
)
from pdgames.words import ERASER, Lasso, limits_equal, parse_lasso, parse_word, project_erase
from strategies import lassos

L42 = build_game_lemma42().condition
P45 = build_game_prop45().condition
A1 = L42.chain[0]
BOT2 = "⊥₂"


def accept_all(letters=("a", "b")):
    b = PdaBuilder(letters, (), "⊥", "s")
    for x in letters:
        b.add("s", x, "⊥", Skip("s"))
    return b.build(), Parity.of({"s": 0})


def copier(push_hash=True):
    """Reads ⊥₁ then copies letters onto a ⊥₂ stack (optionally dropping #)."""
    letters = sorted(A1.stack_alphabet)
    b = PdaBuilder(letters, ("a", "b", "#"), BOT2, "c0")
    for z in sorted(b.stack_alphabet):
        for x in letters:
            b.add("c0", x, z, Skip("c" if x == BOT1 else "d"))
            b.add("d", x, z, Skip("d"))
            if x == BOT1:
                b.add("c", x, z, Skip("d"))
            elif x == "#" and not push_hash:
                b.add("c", x, z, Skip("c"))
            else:
                b.add("c", x, z, Push("c", x))
    return b.build()


def two_step_chain(push_hash=True):
    rec, final = anbn_dpda()
    term, cond = build_terminal_from_recognizer(rec, final, BOT2)
    return TriangleChain((A1, copier(push_hash)), term, cond)


def test_catalog_chains_are_valid():
    assert chain_validate(L42) == [] and L42.real_time
    assert chain_validate(P45) == []
    assert chain_validate(two_step_chain()) == []


def test_mismatched_alphabets_are_reported():
    term, cond = accept_all(("x",))
    diags = chain_validate(TriangleChain((A1,), term, cond))
    assert any("input alphabet" in d for d in diags)


def test_nondeterministic_element_is_reported():
    b = PdaBuilder(("a",), ("X",), "⊥", "s")
    b.add("s", "a", "⊥", Skip("s")).add("s", "a", "⊥", Push("s", "X"))
    term, cond = accept_all(("X",))
    assert any("not deterministic" in d for d in chain_validate(TriangleChain((b.build(),), term, cond)))


def test_membership_examples():
    term, cond = accept_all()
    assert triangle_member(TriangleChain((), term, cond), parse_lasso("ab(b)"))
    assert triangle_member(L42, parse_lasso("⊥ a b ← ← a b ( # )"))
    assert triangle_member(P45, parse_lasso("⊥ a a b b b c c c ( # )"))
    assert not triangle_member(P45, parse_lasso("⊥ a a b b b c c c c ( # )"))


@pytest.mark.parametrize("n", range(0, 6))
def test_eraser_chain_matches_oracle(n):
    for u in itertools.product(("a", "b", ERASER), repeat=n):
        assert triangle_member(L42, Lasso(("⊥",) + u, ("#",))) == ltilde_oracle(u)


def test_two_step_chain_agrees_with_one_step():
    c = two_step_chain()
    for w in sample_lassos(A1.input_alphabet, 300):
        assert triangle_member(c, w) == triangle_member(L42, w)


# ---------------------------------------------------------------- segments

E = eraser_dpda()


def seg(sigma):
    return parse_word(sigma)


def test_L_examples():
    assert seg_member_L(E, "s", "s", "a", "b", seg("b"))
    assert seg_member_L(E, "s", "s", "a", "b", seg("b←b"))
    assert not seg_member_L(E, "s", "s", "a", "b", seg("←"))


def test_U_examples():
    assert seg_member_U(E, "s", "s", "a", "b", seg("b"))
    assert seg_member_U(E, "s", "s", "a", "b", seg("b←b"))
    assert not seg_member_U(E, "s", "s", "a", "b", seg("bb←"))
    assert seg_member_L(E, "s", "s", "a", "b", seg("bb←"))


def test_condition_c_flag():
    rep = SegmentReport(True, True, False)
    assert rep.c_decisive and not rep.member
    assert not SegmentReport(False, True, False).c_decisive
    rep = seg_report_U(E, "s", "s", "a", "b", seg("b"))
    assert rep.member and not rep.c_decisive


@settings(max_examples=200)
@given(st.lists(st.sampled_from(("a", "b", ERASER)), max_size=6), st.data())
def test_U_inside_L(sigma, data):
    a = data.draw(st.sampled_from(sorted(E.stack_alphabet)))
    b = data.draw(st.sampled_from(sorted(E.stack_alphabet)))
    if seg_member_U(E, "s", "s", a, b, sigma):
        assert seg_member_L(E, "s", "s", a, b, sigma)


def test_decompose_examples():
    d = decompose_unique(A1, parse_lasso("⊥ a b ( # )"), 3)
    assert d.unique and d.limit_prefix == (BOT1, "a", "b", "#")
    d = decompose_unique(A1, parse_lasso("⊥ a b ← ← a b ( # )"), 2)
    assert d.unique
    assert d.segments[0] == seg("⊥ab←←a")
    with pytest.raises(ValueError):
        decompose_unique(A1, parse_lasso("⊥ a ⊥ ( # )"), 2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(("a", "b", ERASER)), max_size=5), st.integers(1, 4))
def test_decomposition_is_sound(u, k):
    w = Lasso(("⊥",) + tuple(u), ("#",))
    d = decompose_unique(A1, w, k)
    consumed = sum(d.segments, ())
    assert w.prefix(len(consumed)) == consumed
    r = analyze_run(A1, w)
    assert d.limit_prefix == r.stack_limit.prefix(k + 1)
    assert [s for s, _ in d.boundaries][0] == A1.initial
    assert d.unique


# ------------------------------------------------------------ complements


def test_pad_transform_examples():
    padded = pad_transform(A1)
    primes = primed_letters(A1, padded)
    r = analyze_run(padded, parse_lasso("⊥ a ⊥ ( # )"))
    assert r.strictly_unbounded
    assert set(r.stack_limit.cycle) <= primes
    assert project_erase(r.stack_limit, primes) == (BOT1, "a")
    r = analyze_run(padded, parse_lasso("⊥ a b ( # )"))
    assert project_erase(r.stack_limit, primes) == Lasso((BOT1, "a", "b"), ("#",))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["eraser", "A1", "P45"]), st.data())
def test_pad_projection_law(which, data):
    p = {"eraser": E, "A1": A1, "P45": P45.chain[0]}[which]
    w = data.draw(lassos(sorted(p.input_alphabet)))
    r = analyze_run(p, w)
    if not r.complete:
        return
    padded = pad_transform(p)
    r2 = analyze_run(padded, w)
    assert r2.strictly_unbounded
    assert limits_equal(project_erase(r2.stack_limit, primed_letters(p, padded)), r.stack_limit)


def test_primes_avoid_existing_symbols():
    b = PdaBuilder(("a",), ("X", "X'"), "⊥", "s")
    b.add("s", "a", "⊥", Push("s", "X")).add("s", "a", "X", Push("s", "X'"))
    p = b.build()
    padded = pad_transform(p)
    assert primed_letters(p, padded).isdisjoint(p.stack_alphabet)
    assert validate_pda(padded) == []


def test_lift_accepting_cases():
    term, cond = L42.terminal, L42.condition
    lifted, lcond = lift_accepting(term, cond, {"p'"})
    # finite projection: accepted
    assert triangle_member(TriangleChain((), lifted, lcond), parse_lasso("⊥₁ a ( p' )"))
    # infinite projection, accepted and rejected by the terminal
    assert triangle_member(TriangleChain((), lifted, lcond), parse_lasso("⊥₁ p' a p' b ( # p' )"))
    assert not triangle_member(TriangleChain((), lifted, lcond), parse_lasso("⊥₁ p' b a ( # p' )"))
    assert classify_pda(lifted).deterministic


def test_complement_examples():
    term, cond = accept_all()
    cc = complement_chain(TriangleChain((), term, cond))
    assert not triangle_member(cc, parse_lasso("ab(a)"))
    cc = complement_chain(L42)
    assert triangle_member(cc, parse_lasso("⊥ b a ( # )"))
    assert not triangle_member(cc, parse_lasso("⊥ a b ( # )"))
    assert chain_validate(cc) == [] and not cc.real_time


@pytest.mark.parametrize("push_hash", [True, False])
def test_complement_of_two_step_chains(push_hash):
    c = two_step_chain(push_hash)
    cc = complement_chain(c)
    assert chain_validate(cc) == []
    words = list(sample_lassos(c.input_alphabet, 400))
    words += [Lasso(("⊥",) + u, ("#",)) for n in range(4) for u in itertools.product("ab←", repeat=n)]
    for w in words:
        assert triangle_member(cc, w) != triangle_member(c, w), w


@pytest.mark.parametrize("chain", [L42, P45], ids=["eraser", "prop45"])
def test_complement_involution(chain):
    twice = complement_chain(complement_chain(chain))
    for w in sample_lassos(chain.input_alphabet, 200):
        assert triangle_member(twice, w) == triangle_member(chain, w)


def test_buchi_and_muller_terminals():
    p, _ = accept_all()
    for cond in (Buchi(frozenset({"s"})), Muller(frozenset({frozenset({"s"})}))):
        c = TriangleChain((), p, cond)
        assert triangle_member(c, parse_lasso("a(b)"))
        assert not triangle_member(complement_chain(c), parse_lasso("a(b)"))


def test_muller_terminal_cannot_be_lifted():
    p, _ = accept_all(sorted(A1.stack_alphabet))
    c = TriangleChain((A1,), p, Muller(frozenset({frozenset({"s"})})))
    with pytest.raises(NotImplementedError):
        complement_chain(c)
