import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdgames.acceptance import check_run_against_brute
from pdgames.automata import (
    LAMBDA,
    Buchi,
    FinalStates,
    Muller,
    Parity,
    PdaBuilder,
    Push,
    Skip,
    apply_action,
)
from pdgames.catalog import BOT1, build_game_lemma42, build_game_prop45, catalog_automata
from pdgames.omega import (
    BLOCKED,
    COMPLETE,
    LAMBDA_DIVERGENT,
    ResourceExhausted,
    accepts_omega,
    analyze_run,
    check_continuity,
    condition_holds,
)
from pdgames.sampling import sample_lassos
from pdgames.words import Lasso, parse_lasso
from strategies import lassos

A1 = build_game_lemma42().condition.chain[0]
A2 = build_game_lemma42().condition
P45 = build_game_prop45().condition.chain[0]


def test_eraser_chain_limit():
    r = analyze_run(A1, parse_lasso("⊥ a b ← ← a b ( # )"))
    assert r.completeness == COMPLETE and r.strictly_unbounded
    assert r.stack_limit == Lasso((BOT1, "a", "b"), ("#",))


def test_second_bottom_freezes_the_stack():
    r = analyze_run(A1, parse_lasso("⊥ a ⊥ ( # )"))
    assert r.complete and not r.strictly_unbounded
    assert r.stack_limit == (BOT1, "a")


def test_ambiguous_game_limits():
    r = analyze_run(P45, parse_lasso("⊥ a a b b b c c c ( # )"))
    assert r.strictly_unbounded and r.stack_limit == Lasso((BOT1, "a", "a"), ("#",))
    assert not analyze_run(P45, parse_lasso("⊥ a b b c c c ( # )")).strictly_unbounded


def test_skip_everything_with_even_color():
    b = PdaBuilder({"a", "b"}, set(), "⊥", "s")
    b.add("s", "a", "⊥", Skip("s")).add("s", "b", "⊥", Skip("s"))
    assert accepts_omega(b.build(), Parity.of({"s": 0}), parse_lasso("ab(ba)"))


def test_terminal_examples():
    assert accepts_omega(A2.terminal, A2.condition, parse_lasso("⊥₁ a a b b ( # )"))
    assert not accepts_omega(A2.terminal, A2.condition, parse_lasso("⊥₁ a b a ( # )"))


def test_final_states_are_rejected_for_lassos():
    with pytest.raises(TypeError):
        accepts_omega(A1, FinalStates(frozenset()), parse_lasso("(a)"))


def test_continuity_examples():
    samples = list(sample_lassos(A1.input_alphabet, 50))
    assert check_continuity(A1, samples)

    b = PdaBuilder({"a"}, set(), "⊥", "s")
    b.add("s", LAMBDA, "⊥", Skip("s"))
    rep = check_continuity(b.build(), [parse_lasso("(a)")])
    assert not rep and rep.completeness == LAMBDA_DIVERGENT

    b = PdaBuilder({"a", "b"}, set(), "⊥", "s")
    b.add("s", "a", "⊥", Skip("s"))
    rep = check_continuity(b.build(), [parse_lasso("a(b)")])
    assert not rep and rep.completeness == BLOCKED


def test_lambda_pumping_is_divergent_not_unbounded():
    b = PdaBuilder({"a"}, {"X"}, "⊥", "s")
    b.add("s", LAMBDA, "⊥", Push("s", "X")).add("s", LAMBDA, "X", Push("s", "X"))
    r = analyze_run(b.build(), parse_lasso("(a)"))
    assert r.completeness == LAMBDA_DIVERGENT and not r.strictly_unbounded
    assert r.inf_states is None


def test_step_ceiling_from_environment(monkeypatch):
    monkeypatch.setenv("WORKBENCH_STEP_CEILING", "3")
    with pytest.raises(ResourceExhausted):
        analyze_run(A1, parse_lasso("⊥ a b a b ( # )"))


def test_min_color_is_reported():
    colors = A2.condition.as_dict()
    r = analyze_run(A2.terminal, parse_lasso("⊥₁ a b ( # )"), colors)
    assert r.min_inf_color == min(colors[q] for q in r.inf_states)


CATALOG = sorted(catalog_automata())


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CATALOG), st.data())
def test_engine_matches_plain_simulation(name, data):
    p, _ = catalog_automata()[name]
    w = data.draw(lassos(sorted(p.input_alphabet)))
    assert check_run_against_brute(p, w) is None


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CATALOG), st.data())
def test_period_reproduces_itself(name, data):
    p, _ = catalog_automata()[name]
    w = data.draw(lassos(sorted(p.input_alphabet)))
    r = analyze_run(p, w)
    if not r.complete:
        return
    assert r.strictly_unbounded == bool(r.pumped) == isinstance(r.stack_limit, Lasso)
    # rerun the detected period from its entry configuration
    state, stack, pos = r.entry_state, r.entry_stack, r.entry_position
    for _ in range(r.period_steps):
        acts = p.delta.get((state, LAMBDA, stack[-1]))
        if acts is None:
            acts = p.delta[(state, w.letter(pos), stack[-1])]
            pos += 1
        (act,) = acts
        stack = apply_action(act, stack)
        state = act.target
    n, c = len(w.spoke), len(w.cycle)
    assert state == r.entry_state
    assert pos > r.entry_position and (pos - n) % c == (r.entry_position - n) % c
    assert stack == r.entry_stack + r.pumped


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_buchi_and_muller_agree(data):
    p = A2.terminal
    states = sorted(p.states)
    final = frozenset(data.draw(st.sets(st.sampled_from(states))))
    w = data.draw(lassos(sorted(p.input_alphabet)))
    r = analyze_run(p, w)
    if not r.complete:
        return
    universe = [frozenset(s) for s in _subsets(r.inf_states)]
    muller = Muller(frozenset(s for s in universe if s & final))
    assert condition_holds(Buchi(final), r.inf_states) == condition_holds(muller, r.inf_states)
    assert accepts_omega(p, Buchi(final), w) == condition_holds(muller, r.inf_states)


def _subsets(xs):
    xs = sorted(xs)
    for mask in range(1 << len(xs)):
        yield {x for i, x in enumerate(xs) if mask >> i & 1}
