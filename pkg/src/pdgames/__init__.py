"""Pushdown games whose winning conditions are read off the stack limit."""

from .automata import (
    LAMBDA,
    Buchi,
    Configuration,
    FinalStates,
    Muller,
    Parity,
    Pda,
    PdaBuilder,
    Pop,
    Push,
    Skip,
    accepts_finite,
    classify_pda,
    validate_pda,
)
from .games import (
    ADAM,
    EVE,
    GameInstance,
    Outcome,
    PushdownProcess,
    Verdict,
    solve_bounded,
    winning_set_slice,
)
from .omega import RunAnalysis, ResourceExhausted, accepts_omega, analyze_run
from .triangle import (
    TriangleChain,
    chain_validate,
    complement_chain,
    decompose_unique,
    pad_transform,
    seg_member_L,
    seg_member_U,
    triangle_member,
)
from .words import Lasso, eraser_evaluate, parse_lasso, parse_word, tilde_member

__all__ = [name for name in dir() if not name.startswith("_")]
