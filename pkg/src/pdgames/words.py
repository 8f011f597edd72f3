"""Finite words, lasso words u.v^omega, projections and the eraser operator.

Words are tuples of symbol tokens (plain ``str``).  A :class:`Lasso` stands
for the ultimately periodic infinite word ``spoke . cycle . cycle ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Union

Word = tuple  # tuple[str, ...]

ERASER = "←"

# characters that may never appear inside a symbol token
RESERVED = set(",(){}:|") | {"\t", "\n", " "}


@dataclass(frozen=True)
class Lasso:
    spoke: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "spoke", tuple(self.spoke))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    def letter(self, i: int) -> str:
        """Letter at 0-based position ``i`` of the infinite word."""
        n = len(self.spoke)
        if i < n:
            return self.spoke[i]
        return self.cycle[(i - n) % len(self.cycle)]

    def prefix(self, n: int) -> tuple:
        return tuple(self.letter(i) for i in range(n))

    def alphabet(self) -> frozenset:
        return frozenset(self.spoke) | frozenset(self.cycle)

    def __str__(self):
        return format_lasso(self)


# A limit is either a finite word (tuple) or a Lasso.
WordLimit = Union[tuple, Lasso]


def is_infinite(w) -> bool:
    return isinstance(w, Lasso)


def prefix_of(u, w) -> bool:
    u = tuple(u)
    if isinstance(w, Lasso):
        return w.prefix(len(u)) == u
    w = tuple(w)
    return len(u) <= len(w) and w[: len(u)] == u


def eraser_evaluate(u: Iterable[str], eraser: str = ERASER) -> tuple:
    """Read ``eraser`` as a backspace over the letters to its left."""
    out = []
    for c in u:
        if c == eraser:
            if out:
                out.pop()
        else:
            out.append(c)
    return tuple(out)


def tilde_member(oracle: Callable[[tuple], bool], u, eraser: str = ERASER) -> bool:
    return bool(oracle(eraser_evaluate(u, eraser)))


def project_erase(w, drop) -> WordLimit:
    drop = frozenset(drop)
    if isinstance(w, Lasso):
        spoke = tuple(c for c in w.spoke if c not in drop)
        cycle = tuple(c for c in w.cycle if c not in drop)
        if not cycle:
            return spoke
        return lasso_normalize(Lasso(spoke, cycle))
    return tuple(c for c in w if c not in drop)


def primitive_root(x: tuple) -> tuple:
    n = len(x)
    for d in range(1, n + 1):
        if n % d == 0 and x[:d] * (n // d) == x:
            return x[:d]
    return x


def lasso_normalize(w: Lasso) -> Lasso:
    """Canonical form: primitive cycle, then the shortest spoke."""
    spoke = list(w.spoke)
    cycle = list(primitive_root(w.cycle))
    while spoke and spoke[-1] == cycle[-1]:
        spoke.pop()
        cycle = [cycle[-1]] + cycle[:-1]
    return Lasso(tuple(spoke), tuple(cycle))


def same_omega_word(x: Lasso, y: Lasso) -> bool:
    return lasso_normalize(x) == lasso_normalize(y)


def limits_equal(x: WordLimit, y: WordLimit) -> bool:
    if isinstance(x, Lasso) and isinstance(y, Lasso):
        return same_omega_word(x, y)
    if isinstance(x, Lasso) or isinstance(y, Lasso):
        return False
    return tuple(x) == tuple(y)


# ---------------------------------------------------------------- literals

_ATTACH = re.compile(r"['′₀₁₂₃₄₅₆₇₈₉]")


def _tokens(text: str) -> list:
    text = text.strip()
    if not text or text == "λ":
        return []
    if any(ch.isspace() for ch in text):
        out = []
        for tok in text.split():
            # parentheses may be glued to neighbouring symbols
            for part in re.split(r"([()])", tok):
                if part:
                    out.append(part)
        return out
    out = []
    for ch in text:
        if out and _ATTACH.match(ch) and out[-1] not in "()":
            out[-1] += ch
        else:
            out.append(ch)
    return out


def parse_word(text: str) -> tuple:
    """Parse a finite word literal.

    Space-separated tokens when any whitespace is present, otherwise one
    glyph per symbol (primes and subscript digits attach to the glyph before
    them).  ``λ`` and the empty string denote the empty word.
    """
    toks = _tokens(text)
    if "(" in toks or ")" in toks:
        raise ValueError(f"unexpected parenthesis in finite word {text!r}")
    return tuple(t for t in toks if t != "λ")


def parse_lasso(text: str) -> Lasso:
    """Parse ``spoke ( cycle )``, e.g. ``⊥ a b ( # )`` or ``ab(#)``."""
    toks = _tokens(text)
    if toks.count("(") != 1 or toks.count(")") != 1 or toks[-1] != ")":
        raise ValueError(f"lasso literal must look like 'spoke ( cycle )': {text!r}")
    i = toks.index("(")
    spoke, cycle = toks[:i], toks[i + 1 : -1]
    if not cycle:
        raise ValueError(f"empty lasso cycle in {text!r}")
    return Lasso(tuple(spoke), tuple(cycle))


def parse_word_or_lasso(text: str):
    return parse_lasso(text) if "(" in text else parse_word(text)


def format_word(w) -> str:
    return " ".join(w) if w else "λ"


def format_lasso(w: Lasso) -> str:
    spoke = " ".join(w.spoke)
    body = f"( {' '.join(w.cycle)} )"
    return f"{spoke} {body}" if spoke else body


def format_limit(w: WordLimit) -> str:
    return format_lasso(w) if isinstance(w, Lasso) else format_word(w)


def check_symbol(name: str) -> None:
    if not name or any(ch in RESERVED or ch.isspace() for ch in name):
        raise ValueError(f"invalid symbol token {name!r}")
    if name in ("_", "λ", "->"):
        raise ValueError(f"reserved symbol token {name!r}")
