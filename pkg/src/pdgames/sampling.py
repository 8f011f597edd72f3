"""Pseudo-random lasso words for property checks.

Half of the samples are uniform over the alphabet; the rest follow templates
that reach the interesting parts of the catalog automata (a bottom marker,
a block word, then a ``#`` or ``d`` cycle).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .words import Lasso

BOTTOM_MARKS = ("⊥",)
PAD_MARKS = ("#", "d")


@dataclass
class SamplerConfig:
    max_total: int = 10  # spoke + cycle length
    uniform_share: float = 0.5
    seed: int = 0


def _uniform(rng: random.Random, letters: list, max_total: int) -> Lasso:
    total = rng.randint(1, max_total)
    cycle_len = rng.randint(1, total)
    spoke = tuple(rng.choice(letters) for _ in range(total - cycle_len))
    cycle = tuple(rng.choice(letters) for _ in range(cycle_len))
    return Lasso(spoke, cycle)


def _structured(rng: random.Random, letters: list, max_total: int) -> Lasso:
    bottom = [x for x in BOTTOM_MARKS if x in letters]
    pads = [x for x in PAD_MARKS if x in letters]
    body = [x for x in letters if x not in bottom and x not in pads] or letters
    head = list(bottom[:1]) if bottom and rng.random() < 0.9 else []
    room = max_total - len(head) - 1
    if rng.random() < 0.5:
        # block word x1^n1 x2^n2 ... in alphabet order, as in a^n b^m c^p
        word = []
        for x in sorted(body):
            if rng.random() < 0.8:
                word += [x] * rng.randint(1, 3)
    else:
        word = [rng.choice(body) for _ in range(rng.randint(0, room))]
    word = word[:max(room, 0)]
    cycle = (rng.choice(pads),) if pads else (rng.choice(letters),)
    return Lasso(tuple(head + word), cycle)


def sample_lassos(
    alphabet,
    count: int,
    config: Optional[SamplerConfig] = None,
    rng: Optional[random.Random] = None,
) -> Iterator[Lasso]:
    """``count`` lassos over ``alphabet``; deterministic for a fixed seed."""
    config = config or SamplerConfig()
    rng = rng or random.Random(config.seed)
    letters = sorted(alphabet)
    for _ in range(count):
        if rng.random() < config.uniform_share:
            yield _uniform(rng, letters, config.max_total)
        else:
            yield _structured(rng, letters, config.max_total)
