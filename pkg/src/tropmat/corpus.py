"""Seeded corpora of generic rational weight matrices."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .realize import WeightMatrix, is_generic

DEFAULT_SHAPES = ((2, 2), (2, 3), (3, 2), (3, 3), (4, 3), (3, 4))


@dataclass(frozen=True)
class CorpusConfig:
    shapes: tuple[tuple[int, int], ...] = DEFAULT_SHAPES
    per_shape: int = 34
    seed: int = 20240501
    numerator_range: int = 40
    denominators: tuple[int, ...] = (1, 2, 3, 5, 7)
    max_tries: int = 1000


def random_weights(n: int, d: int, rng: random.Random, cfg: CorpusConfig = CorpusConfig()) -> WeightMatrix:
    r = cfg.numerator_range
    return WeightMatrix(
        tuple(
            tuple(Fraction(rng.randint(-r, r), rng.choice(cfg.denominators)) for _ in range(d))
            for _ in range(n)
        )
    )


def random_generic_weights(n: int, d: int, rng: random.Random, cfg: CorpusConfig = CorpusConfig()) -> WeightMatrix:
    for _ in range(cfg.max_tries):
        W = random_weights(n, d, rng, cfg)
        if is_generic(W):
            return W
    raise RuntimeError(f"no generic {n}x{d} matrix after {cfg.max_tries} draws")


@dataclass
class Corpus:
    config: CorpusConfig
    matrices: list[WeightMatrix] = field(default_factory=list)

    def by_shape(self, n: int, d: int) -> list[WeightMatrix]:
        return [W for W in self.matrices if (W.n, W.d) == (n, d)]


def generic_corpus(cfg: CorpusConfig = CorpusConfig()) -> Corpus:
    rng = random.Random(cfg.seed)
    out = Corpus(cfg)
    for n, d in cfg.shapes:
        out.matrices.extend(random_generic_weights(n, d, rng, cfg) for _ in range(cfg.per_shape))
    return out
