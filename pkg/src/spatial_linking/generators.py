"""Embeddings of K_n: the moment-curve standard embedding and seeded random
rectilinear embeddings."""
from __future__ import annotations

import random
from typing import Sequence

from .geometry import PLEmbedding, require_valid, validate_embedding

DEFAULT_BOUND = 100
DEFAULT_RESAMPLE_BUDGET = 1000


class GenerationError(RuntimeError):
    pass


def moment_curve(n: int, t: Sequence[int] | None = None) -> PLEmbedding:
    """Vertex i at (t_i, t_i^2, t_i^3); t defaults to 1..n."""
    if n < 3:
        raise ValueError("moment curve embedding needs n >= 3")
    t = list(range(1, n + 1)) if t is None else [int(x) for x in t]
    if len(t) != n:
        raise ValueError(f"need {n} parameters, got {len(t)}")
    if any(b <= a for a, b in zip(t, t[1:])):
        raise ValueError(f"moment parameters must be strictly increasing: {t}")
    e = PLEmbedding(n, tuple((x, x * x, x ** 3) for x in t))
    require_valid(e)
    return e


def _draw(rng: random.Random, bound: int) -> int:
    # uniform integer in [-bound, bound] by rejection on getrandbits
    span = 2 * bound + 1
    bits = span.bit_length()
    while True:
        r = rng.getrandbits(bits)
        if r < span:
            return r - bound


def random_embedding(n: int, seed: int, bound: int = DEFAULT_BOUND,
                     budget: int = DEFAULT_RESAMPLE_BUDGET) -> PLEmbedding:
    """Rectilinear K_n with integer vertices in [-bound, bound]^3.

    The stream is Python's MT19937 (``random.Random(seed)``); coordinates
    are drawn x, y, z per vertex in vertex order, each by rejection
    sampling ``getrandbits(k)`` with k the bit length of 2*bound+1. Both
    seeding and ``getrandbits`` are stable across platforms and versions.
    Invalid configurations are discarded and redrawn from the same stream.
    """
    if bound < n:
        raise ValueError(f"coordinate bound {bound} must be at least n = {n}")
    rng = random.Random(seed)
    for _ in range(budget):
        verts = tuple(tuple(_draw(rng, bound) for _ in range(3)) for _ in range(n))
        e = PLEmbedding(n, verts)
        if not validate_embedding(e):
            return e
    raise GenerationError(f"no valid embedding of K_{n} after {budget} draws (seed {seed})")
