from __future__ import annotations

import random
from typing import Tuple

from .mwi import WeightVector
from .poset import Poset, elements, hasse, make_poset, relabel


def random_poset(rng: random.Random, n: int, density: float = 0.3) -> Poset:
    pairs = [(x, y) for x in range(n) for y in range(x + 1, n) if rng.random() < density]
    perm = list(range(n))
    rng.shuffle(perm)
    return relabel(make_poset(n, pairs), perm)


def random_extension_pair(rng: random.Random, n: int, density: float = 0.35, keep: float = 0.5) -> Tuple[Poset, Poset]:
    """(base, target) with base contained in target."""
    target = random_poset(rng, n, density)
    base = make_poset(n, [pair for pair in hasse(target) if rng.random() < keep])
    return base, target


def random_weights(rng: random.Random, n: int, low: int = -20, high: int = 20) -> WeightVector:
    return WeightVector(tuple(rng.randint(low, high) for _ in range(n)))


def increasing_weights(rng: random.Random, target: Poset, spread: int = 6) -> WeightVector:
    # Sum of nonnegative increments over each down-set grows along the order.
    increments = [rng.randint(0, spread) for _ in range(target.n)]
    offset = rng.randint(-spread, 0)
    weights = []
    for v in range(target.n):
        below = target.down[v] | (1 << v)
        weights.append(offset + sum(increments[u] for u in elements(below)))
    return WeightVector(tuple(weights))
