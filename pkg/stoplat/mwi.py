from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Literal, Optional, Tuple

from .errors import BoundsError, InternalConsistencyError, NotAnExtension, NotIncreasing, ParseError, SizeMismatch
from .poset import IdealFamily, Poset, cardinality, enumerate_ideals, is_extension, subset_of
from .types import Subset

Objective = Literal["min", "max"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightVector:
    weights: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.weights)

    def of(self, s: Subset) -> int:
        total = 0
        index = 0
        while s:
            if s & 1:
                total += self.weights[index]
            s >>= 1
            index += 1
        return total


@dataclass(frozen=True)
class MwiResult:
    k: int
    value: int
    witness: Subset
    searched: int
    candidates: int


def make_weights(values: Iterable[object]) -> WeightVector:
    weights: List[int] = []
    for position, value in enumerate(values):
        # bool is an int subclass; reject it along with floats.
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"weight {position} must be an integer, got {value!r}")
        weights.append(value)
    return WeightVector(tuple(weights))


def _solve(family: IdealFamily, weights: WeightVector, k: int, objective: Objective) -> MwiResult:
    if weights.n != family.n:
        raise SizeMismatch(f"{weights.n} weights for a ground set of {family.n} elements")
    if not 0 <= k <= family.n:
        raise BoundsError(f"cardinality k={k} outside 0..{family.n}")
    best: Optional[int] = None
    witness = 0
    candidates = 0
    # Members are in canonical order, so the first optimum seen is the tie-break winner.
    for s in family.members:
        if cardinality(s) != k:
            continue
        candidates += 1
        value = weights.of(s)
        if best is None or (value < best if objective == "min" else value > best):
            best = value
            witness = s
    if best is None:
        raise InternalConsistencyError(f"no ideal of size {k}; every poset has one")
    return MwiResult(k=k, value=best, witness=witness, searched=len(family), candidates=candidates)


def mwi_bruteforce(p: Poset, weights: WeightVector, k: int, objective: Objective = "min") -> MwiResult:
    return _solve(enumerate_ideals(p), weights, k, objective)


def check_increasing(weights: WeightVector, q: Poset) -> bool:
    if weights.n != q.n:
        raise SizeMismatch(f"{weights.n} weights for a poset of {q.n} elements")
    return all(weights.weights[u] <= weights.weights[v] for u, v in q.strict_pairs())


def mwi_reduced(base: Poset, target: Poset, weights: WeightVector, k: int) -> MwiResult:
    """Search only the ideals of target, the range of the superreduction from base."""
    if base.n != target.n:
        raise SizeMismatch(f"base has {base.n} elements, target has {target.n}")
    if not is_extension(base, target):
        raise NotAnExtension("target must extend base")
    if not check_increasing(weights, target):
        raise NotIncreasing("weights must be increasing on the target order")
    return _solve(enumerate_ideals(target), weights, k, "min")


def mwi_table(base: Poset, weights: WeightVector, target: Optional[Poset] = None) -> List[MwiResult]:
    if target is None:
        family = enumerate_ideals(base)
        return [_solve(family, weights, k, "min") for k in range(base.n + 1)]
    return [mwi_reduced(base, target, weights, k) for k in range(base.n + 1)]


def shift_nonnegative(weights: WeightVector) -> Tuple[WeightVector, int]:
    shift = max(0, -min(weights.weights)) if weights.weights else 0
    return WeightVector(tuple(w + shift for w in weights.weights)), shift


def greedy_discrete(weights: WeightVector, k: int) -> Tuple[int, Subset]:
    """The discrete order needs no search: take the k lightest elements."""
    if not 0 <= k <= weights.n:
        raise BoundsError(f"cardinality k={k} outside 0..{weights.n}")
    ranked = sorted(range(weights.n), key=lambda v: (weights.weights[v], v))
    chosen = subset_of(ranked[:k])
    return weights.of(chosen), chosen


def search_space(base: Poset, target: Poset) -> Tuple[int, int]:
    if not is_extension(base, target):
        raise NotAnExtension("target must extend base")
    reduced = len(enumerate_ideals(target))
    full = len(enumerate_ideals(base))
    log.info("search space %d of %d ideals (%.1f%%)", reduced, full, 100.0 * reduced / full)
    return reduced, full
