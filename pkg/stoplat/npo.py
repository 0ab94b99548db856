"""NPO(n) enumeration: element j takes an order ideal of the poset on {0, ..., j-1}
as its set of predecessors.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, Iterator, List, Literal, Optional, Tuple, Union

from .config import Limits, resolve_workers
from .errors import BoundsError, BpsOverflow, LimitExceeded, NotNatural, SizeMismatch
from .poset import Poset, cardinality, check_size, elements, full_set, join_orders

log = logging.getLogger(__name__)

# OEIS A006455, n = 0..12. Entries above the configured computation limit are
# inputs to the ratio table only; they are never reported as computed.
PUBLISHED_NPO_COUNTS: Tuple[int, ...] = (
    1,
    1,
    2,
    7,
    40,
    357,
    4824,
    96428,
    2800472,
    116473461,
    6855780268,
    565505147444,
    64824245807684,
)

SHARD_DEPTH = 4

NpoMode = Literal["count", "stream"]


@dataclass(frozen=True)
class BpsConstants:
    c_even: float = 12.7636300
    c_odd: float = 12.7635965

    def for_size(self, n: int) -> float:
        return self.c_even if n % 2 == 0 else self.c_odd


BPS_CONSTANTS = BpsConstants()


@dataclass(frozen=True)
class BpsRow:
    n: int
    count: int
    bps: float
    ratio: float
    published: bool


def _natural_ideals(down: Tuple[int, ...]) -> List[int]:
    ideals = [0]
    for j, need in enumerate(down):
        jbit = 1 << j
        ideals.extend([s | jbit for s in ideals if need & ~s == 0])
    ideals.sort()
    return ideals


def _poset_from_down(down: Tuple[int, ...]) -> Poset:
    n = len(down)
    up = [0] * n
    for y, below in enumerate(down):
        for x in elements(below):
            up[x] |= 1 << y
    return Poset(n, tuple(up))


def _iter_downs(n: int, prefix: Tuple[int, ...] = ()) -> Iterator[Tuple[int, ...]]:
    if len(prefix) == n:
        yield prefix
        return
    for ideal in _natural_ideals(prefix):
        yield from _iter_downs(n, prefix + (ideal,))


def iter_npo(n: int) -> Iterator[Poset]:
    check_size(n)
    for down in _iter_downs(n):
        yield _poset_from_down(down)


def _count_extensions(prefix: Tuple[int, ...], n: int) -> int:
    depth = len(prefix)
    if depth == n:
        return 1
    ideals = _natural_ideals(prefix)
    if depth == n - 1:
        return len(ideals)
    return sum(_count_extensions(prefix + (ideal,), n) for ideal in ideals)


def count_npo(n: int, threads: int = 0) -> int:
    check_size(n)
    split = min(n, SHARD_DEPTH)
    prefixes = list(_iter_downs(split))
    workers = resolve_workers(threads, len(prefixes))
    log.info("counting NPO(%d) over %d prefix shards with %d workers", n, len(prefixes), workers)
    partial: Dict[int, int] = {}
    if workers <= 1:
        for index, prefix in enumerate(prefixes):
            partial[index] = _count_extensions(prefix, n)
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(_count_extensions, prefix, n): index for index, prefix in enumerate(prefixes)}
            for future in as_completed(futures):
                partial[futures[future]] = future.result()
    return sum(partial[index] for index in range(len(prefixes)))


def enumerate_npo(
    n: int,
    mode: NpoMode = "count",
    limits: Limits = Limits(),
    threads: int = 0,
) -> Union[int, Iterator[Poset]]:
    check_size(n)
    if mode == "count":
        if n > limits.npo_count_limit:
            raise LimitExceeded(f"NPO counting limited to n <= {limits.npo_count_limit}, got {n}")
        return count_npo(n, threads)
    if mode == "stream":
        if n > limits.npo_stream_limit:
            raise LimitExceeded(f"NPO streaming limited to n <= {limits.npo_stream_limit}, got {n}")
        return iter_npo(n)
    raise ValueError(f"unknown NPO mode {mode!r}")


def is_natural(p: Poset) -> bool:
    return all(above & full_set(x + 1) == 0 for x, above in enumerate(p.up))


def _check_natural_pair(p: Poset, q: Poset) -> None:
    if p.n != q.n:
        raise SizeMismatch(f"posets have {p.n} and {q.n} elements")
    if not is_natural(p) or not is_natural(q):
        raise NotNatural("meet and join are defined on natural partial orders")


def npo_rank(p: Poset) -> int:
    return p.size


def ndl_rank(p: Poset) -> int:
    return p.n * (p.n - 1) // 2 - npo_rank(p)


def npo_meet(p: Poset, q: Poset) -> Poset:
    _check_natural_pair(p, q)
    return Poset(p.n, tuple(a & b for a, b in zip(p.up, q.up)))


def npo_join(p: Poset, q: Poset) -> Poset:
    _check_natural_pair(p, q)
    return join_orders(p.n, (p, q))


def _structure_population(n: int, limits: Limits) -> List[Poset]:
    if n > limits.structure_limit:
        raise LimitExceeded(f"NPO structure checks limited to n <= {limits.structure_limit}, got {n}")
    return list(iter_npo(n))


def npo_covers(n: int, limits: Limits = Limits()) -> List[Tuple[Poset, Poset]]:
    population = _structure_population(n, limits)
    masks = [p.relation_mask for p in population]
    covers: List[Tuple[Poset, Poset]] = []
    for i, low in enumerate(masks):
        above = sorted(
            (j for j, high in enumerate(masks) if j != i and low & ~high == 0),
            key=lambda j: cardinality(masks[j]),
        )
        for position, j in enumerate(above):
            high = masks[j]
            # Only strictly smaller supersets, all earlier in rank order, can sit between.
            if not any(masks[k] != high and masks[k] & ~high == 0 for k in above[:position]):
                covers.append((population[i], population[j]))
    log.info("NPO(%d): %d posets, %d cover pairs", n, len(population), len(covers))
    return covers


def check_jordan_dedekind(n: int, limits: Limits = Limits()) -> bool:
    return all(npo_rank(high) == npo_rank(low) + 1 for low, high in npo_covers(n, limits))


def check_semimodular(n: int, limits: Limits = Limits()) -> bool:
    population = _structure_population(n, limits)
    for p in population:
        for q in population:
            if npo_rank(p) + npo_rank(q) > npo_rank(npo_meet(p, q)) + npo_rank(npo_join(p, q)):
                log.warning("semimodularity fails for %s and %s", p.strict_pairs(), q.strict_pairs())
                return False
    return True


def modularity_witness(n: int, limits: Limits = Limits()) -> Optional[Tuple[Poset, Poset]]:
    """First pair of NPO(n) where the semimodular rank inequality is strict, or None."""
    population = _structure_population(n, limits)
    for p in population:
        for q in population:
            if npo_rank(p) + npo_rank(q) < npo_rank(npo_meet(p, q)) + npo_rank(npo_join(p, q)):
                return p, q
    return None


def check_not_modular(n: int, limits: Limits = Limits()) -> bool:
    return modularity_witness(n, limits) is not None


def check_ndl_upper_semimodular(n: int, limits: Limits = Limits()) -> bool:
    population = _structure_population(n, limits)
    for p in population:
        for q in population:
            # I(p) v I(q) is I(p ^ q) and I(p) ^ I(q) is I(p v q) in NDL(n).
            ndl_join = ndl_rank(npo_meet(p, q))
            ndl_meet = ndl_rank(npo_join(p, q))
            if ndl_rank(p) + ndl_rank(q) < ndl_meet + ndl_join:
                log.warning("NDL upper semimodularity fails for %s and %s", p.strict_pairs(), q.strict_pairs())
                return False
    return True


def bps(n: int, exponent_limit: int = 60, constants: BpsConstants = BPS_CONSTANTS) -> float:
    if n < 0:
        raise BoundsError(f"n must be >= 0, got {n}")
    if n > exponent_limit:
        raise BpsOverflow(f"BPS({n}) exceeds the exponent guard n <= {exponent_limit}")
    return constants.for_size(n) * n * 2.0 ** (n * n / 4)


def bps_ratio_table(n_max: int, limits: Limits = Limits(), threads: int = 0) -> List[BpsRow]:
    if n_max < 0:
        raise BoundsError(f"n_max must be >= 0, got {n_max}")
    if n_max > limits.bps_table_limit:
        raise LimitExceeded(f"BPS table limited to n <= {limits.bps_table_limit}, got {n_max}")
    rows: List[BpsRow] = []
    for n in range(n_max + 1):
        published = n > limits.computed_count_limit
        count = PUBLISHED_NPO_COUNTS[n] if published else count_npo(n, threads)
        value = bps(n, limits.bps_exponent_limit)
        rows.append(BpsRow(n=n, count=count, bps=value, ratio=value / count, published=published))
    return rows
