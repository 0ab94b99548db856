from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from .errors import BoundsError, CycleError, NotAMember, NotAnExtension, SizeMismatch
from .types import Subset

MAX_ELEMENTS = 64

log = logging.getLogger(__name__)


def full_set(n: int) -> Subset:
    return (1 << n) - 1


def elements(s: Subset) -> Iterator[int]:
    while s:
        low = s & -s
        yield low.bit_length() - 1
        s ^= low


def subset_of(items: Iterable[int]) -> Subset:
    s = 0
    for x in items:
        s |= 1 << x
    return s


def cardinality(s: Subset) -> int:
    return s.bit_count()


def check_size(n: int) -> None:
    if n < 0 or n > MAX_ELEMENTS:
        raise BoundsError(f"ground set size must be within 0..{MAX_ELEMENTS}, got {n}")


@dataclass(frozen=True)
class Poset:
    """Strict order: ``up[x]`` holds every y with x < y. Never holds x itself."""

    n: int
    up: Tuple[int, ...]

    @cached_property
    def down(self) -> Tuple[int, ...]:
        below = [0] * self.n
        for x, above in enumerate(self.up):
            for y in elements(above):
                below[y] |= 1 << x
        return tuple(below)

    def less(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def leq(self, x: int, y: int) -> bool:
        return x == y or self.less(x, y)

    def strict_pairs(self) -> List[Tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in elements(self.up[x])]

    @property
    def size(self) -> int:
        return sum(cardinality(above) for above in self.up)

    @cached_property
    def relation_mask(self) -> int:
        # One bit per strict pair (x, y) at position x * n + y.
        mask = 0
        for x, above in enumerate(self.up):
            mask |= above << (x * self.n)
        return mask


@dataclass(frozen=True)
class TotalExtension:
    """Bijection tau: V -> {0, ..., n-1}; ``perm[x]`` is tau(x)."""

    perm: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    @cached_property
    def inverse(self) -> Tuple[int, ...]:
        inv = [0] * len(self.perm)
        for x, position in enumerate(self.perm):
            inv[position] = x
        return tuple(inv)

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def weight(self, s: Subset) -> int:
        return sum(self.perm[x] for x in elements(s))

    def extends(self, p: Poset) -> bool:
        return extends(self, p)


@dataclass(frozen=True)
class IdealFamily:
    """A family of subsets of {0, ..., n-1}, sorted ascending as unsigned bitsets."""

    n: int
    members: Tuple[Subset, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __contains__(self, s: object) -> bool:
        return s in self._member_set

    @cached_property
    def _member_set(self) -> FrozenSet[Subset]:
        return frozenset(self.members)

    @cached_property
    def _positions(self) -> Dict[Subset, int]:
        return {s: i for i, s in enumerate(self.members)}

    def index(self, s: Subset) -> int:
        try:
            return self._positions[s]
        except KeyError:
            raise NotAMember(f"{format_subset(s)} is not a member of the family") from None

    def issubset(self, other: "IdealFamily") -> bool:
        return self._member_set <= other._member_set


def format_subset(s: Subset) -> str:
    return "{" + ",".join(str(x) for x in elements(s)) + "}"


def _transitive_closure(n: int, up: Sequence[int]) -> Tuple[int, ...]:
    closed = list(up)
    for k in range(n):
        kbit = 1 << k
        above_k = closed[k]
        for i in range(n):
            if closed[i] & kbit:
                closed[i] |= above_k
    for x in range(n):
        if closed[x] >> x & 1:
            raise CycleError(f"relation has a directed cycle through element {x}")
    return tuple(closed)


def make_poset(n: int, pairs: Iterable[Tuple[int, int]]) -> Poset:
    check_size(n)
    up = [0] * n
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise BoundsError(f"pair ({x},{y}) outside ground set of size {n}")
        if x == y:
            raise CycleError(f"reflexive pair ({x},{x}) in a strict relation")
        up[x] |= 1 << y
    return Poset(n, _transitive_closure(n, up))


def discrete(n: int) -> Poset:
    check_size(n)
    return Poset(n, (0,) * n)


def chain(n: int) -> Poset:
    check_size(n)
    full = full_set(n)
    return Poset(n, tuple(full & ~full_set(x + 1) for x in range(n)))


def hasse(p: Poset) -> List[Tuple[int, int]]:
    covers: List[Tuple[int, int]] = []
    for x in range(p.n):
        above = p.up[x]
        implied = 0
        for z in elements(above):
            implied |= p.up[z]
        covers.extend((x, y) for y in elements(above & ~implied))
    return covers


def is_extension(p: Poset, q: Poset) -> bool:
    if p.n != q.n:
        raise SizeMismatch(f"posets have {p.n} and {q.n} elements")
    return all(a & ~b == 0 for a, b in zip(p.up, q.up))


def extends(tau: TotalExtension, p: Poset) -> bool:
    if tau.n != p.n:
        return False
    return all(tau.perm[x] < tau.perm[y] for x, y in p.strict_pairs())


def make_total_extension(p: Poset, perm: Sequence[int]) -> TotalExtension:
    if len(perm) != p.n:
        raise SizeMismatch(f"total extension has {len(perm)} entries for {p.n} elements")
    if sorted(perm) != list(range(p.n)):
        raise BoundsError("total extension must be a bijection onto 0..n-1")
    tau = TotalExtension(tuple(perm))
    if not extends(tau, p):
        raise NotAnExtension("total extension does not respect the order")
    return tau


def default_linear_extension(p: Poset) -> TotalExtension:
    perm = [0] * p.n
    placed = 0
    for position in range(p.n):
        for x in range(p.n):
            if not placed >> x & 1 and p.down[x] & ~placed == 0:
                perm[x] = position
                placed |= 1 << x
                break
    return TotalExtension(tuple(perm))


def is_ideal(p: Poset, s: Subset) -> bool:
    if s < 0 or s >> p.n:
        return False
    return all(p.down[y] & ~s == 0 for y in elements(s))


def enumerate_ideals(p: Poset) -> IdealFamily:
    ideals: List[Subset] = [0]
    for x in default_linear_extension(p).inverse:
        need = p.down[x]
        xbit = 1 << x
        ideals.extend([s | xbit for s in ideals if need & ~s == 0])
    ideals.sort()
    return IdealFamily(p.n, tuple(ideals))


def disjoint_union(p: Poset, q: Poset) -> Poset:
    n = p.n + q.n
    check_size(n)
    return Poset(n, p.up + tuple(above << p.n for above in q.up))


def poset_product(p: Poset, q: Poset) -> Poset:
    n = p.n * q.n
    check_size(n)
    up = [0] * n
    for a in range(p.n):
        for b in range(q.n):
            above = 0
            for c in range(p.n):
                if not p.leq(a, c):
                    continue
                for d in range(q.n):
                    if q.leq(b, d) and (a, b) != (c, d):
                        above |= 1 << (c * q.n + d)
            up[a * q.n + b] = above
    return Poset(n, tuple(up))


def join_orders(n: int, orders: Iterable[Poset]) -> Poset:
    check_size(n)
    up = [0] * n
    for order in orders:
        if order.n != n:
            raise SizeMismatch(f"order has {order.n} elements, expected {n}")
        for x, above in enumerate(order.up):
            up[x] |= above
    return Poset(n, _transitive_closure(n, up))


def relabel(p: Poset, perm: Sequence[int]) -> Poset:
    if sorted(perm) != list(range(p.n)):
        raise BoundsError("relabelling must be a bijection onto 0..n-1")
    up = [0] * p.n
    for x, above in enumerate(p.up):
        up[perm[x]] = subset_of(perm[y] for y in elements(above))
    return Poset(p.n, tuple(up))


def is_graded(p: Poset) -> bool:
    """Jordan-Dedekind: every interval [x, y] has maximal chains of a single length."""
    covers_into: List[List[int]] = [[] for _ in range(p.n)]
    for x, y in hasse(p):
        covers_into[y].append(x)
    order = default_linear_extension(p).inverse
    for x in range(p.n):
        shortest: Dict[int, int] = {x: 0}
        longest: Dict[int, int] = {x: 0}
        for y in order:
            if not p.less(x, y):
                continue
            steps = [z for z in covers_into[y] if z in shortest]
            shortest[y] = 1 + min(shortest[z] for z in steps)
            longest[y] = 1 + max(longest[z] for z in steps)
            if shortest[y] != longest[y]:
                log.debug("interval [%d,%d] has chains of length %d and %d", x, y, shortest[y], longest[y])
                return False
    return True
