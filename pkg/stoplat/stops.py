from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    AxiomViolation,
    BaseMismatch,
    BoundsError,
    IncompleteTable,
    InternalConsistencyError,
    MissingBounds,
    NonTerminating,
    NotAMember,
    NotAnExtension,
    NotAntisymmetric,
    NotIdempotent,
    SizeMismatch,
)
from .lattice import recover_order
from .poset import (
    IdealFamily,
    Poset,
    TotalExtension,
    cardinality,
    elements,
    enumerate_ideals,
    extends,
    format_subset,
)
from .types import Subset, Verdict

log = logging.getLogger(__name__)


class BoundaryKind(str, Enum):
    ADDITIVE_WEIGHT = "additive_weight"
    EDGE = "edge"
    VERTEX = "vertex"


@dataclass(frozen=True)
class Graph:
    n: int
    edges: FrozenSet[Tuple[int, int]]

    @cached_property
    def neighbors(self) -> Tuple[int, ...]:
        adjacent = [0] * self.n
        for u, v in self.edges:
            adjacent[u] |= 1 << v
            adjacent[v] |= 1 << u
        return tuple(adjacent)


def make_graph(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    if n < 0:
        raise BoundsError(f"vertex count must be >= 0, got {n}")
    normalized = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise BoundsError(f"edge ({u},{v}) outside vertex set of size {n}")
        if u == v:
            raise BoundsError(f"loop at vertex {u}")
        normalized.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(normalized))


@dataclass(frozen=True)
class BoundaryFunctional:
    kind: BoundaryKind
    n: int
    weights: Tuple[int, ...] = ()
    graph: Optional[Graph] = None


def additive_weight(weights: Sequence[int]) -> BoundaryFunctional:
    return BoundaryFunctional(BoundaryKind.ADDITIVE_WEIGHT, len(weights), weights=tuple(weights))


def edge_boundary(graph: Graph) -> BoundaryFunctional:
    return BoundaryFunctional(BoundaryKind.EDGE, graph.n, graph=graph)


def vertex_boundary(graph: Graph) -> BoundaryFunctional:
    return BoundaryFunctional(BoundaryKind.VERTEX, graph.n, graph=graph)


def evaluate_boundary(b: BoundaryFunctional, s: Subset) -> int:
    if b.kind == BoundaryKind.ADDITIVE_WEIGHT:
        return sum(b.weights[v] for v in elements(s))
    assert b.graph is not None
    neighbors = b.graph.neighbors
    if b.kind == BoundaryKind.EDGE:
        return sum(cardinality(neighbors[v] & ~s) for v in elements(s))
    reached = 0
    for v in elements(s):
        reached |= neighbors[v]
    return cardinality(reached & ~s)


@dataclass(frozen=True)
class StOpMap:
    """``images[i]`` is the image of ``domain.members[i]``; domain is always the ideal family of base."""

    base: Poset
    domain: IdealFamily
    images: Tuple[Subset, ...]

    def __call__(self, s: Subset) -> Subset:
        return self.images[self.domain.index(s)]

    def items(self) -> Iterator[Tuple[Subset, Subset]]:
        return zip(self.domain.members, self.images)


@dataclass(frozen=True)
class AxiomReport:
    verdicts: Tuple[Tuple[str, Verdict], ...]

    @property
    def passed(self) -> bool:
        return all(verdict != Verdict.FAIL for _, verdict in self.verdicts)

    def as_dict(self) -> Dict[str, Verdict]:
        return dict(self.verdicts)


def identity_stop(base: Poset) -> StOpMap:
    domain = enumerate_ideals(base)
    return StOpMap(base, domain, domain.members)


def make_stop(base: Poset, mapping: Mapping[Subset, Subset]) -> StOpMap:
    domain = enumerate_ideals(base)
    for s in mapping:
        if s not in domain:
            raise NotAMember(f"{format_subset(s)} is not an ideal of the base poset")
    images: List[Subset] = []
    for s in domain.members:
        if s not in mapping:
            raise IncompleteTable(f"no image given for ideal {format_subset(s)}")
        image = mapping[s]
        if image not in domain:
            raise NotAMember(f"image {format_subset(image)} of {format_subset(s)} is not an ideal of the base poset")
        images.append(image)
    return StOpMap(base, domain, tuple(images))


def stop_from_function(base: Poset, fn: Callable[[Subset], Subset]) -> StOpMap:
    domain = enumerate_ideals(base)
    return make_stop(base, {s: fn(s) for s in domain.members})


def check_axiom1(phi: StOpMap) -> bool:
    return all(cardinality(image) == cardinality(s) for s, image in phi.items())


def check_axiom2(phi: StOpMap, boundary: BoundaryFunctional) -> bool:
    if boundary.n != phi.base.n:
        raise SizeMismatch(f"boundary is defined on {boundary.n} elements, base has {phi.base.n}")
    return all(evaluate_boundary(boundary, image) <= evaluate_boundary(boundary, s) for s, image in phi.items())


def check_axiom3(phi: StOpMap) -> bool:
    pairs = list(phi.items())
    for s, s_image in pairs:
        for t, t_image in pairs:
            if s & ~t == 0 and s_image & ~t_image:
                log.debug("monotonicity fails for %s <= %s", format_subset(s), format_subset(t))
                return False
    return True


def check_axiom4(phi: StOpMap, tau: TotalExtension) -> bool:
    if not extends(tau, phi.base):
        raise NotAnExtension("tau does not extend the base poset")
    for s, image in phi.items():
        before = tau.weight(s)
        after = tau.weight(image)
        if after > before or (after == before and image != s):
            return False
    return True


def validate_stop(
    phi: StOpMap,
    boundary: Optional[BoundaryFunctional] = None,
    tau: Optional[TotalExtension] = None,
) -> AxiomReport:
    def verdict(ok: bool) -> Verdict:
        return Verdict.PASS if ok else Verdict.FAIL

    return AxiomReport(
        (
            ("1", verdict(check_axiom1(phi))),
            ("2", verdict(check_axiom2(phi, boundary)) if boundary is not None else Verdict.SKIPPED),
            ("3", verdict(check_axiom3(phi))),
            ("4", verdict(check_axiom4(phi, tau)) if tau is not None else Verdict.SKIPPED),
        )
    )


def compose(phi: StOpMap, psi: StOpMap) -> StOpMap:
    """Table of S -> phi(psi(S))."""
    if phi.base != psi.base:
        raise BaseMismatch("cannot compose StOps over different base posets")
    return StOpMap(psi.base, psi.domain, tuple(phi(image) for image in psi.images))


def is_idempotent(phi: StOpMap) -> bool:
    return compose(phi, phi) == phi


def idempotent_closure(phi: StOpMap, tau: Optional[TotalExtension] = None) -> StOpMap:
    if tau is not None and not check_axiom4(phi, tau):
        raise AxiomViolation("4", "idempotent closure needs a map that satisfies axiom 4")
    stable: List[Subset] = []
    for s in phi.domain.members:
        seen = {s}
        current = s
        while True:
            following = phi(current)
            if following == current:
                break
            if following in seen:
                raise NonTerminating(f"orbit of {format_subset(s)} never reaches a fixpoint")
            seen.add(following)
            current = following
        stable.append(current)
    return StOpMap(phi.base, phi.domain, tuple(stable))


def range_of(phi: StOpMap) -> IdealFamily:
    if not is_idempotent(phi):
        raise NotIdempotent("range extraction needs an idempotent StOp")
    fixed = tuple(s for s, image in phi.items() if image == s)
    return IdealFamily(phi.base.n, fixed)


def image_of(phi: StOpMap) -> IdealFamily:
    return IdealFamily(phi.base.n, tuple(sorted(set(phi.images))))


def stop_order(phi: StOpMap) -> Poset:
    if not check_axiom1(phi):
        raise AxiomViolation("1")
    if not check_axiom3(phi):
        raise AxiomViolation("3")
    family = range_of(phi)
    try:
        return recover_order(family)
    except (MissingBounds, NotAntisymmetric) as exc:
        log.error("range of a valid StOp has no representing order; %d fixpoints", len(family))
        raise InternalConsistencyError(f"range of a valid StOp is not an ideal family: {exc}") from exc


def cyclic_composition(maps: Sequence[StOpMap]) -> StOpMap:
    """Compose maps[0], maps[1], ... in turn, cycle after cycle, until a full cycle changes nothing."""
    if not maps:
        raise ValueError("cyclic composition needs at least one map")
    base = maps[0].base
    for phi in maps[1:]:
        if phi.base != base:
            raise BaseMismatch("cyclic composition over different base posets")
    domain = maps[0].domain
    current = domain.members
    seen = {current}
    cycles = 0
    while True:
        cycles += 1
        before = current
        for phi in maps:
            current = tuple(phi(image) for image in current)
        if current == before:
            break
        if current in seen:
            raise NonTerminating(f"cyclic composition revisits a table after {cycles} cycles")
        seen.add(current)
    log.debug("cyclic composition of %d maps stable after %d cycles", len(maps), cycles)
    return StOpMap(base, domain, current)
