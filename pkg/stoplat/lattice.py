from __future__ import annotations

import logging
from typing import Iterable, List, Tuple

from .errors import BoundsError, MissingBounds, NotALattice, NotAntisymmetric, SizeMismatch
from .poset import (
    MAX_ELEMENTS,
    IdealFamily,
    Poset,
    check_size,
    elements,
    enumerate_ideals,
    format_subset,
    full_set,
    is_extension,
)
from .types import Subset

__all__ = [
    "IdealFamily",
    "birkhoff_eta",
    "check_eta_isomorphism",
    "check_theorem2",
    "family_product",
    "is_union_intersection_closed",
    "join_irreducible_poset",
    "join_irreducibles",
    "make_family",
    "recover_order",
    "verify_birkhoff",
]

log = logging.getLogger(__name__)


def make_family(n: int, members: Iterable[Subset]) -> IdealFamily:
    check_size(n)
    limit = full_set(n)
    unique = set()
    for s in members:
        if s < 0 or s & ~limit:
            raise BoundsError(f"member {format_subset(s)} outside ground set of size {n}")
        unique.add(s)
    return IdealFamily(n, tuple(sorted(unique)))


def is_union_intersection_closed(f: IdealFamily) -> bool:
    members = f.members
    for i, s in enumerate(members):
        for t in members[i + 1 :]:
            if (s | t) not in f or (s & t) not in f:
                return False
    return True


def _minimum(f: IdealFamily) -> Subset:
    bottom = full_set(f.n)
    for s in f.members:
        bottom &= s
    return bottom


def join_irreducibles(f: IdealFamily) -> List[Subset]:
    if not f.members or not is_union_intersection_closed(f):
        raise NotALattice("family must be nonempty and closed under union and intersection")
    irreducibles: List[Subset] = []
    for x in f.members:
        # Under union closure, the join of everything strictly below x is the
        # unique immediate predecessor exactly when it differs from x.
        below = [y for y in f.members if y != x and y & ~x == 0]
        if not below:
            continue
        joined = 0
        for y in below:
            joined |= y
        if joined != x:
            irreducibles.append(x)
    return irreducibles


def birkhoff_eta(f: IdealFamily, x: Subset) -> Tuple[Subset, ...]:
    f.index(x)
    return tuple(y for y in join_irreducibles(f) if y & ~x == 0)


def recover_order(f: IdealFamily) -> Poset:
    full = full_set(f.n)
    if 0 not in f or full not in f:
        raise MissingBounds("family must contain the empty set and the whole ground set")
    # below[y] collects the x contained in every member that contains y.
    below = [full & ~(1 << y) for y in range(f.n)]
    for s in f.members:
        for y in elements(s):
            below[y] &= s
    up = [0] * f.n
    for y in range(f.n):
        for x in elements(below[y]):
            if below[x] >> y & 1:
                raise NotAntisymmetric(f"elements {x} and {y} are never separated by a member")
            up[x] |= 1 << y
    return Poset(f.n, tuple(up))


def verify_birkhoff(f: IdealFamily) -> bool:
    return enumerate_ideals(recover_order(f)).members == f.members


def join_irreducible_poset(f: IdealFamily) -> Tuple[Poset, List[Subset]]:
    irreducibles = join_irreducibles(f)
    m = len(irreducibles)
    up = [0] * m
    for i, a in enumerate(irreducibles):
        for j, b in enumerate(irreducibles):
            if i != j and a & ~b == 0:
                up[i] |= 1 << j
    return Poset(m, tuple(up)), irreducibles


def check_eta_isomorphism(f: IdealFamily) -> bool:
    """eta is an order isomorphism of f onto the ideals of its join-irreducibles."""
    order, irreducibles = join_irreducible_poset(f)
    position = {s: i for i, s in enumerate(irreducibles)}
    images = {}
    for x in f.members:
        image = 0
        for y in irreducibles:
            if y & ~x == 0:
                image |= 1 << position[y]
        images[x] = image
    target = enumerate_ideals(order)
    if sorted(images.values()) != list(target.members):
        log.debug("eta is not onto the ideal family of the join-irreducibles")
        return False
    for x in f.members:
        for y in f.members:
            inclusion = x & ~y == 0
            image_inclusion = images[x] & ~images[y] == 0
            if inclusion != image_inclusion:
                return False
    return True


def check_theorem2(p: Poset, q: Poset) -> bool:
    if p.n != q.n:
        raise SizeMismatch(f"posets have {p.n} and {q.n} elements")
    return is_extension(p, q) == enumerate_ideals(q).issubset(enumerate_ideals(p))


def family_product(f: IdealFamily, g: IdealFamily) -> IdealFamily:
    n = f.n + g.n
    if n > MAX_ELEMENTS:
        raise BoundsError(f"product ground set of {n} elements exceeds {MAX_ELEMENTS}")
    return IdealFamily(n, tuple(sorted(s | (t << f.n) for s in f.members for t in g.members)))
