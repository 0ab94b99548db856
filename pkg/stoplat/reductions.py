from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BoundsError, InternalConsistencyError, LimitExceeded, NotAnExtension, NotAnIdeal, SizeMismatch
from .poset import (
    Poset,
    TotalExtension,
    default_linear_extension,
    discrete,
    elements,
    enumerate_ideals,
    extends,
    format_subset,
    is_extension,
    is_ideal,
)
from .stops import StOpMap, cyclic_composition, identity_stop, is_idempotent, stop_order
from .types import Subset

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionSpec:
    base: Poset
    target: Poset
    tau: TotalExtension
    anchor: int


def make_reduction_spec(base: Poset, target: Poset, tau: TotalExtension, anchor: int) -> ReductionSpec:
    if not is_extension(base, target):
        raise NotAnExtension("target must extend base")
    if not extends(tau, target):
        raise NotAnExtension("tau must be a total extension of target")
    if not 0 <= anchor < base.n:
        raise BoundsError(f"anchor {anchor} outside ground set of size {base.n}")
    return ReductionSpec(base, target, tau, anchor)


def apply_reduction(spec: ReductionSpec, ideal: Subset) -> Subset:
    if not is_ideal(spec.base, ideal):
        raise NotAnIdeal(f"{format_subset(ideal)} is not an ideal of the base poset")
    a = spec.anchor
    at_or_above = spec.target.up[a] | (1 << a)
    removable = ideal & at_or_above
    addable = spec.target.down[a] & ~ideal
    if not removable or not addable:
        return ideal
    tau = spec.tau.perm
    v_max = max(elements(removable), key=tau.__getitem__)
    v_min = min(elements(addable), key=tau.__getitem__)
    return (ideal & ~(1 << v_max)) | (1 << v_min)


def build_reduction_stop(spec: ReductionSpec) -> StOpMap:
    domain = enumerate_ideals(spec.base)
    return StOpMap(spec.base, domain, tuple(apply_reduction(spec, s) for s in domain.members))


def superreduction(
    base: Poset,
    target: Poset,
    tau: TotalExtension,
    anchors: Optional[Sequence[int]] = None,
) -> StOpMap:
    if base.n != target.n:
        raise SizeMismatch(f"base has {base.n} elements, target has {target.n}")
    order = list(tau.inverse) if anchors is None else list(anchors)
    if sorted(order) != list(range(base.n)):
        raise BoundsError("anchor order must list every element exactly once")
    if base.n == 0:
        return identity_stop(base)
    reductions = [build_reduction_stop(make_reduction_spec(base, target, tau, a)) for a in order]
    result = cyclic_composition(reductions)
    if not is_idempotent(result):
        raise InternalConsistencyError("superreduction is not idempotent")
    log.info("superreduction on %d elements: %d fixpoints of %d ideals", base.n, len(set(result.images)), len(result.images))
    return result


def recover_realised_order(target: Poset, limit: int = 12) -> Poset:
    """StOp-order of the superreduction from the discrete order towards target."""
    if target.n > limit:
        raise LimitExceeded(f"StOp-order realisation limited to n <= {limit}, got {target.n}")
    tau = default_linear_extension(target)
    return stop_order(superreduction(discrete(target.n), target, tau))


def verify_theorem5(target: Poset, limit: int = 12) -> bool:
    recovered = recover_realised_order(target, limit)
    if recovered != target:
        log.warning("recovered order %s differs from target", recovered.strict_pairs())
    return recovered == target
