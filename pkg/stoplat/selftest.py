from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from . import lattice, mwi, npo, poset, reductions, sampling, stops
from .config import EngineConfig, resolve_workers
from .types import CriterionResult, SelftestReport, SelftestScope, Verdict

log = logging.getLogger(__name__)

# Published BPS(n) / |NPO(n)| ratios.
PUBLISHED_BPS_RATIOS: Dict[int, float] = {
    1: 15.179,
    2: 25.528,
    3: 26.02,
    4: 20.422,
    5: 13.605,
    6: 8.1281,
    7: 4.5132,
    8: 2.3895,
    9: 1.2298,
    10: 0.62470,
    11: 0.31703,
    12: 0.16236,
}
RATIO_TOLERANCE = 1e-3


@dataclass(frozen=True)
class SuiteSize:
    random_targets: int
    random_max_n: int
    birkhoff_npo_n: int
    birkhoff_random: int
    mwi_instances: int
    greedy_vectors: int
    structure_max_n: int
    product_pairs: int
    npo_count_max_n: int
    greedy_max_n: int


QUICK_SIZE = SuiteSize(
    random_targets=20,
    random_max_n=4,
    birkhoff_npo_n=4,
    birkhoff_random=50,
    mwi_instances=50,
    greedy_vectors=50,
    structure_max_n=4,
    product_pairs=20,
    npo_count_max_n=6,
    greedy_max_n=8,
)
FULL_SIZE = SuiteSize(
    random_targets=200,
    random_max_n=7,
    birkhoff_npo_n=5,
    birkhoff_random=500,
    mwi_instances=500,
    greedy_vectors=200,
    structure_max_n=5,
    product_pairs=100,
    npo_count_max_n=7,
    greedy_max_n=12,
)

Outcome = Tuple[bool, str]
Criterion = Callable[[SuiteSize, random.Random, EngineConfig], Outcome]


def _targets(size: SuiteSize, rng: random.Random) -> List[poset.Poset]:
    population = list(npo.iter_npo(4))
    for _ in range(size.random_targets):
        population.append(sampling.random_poset(rng, rng.randint(1, size.random_max_n)))
    return population


def _superreduce(target: poset.Poset) -> stops.StOpMap:
    tau = poset.default_linear_extension(target)
    return reductions.superreduction(poset.discrete(target.n), target, tau)


def _npo_counts(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    counts = [npo.count_npo(n, config.threads) for n in range(size.npo_count_max_n + 1)]
    expected = list(npo.PUBLISHED_NPO_COUNTS[: size.npo_count_max_n + 1])
    return counts == expected, ",".join(str(c) for c in counts)


def _npo7(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    count = npo.count_npo(7, config.threads)
    return count == 96428, f"npo7={count}"


def _bps_table(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    worst = 0.0
    for row in npo.bps_ratio_table(12, config.limits, config.threads):
        if row.n == 0:
            continue
        expected = PUBLISHED_BPS_RATIOS[row.n]
        worst = max(worst, abs(row.ratio - expected) / expected)
    return worst <= RATIO_TOLERANCE, f"max relative error {worst:.2e}"


def _superreduction_range(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    population = _targets(size, rng)
    for target in population:
        phi = _superreduce(target)
        if not stops.is_idempotent(phi):
            return False, f"superreduction not idempotent for {target.strict_pairs()}"
        fixed = stops.range_of(phi)
        if not lattice.is_union_intersection_closed(fixed):
            return False, f"range not closed for {target.strict_pairs()}"
        if poset.enumerate_ideals(stops.stop_order(phi)).members != fixed.members:
            return False, f"ideals of StOp-order differ from range for {target.strict_pairs()}"
    return True, f"{len(population)} targets"


def _stop_order_realisation(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    population = _targets(size, rng)
    for target in population:
        if not reductions.verify_theorem5(target, config.limits.theorem5_limit):
            return False, f"recovered order differs for {target.strict_pairs()}"
    return True, f"{len(population)} targets"


def _reduction_axioms(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    checked = 0
    for target in npo.iter_npo(4):
        tau = poset.default_linear_extension(target)
        weight = stops.additive_weight(tau.perm)
        coarser = poset.make_poset(target.n, [pair for pair in poset.hasse(target) if rng.random() < 0.5])
        for base in (poset.discrete(target.n), coarser):
            for anchor in range(target.n):
                spec = reductions.make_reduction_spec(base, target, tau, anchor)
                phi = reductions.build_reduction_stop(spec)
                label = f"anchor {anchor} of {target.strict_pairs()}"
                if not stops.check_axiom1(phi):
                    return False, f"axiom 1 fails for {label}"
                if not stops.check_axiom2(phi, weight):
                    return False, f"axiom 2 fails for {label}"
                if not stops.check_axiom3(phi):
                    return False, f"axiom 3 fails for {label}"
                if not stops.check_axiom4(phi, tau):
                    return False, f"axiom 4 fails for {label}"
                checked += 1
    return True, f"{checked} reductions"


def _image_fixpoints(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    checked = 0
    for target in _targets(size, rng):
        tau = poset.default_linear_extension(target)
        base = poset.discrete(target.n)
        idempotents = [_superreduce(target)]
        if target.n <= 4:
            for anchor in range(target.n):
                spec = reductions.make_reduction_spec(base, target, tau, anchor)
                idempotents.append(stops.idempotent_closure(reductions.build_reduction_stop(spec), tau))
        for phi in idempotents:
            if stops.range_of(phi).members != stops.image_of(phi).members:
                return False, f"fixpoints differ from image for {target.strict_pairs()}"
            checked += 1
    return True, f"{checked} idempotent StOps"


def _birkhoff(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    population = list(npo.iter_npo(size.birkhoff_npo_n))
    population.extend(sampling.random_poset(rng, rng.randint(0, size.random_max_n)) for _ in range(size.birkhoff_random))
    for p in population:
        family = poset.enumerate_ideals(p)
        if lattice.recover_order(family) != p or not lattice.verify_birkhoff(family):
            return False, f"round trip fails for {p.strict_pairs()}"
    return True, f"{len(population)} posets"


def _extension_inclusion(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    population = list(npo.iter_npo(4))
    pairs = 0
    for p in population:
        for q in population:
            if not lattice.check_theorem2(p, q):
                return False, f"fails for {p.strict_pairs()} and {q.strict_pairs()}"
            pairs += 1
    return True, f"{pairs} pairs"


def _mwi_oracle(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    for _ in range(size.mwi_instances):
        n = rng.randint(1, size.random_max_n)
        base, target = sampling.random_extension_pair(rng, n)
        weights = sampling.increasing_weights(rng, target)
        shifted, shift = mwi.shift_nonnegative(weights)
        negated = mwi.WeightVector(tuple(-w for w in weights.weights))
        brute = mwi.mwi_table(base, weights)
        reduced = mwi.mwi_table(base, weights, target)
        lifted = mwi.mwi_table(base, shifted)
        for k in range(n + 1):
            if reduced[k].value != brute[k].value:
                return False, f"reduced search differs at k={k}"
            if lifted[k].value != brute[k].value + k * shift:
                return False, f"shift identity fails at k={k}"
            if brute[k].value != -mwi.mwi_bruteforce(base, negated, k, "max").value:
                return False, f"min/max duality fails at k={k}"
    for _ in range(size.greedy_vectors):
        n = rng.randint(1, size.greedy_max_n)
        weights = sampling.random_weights(rng, n)
        k = rng.randint(0, n)
        value, _ = mwi.greedy_discrete(weights, k)
        if value != mwi.mwi_bruteforce(poset.discrete(n), weights, k).value:
            return False, f"greedy differs from brute force at n={n} k={k}"
    return True, f"{size.mwi_instances} instances, {size.greedy_vectors} greedy vectors"


def _npo_structure(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    for n in range(2, size.structure_max_n + 1):
        if not npo.check_jordan_dedekind(n, config.limits):
            return False, f"Jordan-Dedekind fails at n={n}"
        if not npo.check_semimodular(n, config.limits):
            return False, f"semimodularity fails at n={n}"
        if not npo.check_ndl_upper_semimodular(n, config.limits):
            return False, f"NDL upper semimodularity fails at n={n}"
        if n >= 3 and not npo.check_not_modular(n, config.limits):
            return False, f"no strict rank pair at n={n}"
    return True, f"n=2..{size.structure_max_n}"


def _ideal_counts(size: SuiteSize, rng: random.Random, config: EngineConfig) -> Outcome:
    for n in range(21):
        if len(poset.enumerate_ideals(poset.chain(n))) != n + 1:
            return False, f"chain {n}"
    for n in range(17):
        if len(poset.enumerate_ideals(poset.discrete(n))) != 2**n:
            return False, f"discrete {n}"
    for _ in range(size.product_pairs):
        p = sampling.random_poset(rng, rng.randint(0, 5))
        q = sampling.random_poset(rng, rng.randint(0, 5))
        joined = len(poset.enumerate_ideals(poset.disjoint_union(p, q)))
        if joined != len(poset.enumerate_ideals(p)) * len(poset.enumerate_ideals(q)):
            return False, "disjoint union count is not multiplicative"
    return True, f"{size.product_pairs} product pairs"


CRITERIA: Sequence[Tuple[str, Criterion, SelftestScope]] = (
    ("npo_counts", _npo_counts, SelftestScope.QUICK),
    ("bps_table", _bps_table, SelftestScope.QUICK),
    ("superreduction_range", _superreduction_range, SelftestScope.QUICK),
    ("stop_order_realisation", _stop_order_realisation, SelftestScope.QUICK),
    ("reduction_axioms", _reduction_axioms, SelftestScope.QUICK),
    ("image_fixpoints", _image_fixpoints, SelftestScope.QUICK),
    ("birkhoff_roundtrip", _birkhoff, SelftestScope.QUICK),
    ("extension_inclusion", _extension_inclusion, SelftestScope.QUICK),
    ("mwi_oracle", _mwi_oracle, SelftestScope.QUICK),
    ("npo_structure", _npo_structure, SelftestScope.QUICK),
    ("ideal_counts", _ideal_counts, SelftestScope.QUICK),
    ("npo7", _npo7, SelftestScope.FULL),
)


def _run_criterion(name: str, criterion: Criterion, size: SuiteSize, config: EngineConfig) -> CriterionResult:
    # String seeds are stable across processes and schedules.
    rng = random.Random(f"{config.seed}:{name}")
    started = time.monotonic()
    try:
        ok, detail = criterion(size, rng, config)
    except Exception as exc:
        ok, detail = False, f"{exc.__class__.__name__}: {exc}"
    elapsed = time.monotonic() - started
    log.info("criterion %s: %s in %.2fs", name, "PASS" if ok else "FAIL", elapsed)
    return CriterionResult(name=name, verdict=Verdict.PASS if ok else Verdict.FAIL, detail=detail, seconds=elapsed)


def selftest(scope: SelftestScope, config: EngineConfig) -> SelftestReport:
    size = FULL_SIZE if scope == SelftestScope.FULL else QUICK_SIZE
    selected = [
        (name, criterion)
        for name, criterion, needed in CRITERIA
        if needed == SelftestScope.QUICK or scope == SelftestScope.FULL
    ]
    workers = resolve_workers(config.threads, len(selected))
    outcomes: Dict[str, CriterionResult] = {}
    if workers <= 1:
        for name, criterion in selected:
            outcomes[name] = _run_criterion(name, criterion, size, config)
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = {
                executor.submit(_run_criterion, name, criterion, size, config): name for name, criterion in selected
            }
            for future in as_completed(futures):
                outcomes[futures[future]] = future.result()
    report = SelftestReport(scope=scope, seed=config.seed)
    report.results.extend(outcomes[name] for name, _ in selected)
    return report
