from __future__ import annotations

import random
import unittest

from stoplat.errors import BoundsError, LimitExceeded, NotAnExtension, NotAnIdeal, SizeMismatch
from stoplat.npo import iter_npo
from stoplat.poset import (
    TotalExtension,
    chain,
    default_linear_extension,
    discrete,
    enumerate_ideals,
    make_poset,
)
from stoplat.reductions import (
    apply_reduction,
    build_reduction_stop,
    make_reduction_spec,
    recover_realised_order,
    superreduction,
    verify_theorem5,
)
from stoplat.sampling import random_extension_pair, random_poset
from stoplat.stops import identity_stop, is_idempotent, range_of, stop_order


class ReductionTests(unittest.TestCase):
    def setUp(self) -> None:
        self.spec = make_reduction_spec(discrete(2), chain(2), TotalExtension((0, 1)), 1)

    def test_apply_reduction_examples(self) -> None:
        self.assertEqual(apply_reduction(self.spec, 0b10), 0b01)
        self.assertEqual(apply_reduction(self.spec, 0b01), 0b01)
        self.assertEqual(apply_reduction(self.spec, 0b11), 0b11)
        self.assertEqual(apply_reduction(self.spec, 0), 0)

    def test_apply_reduction_rejects_non_ideals(self) -> None:
        spec = make_reduction_spec(chain(2), chain(2), TotalExtension((0, 1)), 1)
        with self.assertRaises(NotAnIdeal):
            apply_reduction(spec, 0b10)

    def test_spec_validation(self) -> None:
        with self.assertRaises(NotAnExtension):
            make_reduction_spec(chain(2), discrete(2), TotalExtension((0, 1)), 0)
        with self.assertRaises(NotAnExtension):
            make_reduction_spec(discrete(2), chain(2), TotalExtension((1, 0)), 0)
        with self.assertRaises(BoundsError):
            make_reduction_spec(discrete(2), chain(2), TotalExtension((0, 1)), 2)

    def test_reduction_table(self) -> None:
        phi = build_reduction_stop(self.spec)
        self.assertEqual(dict(phi.items()), {0: 0, 0b01: 0b01, 0b10: 0b01, 0b11: 0b11})

    def test_unrelated_anchor_gives_identity(self) -> None:
        target = make_poset(3, [(0, 1)])
        spec = make_reduction_spec(discrete(3), target, default_linear_extension(target), 2)
        self.assertEqual(build_reduction_stop(spec), identity_stop(discrete(3)))

    def test_empty_ground_set(self) -> None:
        phi = superreduction(discrete(0), discrete(0), TotalExtension(()))
        self.assertEqual(list(phi.items()), [(0, 0)])


class SuperreductionTests(unittest.TestCase):
    def test_examples(self) -> None:
        p = make_poset(3, [(0, 2)])
        self.assertEqual(superreduction(p, p, default_linear_extension(p)), identity_stop(p))
        phi = superreduction(discrete(2), chain(2), TotalExtension((0, 1)))
        self.assertEqual(range_of(phi).members, (0, 0b01, 0b11))
        target = make_poset(3, [(1, 0)])
        phi = superreduction(discrete(3), target, default_linear_extension(target))
        self.assertEqual(range_of(phi).members, enumerate_ideals(target).members)
        self.assertEqual(len(range_of(phi)), 6)

    def test_validation(self) -> None:
        with self.assertRaises(SizeMismatch):
            superreduction(discrete(2), chain(3), TotalExtension((0, 1, 2)))
        with self.assertRaises(BoundsError):
            superreduction(discrete(2), chain(2), TotalExtension((0, 1)), anchors=[0, 0])

    def test_range_is_the_target_ideal_family(self) -> None:
        rng = random.Random(23)
        for _ in range(100):
            base, target = random_extension_pair(rng, rng.randint(1, 6))
            phi = superreduction(base, target, default_linear_extension(target))
            self.assertTrue(is_idempotent(phi))
            self.assertEqual(range_of(phi).members, enumerate_ideals(target).members)

    def test_anchor_order_does_not_change_the_result(self) -> None:
        rng = random.Random(29)
        for _ in range(40):
            target = random_poset(rng, rng.randint(1, 5))
            tau = default_linear_extension(target)
            anchors = list(range(target.n))
            rng.shuffle(anchors)
            default = superreduction(discrete(target.n), target, tau)
            shuffled = superreduction(discrete(target.n), target, tau, anchors=anchors)
            self.assertEqual(range_of(default).members, range_of(shuffled).members)
            self.assertEqual(stop_order(shuffled), target)


class RealisationTests(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertTrue(verify_theorem5(discrete(3)))
        self.assertTrue(verify_theorem5(chain(4)))
        phi = superreduction(discrete(4), chain(4), default_linear_extension(chain(4)))
        self.assertEqual(len(range_of(phi)), 5)

    def test_every_npo4_member_is_a_stop_order(self) -> None:
        population = list(iter_npo(4))
        self.assertEqual(len(population), 40)
        for target in population:
            self.assertTrue(verify_theorem5(target))

    def test_relabelled_targets(self) -> None:
        rng = random.Random(31)
        for _ in range(60):
            target = random_poset(rng, rng.randint(0, 7))
            self.assertEqual(recover_realised_order(target), target)

    def test_limit(self) -> None:
        with self.assertRaises(LimitExceeded):
            verify_theorem5(chain(5), limit=4)


if __name__ == "__main__":
    unittest.main()
