from __future__ import annotations

import random
import unittest

from stoplat.errors import BoundsError, MissingBounds, NotALattice, NotAMember, NotAntisymmetric
from stoplat.lattice import (
    birkhoff_eta,
    check_eta_isomorphism,
    check_theorem2,
    family_product,
    is_union_intersection_closed,
    join_irreducible_poset,
    join_irreducibles,
    make_family,
    recover_order,
    verify_birkhoff,
)
from stoplat.npo import iter_npo
from stoplat.poset import chain, discrete, enumerate_ideals, is_extension, make_poset, poset_product
from stoplat.sampling import random_poset


class FamilyTests(unittest.TestCase):
    def test_make_family_sorts_and_deduplicates(self) -> None:
        family = make_family(2, [0b11, 0, 0b01, 0])
        self.assertEqual(family.members, (0, 0b01, 0b11))
        with self.assertRaises(BoundsError):
            make_family(2, [0b100])

    def test_make_family_rejects_bad_ground_set_sizes(self) -> None:
        with self.assertRaises(BoundsError):
            make_family(-1, [])
        with self.assertRaises(BoundsError):
            make_family(70, [0])
        self.assertEqual(make_family(64, [0]).n, 64)

    def test_closure_examples(self) -> None:
        self.assertTrue(is_union_intersection_closed(enumerate_ideals(chain(3))))
        self.assertFalse(is_union_intersection_closed(make_family(2, [0, 0b01, 0b10])))
        self.assertTrue(is_union_intersection_closed(make_family(2, [0])))


class JoinIrreducibleTests(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertEqual(join_irreducibles(enumerate_ideals(chain(3))), [0b001, 0b011, 0b111])
        self.assertEqual(join_irreducibles(enumerate_ideals(discrete(3))), [0b001, 0b010, 0b100])
        self.assertEqual(join_irreducibles(make_family(0, [0])), [])

    def test_rejects_families_that_are_not_lattices(self) -> None:
        with self.assertRaises(NotALattice):
            join_irreducibles(make_family(2, [0, 0b01, 0b10]))
        with self.assertRaises(NotALattice):
            join_irreducibles(make_family(2, []))

    def test_ideal_lattice_has_one_irreducible_per_element(self) -> None:
        for p in iter_npo(4):
            irreducibles = join_irreducibles(enumerate_ideals(p))
            self.assertEqual(len(irreducibles), p.n)
            # The principal ideal of x is the irreducible that adds x.
            expected = sorted(p.down[x] | (1 << x) for x in range(p.n))
            self.assertEqual(irreducibles, expected)

    def test_birkhoff_eta(self) -> None:
        family = enumerate_ideals(chain(3))
        self.assertEqual(birkhoff_eta(family, 0b011), (0b001, 0b011))
        self.assertEqual(birkhoff_eta(family, 0), ())
        self.assertEqual(birkhoff_eta(family, 0b111), tuple(join_irreducibles(family)))
        with self.assertRaises(NotAMember):
            birkhoff_eta(family, 0b010)


class RecoverOrderTests(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertEqual(recover_order(make_family(2, [0, 0b01, 0b11])), chain(2))
        self.assertEqual(recover_order(enumerate_ideals(discrete(3))), discrete(3))
        with self.assertRaises(NotAntisymmetric):
            recover_order(make_family(2, [0, 0b11]))
        with self.assertRaises(MissingBounds):
            recover_order(make_family(2, [0, 0b01]))

    def test_round_trip_over_npo5(self) -> None:
        for p in iter_npo(5):
            family = enumerate_ideals(p)
            self.assertEqual(recover_order(family), p)
            self.assertTrue(verify_birkhoff(family))

    def test_round_trip_over_random_posets(self) -> None:
        rng = random.Random(17)
        for _ in range(200):
            p = random_poset(rng, rng.randint(0, 7))
            self.assertEqual(recover_order(enumerate_ideals(p)), p)

    def test_grid_round_trip(self) -> None:
        grid = poset_product(chain(2), chain(2))
        self.assertTrue(verify_birkhoff(enumerate_ideals(grid)))

    def test_verify_propagates_recovery_errors(self) -> None:
        with self.assertRaises(NotAntisymmetric):
            verify_birkhoff(make_family(2, [0, 0b11]))


class RepresentationTests(unittest.TestCase):
    def test_eta_is_an_isomorphism_over_npo4(self) -> None:
        for p in iter_npo(4):
            self.assertTrue(check_eta_isomorphism(enumerate_ideals(p)))

    def test_join_irreducible_poset_of_an_ideal_lattice_is_isomorphic_to_the_poset(self) -> None:
        order, irreducibles = join_irreducible_poset(enumerate_ideals(chain(3)))
        self.assertEqual(order, chain(3))
        self.assertEqual(irreducibles, [0b001, 0b011, 0b111])

    def test_extension_reverses_ideal_inclusion(self) -> None:
        self.assertTrue(check_theorem2(discrete(3), chain(3)))
        self.assertTrue(enumerate_ideals(chain(3)).issubset(enumerate_ideals(discrete(3))))
        population = list(iter_npo(4))
        for p in population:
            for q in population:
                self.assertTrue(check_theorem2(p, q))

    def test_extension_examples_agree_with_ideal_inclusion(self) -> None:
        p = make_poset(3, [(0, 2)])
        q = make_poset(3, [(0, 2), (1, 2)])
        self.assertTrue(is_extension(p, q))
        self.assertTrue(enumerate_ideals(q).issubset(enumerate_ideals(p)))
        self.assertFalse(enumerate_ideals(p).issubset(enumerate_ideals(q)))


class FamilyProductTests(unittest.TestCase):
    def test_product_of_ideal_families_is_ideal_family_of_disjoint_union(self) -> None:
        f = enumerate_ideals(chain(2))
        g = enumerate_ideals(discrete(1))
        product = family_product(f, g)
        self.assertEqual(len(product), 6)
        self.assertEqual(recover_order(product), make_poset(3, [(0, 1)]))

    def test_product_stays_within_the_bitset_width(self) -> None:
        wide = make_family(40, [0])
        with self.assertRaises(BoundsError):
            family_product(wide, wide)


if __name__ == "__main__":
    unittest.main()
