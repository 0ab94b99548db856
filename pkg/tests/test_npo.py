from __future__ import annotations

import random
import unittest

from stoplat.config import Limits
from stoplat.errors import BoundsError, BpsOverflow, LimitExceeded, NotNatural, SizeMismatch
from stoplat.npo import (
    PUBLISHED_NPO_COUNTS,
    bps,
    bps_ratio_table,
    check_jordan_dedekind,
    check_ndl_upper_semimodular,
    check_not_modular,
    check_semimodular,
    count_npo,
    enumerate_npo,
    is_natural,
    iter_npo,
    modularity_witness,
    ndl_rank,
    npo_covers,
    npo_join,
    npo_meet,
    npo_rank,
)
from stoplat.poset import chain, discrete, make_poset


class CountTests(unittest.TestCase):
    def test_counts_match_published_values(self) -> None:
        for n in range(8):
            self.assertEqual(count_npo(n, threads=1), PUBLISHED_NPO_COUNTS[n])

    def test_threaded_count_matches_inline_count(self) -> None:
        self.assertEqual(count_npo(6, threads=4), 4824)

    def test_stream_yields_distinct_natural_orders(self) -> None:
        population = list(iter_npo(4))
        self.assertEqual(len(population), 40)
        self.assertEqual(len(set(population)), 40)
        self.assertTrue(all(is_natural(p) for p in population))
        self.assertEqual(list(iter_npo(0)), [discrete(0)])

    def test_enumerate_modes_and_limits(self) -> None:
        self.assertEqual(enumerate_npo(3, "count"), 7)
        self.assertEqual(len(list(enumerate_npo(3, "stream"))), 7)
        with self.assertRaises(LimitExceeded):
            enumerate_npo(11, "count")
        with self.assertRaises(LimitExceeded):
            enumerate_npo(7, "stream")
        with self.assertRaises(LimitExceeded):
            enumerate_npo(3, "stream", Limits(npo_stream_limit=2))
        with self.assertRaises(ValueError):
            enumerate_npo(3, "other")  # type: ignore[arg-type]
        with self.assertRaises(BoundsError):
            count_npo(-1)

    def test_is_natural(self) -> None:
        self.assertTrue(is_natural(chain(3)))
        self.assertFalse(is_natural(make_poset(2, [(1, 0)])))


class RankTests(unittest.TestCase):
    def test_ranks(self) -> None:
        self.assertEqual(npo_rank(chain(3)), 3)
        self.assertEqual(npo_rank(discrete(4)), 0)
        self.assertEqual(npo_rank(make_poset(3, [(0, 2), (1, 2)])), 2)
        self.assertEqual(ndl_rank(discrete(3)), 3)
        self.assertEqual(ndl_rank(chain(3)), 0)
        self.assertEqual(ndl_rank(make_poset(3, [(0, 2), (1, 2)])), 1)


class LatticeTests(unittest.TestCase):
    def test_meet_and_join_examples(self) -> None:
        self.assertEqual(npo_meet(chain(3), discrete(3)), discrete(3))
        self.assertEqual(npo_join(chain(3), discrete(3)), chain(3))
        self.assertEqual(npo_join(make_poset(3, [(0, 1)]), make_poset(3, [(1, 2)])), chain(3))
        p = make_poset(3, [(0, 2)])
        self.assertEqual(npo_meet(p, p), p)
        self.assertEqual(npo_join(p, p), p)

    def test_meet_and_join_validate_inputs(self) -> None:
        with self.assertRaises(SizeMismatch):
            npo_meet(chain(2), chain(3))
        with self.assertRaises(NotNatural):
            npo_join(chain(2), make_poset(2, [(1, 0)]))

    def test_lattice_laws_on_npo3(self) -> None:
        population = list(iter_npo(3))
        for p in population:
            for q in population:
                self.assertEqual(npo_meet(p, q), npo_meet(q, p))
                self.assertEqual(npo_join(p, q), npo_join(q, p))
                self.assertEqual(npo_meet(p, npo_join(p, q)), p)
                self.assertEqual(npo_join(p, npo_meet(p, q)), p)

    def test_associativity_on_random_npo5_triples(self) -> None:
        population = list(iter_npo(5))
        rng = random.Random(61)
        for _ in range(200):
            p, q, r = (rng.choice(population) for _ in range(3))
            self.assertEqual(npo_meet(npo_meet(p, q), r), npo_meet(p, npo_meet(q, r)))
            self.assertEqual(npo_join(npo_join(p, q), r), npo_join(p, npo_join(q, r)))

    def test_covers_of_npo2(self) -> None:
        self.assertEqual(npo_covers(2), [(discrete(2), chain(2))])

    def test_semimodular_and_graded(self) -> None:
        for n in range(1, 5):
            self.assertTrue(check_semimodular(n), msg=f"n={n}")
            self.assertTrue(check_jordan_dedekind(n), msg=f"n={n}")

    def test_rank_inequality_is_strict_somewhere_from_three(self) -> None:
        self.assertIsNone(modularity_witness(1))
        self.assertIsNone(modularity_witness(2))
        self.assertFalse(check_not_modular(2))
        for n in range(3, 5):
            witness = modularity_witness(n)
            self.assertIsNotNone(witness, msg=f"n={n}")
            assert witness is not None
            p, q = witness
            self.assertLess(
                npo_rank(p) + npo_rank(q),
                npo_rank(npo_meet(p, q)) + npo_rank(npo_join(p, q)),
            )
            self.assertTrue(check_not_modular(n))

    def test_ndl_is_upper_semimodular(self) -> None:
        for n in range(1, 5):
            self.assertTrue(check_ndl_upper_semimodular(n), msg=f"n={n}")
        # ranks of the two chains in NDL(3) against their NPO meet and join
        p, q = make_poset(3, [(0, 1)]), make_poset(3, [(1, 2)])
        self.assertEqual(ndl_rank(p) + ndl_rank(q), 4)
        self.assertEqual(ndl_rank(npo_meet(p, q)) + ndl_rank(npo_join(p, q)), 3)

    def test_structure_limit(self) -> None:
        with self.assertRaises(LimitExceeded):
            check_semimodular(6)
        with self.assertRaises(LimitExceeded):
            check_not_modular(6)
        with self.assertRaises(LimitExceeded):
            check_ndl_upper_semimodular(6)
        with self.assertRaises(LimitExceeded):
            npo_covers(4, Limits(structure_limit=3))


class BpsTests(unittest.TestCase):
    def test_values(self) -> None:
        self.assertEqual(bps(0), 0.0)
        self.assertAlmostEqual(bps(1), 15.179, delta=0.001)
        self.assertAlmostEqual(bps(2), 51.055, delta=0.001)
        with self.assertRaises(BoundsError):
            bps(-1)
        with self.assertRaises(BpsOverflow):
            bps(61)

    def test_ratio_table(self) -> None:
        rows = bps_ratio_table(12)
        self.assertEqual([row.n for row in rows], list(range(13)))
        self.assertEqual([row.count for row in rows], list(PUBLISHED_NPO_COUNTS))
        self.assertFalse(rows[7].published)
        self.assertTrue(rows[8].published)
        self.assertAlmostEqual(rows[7].bps / 4.3520e5, 1.0, delta=1e-3)
        for n, ratio in ((7, 4.5132), (10, 0.62470), (12, 0.16236)):
            self.assertAlmostEqual(rows[n].ratio / ratio, 1.0, delta=1e-3)

    def test_ratio_table_limits(self) -> None:
        with self.assertRaises(LimitExceeded):
            bps_ratio_table(13)
        with self.assertRaises(BoundsError):
            bps_ratio_table(-1)


if __name__ == "__main__":
    unittest.main()
