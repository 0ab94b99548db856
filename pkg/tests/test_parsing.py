from __future__ import annotations

import tempfile
import unittest
from pathlib import Path

from stoplat.errors import BaseMismatch, BoundsError, CycleError, IncompleteTable, NotAnExtension, ParseError
from stoplat.npo import iter_npo
from stoplat.parsing import (
    format_family,
    format_inline_poset,
    format_poset,
    format_posets,
    format_stop,
    format_subset_token,
    format_tau,
    format_weights,
    parse_family,
    parse_graph,
    parse_poset,
    parse_posets,
    parse_stop,
    parse_subset_token,
    parse_tau,
    parse_weights,
    read_text,
)
from stoplat.poset import chain, default_linear_extension, discrete, enumerate_ideals, make_poset
from stoplat.reductions import superreduction


class PosetFormatTests(unittest.TestCase):
    def test_parse_text_format(self) -> None:
        text = "# chain\nn 3\n0 < 1\n1 < 2  # covers only\n"
        self.assertEqual(parse_poset(text), chain(3))

    def test_parse_json_format(self) -> None:
        self.assertEqual(parse_poset('{"n": 3, "pairs": [[0, 1], [1, 2]]}'), chain(3))
        self.assertEqual(parse_poset('{"n": 2}'), discrete(2))

    def test_format_writes_hasse_covers(self) -> None:
        self.assertEqual(format_poset(chain(3)), "n 3\n0 < 1\n1 < 2\n")
        self.assertEqual(format_poset(discrete(2)), "n 2\n")

    def test_errors_carry_location(self) -> None:
        with self.assertRaises(ParseError) as ctx:
            parse_poset("n 3\n0 < x\n", "p.txt")
        self.assertIn("p.txt:2", str(ctx.exception))
        self.assertEqual(ctx.exception.line, 2)
        with self.assertRaises(ParseError):
            parse_poset("")
        with self.assertRaises(ParseError):
            parse_poset("size 3\n")
        with self.assertRaises(ParseError):
            parse_poset("n 2\n0 1\n")
        with self.assertRaises(ParseError):
            parse_poset('{"n": 2, "pairs": [[0]]}')
        with self.assertRaises(ParseError):
            parse_poset("{broken")

    def test_semantic_errors_surface_from_make_poset(self) -> None:
        with self.assertRaises(CycleError):
            parse_poset("n 2\n0 < 1\n1 < 0\n")
        with self.assertRaises(BoundsError):
            parse_poset("n 2\n0 < 5\n")

    def test_stream_round_trip(self) -> None:
        population = list(iter_npo(3))
        self.assertEqual(parse_posets(format_posets(population)), population)


class FamilyFormatTests(unittest.TestCase):
    def test_subset_tokens(self) -> None:
        self.assertEqual(format_subset_token(0), "-")
        self.assertEqual(format_subset_token(0b101), "0,2")
        self.assertEqual(parse_subset_token("0,2", 3), 0b101)
        self.assertEqual(parse_subset_token(" - ", 3), 0)
        with self.assertRaises(ParseError):
            parse_subset_token("3", 3)

    def test_family_round_trip(self) -> None:
        family = enumerate_ideals(chain(3))
        text = format_family(family)
        self.assertEqual(text, "n 3\n-\n0\n0,1\n0,1,2\n")
        self.assertEqual(parse_family(text), family)

    def test_family_header_is_bounded(self) -> None:
        with self.assertRaises(BoundsError):
            parse_family("n 70\n-\n")
        with self.assertRaises(BoundsError):
            parse_family("n -1\n")


class StopFormatTests(unittest.TestCase):
    def test_round_trip_with_inline_base(self) -> None:
        phi = superreduction(discrete(3), chain(3), default_linear_extension(chain(3)))
        text = format_stop(phi)
        self.assertTrue(text.startswith("stop n=3 base=-\n"))
        self.assertEqual(parse_stop(text), phi)
        self.assertEqual(parse_stop(text, discrete(3)), phi)

    def test_inline_base(self) -> None:
        self.assertEqual(format_inline_poset(chain(3)), "0<1;1<2")
        text = "stop n=2 base=0<1\n- -> -\n0 -> 0\n0,1 -> 0,1\n"
        phi = parse_stop(text)
        self.assertEqual(phi.base, chain(2))

    def test_base_from_file_relative_to_stop_file(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            Path(tmp, "base.txt").write_text(format_poset(chain(2)), encoding="utf-8")
            stop_path = Path(tmp, "m.txt")
            stop_path.write_text("stop n=2 base=base.txt\n- -> -\n0 -> 0\n0,1 -> 0,1\n", encoding="utf-8")
            phi = parse_stop(read_text(str(stop_path)), source=str(stop_path))
        self.assertEqual(phi.base, chain(2))

    def test_errors(self) -> None:
        with self.assertRaises(BaseMismatch):
            parse_stop("stop n=2 base=0<1\n- -> -\n0 -> 0\n0,1 -> 0,1\n", discrete(2))
        with self.assertRaises(IncompleteTable):
            parse_stop("stop n=2 base=0<1\n- -> -\n0 -> 0\n")
        with self.assertRaises(ParseError):
            parse_stop("stop n=2 base=0<1\n- -> -\n- -> -\n0 -> 0\n0,1 -> 0,1\n")
        with self.assertRaises(ParseError):
            parse_stop("stop n=2\n")
        with self.assertRaises(ParseError):
            parse_stop("stop n=2 base=-\n0 = 1\n")
        with self.assertRaises(ParseError):
            parse_stop("")


class VectorFormatTests(unittest.TestCase):
    def test_weights(self) -> None:
        weights = parse_weights("5\n# middle\n1\n-3\n")
        self.assertEqual(weights.weights, (5, 1, -3))
        self.assertEqual(format_weights(weights), "5\n1\n-3\n")
        with self.assertRaises(ParseError):
            parse_weights("1\n2.5\n")

    def test_tau(self) -> None:
        p = make_poset(3, [(1, 0)])
        tau = parse_tau("1\n0\n2\n", p)
        self.assertEqual(tau.perm, (1, 0, 2))
        self.assertEqual(format_tau(tau), "1\n0\n2\n")
        with self.assertRaises(NotAnExtension):
            parse_tau("0\n1\n2\n", p)

    def test_graph(self) -> None:
        graph = parse_graph("n 4\n0 - 1\n1 - 2\n2 - 3\n3 - 0\n")
        self.assertEqual(len(graph.edges), 4)
        with self.assertRaises(ParseError):
            parse_graph("n 3\n0 1 2\n")

    def test_missing_file(self) -> None:
        with self.assertRaises(ParseError):
            read_text("/nonexistent/stoplat/poset.txt")


if __name__ == "__main__":
    unittest.main()
