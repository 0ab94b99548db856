"""Readers and writers for the poset, family, StOp, weight, tau and graph text formats."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BaseMismatch, ParseError
from .lattice import make_family
from .mwi import WeightVector, make_weights
from .poset import IdealFamily, Poset, TotalExtension, discrete, elements, hasse, make_poset, make_total_extension
from .stops import Graph, StOpMap, make_graph, make_stop
from .types import Subset


def read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError("file not found", source=path) from None


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines: List[Tuple[int, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _parse_int(token: str, source: str, line: Optional[int]) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise ParseError(f"expected an integer, got {token.strip()!r}", source, line) from None


def _parse_header(lines: List[Tuple[int, str]], source: str) -> int:
    if not lines:
        raise ParseError("empty input, expected header 'n <count>'", source)
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n":
        raise ParseError(f"expected header 'n <count>', got {header!r}", source, number)
    return _parse_int(parts[1], source, number)


def parse_poset(text: str, source: str = "") -> Poset:
    if text.lstrip().startswith("{"):
        return _parse_poset_json(text, source)
    lines = _content_lines(text)
    n = _parse_header(lines, source)
    pairs: List[Tuple[int, int]] = []
    for number, line in lines[1:]:
        if "<" not in line:
            raise ParseError(f"expected 'x < y', got {line!r}", source, number)
        left, right = line.split("<", 1)
        pairs.append((_parse_int(left, source, number), _parse_int(right, source, number)))
    return make_poset(n, pairs)


def _parse_poset_json(text: str, source: str) -> Poset:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", source, exc.lineno) from None
    if not isinstance(payload, dict) or not isinstance(payload.get("n"), int):
        raise ParseError("JSON poset must be an object with integer 'n'", source)
    raw_pairs = payload.get("pairs", [])
    if not isinstance(raw_pairs, list):
        raise ParseError("'pairs' must be a list of [x, y]", source)
    pairs: List[Tuple[int, int]] = []
    for item in raw_pairs:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(v, int) for v in item)):
            raise ParseError(f"invalid pair {item!r}", source)
        pairs.append((item[0], item[1]))
    return make_poset(payload["n"], pairs)


def format_poset(p: Poset) -> str:
    lines = [f"n {p.n}"]
    lines.extend(f"{x} < {y}" for x, y in hasse(p))
    return "\n".join(lines) + "\n"


def parse_posets(text: str, source: str = "") -> List[Poset]:
    """Split a stream of poset blocks; each block starts with its own 'n <count>' header."""
    blocks: List[List[str]] = []
    for raw in text.splitlines():
        if raw.strip().startswith("n "):
            blocks.append([])
        if blocks:
            blocks[-1].append(raw)
    return [parse_poset("\n".join(block), source) for block in blocks]


def format_subset_token(s: Subset) -> str:
    return ",".join(str(x) for x in elements(s)) if s else "-"


def parse_subset_token(token: str, n: int, source: str = "", line: Optional[int] = None) -> Subset:
    token = token.strip()
    if token == "-":
        return 0
    s = 0
    for part in token.split(","):
        x = _parse_int(part, source, line)
        if not 0 <= x < n:
            raise ParseError(f"element {x} outside ground set of size {n}", source, line)
        s |= 1 << x
    return s


def parse_family(text: str, source: str = "") -> IdealFamily:
    lines = _content_lines(text)
    n = _parse_header(lines, source)
    return make_family(n, (parse_subset_token(line, n, source, number) for number, line in lines[1:]))


def format_family(f: IdealFamily) -> str:
    lines = [f"n {f.n}"]
    lines.extend(format_subset_token(s) for s in f.members)
    return "\n".join(lines) + "\n"


def parse_int_lines(text: str, source: str = "") -> List[int]:
    return [_parse_int(line, source, number) for number, line in _content_lines(text)]


def parse_weights(text: str, source: str = "") -> WeightVector:
    return make_weights(parse_int_lines(text, source))


def format_weights(weights: WeightVector) -> str:
    return "".join(f"{w}\n" for w in weights.weights)


def parse_tau(text: str, p: Poset, source: str = "") -> TotalExtension:
    return make_total_extension(p, parse_int_lines(text, source))


def format_tau(tau: TotalExtension) -> str:
    return "".join(f"{position}\n" for position in tau.perm)


def parse_graph(text: str, source: str = "") -> Graph:
    lines = _content_lines(text)
    n = _parse_header(lines, source)
    edges: List[Tuple[int, int]] = []
    for number, line in lines[1:]:
        parts = line.replace("-", " ").split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u - v', got {line!r}", source, number)
        edges.append((_parse_int(parts[0], source, number), _parse_int(parts[1], source, number)))
    return make_graph(n, edges)


def format_inline_poset(p: Poset) -> str:
    covers = hasse(p)
    return ";".join(f"{x}<{y}" for x, y in covers) if covers else "-"


def _parse_inline_poset(n: int, value: str, source: str, line: int) -> Poset:
    if value == "-":
        return discrete(n)
    pairs: List[Tuple[int, int]] = []
    for chunk in value.split(";"):
        if "<" not in chunk:
            raise ParseError(f"invalid inline pair {chunk!r}", source, line)
        left, right = chunk.split("<", 1)
        pairs.append((_parse_int(left, source, line), _parse_int(right, source, line)))
    return make_poset(n, pairs)


def _parse_stop_header(header: str, source: str, line: int) -> Dict[str, str]:
    parts = header.split()
    if not parts or parts[0] != "stop":
        raise ParseError(f"expected header 'stop n=<n> base=<poset>', got {header!r}", source, line)
    fields: Dict[str, str] = {}
    for part in parts[1:]:
        if "=" not in part:
            raise ParseError(f"invalid header field {part!r}", source, line)
        key, value = part.split("=", 1)
        fields[key] = value
    if "n" not in fields or "base" not in fields:
        raise ParseError("stop header needs n= and base=", source, line)
    return fields


def parse_stop(text: str, base: Optional[Poset] = None, source: str = "") -> StOpMap:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty StOp file", source)
    number, header = lines[0]
    fields = _parse_stop_header(header, source, number)
    n = _parse_int(fields["n"], source, number)
    value = fields["base"]
    if value == "-" or "<" in value:
        declared = _parse_inline_poset(n, value, source, number)
    else:
        path = Path(source).parent / value if source else Path(value)
        declared = parse_poset(read_text(str(path)), str(path))
    if base is not None and declared != base:
        raise BaseMismatch("StOp file declares a different base poset than the one supplied")
    mapping: Dict[Subset, Subset] = {}
    for number, line in lines[1:]:
        if "->" not in line:
            raise ParseError(f"expected 'S -> T', got {line!r}", source, number)
        left, right = line.split("->", 1)
        s = parse_subset_token(left, n, source, number)
        if s in mapping:
            raise ParseError(f"duplicate mapping for {left.strip()}", source, number)
        mapping[s] = parse_subset_token(right, n, source, number)
    return make_stop(declared, mapping)


def format_stop(phi: StOpMap) -> str:
    lines = [f"stop n={phi.base.n} base={format_inline_poset(phi.base)}"]
    lines.extend(f"{format_subset_token(s)} -> {format_subset_token(t)}" for s, t in phi.items())
    return "\n".join(lines) + "\n"


def format_posets(posets: Sequence[Poset]) -> str:
    return "\n".join(format_poset(p) for p in posets)
