from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .mwi import MwiResult
from .npo import BpsRow
from .parsing import format_inline_poset, format_poset, format_posets, format_stop, format_subset_token
from .poset import IdealFamily, Poset, format_subset, hasse
from .stops import AxiomReport, StOpMap
from .types import OutputMode, SelftestReport, Verdict


def _escape_tsv_cell(value: object) -> str:
    text = str(value)
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _tsv_row(*cells: object) -> str:
    return "\t".join(_escape_tsv_cell(cell) for cell in cells)


def _significant(value: float, digits: int = 5) -> str:
    return f"{value:.{digits}g}"


def format_ideals(family: IdealFamily, mode: OutputMode) -> str:
    if mode == OutputMode.TSV:
        lines = [_tsv_row("ideal", format_subset_token(s)) for s in family.members]
        lines.append(_tsv_row("count", len(family)))
    else:
        lines = [format_subset(s) for s in family.members]
        lines.append(f"count={len(family)}")
    return "\n".join(lines)


def format_axiom_report(report: AxiomReport, mode: OutputMode) -> str:
    overall = Verdict.PASS if report.passed else Verdict.FAIL
    if mode == OutputMode.TSV:
        lines = [_tsv_row("axiom", axiom, verdict.value) for axiom, verdict in report.verdicts]
        lines.append(_tsv_row("overall", "", overall.value))
    else:
        lines = [f"axiom {axiom}: {verdict.value}" for axiom, verdict in report.verdicts]
        lines.append(f"overall: {overall.value}")
    return "\n".join(lines)


def format_mwi(results: Sequence[MwiResult], mode: OutputMode) -> str:
    lines: List[str] = []
    for result in results:
        if mode == OutputMode.TSV:
            lines.append(
                _tsv_row(result.k, result.value, format_subset_token(result.witness), result.searched, result.candidates)
            )
        else:
            prefix = f"k={result.k} " if len(results) > 1 else ""
            lines.append(
                f"{prefix}value={result.value} witness={format_subset(result.witness)} searched={result.searched}"
            )
    return "\n".join(lines)


def format_bps_table(rows: Sequence[BpsRow], mode: OutputMode) -> str:
    if mode == OutputMode.TSV:
        lines = [_tsv_row("n", "npo", "bps", "ratio", "source")]
        for row in rows:
            source = "published" if row.published else "computed"
            lines.append(_tsv_row(row.n, row.count, _significant(row.bps), _significant(row.ratio), source))
        return "\n".join(lines)
    header = ("n", "|NPO(n)|", "BPS(n)", "BPS(n)/|NPO(n)|")
    body = [
        (str(row.n), f"{row.count}{'*' if row.published else ''}", _significant(row.bps), _significant(row.ratio))
        for row in rows
    ]
    widths = [max(len(cells[i]) for cells in [header, *body]) for i in range(len(header))]
    lines = [" | ".join(cell.rjust(widths[i]) for i, cell in enumerate(header))]
    lines.append("-+-".join("-" * width for width in widths))
    lines.extend(" | ".join(cell.rjust(widths[i]) for i, cell in enumerate(cells)) for cells in body)
    if any(row.published for row in rows):
        lines.append("* published value (OEIS A006455), not computed")
    return "\n".join(lines)


def format_verdicts(verdicts: Sequence[Tuple[str, Verdict]], mode: OutputMode) -> str:
    if mode == OutputMode.TSV:
        return "\n".join(_tsv_row(name, verdict.value) for name, verdict in verdicts)
    return "\n".join(f"{name}: {verdict.value}" for name, verdict in verdicts)


def format_selftest(report: SelftestReport, mode: OutputMode) -> str:
    if mode == OutputMode.TSV:
        lines = [_tsv_row(item.name, item.verdict.value, item.detail) for item in report.results]
        counts = report.counts()
        lines.append(_tsv_row("summary", "PASS" if report.passed else "FAIL", f"pass={counts['PASS']} fail={counts['FAIL']}"))
        return "\n".join(lines)
    lines = [f"Selftest Result (scope={report.scope.value}, seed={report.seed})", ""]
    for item in report.results:
        detail = f" ({item.detail})" if item.detail else ""
        lines.append(f"- {item.verdict.value} {item.name}{detail}")
    counts = report.counts()
    lines.append("")
    lines.append(f"- overall: {'PASS' if report.passed else 'FAIL'} (pass={counts['PASS']}, fail={counts['FAIL']})")
    return "\n".join(lines)


def format_poset_output(p: Poset, mode: OutputMode) -> str:
    if mode == OutputMode.TSV:
        lines = [_tsv_row("n", p.n)]
        lines.extend(_tsv_row("cover", x, y) for x, y in hasse(p))
        return "\n".join(lines)
    return format_poset(p).rstrip("\n")


def format_npo_stream(posets: Iterable[Poset], mode: OutputMode) -> str:
    if mode == OutputMode.TSV:
        return "\n".join(_tsv_row(p.n, format_inline_poset(p)) for p in posets)
    return format_posets(list(posets)).rstrip("\n")


def format_superreduction(phi: StOpMap, order: Poset, mode: OutputMode) -> str:
    """StOp file followed by the recovered order; human output stays loadable as a StOp file."""
    if mode == OutputMode.TSV:
        lines = [_tsv_row("map", format_subset_token(s), format_subset_token(t)) for s, t in phi.items()]
        lines.extend(_tsv_row("cover", x, y) for x, y in hasse(order))
        return "\n".join(lines)
    lines = [format_stop(phi).rstrip("\n"), "# StOp-order"]
    lines.extend(f"# {line}" for line in format_poset(order).splitlines())
    return "\n".join(lines)
