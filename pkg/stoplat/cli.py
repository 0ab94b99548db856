from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from . import mwi, npo, parsing, reductions, stops
from .config import DEFAULT_SEED, EngineConfig, Limits, threads_from_env
from .errors import ConfigError, LimitExceeded, classify_error, exit_code_for
from .formatters import (
    format_axiom_report,
    format_bps_table,
    format_ideals,
    format_mwi,
    format_npo_stream,
    format_poset_output,
    format_selftest,
    format_superreduction,
    format_verdicts,
)
from .poset import Poset, default_linear_extension, enumerate_ideals
from .selftest import selftest
from .types import OutputMode, SelftestScope, Verdict

log = logging.getLogger(__name__)


class _HelpFormatter(argparse.RawTextHelpFormatter):
    def _get_help_string(self, action: argparse.Action) -> str:
        help_text = action.help or ""
        default = action.default
        if default not in (None, "", False, argparse.SUPPRESS) and "%(default)" not in help_text:
            help_text += " (default: %(default)s)"
        return help_text


TOP_LEVEL_DESCRIPTION = (
    "stoplat - Steiner operations on ideal lattices of finite posets.\n"
    "Validate StOps, recover StOp-orders, build superreductions, solve MWI and enumerate NPO(n)."
)

TOP_LEVEL_EPILOG = (
    "Examples:\n"
    "  stoplat ideals --poset chain3.txt\n"
    "  stoplat superreduce --base discrete3.txt --target chain3.txt\n"
    "  stoplat npo --n 5 --count\n"
    "  stoplat selftest --scope quick\n\n"
    "Use `stoplat <command> -h` for full command options."
)

_EXIT_PLAIN = (
    "Exit codes:\n"
    "  0 = success\n"
    "  2 = input/config/limit error"
)
_EXIT_VERDICT = (
    "Exit codes:\n"
    "  0 = PASS\n"
    "  1 = FAIL\n"
    "  2 = input/config/limit error"
)

IDEALS_EPILOG = "Examples:\n  stoplat ideals --poset chain3.txt\n  stoplat ideals --poset p.json --tsv\n\n" + _EXIT_PLAIN
CHECK_STOP_EPILOG = (
    "Examples:\n"
    "  stoplat check-stop --poset p.txt --stop m.txt\n"
    "  stoplat check-stop --poset p.txt --stop m.txt --boundary w.txt --tau t.txt\n"
    "  stoplat check-stop --poset p.txt --stop m.txt --graph g.txt --edge\n\n" + _EXIT_VERDICT
)
STOP_ORDER_EPILOG = "Examples:\n  stoplat stop-order --poset p.txt --stop m.txt\n\n" + _EXIT_VERDICT
SUPERREDUCE_EPILOG = (
    "Examples:\n"
    "  stoplat superreduce --base p.txt --target q.txt\n"
    "  stoplat superreduce --base p.txt --target q.txt --tau t.txt --stop-out m.txt --order-out q2.txt\n\n"
    + _EXIT_PLAIN
)
THEOREM5_EPILOG = "Examples:\n  stoplat theorem5 --target q.txt\n\n" + _EXIT_VERDICT
MWI_EPILOG = (
    "Examples:\n"
    "  stoplat mwi --poset p.txt --weights w.txt --k 2\n"
    "  stoplat mwi --poset p.txt --weights w.txt --all-k --target q.txt\n\n" + _EXIT_PLAIN
)
NPO_EPILOG = "Examples:\n  stoplat npo --n 5 --count\n  stoplat npo --n 3 --stream\n\n" + _EXIT_PLAIN
VERIFY_NPO_EPILOG = (
    "Examples:\n"
    "  stoplat verify-npo --n 4\n"
    "  stoplat verify-npo --n 4 -v    # log a strict rank pair\n\n"
    "not_modular is SKIPPED for n <= 2.\n\n" + _EXIT_VERDICT
)
BPS_EPILOG = "Examples:\n  stoplat bps --n-max 12\n  stoplat bps --n-max 12 --tsv\n\n" + _EXIT_PLAIN
SELFTEST_EPILOG = (
    "Examples:\n"
    "  stoplat selftest\n"
    "  stoplat selftest --scope full --seed 7 --threads 4\n\n" + _EXIT_VERDICT
)


@dataclass(frozen=True)
class CommandConfig:
    command: str
    engine: EngineConfig = field(default_factory=EngineConfig)
    output: OutputMode = OutputMode.HUMAN
    poset: str = ""
    stop: str = ""
    base: str = ""
    target: str = ""
    tau: str = ""
    weights: str = ""
    boundary: str = ""
    graph: str = ""
    graph_mode: str = ""
    stop_out: str = ""
    order_out: str = ""
    n: Optional[int] = None
    k: Optional[int] = None
    all_k: bool = False
    npo_mode: str = "count"
    n_max: int = 12
    scope: SelftestScope = SelftestScope.QUICK


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    stdout: str = ""
    stderr: str = ""


def _add_global_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("Output and Execution")
    group.add_argument("--tsv", action="store_true", help="Print tab-separated output instead of the human layout")
    group.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Worker cap for parallel enumeration, 0 = one per CPU. Overrides STOPLAT_THREADS",
    )
    group.add_argument("-v", "--verbose", action="count", default=0, help="Log progress to stderr; repeat for debug")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stoplat",
        description=TOP_LEVEL_DESCRIPTION,
        epilog=TOP_LEVEL_EPILOG,
        formatter_class=_HelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, epilog: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text, description=help_text, epilog=epilog, formatter_class=_HelpFormatter)
        _add_global_args(sub)
        return sub

    ideals = add("ideals", "List the order ideals of a poset", IDEALS_EPILOG)
    ideals.add_argument("--poset", required=True, help="Poset file (text or JSON)")

    check = add("check-stop", "Check a StOp table against the four axioms", CHECK_STOP_EPILOG)
    check.add_argument("--poset", required=True, help="Base poset file")
    check.add_argument("--stop", required=True, help="StOp file")
    boundary = check.add_mutually_exclusive_group()
    boundary.add_argument("--boundary", default="", help="Additive weights file for axiom 2")
    boundary.add_argument("--graph", default="", help="Graph file for axiom 2 with --edge or --vertex")
    kind = check.add_mutually_exclusive_group()
    kind.add_argument("--edge", dest="graph_mode", action="store_const", const="edge", help="Use the edge boundary")
    kind.add_argument("--vertex", dest="graph_mode", action="store_const", const="vertex", help="Use the vertex boundary")
    check.add_argument("--tau", default="", help="Total extension file for axiom 4")

    order = add("stop-order", "Recover the StOp-order of an idempotent StOp", STOP_ORDER_EPILOG)
    order.add_argument("--poset", required=True, help="Base poset file")
    order.add_argument("--stop", required=True, help="StOp file")

    superreduce = add("superreduce", "Build the superreduction from base towards target", SUPERREDUCE_EPILOG)
    superreduce.add_argument("--base", required=True, help="Base poset file")
    superreduce.add_argument("--target", required=True, help="Target poset file extending the base")
    superreduce.add_argument("--tau", default="", help="Total extension of the target; default is the greedy one")
    superreduce.add_argument("--stop-out", default="", help="Also write the StOp file here")
    superreduce.add_argument("--order-out", default="", help="Also write the recovered order here")

    theorem5 = add("theorem5", "Realise a poset as a StOp-order of the discrete order", THEOREM5_EPILOG)
    theorem5.add_argument("--target", required=True, help="Target poset file")

    solve = add("mwi", "Solve minimum-weight ideal of fixed cardinality", MWI_EPILOG)
    solve.add_argument("--poset", required=True, help="Base poset file")
    solve.add_argument("--weights", required=True, help="Weights file, one integer per line")
    cardinality = solve.add_mutually_exclusive_group(required=True)
    cardinality.add_argument("--k", type=int, default=None, help="Ideal cardinality")
    cardinality.add_argument("--all-k", action="store_true", help="Solve every k = 0..n")
    solve.add_argument("--target", default="", help="Extension with increasing weights; searches the reduced range")

    enumerate_cmd = add("npo", "Count or stream natural partial orders NPO(n)", NPO_EPILOG)
    enumerate_cmd.add_argument("--n", type=int, required=True, help="Ground set size")
    mode = enumerate_cmd.add_mutually_exclusive_group()
    mode.add_argument("--count", dest="npo_mode", action="store_const", const="count", help="Print |NPO(n)| (default)")
    mode.add_argument("--stream", dest="npo_mode", action="store_const", const="stream", help="Print every poset")

    verify = add("verify-npo", "Check the rank structure of NPO(n) and NDL(n)", VERIFY_NPO_EPILOG)
    verify.add_argument("--n", type=int, required=True, help="Ground set size")

    table = add("bps", "Print the BPS asymptotic against |NPO(n)|", BPS_EPILOG)
    table.add_argument("--n-max", type=int, default=12, help="Last row")

    check_all = add("selftest", "Run the acceptance suites", SELFTEST_EPILOG)
    check_all.add_argument("--scope", choices=("quick", "full"), default="quick", help="quick: n <= 4, full: everything")
    check_all.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for randomized suites")
    return parser


def _resolve_config(args: argparse.Namespace) -> CommandConfig:
    threads = threads_from_env() if args.threads is None else args.threads
    if threads < 0:
        raise ConfigError(f"--threads must be >= 0, got {threads}")
    engine = EngineConfig(threads=threads, seed=getattr(args, "seed", DEFAULT_SEED))
    if getattr(args, "graph", "") and not getattr(args, "graph_mode", None):
        raise ConfigError("--graph needs --edge or --vertex")
    return CommandConfig(
        command=args.command,
        engine=engine,
        output=OutputMode.TSV if args.tsv else OutputMode.HUMAN,
        poset=getattr(args, "poset", ""),
        stop=getattr(args, "stop", ""),
        base=getattr(args, "base", ""),
        target=getattr(args, "target", ""),
        tau=getattr(args, "tau", ""),
        weights=getattr(args, "weights", ""),
        boundary=getattr(args, "boundary", ""),
        graph=getattr(args, "graph", ""),
        graph_mode=getattr(args, "graph_mode", None) or "",
        stop_out=getattr(args, "stop_out", ""),
        order_out=getattr(args, "order_out", ""),
        n=getattr(args, "n", None),
        k=getattr(args, "k", None),
        all_k=bool(getattr(args, "all_k", False)),
        npo_mode=getattr(args, "npo_mode", None) or "count",
        n_max=getattr(args, "n_max", 12),
        scope=SelftestScope(getattr(args, "scope", "quick")),
    )


def _load_poset(path: str, limits: Limits) -> Poset:
    p = parsing.parse_poset(parsing.read_text(path), path)
    if p.n > limits.max_ground_set:
        raise LimitExceeded(f"{path}: ground set limited to n <= {limits.max_ground_set}, got {p.n}")
    return p


def _verdict_exit(ok: bool) -> int:
    return 0 if ok else 1


def _cmd_ideals(cfg: CommandConfig) -> CommandResult:
    family = enumerate_ideals(_load_poset(cfg.poset, cfg.engine.limits))
    return CommandResult(0, format_ideals(family, cfg.output))


def _cmd_check_stop(cfg: CommandConfig) -> CommandResult:
    base = _load_poset(cfg.poset, cfg.engine.limits)
    phi = parsing.parse_stop(parsing.read_text(cfg.stop), base, cfg.stop)
    boundary: Optional[stops.BoundaryFunctional] = None
    if cfg.boundary:
        boundary = stops.additive_weight(parsing.parse_weights(parsing.read_text(cfg.boundary), cfg.boundary).weights)
    elif cfg.graph:
        graph = parsing.parse_graph(parsing.read_text(cfg.graph), cfg.graph)
        boundary = stops.edge_boundary(graph) if cfg.graph_mode == "edge" else stops.vertex_boundary(graph)
    tau = parsing.parse_tau(parsing.read_text(cfg.tau), base, cfg.tau) if cfg.tau else None
    report = stops.validate_stop(phi, boundary, tau)
    return CommandResult(_verdict_exit(report.passed), format_axiom_report(report, cfg.output))


def _cmd_stop_order(cfg: CommandConfig) -> CommandResult:
    base = _load_poset(cfg.poset, cfg.engine.limits)
    phi = parsing.parse_stop(parsing.read_text(cfg.stop), base, cfg.stop)
    return CommandResult(0, format_poset_output(stops.stop_order(phi), cfg.output))


def _cmd_superreduce(cfg: CommandConfig) -> CommandResult:
    base = _load_poset(cfg.base, cfg.engine.limits)
    target = _load_poset(cfg.target, cfg.engine.limits)
    tau = parsing.parse_tau(parsing.read_text(cfg.tau), target, cfg.tau) if cfg.tau else default_linear_extension(target)
    phi = reductions.superreduction(base, target, tau)
    order = stops.stop_order(phi)
    if cfg.stop_out:
        Path(cfg.stop_out).write_text(parsing.format_stop(phi), encoding="utf-8")
    if cfg.order_out:
        Path(cfg.order_out).write_text(parsing.format_poset(order), encoding="utf-8")
    return CommandResult(0, format_superreduction(phi, order, cfg.output))


def _cmd_theorem5(cfg: CommandConfig) -> CommandResult:
    target = _load_poset(cfg.target, cfg.engine.limits)
    recovered = reductions.recover_realised_order(target, cfg.engine.limits.theorem5_limit)
    if recovered == target:
        return CommandResult(0, format_verdicts([("theorem5", Verdict.PASS)], cfg.output))
    lines = [format_verdicts([("theorem5", Verdict.FAIL)], cfg.output), format_poset_output(recovered, cfg.output)]
    return CommandResult(1, "\n".join(lines))


def _cmd_mwi(cfg: CommandConfig) -> CommandResult:
    base = _load_poset(cfg.poset, cfg.engine.limits)
    weights = parsing.parse_weights(parsing.read_text(cfg.weights), cfg.weights)
    target = _load_poset(cfg.target, cfg.engine.limits) if cfg.target else None
    if cfg.all_k:
        results = mwi.mwi_table(base, weights, target)
    elif target is not None:
        results = [mwi.mwi_reduced(base, target, weights, cfg.k or 0)]
    else:
        results = [mwi.mwi_bruteforce(base, weights, cfg.k or 0)]
    return CommandResult(0, format_mwi(results, cfg.output))


def _cmd_npo(cfg: CommandConfig) -> CommandResult:
    n = cfg.n or 0
    result = npo.enumerate_npo(n, cfg.npo_mode, cfg.engine.limits, cfg.engine.threads)  # type: ignore[arg-type]
    if isinstance(result, int):
        return CommandResult(0, f"{n}\t{result}" if cfg.output == OutputMode.TSV else str(result))
    return CommandResult(0, format_npo_stream(result, cfg.output))


def _cmd_verify_npo(cfg: CommandConfig) -> CommandResult:
    n = cfg.n or 0
    limits = cfg.engine.limits
    # NPO(n) is a chain for n <= 2, so non-modularity is only claimed from n = 3.
    if n < 3:
        not_modular = Verdict.SKIPPED
    else:
        witness = npo.modularity_witness(n, limits)
        not_modular = Verdict.FAIL if witness is None else Verdict.PASS
        if witness is not None:
            p, q = witness
            log.info("strict rank pair: %s | %s", parsing.format_inline_poset(p), parsing.format_inline_poset(q))
    verdicts = [
        ("semimodular", Verdict.PASS if npo.check_semimodular(n, limits) else Verdict.FAIL),
        ("jordan_dedekind", Verdict.PASS if npo.check_jordan_dedekind(n, limits) else Verdict.FAIL),
        ("not_modular", not_modular),
        ("ndl_upper_semimodular", Verdict.PASS if npo.check_ndl_upper_semimodular(n, limits) else Verdict.FAIL),
    ]
    ok = all(verdict != Verdict.FAIL for _, verdict in verdicts)
    return CommandResult(_verdict_exit(ok), format_verdicts(verdicts, cfg.output))


def _cmd_bps(cfg: CommandConfig) -> CommandResult:
    rows = npo.bps_ratio_table(cfg.n_max, cfg.engine.limits, cfg.engine.threads)
    return CommandResult(0, format_bps_table(rows, cfg.output))


def _cmd_selftest(cfg: CommandConfig) -> CommandResult:
    report = selftest(cfg.scope, cfg.engine)
    return CommandResult(_verdict_exit(report.passed), format_selftest(report, cfg.output))


_HANDLERS: Dict[str, Callable[[CommandConfig], CommandResult]] = {
    "ideals": _cmd_ideals,
    "check-stop": _cmd_check_stop,
    "stop-order": _cmd_stop_order,
    "superreduce": _cmd_superreduce,
    "theorem5": _cmd_theorem5,
    "mwi": _cmd_mwi,
    "npo": _cmd_npo,
    "verify-npo": _cmd_verify_npo,
    "bps": _cmd_bps,
    "selftest": _cmd_selftest,
}


def run(cfg: CommandConfig) -> CommandResult:
    handler = _HANDLERS.get(cfg.command)
    if handler is None:
        return CommandResult(2, stderr=f"Input error: unsupported command {cfg.command!r}")
    try:
        return handler(cfg)
    except Exception as exc:
        kind = classify_error(exc)
        log.debug("command %s failed", cfg.command, exc_info=True)
        code = exit_code_for(kind)
        label = "Input error" if code == 2 else "Error"
        return CommandResult(code, stderr=f"{label} ({kind.value}): {exc}")


def _configure_logging(verbose: int) -> None:
    if verbose <= 0:
        return
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose > 1 else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: List[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        cfg = _resolve_config(args)
    except ConfigError as exc:
        print(f"Configuration error: {exc}", file=sys.stderr)
        return 2
    result = run(cfg)
    if result.stdout:
        print(result.stdout)
    if result.stderr:
        print(result.stderr, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
