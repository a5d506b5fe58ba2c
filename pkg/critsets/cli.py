"""
The `critsets` command.

Every subcommand prints plain text, or JSON with `--json`, to standard out;
logs go to standard error. Exit status is `0` when the checked claim holds,
`1` when it is decided false (a set that is not critical, a matrix with no
completion, ...) and `2` on bad usage, unreadable input or a size guard.

##### Examples #####

```python
>>> run(["verify-critical", "--matrix", "fig1.txt", "--set", "fig1_cs.txt"])
critical, size 14
0

>>> run(["verify-critical", "--fixture", "fig1", "--set", "fig1.txt"])
not critical, size 36
1

>>> run(["construct", "x", "--m", "2", "--with-critical"])
R=2,2,2,2 S=2,2,2,2
1010
0101
1010
0101
critical set of size 6
R=2,2,2,2 S=2,2,2,2
..1.
0..1
.0..
0.0.
0

>>> run(["count", "--matrix", "no-such-file.txt"])
2

```
"""

from __future__ import annotations
import argparse
from collections.abc import Callable, Mapping, Sequence
from pathlib import Path
import sys
from typing import Any, Optional, TextIO

import numpy as np
from rich.console import Console, RenderableType

from critsets import log
from critsets.completion import CompletionBudget, count_completions
from critsets.completion import enumerate_completions
from critsets.compositions import (
    CompositionPair,
    b_max_critical,
    b_maximizers,
)
from critsets.constructions import (
    b_realize,
    build_B,
    build_M_k,
    build_X,
    build_Y,
    critical_X,
    critical_Y,
    spectrum,
    spectrum_sources,
    sup_pair,
)
from critsets.core import ClassSpec, MarginSpec, PartialMatrix, parse, render
from critsets.defsets import (
    CertifiedCriticalSet,
    is_critical,
    is_critical_by_cycles,
    is_defining,
    minimize_to_critical,
)
from critsets.errors import CritSetsError
from critsets.extremal import class_report
from critsets.fixtures import DATA_DIR, fixture_names, load_fixture
from critsets.json import JSONEncoder
from critsets.lib.rich import THEME
from critsets.trades import decompose_cycles, find_cycle_through, trade_between
from critsets.typings import Cell
from critsets.walks import search_walk_certificate

__all__ = ["EXIT_TRUE", "EXIT_FALSE", "EXIT_ERROR", "build_parser", "run", "main"]

_LOG = log.get_logger(__name__)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


class UsageError(CritSetsError):
    """Arguments that parse but do not make sense together."""


class Output:
    """Where results go: text through a `rich` console, or JSON."""

    def __init__(self, as_json: bool, file: Optional[TextIO] = None):
        self.as_json = as_json
        self.file = sys.stdout if file is None else file
        self.console = Console(
            file=self.file,
            theme=THEME,
            markup=False,
            emoji=False,
            highlight=False,
            soft_wrap=True,
        )

    def emit(self, data: Mapping[str, Any], *lines: RenderableType) -> None:
        if self.as_json:
            JSONEncoder.pretty().dump(data, self.file)
            self.file.write("\n")
        else:
            for line in lines:
                self.console.print(line)


def _text(M: PartialMatrix) -> str:
    return M.to_text().rstrip("\n")


# Inputs
# ============================================================================


def _read(path: str) -> str:
    # Bare fixture file names resolve against the installed data
    candidate = Path(path)
    if not candidate.exists() and (DATA_DIR / path).exists():
        candidate = DATA_DIR / path
    return candidate.read_text(encoding="utf-8")


def _margins(args: argparse.Namespace) -> Optional[MarginSpec]:
    if getattr(args, "margins", None) is None:
        return None
    return MarginSpec.parse_header(args.margins)


def _matrix(args: argparse.Namespace) -> PartialMatrix:
    if getattr(args, "fixture", None) is not None:
        return load_fixture(args.fixture).matrix
    if getattr(args, "matrix", None) is None:
        raise UsageError("Expected --matrix or --fixture")
    return parse(_read(args.matrix), _margins(args))


def _set(args: argparse.Namespace, M: PartialMatrix) -> PartialMatrix:
    if getattr(args, "set", None) is not None:
        return parse(_read(args.set), M.margins)
    if getattr(args, "fixture", None) is not None:
        return load_fixture(args.fixture).critical_set
    raise UsageError("Expected --set, or --fixture for its critical set")


def _cell(text: str) -> Cell:
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"Expected a cell as 'i,j', given {text!r}"
        ) from None
    return (i, j)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(
            f"Expected a positive integer, given {text!r}"
        )
    return value


def _ccs_lines(label: str, ccs: CertifiedCriticalSet) -> list[str]:
    return [f"{label} of size {ccs.size}", _text(ccs.cells)]


# Commands
# ============================================================================


def cmd_verify_defining(args: argparse.Namespace, out: Output) -> int:
    M = _matrix(args)
    D = _set(args, M)
    defining = is_defining(M, D, node_cap=args.node_cap)
    verdict = "defining" if defining else "not defining"
    out.emit(dict(defining=defining, size=D.size), f"{verdict}, size {D.size}")
    return EXIT_TRUE if defining else EXIT_FALSE


def cmd_verify_critical(args: argparse.Namespace, out: Output) -> int:
    M = _matrix(args)
    D = _set(args, M)
    if args.by_cycles:
        critical = is_critical_by_cycles(M, D)
    else:
        critical = is_critical(
            M, D, node_cap=args.node_cap, threads=args.threads
        )
    verdict = "critical" if critical else "not critical"
    out.emit(dict(critical=critical, size=D.size), f"{verdict}, size {D.size}")
    return EXIT_TRUE if critical else EXIT_FALSE


def cmd_complete(args: argparse.Namespace, out: Output) -> int:
    D = _matrix(args)
    budget = CompletionBudget(limit=2, node_cap=args.node_cap)
    count = count_completions(D, budget, threads=args.threads)
    if count == 0:
        out.emit(dict(completions=0, unique=False), "no completion")
        return EXIT_FALSE
    M = next(enumerate_completions(D, CompletionBudget(1, args.node_cap)))
    unique = count == 1
    out.emit(
        dict(completion=M, unique=unique),
        _text(M),
        "unique completion" if unique else "not unique",
    )
    return EXIT_TRUE


def cmd_count(args: argparse.Namespace, out: Output) -> int:
    D = _matrix(args)
    budget = CompletionBudget(
        limit=sys.maxsize if args.limit is None else args.limit,
        node_cap=args.node_cap,
    )
    count = count_completions(D, budget, threads=args.threads)
    out.emit(dict(count=count, limit=args.limit), str(count))
    return EXIT_TRUE


def cmd_minimize(args: argparse.Namespace, out: Output) -> int:
    M = _matrix(args)
    D = _set(args, M) if args.set is not None else M
    order: Optional[list[Cell]] = None
    if args.shuffle:
        cells = D.cells()
        rng = np.random.default_rng(args.seed)
        order = [cells[int(k)] for k in rng.permutation(len(cells))]
    if not is_defining(M, D, node_cap=args.node_cap):
        out.emit(dict(defining=False, size=D.size), "not defining")
        return EXIT_FALSE
    C = minimize_to_critical(
        M, D, order, node_cap=args.node_cap, threads=args.threads
    )
    out.emit(C.to_json_encodable(), *_ccs_lines("critical set", C))
    return EXIT_TRUE


def cmd_decompose(args: argparse.Namespace, out: Output) -> int:
    M1 = _matrix(args)
    M2 = parse(_read(args.other), M1.margins)
    trade = trade_between(M1, M2)
    if trade is None:
        out.emit(dict(cycles=[]), "matrices are equal")
        return EXIT_TRUE
    cycles = decompose_cycles(trade)
    out.emit(
        dict(trade=trade, cycles=[list(c.order) for c in cycles]),
        f"trade of size {trade.size}, {len(cycles)} cycles",
        *(
            " ".join(f"({i},{j})" for i, j in cycle.order)
            for cycle in cycles
        ),
    )
    return EXIT_TRUE


def cmd_cycle_through(args: argparse.Namespace, out: Output) -> int:
    M = _matrix(args)
    D = _set(args, M)
    cycle = find_cycle_through(M, D, args.cell)
    if cycle is None:
        out.emit(dict(cycle=None), "no cycle")
        return EXIT_FALSE
    out.emit(
        dict(cycle=[list(c) for c in cycle.order]),
        " ".join(f"({i},{j})" for i, j in cycle.order),
    )
    return EXIT_TRUE


def cmd_construct(args: argparse.Namespace, out: Output) -> int:
    ccs: Optional[CertifiedCriticalSet] = None
    if args.family == "x":
        M = build_X(args.m)
        if args.with_critical:
            ccs = critical_X(args.m)
    elif args.family == "y":
        M = build_Y(args.m)
        if args.with_critical:
            ccs = critical_Y(args.m)
    elif args.family == "mk":
        if args.k is None:
            raise UsageError("construct mk needs --k")
        M, ccs = build_M_k(args.m, args.k)
        if not args.with_critical:
            ccs = None
    else:
        M = build_B(args.m)
        if args.with_critical:
            pair = (
                CompositionPair(tuple(args.s), tuple(args.t))
                if args.s and args.t
                else b_maximizers(args.m, threads=args.threads)[0]
            )
            ccs = b_realize(pair)

    data: dict[str, Any] = dict(matrix=M)
    lines = [_text(M)]
    if ccs is not None:
        data["criticalSet"] = ccs
        lines.extend(_ccs_lines("critical set", ccs))
    out.emit(data, *lines)
    return EXIT_TRUE


def cmd_spectrum(args: argparse.Namespace, out: Output) -> int:
    sets = spectrum(args.m, threads=args.threads)
    sources = spectrum_sources(args.m)
    holds = all(
        k == ccs.size and ccs.verify(threads=args.threads)
        for k, ccs in sets.items()
    )
    out.emit(
        dict(m=args.m, verified=holds, sets={str(k): v for k, v in sets.items()}),
        *(f"{k:>4}  {sources[k]}" for k in sets),
        "verified" if holds else "NOT verified",
    )
    return EXIT_TRUE if holds else EXIT_FALSE


def cmd_b_analysis(args: argparse.Namespace, out: Output) -> int:
    m = args.m
    best = b_max_critical(m, relaxed=args.relaxed, threads=args.threads)
    witnesses = b_maximizers(m, threads=args.threads)
    formula = 2 * m * m - m
    # The claim checked is that the maximum is realized by a critical set
    realized = b_realize(witnesses[0])
    holds = realized.size == witnesses[0].size and realized.verify(
        threads=args.threads
    )
    comparison = (
        "equals 2m²-m"
        if best == formula
        else f"{'exceeds' if best > formula else 'falls short of'} "
        f"2m²-m = {formula} by {abs(best - formula)}"
    )
    out.emit(
        dict(
            m=m,
            maximum=best,
            formula=formula,
            maximizers=witnesses,
            realized=realized,
            verified=holds,
        ),
        f"largest critical set of B({2 * m}): {best}, {comparison}",
        f"{len(witnesses)} maximizing run pairs",
        f"realized s={witnesses[0].s} t={witnesses[0].t}: "
        + ("verified" if holds else "NOT verified"),
    )
    return EXIT_TRUE if holds else EXIT_FALSE


def cmd_sup_pair(args: argparse.Namespace, out: Output) -> int:
    if args.m is not None:
        M = build_B(args.m)
    else:
        M = _matrix(args)
    m = M.rows // 2
    C1, C2 = sup_pair(M, threads=args.threads)
    bound = 3 * m * m - 2 * m + 1
    disjoint = not set(C1.cells.cells()) & set(C2.cells.cells())
    holds = disjoint and C1.size + C2.size >= bound
    out.emit(
        dict(first=C1, second=C2, total=C1.size + C2.size, bound=bound),
        *_ccs_lines("first critical set", C1),
        *_ccs_lines("second critical set", C2),
        f"sizes add to {C1.size + C2.size} >= {bound}: {holds}",
    )
    return EXIT_TRUE if holds else EXIT_FALSE


def cmd_extremal(args: argparse.Namespace, out: Output) -> int:
    report = class_report(
        ClassSpec.uniform(args.n, args.x),
        lcs=False if args.no_lcs else None,
        reduced=not args.full,
        sample=args.sample,
        seed=args.seed,
        threads=args.threads,
    )
    holds = report.verify(threads=args.threads)
    out.emit(report.to_json_encodable(), report)
    return EXIT_TRUE if holds else EXIT_FALSE


def cmd_certify_walk(args: argparse.Namespace, out: Output) -> int:
    M = _matrix(args)
    D = _set(args, M)
    certificate = search_walk_certificate(M, D, exact=args.exact)
    if certificate is None:
        out.emit(dict(certificate=None), "no walk certificate")
        return EXIT_FALSE
    out.emit(
        dict(certificate=certificate, handier=certificate.verify_handier(M)),
        f"rows {' '.join(map(str, certificate.row_perm))}",
        f"cols {' '.join(map(str, certificate.col_perm))}",
        f"depths {' '.join(map(str, certificate.walk.depths))}",
    )
    return EXIT_TRUE


def cmd_show(args: argparse.Namespace, out: Output) -> int:
    M = _matrix(args)
    marked = None
    if args.set is not None or args.fixture is not None:
        marked = _set(args, M)
    out.emit(dict(matrix=M, set=marked), render(M, marked=marked))
    return EXIT_TRUE


# Parser
# ============================================================================


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="more logging"
    )
    common.add_argument("--log-level", help="explicit log level")
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--seed", type=int, help="seed for randomized modes")
    common.add_argument(
        "--threads", type=_positive, default=1, help="worker threads"
    )
    return common


def _inputs(parser: argparse.ArgumentParser, *, with_set: bool) -> None:
    parser.add_argument("--matrix", help="matrix file (text or JSON)")
    parser.add_argument(
        "--fixture", choices=fixture_names(), help="named example matrix"
    )
    parser.add_argument(
        "--margins", help="'R=.. S=..' for input without a header line"
    )
    if with_set:
        parser.add_argument("--set", help="partial matrix file")
    parser.add_argument(
        "--node-cap", type=_positive, help="give up after this many search nodes"
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="critsets",
        description="Critical and defining sets of (0,1)-matrices.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def command(
        name: str, handler: Callable[[argparse.Namespace, Output], int], help: str
    ) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help)
        sub.set_defaults(handler=handler)
        return sub

    sub = command("verify-defining", cmd_verify_defining, "is a set defining")
    _inputs(sub, with_set=True)

    sub = command("verify-critical", cmd_verify_critical, "is a set critical")
    _inputs(sub, with_set=True)
    sub.add_argument(
        "--by-cycles", action="store_true", help="check through cycles"
    )

    sub = command("complete", cmd_complete, "complete a partial matrix")
    _inputs(sub, with_set=False)

    sub = command("count", cmd_count, "count completions")
    _inputs(sub, with_set=False)
    sub.add_argument("--limit", type=_positive, help="stop counting here")

    sub = command("minimize", cmd_minimize, "shrink to a critical set")
    _inputs(sub, with_set=True)
    sub.add_argument(
        "--shuffle", action="store_true", help="random removal order (--seed)"
    )

    sub = command("decompose", cmd_decompose, "split a trade into cycles")
    _inputs(sub, with_set=False)
    sub.add_argument("--other", required=True, help="second matrix file")

    sub = command("cycle-through", cmd_cycle_through, "cycle meeting a set once")
    _inputs(sub, with_set=True)
    sub.add_argument("--cell", type=_cell, required=True, help="'i,j'")

    sub = command("construct", cmd_construct, "build a family member")
    sub.add_argument("family", choices=("x", "y", "mk", "b"))
    sub.add_argument("--m", type=_positive, required=True)
    sub.add_argument("--k", type=int, help="critical set size for mk")
    sub.add_argument("--with-critical", action="store_true")
    sub.add_argument("--s", type=int, nargs="+", help="row runs for b")
    sub.add_argument("--t", type=int, nargs="+", help="column runs for b")

    sub = command("spectrum", cmd_spectrum, "a critical set of every size")
    sub.add_argument("--m", type=_positive, required=True)

    sub = command("b-analysis", cmd_b_analysis, "largest critical set of B")
    sub.add_argument("--m", type=_positive, required=True)
    sub.add_argument("--relaxed", action="store_true")

    sub = command("sup-pair", cmd_sup_pair, "two disjoint critical sets")
    _inputs(sub, with_set=False)
    sub.add_argument("--m", type=_positive, help="use B(2m)")

    sub = command("extremal", cmd_extremal, "scs, inf, sup and lcs of a class")
    sub.add_argument("--n", type=_positive, required=True)
    sub.add_argument("--x", type=int, required=True)
    sub.add_argument("--no-lcs", action="store_true")
    sub.add_argument("--full", action="store_true", help="no orbit reduction")
    sub.add_argument("--sample", type=_positive, help="scan a random sample")

    sub = command("certify-walk", cmd_certify_walk, "find a walk certificate")
    _inputs(sub, with_set=True)
    sub.add_argument("--exact", action="store_true")

    sub = command("show", cmd_show, "render a matrix")
    _inputs(sub, with_set=True)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return EXIT_ERROR if error.code else EXIT_TRUE

    log.setup(
        level=args.log_level, verbosity=args.verbose, console="stderr"
    )
    out = Output(args.json)
    try:
        return args.handler(args, out)
    except (CritSetsError, OSError, KeyError) as error:
        _LOG.error("Command failed", command=args.command, error=str(error))
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
