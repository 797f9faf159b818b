"""Command-line front end.

    python cli.py <command> [options]

stdout carries only deterministic report text; logging goes to stderr.
Exit codes: 0 success, 1 a verification failed, 2 input error.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from typing import Callable, FrozenSet, Optional, Sequence, Tuple

from config import settings
from services import contraction, lpa, moves, reduction
from services.expressions import format_element, parse_element
from services.morita import MoritaContextSpec, verify_morita_context
from utils.checks import Report
from utils.errors import LpaError, ValidationError
from utils.graph import (
    Graph,
    hereditary_closure,
    is_full,
    quotient_graph,
    saturated_hereditary_closure,
)
from utils.graph_format import load_multigraph, parse_graph, read_text, serialize_graph
from utils.rings import parse_ring

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

Result = Tuple[int, str]

_G0_COMMENT_RE = re.compile(r"^#\s*g0:\s*(.*)$", re.MULTILINE)


class UsageError(LpaError, ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of printing and exiting."""

    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _vertex_set(text: str) -> FrozenSet[str]:
    return frozenset(v.strip() for v in text.split(",") if v.strip())


def _fmt_set(vs) -> str:
    return "{" + ",".join(sorted(vs)) + "}"


def _load(path: str) -> Tuple[Graph, str]:
    text = read_text(path)
    return parse_graph(text), text


def _g0(args, text: str) -> FrozenSet[str]:
    if args.g0 is not None:
        return _vertex_set(args.g0)
    m = _G0_COMMENT_RE.search(text)
    if not m:
        raise UsageError("no --g0 given and the graph file has no '# g0: ...' line")
    return _vertex_set(m.group(1))


def _report_result(report: Report, extra: str = "") -> Result:
    return (EXIT_OK if report.ok else EXIT_FAILED), report.to_text() + extra


# commands -------------------------------------------------------------------------

def cmd_closure(args) -> Result:
    g, _ = _load(args.graph)
    V = _vertex_set(args.set)
    lines = [
        f"hereditary {_fmt_set(hereditary_closure(g, V))}",
        f"saturated-hereditary {_fmt_set(saturated_hereditary_closure(g, V))}",
    ]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_full(args) -> Result:
    g, _ = _load(args.graph)
    return EXIT_OK, ("true" if is_full(g, _vertex_set(args.set)) else "false") + "\n"


def cmd_quotient(args) -> Result:
    g, _ = _load(args.graph)
    H = _vertex_set(args.set)
    if args.close:
        H = saturated_hereditary_closure(g, H)
    return EXIT_OK, serialize_graph(quotient_graph(g, H))


def cmd_nf(args) -> Result:
    g, _ = _load(args.graph)
    x = parse_element(g, parse_ring(args.ring), args.expr)
    return EXIT_OK, format_element(x) + "\n"


def cmd_mul(args) -> Result:
    g, _ = _load(args.graph)
    ring = parse_ring(args.ring)
    x = parse_element(g, ring, args.lhs) * parse_element(g, ring, args.rhs)
    return EXIT_OK, format_element(x) + "\n"


def cmd_grade(args) -> Result:
    g, _ = _load(args.graph)
    x = parse_element(g, parse_ring(args.ring), args.expr)
    return EXIT_OK, format_element(lpa.grade_component(x, args.deg)) + "\n"


def cmd_morita(args) -> Result:
    g, _ = _load(args.graph)
    spec = MoritaContextSpec(g, _vertex_set(args.set), parse_ring(args.ring))
    return _report_result(verify_morita_context(spec, args.samples, args.seed))


def cmd_cg_validate(args) -> Result:
    g, text = _load(args.graph)
    return _report_result(contraction.validate(g, _g0(args, text)))


def cmd_cg_contract(args) -> Result:
    g, text = _load(args.graph)
    res = contraction.contract(g, _g0(args, text), parse_ring(args.ring))
    return EXIT_OK, contraction.serialize_contraction(res)


def cmd_cg_verify(args) -> Result:
    g, text = _load(args.graph)
    G0 = _g0(args, text)
    ring = parse_ring(args.ring)
    validation = contraction.validate(g, G0)
    if not validation.ok:
        return EXIT_FAILED, validation.to_text()
    res = contraction.contract(g, G0, ring)
    return _report_result(contraction.verify_contraction(res, args.maxlen, args.samples, args.seed))


def cmd_delay_in(args) -> Result:
    g, _ = _load(args.graph)
    d = moves.DelayVector.from_text(g, read_text(args.d))
    move = moves.in_delay(g, d)
    g0 = ",".join(sorted(move.base_vertices))
    return EXIT_OK, serialize_graph(move.graph, comments=[f"g0: {g0}"])


def cmd_desing(args) -> Result:
    F = load_multigraph(args.graph)
    move = moves.desingularise_truncated(F, args.depth)
    g0 = ",".join(sorted(move.base_vertices))
    return EXIT_OK, serialize_graph(move.graph, comments=[f"g0: {g0}"])


def cmd_collapse(args) -> Result:
    g, _ = _load(args.graph)
    seg = _vertex_set(args.seg)
    report = moves.collapsible_diagnostics(g, seg)
    if not report.ok:
        return EXIT_FAILED, report.to_text()
    res = moves.collapse_segment(g, seg)
    return EXIT_OK, report.to_text() + contraction.serialize_contraction(res)


def cmd_fixture(args) -> Result:
    fx = moves.fixture(args.name, args.depth)
    if args.emit_expected:
        G = fx.expected_in_contraction_names()
        return EXIT_OK, contraction.serialize_contracted(G, fx.expected_witness(), fx.E.name, fx.G0)
    comments = [f"fixture {fx.name} depth {fx.depth}", f"g0: {','.join(sorted(fx.G0))}"]
    return EXIT_OK, serialize_graph(fx.E, comments=comments)


def cmd_reduce(args) -> Result:
    g, _ = _load(args.graph)
    ring = parse_ring(args.ring)
    x = parse_element(g, ring, args.expr)
    cert = reduction.reduce(x, args.maxlen)
    if cert is None:
        return EXIT_FAILED, "EXHAUSTED\n"
    return EXIT_OK, reduction.format_certificate(cert, ring) + "\n"


def cmd_verify_cert(args) -> Result:
    g, _ = _load(args.graph)
    ring = parse_ring(args.ring)
    x = parse_element(g, ring, args.expr)
    cert = reduction.parse_certificate(g, read_text(args.cert))
    report = Report(f"reduction certificate for {format_element(x)}")
    report.add("certificate", reduction.verify_certificate(x, cert), reduction.format_certificate(cert, ring))
    return _report_result(report)


# parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    def ring(p):
        p.add_argument("--ring", default="Z", help="Z or Zmod:n (default Z)")

    def sampling(p):
        p.add_argument("--samples", type=int, default=None, help="number of random samples")
        p.add_argument("--seed", type=int, default=None, help="random seed")

    parser = _Parser(prog="lpa", description="Leavitt path algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Callable, help_text: str, graph: bool = True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if graph:
            p.add_argument("graph", help="graph file")
        p.set_defaults(func=func)
        return p

    for name, func, help_text in (
        ("closure", cmd_closure, "hereditary and saturated hereditary closure"),
        ("full", cmd_full, "is the vertex set full"),
    ):
        add(name, func, help_text).add_argument("--set", required=True, help="comma-separated vertices")

    p = add("quotient", cmd_quotient, "quotient graph by a saturated hereditary set")
    p.add_argument("--set", required=True)
    p.add_argument("--close", action="store_true", help="take the saturated hereditary closure first")

    p = add("nf", cmd_nf, "normal form of an expression")
    ring(p)
    p.add_argument("--expr", required=True)

    p = add("mul", cmd_mul, "product of two expressions")
    ring(p)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)

    p = add("grade", cmd_grade, "graded component of an expression")
    ring(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--deg", type=int, required=True)

    p = add("morita", cmd_morita, "verify the Morita context for a vertex set")
    ring(p)
    sampling(p)
    p.add_argument("--set", required=True)

    p = add("cg-validate", cmd_cg_validate, "check the contraction hypotheses")
    p.add_argument("--g0", default=None, help="comma-separated vertices (default: '# g0:' line of the file)")

    p = add("cg-contract", cmd_cg_contract, "contract onto G0 and print G with witnesses")
    ring(p)
    p.add_argument("--g0", default=None)

    p = add("cg-verify", cmd_cg_verify, "full verification of a contraction")
    ring(p)
    sampling(p)
    p.add_argument("--g0", default=None)
    p.add_argument("--maxlen", type=int, default=None, help="path bound for the preimage sweep")

    p = add("delay-in", cmd_delay_in, "in-delay by a source vector file")
    p.add_argument("--d", required=True, help="delay vector file")

    p = add("desing", cmd_desing, "truncated desingularisation of a multigraph")
    p.add_argument("--depth", type=int, required=True)

    p = add("collapse", cmd_collapse, "collapse a segment of vertices")
    p.add_argument("--seg", required=True)

    p = add("fixture", cmd_fixture, "emit an example graph", graph=False)
    p.add_argument("name", choices=moves.FIXTURES)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--emit-expected", action="store_true", help="print the expected contracted graph")

    p = add("reduce", cmd_reduce, "search for a reduction certificate")
    ring(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--maxlen", type=int, default=None)

    p = add("verify-cert", cmd_verify_cert, "check a reduction certificate")
    ring(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--cert", required=True, help="certificate file")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> Result:
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except UsageError as e:
        return EXIT_INPUT, f"error: {e}\n"
    settings.configure_logging("DEBUG" if args.verbose else None)
    logger.info("running %s", args.command)
    try:
        return args.func(args)
    except ValidationError as e:
        if e.report is not None:
            return EXIT_FAILED, e.report.to_text()
        return EXIT_FAILED, f"FAIL {e}\n"
    except LpaError as e:
        return EXIT_INPUT, f"error: {e}\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == EXIT_INPUT else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
