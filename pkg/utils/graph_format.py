"""Line-based text format for graphs, multigraphs and delay vectors.

    graph <name>
    vertex <id>
    edge <id> : <src> -> <rng>
    bundle <id> : <src> -> <rng> * <n|inf>      (multigraphs only)

Lines whose first non-blank character is `#` are comments. Serialization
writes vertices, then edges, then bundles, each sorted by identifier.
"""

from __future__ import annotations

import re
from pathlib import Path as FilePath
from typing import Dict, List, Optional, Tuple, Union

from config import settings
from utils.errors import GraphError, GraphFormatError
from utils.graph import INFINITE, Bundle, Edge, Graph, MultiGraph

VERTEX_ID = r"[A-Za-z0-9_#']+"
EDGE_ID = r"[A-Za-z0-9_#'.]+"

_HEADER_RE = re.compile(rf"^graph\s+(\S+)\s*$")
_VERTEX_RE = re.compile(rf"^vertex\s+({VERTEX_ID})\s*$")
_EDGE_RE = re.compile(rf"^edge\s+({EDGE_ID})\s*:\s*({VERTEX_ID})\s*->\s*({VERTEX_ID})\s*$")
_BUNDLE_RE = re.compile(rf"^bundle\s+({EDGE_ID})\s*:\s*({VERTEX_ID})\s*->\s*({VERTEX_ID})\s*\*\s*(\d+|inf)\s*$")


def _content_lines(text: str) -> List[Tuple[int, int, str]]:
    """(line number, column of first char, stripped line) for non-comment lines."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        out.append((lineno, col, stripped))
    return out


def _parse(text: str, allow_bundles: bool) -> Tuple[str, List[str], List[Edge], List[Bundle]]:
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty input, expected 'graph <name>'", 1)
    lineno, col, first = lines[0]
    m = _HEADER_RE.match(first)
    if not m:
        raise GraphFormatError("first line must be 'graph <name>'", lineno, col)
    name = m.group(1)
    vertices: List[str] = []
    edges: List[Edge] = []
    bundles: List[Bundle] = []
    seen_at: Dict[str, int] = {}
    for lineno, col, line in lines[1:]:
        keyword = line.split(None, 1)[0]
        if keyword == "vertex":
            m = _VERTEX_RE.match(line)
            if not m:
                raise GraphFormatError(f"malformed vertex line '{line}'", lineno, col)
            vertices.append(m.group(1))
        elif keyword == "edge":
            m = _EDGE_RE.match(line)
            if not m:
                raise GraphFormatError(f"malformed edge line '{line}'", lineno, col)
            edges.append(Edge(m.group(1), m.group(2), m.group(3)))
        elif keyword == "bundle" and allow_bundles:
            m = _BUNDLE_RE.match(line)
            if not m:
                raise GraphFormatError(f"malformed bundle line '{line}'", lineno, col)
            mult = INFINITE if m.group(4) == "inf" else int(m.group(4))
            bundles.append(Bundle(m.group(1), m.group(2), m.group(3), mult))
        else:
            raise GraphFormatError(f"unknown line kind '{keyword}'", lineno, col)
        ident = m.group(1)
        key = f"{keyword}:{ident}" if keyword == "vertex" else f"arrow:{ident}"
        if key in seen_at:
            raise GraphFormatError(f"duplicate identifier '{ident}' (first on line {seen_at[key]})", lineno, col)
        seen_at[key] = lineno
    return name, vertices, edges, bundles


def parse_graph(text: str) -> Graph:
    name, vertices, edges, _ = _parse(text, allow_bundles=False)
    return Graph(name, tuple(vertices), tuple(edges))


def parse_multigraph(text: str) -> MultiGraph:
    name, vertices, edges, bundles = _parse(text, allow_bundles=True)
    return MultiGraph(Graph(name, tuple(vertices), tuple(edges)), tuple(bundles))


def serialize_graph(g: Graph, comments: Optional[List[str]] = None) -> str:
    lines = [f"graph {g.name}"]
    lines += [f"# {c}" for c in (comments or [])]
    lines += [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.id} : {e.src} -> {e.rng}" for e in g.edges]
    return "\n".join(lines) + "\n"


def serialize_multigraph(mg: MultiGraph) -> str:
    text = serialize_graph(mg.base)
    extra = []
    for b in mg.bundles:
        mult = "inf" if b.is_infinite else str(int(b.multiplicity))
        extra.append(f"bundle {b.id} : {b.src} -> {b.rng} * {mult}")
    return text + ("\n".join(extra) + "\n" if extra else "")


def read_text(path: Union[str, FilePath]) -> str:
    try:
        return FilePath(path).read_text(encoding=settings.GRAPH_FILE_ENCODING)
    except OSError as e:
        raise GraphError(f"cannot read '{path}': {e.strerror}") from None


def load_multigraph(path: Union[str, FilePath]) -> MultiGraph:
    return parse_multigraph(read_text(path))


_DELAY_RE = re.compile(rf"^(vertex|edge)\s+({EDGE_ID})\s+(\d+)\s*$")


def parse_delay_values(text: str) -> Tuple[Dict[str, int], Dict[str, int]]:
    """`vertex <id> <n>` / `edge <id> <n>` lines -> (vertex values, edge values)."""
    vs: Dict[str, int] = {}
    es: Dict[str, int] = {}
    for lineno, col, line in _content_lines(text):
        m = _DELAY_RE.match(line)
        if not m:
            raise GraphFormatError(f"malformed delay line '{line}'", lineno, col)
        target = vs if m.group(1) == "vertex" else es
        if m.group(2) in target:
            raise GraphFormatError(f"duplicate delay entry for '{m.group(2)}'", lineno, col)
        target[m.group(2)] = int(m.group(3))
    return vs, es
