"""Graph moves and the finite fixtures built from them.

Infinite data (an infinite receiver, a source vector with value infinity)
only ever appears as a truncation depth; every graph produced here is finite.

Naming:
    in_delay                vertex copies <v>#<j>, delay edges d_<v>#<j> : <v>#<j-1> -> <v>#<j>
    desingularise_truncated tail vertices <v>#<i>, tail edges t_<v>#<i> : <v>#<i> -> <v>#<i-1>
                            (<v>#0 is v itself), bundle copies <b>#<i>
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from services.contraction import EDGE_PREFIX, ContractionResult, contract, contracted_edge_name
from utils.checks import Report
from utils.errors import GraphError, ValidationError
from utils.graph import (
    INFINITE,
    Bundle,
    Edge,
    Graph,
    MultiGraph,
    Path,
    Rename,
    apply_rename,
    is_acyclic,
    singular_vertices,
)
from utils.graph_format import parse_delay_values

logger = logging.getLogger(__name__)

FIXTURES = ("EX51", "EX52", "EX53")


def copy_name(v: str, j: int) -> str:
    return f"{v}#{j}"


@dataclass(frozen=True)
class DelayVector:
    vertex: Mapping[str, int] = field(default_factory=dict)
    edge: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_text(cls, F: Graph, text: str) -> "DelayVector":
        """Read `vertex <id> <n>` / `edge <id> <n>` lines; missing entries are 0."""
        vs, es = parse_delay_values(text)
        return cls.total(F, vs, es)

    @classmethod
    def total(cls, F: Graph, vertex: Mapping[str, int], edge: Mapping[str, int]) -> "DelayVector":
        for v in vertex:
            F.require_vertex(v)
        for e in edge:
            F.edge(e)
        return cls(
            {v: int(vertex.get(v, 0)) for v in F.vertices},
            {e.id: int(edge.get(e.id, 0)) for e in F.edges},
        )

    def check(self, F: Graph) -> None:
        for v in F.vertices:
            if v not in self.vertex:
                raise GraphError(f"delay vector has no value for vertex '{v}'")
            if self.vertex[v] < 0:
                raise GraphError(f"negative delay {self.vertex[v]} at vertex '{v}'")
        for e in F.edges:
            if e.id not in self.edge:
                raise GraphError(f"delay vector has no value for edge '{e.id}'")
            d = self.edge[e.id]
            if d < 0:
                raise GraphError(f"negative delay {d} at edge '{e.id}'")
            if d > self.vertex[e.src]:
                raise GraphError(
                    f"delay of edge '{e.id}' ({d}) exceeds delay of its source '{e.src}' ({self.vertex[e.src]})"
                )


@dataclass(frozen=True)
class MoveResult:
    """A moved graph plus what it came from.

    vertex_origin maps each new vertex to the vertex it copies; edge_routes maps
    each edge of the comparison graph to the path of new edges it unfolds into.
    """

    graph: Graph
    vertex_origin: Mapping[str, str]
    edge_routes: Mapping[str, Tuple[str, ...]]
    base_vertices: FrozenSet[str] = frozenset()


def contraction_rename(move: MoveResult) -> Rename:
    """Rename from contract(move.graph, move.base_vertices).G onto the graph the move started from."""
    vertices = {v: move.vertex_origin[v] for v in move.base_vertices}
    edges = {
        contracted_edge_name(route): e
        for e, route in move.edge_routes.items()
    }
    return Rename(vertices, edges)


def in_delay(F: Graph, d: DelayVector, name: Optional[str] = None) -> MoveResult:
    d.check(F)
    vertices: List[str] = []
    origin: Dict[str, str] = {}
    edges: List[Edge] = []
    for v in F.vertices:
        for j in range(d.vertex[v] + 1):
            vertices.append(copy_name(v, j))
            origin[copy_name(v, j)] = v
            if j:
                edges.append(Edge(f"d_{copy_name(v, j)}", copy_name(v, j - 1), copy_name(v, j)))
    routes: Dict[str, Tuple[str, ...]] = {}
    for e in F.edges:
        k = d.edge[e.id]
        edges.append(Edge(e.id, copy_name(e.src, k), copy_name(e.rng, 0)))
        routes[e.id] = (e.id,) + tuple(f"d_{copy_name(e.src, j)}" for j in range(k, 0, -1))
    g = Graph(name or f"{F.name}_delay", tuple(vertices), tuple(edges))
    logger.debug("in-delay of %s: %d vertices, %d edges", F.name, len(g.vertices), len(g.edges))
    return MoveResult(g, origin, routes, frozenset(copy_name(v, 0) for v in F.vertices))


def _positions(F: MultiGraph, v: str, depth: int) -> List[Tuple[str, str]]:
    """(edge id, src) for each position 0, 1, ... of the tail at infinite receiver v."""
    fixed: List[Tuple[str, str]] = [(e, F.base.src(e)) for e in F.base.in_edges(v)]
    infinite: List[Bundle] = []
    for b in F.bundles:
        if b.rng != v:
            continue
        if b.is_infinite:
            infinite.append(b)
        else:
            fixed += [(copy_name(b.id, i), b.src) for i in range(int(b.multiplicity))]
    total = max(depth, len(fixed) + len(infinite))
    out = list(fixed)
    counters = {b.id: 0 for b in infinite}
    i = 0
    while len(out) < total:
        b = infinite[i % len(infinite)]
        out.append((copy_name(b.id, counters[b.id]), b.src))
        counters[b.id] += 1
        i += 1
    return out


def _finite_copies(F: MultiGraph, receivers: FrozenSet[str]) -> List[Edge]:
    out = []
    for b in F.bundles:
        if b.rng not in receivers:
            out += [Edge(copy_name(b.id, i), b.src, b.rng) for i in range(int(b.multiplicity))]
    return out


def desingularise_truncated(F: MultiGraph, depth: int, name: Optional[str] = None) -> MoveResult:
    """Desingularise `F`, cutting the tail of every infinite receiver at `depth`.

    The head a full desingularisation adds at a source is left out.
    """
    if depth < 1:
        raise GraphError(f"depth must be >= 1, got {depth}")
    receivers = frozenset(F.infinite_receivers())
    vertices = list(F.base.vertices)
    origin = {v: v for v in vertices}
    edges = [e for e in F.base.edges if e.rng not in receivers]
    edges += _finite_copies(F, receivers)
    routes: Dict[str, Tuple[str, ...]] = {e.id: (e.id,) for e in edges}
    for v in sorted(receivers):
        positions = _positions(F, v, depth)
        for i, (eid, src) in enumerate(positions):
            rng = v if i == 0 else copy_name(v, i)
            if i:
                vertices.append(rng)
                origin[rng] = v
                prev = v if i == 1 else copy_name(v, i - 1)
                edges.append(Edge(f"t_{copy_name(v, i)}", rng, prev))
            edges.append(Edge(eid, src, rng))
            routes[eid] = tuple(f"t_{copy_name(v, k)}" for k in range(1, i + 1)) + (eid,)
    g = Graph(name or f"{F.name}_desing", tuple(vertices), tuple(edges))
    logger.debug("desingularised %s at depth %d: %d vertices", F.name, depth, len(g.vertices))
    return MoveResult(g, origin, routes, F.base.vertex_set)


def truncate(F: MultiGraph, depth: int, name: Optional[str] = None) -> Graph:
    """F with every bundle expanded to the parallel edges desingularise_truncated(F, depth) uses."""
    if depth < 1:
        raise GraphError(f"depth must be >= 1, got {depth}")
    receivers = frozenset(F.infinite_receivers())
    edges = [e for e in F.base.edges if e.rng not in receivers]
    edges += _finite_copies(F, receivers)
    for v in sorted(receivers):
        edges += [Edge(eid, src, v) for eid, src in _positions(F, v, depth)]
    return Graph(name or f"{F.name}_trunc{depth}", F.base.vertices, tuple(edges))


def collapsible_diagnostics(E: Graph, seg: Iterable[str]) -> Report:
    seg = E.require_vertices(seg)
    report = Report(f"collapse of {{{','.join(sorted(seg))}}} in {E.name}")
    for u in sorted(seg):
        ins = E.in_edges(u)
        outs = E.out_edges(u)
        leaving = [e for e in outs if E.rng(e) not in seg]
        report.header.append(f"# {u} in={len(ins)} out={len(outs)} exits={len(leaving)}")
    chain = all(len(E.out_edges(u)) == 1 for u in seg)
    report.header.append(f"# single-exit segment: {'yes' if chain else 'no'}")
    sing = sorted(seg & singular_vertices(E))
    report.add("no-singular", not sing, sing[0] if sing else None)
    acyclic, cycle = is_acyclic(E, seg)
    report.add("acyclic", acyclic, None if acyclic else str(cycle))
    return report


def collapse_segment(E: Graph, seg: Iterable[str]) -> ContractionResult:
    seg = E.require_vertices(seg)
    report = collapsible_diagnostics(E, seg)
    if not report.ok:
        raise ValidationError(f"cannot collapse segment in {E.name}:\n{report.to_text()}", report)
    return contract(E, E.vertex_set - seg)


# fixtures -----------------------------------------------------------------------

@dataclass(frozen=True)
class Fixture:
    """A finite example: E, the G0 it is contracted onto, and the graph that should come out."""

    name: str
    depth: int
    E: Graph
    G0: FrozenSet[str]
    expected: Graph
    rename: Rename

    def expected_witness(self) -> Dict[str, Path]:
        """Contraction edge name -> witness path in E for every expected edge."""
        inverse = self.rename.inverse()
        out = {}
        for e in self.expected.edges:
            cname = inverse.edge(e.id)
            out[cname] = self.E.parse_path(cname[len(EDGE_PREFIX):])
        return out

    def expected_in_contraction_names(self) -> Graph:
        return apply_rename(self.expected, self.rename.inverse(), name=f"{self.E.name}_G")


def _ex51(depth: int) -> Fixture:
    name = f"EX51_{depth}"
    v = [f"v_{i}" for i in range(depth + 1)]
    u = ["v_0"] + [f"u_{i}" for i in range(1, depth + 1)]
    triples = [("a", "v_0", "v_1")]
    for i in range(1, depth + 1):
        triples.append((f"x_{i}", u[i], u[i - 1]))
        triples.append((f"b_{i}", v[i], u[i]))
        if i >= 3:
            triples.append((f"k_{i}", v[i], u[i - 1]))
    E = Graph.build(name, v + u[1:], triples)
    G0 = frozenset(v)
    expected_triples = [("a", "v_0", "v_1")]
    edges: Dict[str, str] = {contracted_edge_name(["a"]): "a"}
    for i in range(1, depth + 1):
        xs = [f"x_{j}" for j in range(1, i + 1)]
        expected_triples.append((f"f_{i}", v[i], "v_0"))
        edges[contracted_edge_name(xs + [f"b_{i}"])] = f"f_{i}"
        if i >= 3:
            expected_triples.append((f"g_{i}", v[i], "v_0"))
            edges[contracted_edge_name(xs[:-1] + [f"k_{i}"])] = f"g_{i}"
    expected = Graph.build(f"{name}_expected", v, expected_triples)
    return Fixture("EX51", depth, E, G0, expected, Rename({}, edges))


def _ex52(depth: int) -> Fixture:
    F = MultiGraph(Graph("EX52", ("v", "w"), ()), (Bundle("e", "w", "v", INFINITE),))
    move = desingularise_truncated(F, depth, name=f"EX52_{depth}")
    expected = truncate(F, depth, name=f"EX52_{depth}_expected")
    return Fixture("EX52", depth, move.graph, move.base_vertices, expected, contraction_rename(move))


def _ex53(depth: int) -> Fixture:
    F = Graph.build(f"EX53_{depth}_expected", ["v", "w"], [(f"e_{i}", "w", "v") for i in range(1, depth + 1)])
    d = DelayVector.total(F, {"w": depth - 1, "v": 0}, {f"e_{i}": i - 1 for i in range(1, depth + 1)})
    move = in_delay(F, d, name=f"EX53_{depth}")
    return Fixture("EX53", depth, move.graph, move.base_vertices, F, contraction_rename(move))


def fixture(name: str, depth: int) -> Fixture:
    builders = {"EX51": _ex51, "EX52": _ex52, "EX53": _ex53}
    if name not in builders:
        raise GraphError(f"unknown fixture '{name}' (expected one of {', '.join(FIXTURES)})")
    if depth < 2:
        raise GraphError(f"fixture depth must be >= 2, got {depth}")
    fx = builders[name](depth)
    logger.info("built fixture %s depth %d: %s", name, depth, fx.E)
    return fx
