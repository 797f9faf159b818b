"""Finite directed graphs, paths and the vertex-set closures built on them.

Orientation follows the usual Leavitt path algebra convention: an edge e has
source s(e) and range r(e), and a path mu = mu_1 mu_2 ... mu_n composes when
s(mu_i) = r(mu_{i+1}).  So a path is read from its range end: r(mu) = r(mu_1)
and s(mu) = s(mu_n).  Length-0 paths are vertices.

Everything here is immutable and iterates in lexicographic identifier order,
so every result is reproducible byte-for-byte.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Collection, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from utils.errors import GraphError

logger = logging.getLogger(__name__)

INFINITE = math.inf

VertexFilter = Union[None, Collection[str], Callable[[str], bool]]


@dataclass(frozen=True, order=True)
class Edge:
    id: str
    src: str
    rng: str


@dataclass(frozen=True)
class Path:
    """A finite path. Build through Graph.path / Graph.vertex_path, never directly.

    rng and src are cached endpoint vertices; for a vertex path both equal the
    anchor vertex.
    """

    rng: str
    src: str
    edges: Tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    @property
    def anchor(self) -> str:
        return self.rng

    @property
    def ghost_rng(self) -> str:
        # r(mu*) = s(mu)
        return self.src

    @property
    def ghost_src(self) -> str:
        return self.rng

    def sort_key(self) -> tuple:
        return (len(self.edges), self.edges, self.rng)

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else self.rng


@dataclass(frozen=True)
class Graph:
    name: str
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        vs = tuple(sorted(set(self.vertices)))
        if len(vs) != len(self.vertices):
            raise GraphError(f"graph {self.name}: duplicate vertex identifiers")
        es = tuple(sorted(self.edges))
        ids = [e.id for e in es]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})[0]
            raise GraphError(f"graph {self.name}: duplicate edge identifier '{dup}'")
        known = set(vs)
        for e in es:
            for end in (e.src, e.rng):
                if end not in known:
                    raise GraphError(f"edge '{e.id}' refers to unknown vertex '{end}'")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @classmethod
    def build(cls, name: str, vertices: Iterable[str], edges: Iterable[Tuple[str, str, str]]) -> "Graph":
        """Convenience constructor from (id, src, rng) triples."""
        return cls(name, tuple(vertices), tuple(Edge(i, s, r) for i, s, r in edges))

    # lookups ---------------------------------------------------------------
    @cached_property
    def _edge_map(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _in_map(self) -> Dict[str, Tuple[str, ...]]:
        m: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            m[e.rng].append(e.id)
        return {v: tuple(ids) for v, ids in m.items()}

    @cached_property
    def _out_map(self) -> Dict[str, Tuple[str, ...]]:
        m: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            m[e.src].append(e.id)
        return {v: tuple(ids) for v, ids in m.items()}

    @cached_property
    def vertex_set(self) -> FrozenSet[str]:
        return frozenset(self.vertices)

    @cached_property
    def edge_ids(self) -> FrozenSet[str]:
        return frozenset(self._edge_map)

    def has_vertex(self, v: str) -> bool:
        return v in self._in_map

    def has_edge(self, e: str) -> bool:
        return e in self._edge_map

    def edge(self, e: str) -> Edge:
        try:
            return self._edge_map[e]
        except KeyError:
            raise GraphError(f"unknown edge '{e}' in graph {self.name}") from None

    def src(self, e: str) -> str:
        return self.edge(e).src

    def rng(self, e: str) -> str:
        return self.edge(e).rng

    def require_vertex(self, v: str) -> None:
        if v not in self._in_map:
            raise GraphError(f"unknown vertex '{v}' in graph {self.name}")

    def require_vertices(self, vs: Iterable[str]) -> FrozenSet[str]:
        out = frozenset(vs)
        for v in sorted(out):
            self.require_vertex(v)
        return out

    def in_edges(self, v: str) -> Tuple[str, ...]:
        self.require_vertex(v)
        return self._in_map[v]

    def out_edges(self, v: str) -> Tuple[str, ...]:
        self.require_vertex(v)
        return self._out_map[v]

    def special_edge(self, v: str) -> Optional[str]:
        """gamma(v): the smallest edge id received by v, None at sources."""
        ins = self.in_edges(v)
        return ins[0] if ins else None

    # paths -----------------------------------------------------------------
    def vertex_path(self, v: str) -> Path:
        self.require_vertex(v)
        return Path(v, v, ())

    def path(self, edges: Iterable[str]) -> Path:
        """Path from a non-empty edge sequence; checks the composition rule."""
        es = tuple(edges)
        if not es:
            raise GraphError("empty edge sequence; use vertex_path for length-0 paths")
        for a, b in zip(es, es[1:]):
            if self.src(a) != self.rng(b):
                raise GraphError(f"edges '{a}' and '{b}' do not compose: s({a}) != r({b})")
        return Path(self.rng(es[0]), self.src(es[-1]), es)

    def owns(self, p: Path) -> bool:
        """True when p is a path of this graph, endpoints included."""
        if not p.edges:
            return p.rng == p.src and self.has_vertex(p.rng)
        if not all(self.has_edge(e) for e in p.edges):
            return False
        try:
            return self.path(p.edges) == p
        except GraphError:
            return False

    def extend(self, p: Path, e: str) -> Path:
        """p followed by edge e at the source end; requires s(p) = r(e)."""
        edge = self.edge(e)
        if edge.rng != p.src:
            raise GraphError(f"cannot extend path {p} by '{e}': r({e}) != s(path)")
        return Path(p.rng, edge.src, p.edges + (e,))

    def concat(self, p: Path, q: Path) -> Path:
        if p.src != q.rng:
            raise GraphError(f"cannot concatenate {p} and {q}")
        if not q.edges:
            return p
        return Path(p.rng, q.src, p.edges + q.edges)

    def drop_last(self, p: Path) -> Path:
        if not p.edges:
            raise GraphError("cannot shorten a vertex path")
        if len(p.edges) == 1:
            v = self.rng(p.edges[0])
            return Path(v, v, ())
        last = p.edges[-2]
        return Path(p.rng, self.src(last), p.edges[:-1])

    def parse_path(self, text: str) -> Path:
        """A vertex id or dot-joined edge ids (longest match, edge ids may contain dots)."""
        text = text.strip()
        if self.has_vertex(text) and not self.has_edge(text):
            return self.vertex_path(text)
        return self.path(split_edge_ids(self, text))

    def __str__(self) -> str:
        return f"Graph({self.name}: {len(self.vertices)} vertices, {len(self.edges)} edges)"


def split_edge_ids(g: Graph, text: str) -> List[str]:
    """Split `a.b.c` into edge ids of g, preferring the longest dotted id at each step."""
    parts = text.split(".")
    out: List[str] = []
    i = 0
    while i < len(parts):
        for j in range(len(parts), i, -1):
            cand = ".".join(parts[i:j])
            if g.has_edge(cand):
                out.append(cand)
                i = j
                break
        else:
            raise GraphError(f"unknown edge '{parts[i]}' in graph {g.name}")
    return out


@dataclass(frozen=True, order=True)
class Bundle:
    id: str
    src: str
    rng: str
    multiplicity: float = 1

    @property
    def is_infinite(self) -> bool:
        return self.multiplicity == INFINITE


@dataclass(frozen=True)
class MultiGraph:
    """A graph plus edge bundles; a bundle of multiplicity INFINITE models an infinite receiver."""

    base: Graph
    bundles: Tuple[Bundle, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        bs = tuple(sorted(self.bundles))
        seen = set(self.base.edge_ids)
        for b in bs:
            if b.id in seen:
                raise GraphError(f"bundle id '{b.id}' clashes with an edge or bundle id")
            seen.add(b.id)
            for end in (b.src, b.rng):
                self.base.require_vertex(end)
            if not (b.is_infinite or (int(b.multiplicity) == b.multiplicity and b.multiplicity >= 1)):
                raise GraphError(f"bundle '{b.id}' needs a positive multiplicity or inf")
        object.__setattr__(self, "bundles", bs)

    @property
    def name(self) -> str:
        return self.base.name

    def infinite_receivers(self) -> List[str]:
        return sorted({b.rng for b in self.bundles if b.is_infinite})


# graph-core operations ---------------------------------------------------------

def in_edges(g: Graph, v: str) -> Tuple[str, ...]:
    """r^{-1}(v) in identifier order."""
    return g.in_edges(v)


def out_edges(g: Graph, v: str) -> Tuple[str, ...]:
    """s^{-1}(v) in identifier order."""
    return g.out_edges(v)


def singular_vertices(g: Graph) -> FrozenSet[str]:
    """Sources; a finite graph has no infinite receivers."""
    return frozenset(v for v in g.vertices if not g.in_edges(v))


def has_heads(g: Graph) -> bool:
    # A head is an infinite acyclic path; in a finite graph any infinite path
    # revisits a vertex and so contains a cycle.
    return False


def induced_subgraph(g: Graph, vs: Iterable[str], name: Optional[str] = None) -> Graph:
    keep = g.require_vertices(vs)
    return Graph(
        name or f"{g.name}_sub",
        tuple(sorted(keep)),
        tuple(e for e in g.edges if e.src in keep and e.rng in keep),
    )


def is_cycle(g: Graph, p: Path) -> bool:
    """|alpha| >= 1, s(alpha) = r(alpha) and the sources s(alpha_i) are distinct."""
    if not p.edges or p.src != p.rng:
        return False
    sources = [g.src(e) for e in p.edges]
    return len(set(sources)) == len(sources)


def is_acyclic(g: Graph, vs: Optional[Iterable[str]] = None) -> Tuple[bool, Optional[Path]]:
    """(True, None) when the subgraph induced on vs has no cycle, else (False, witness)."""
    keep = g.vertex_set if vs is None else g.require_vertices(vs)
    # Walk backwards along in-edges: a closed walk there is a cycle in path order.
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {v: WHITE for v in keep}
    for start in sorted(keep):
        if colour[start] != WHITE:
            continue
        colour[start] = GREY
        trail: List[str] = []  # edges taken, in path order
        stack = [(start, iter([e for e in g.in_edges(start) if g.src(e) in keep]))]
        while stack:
            v, it = stack[-1]
            e = next(it, None)
            if e is None:
                colour[v] = BLACK
                stack.pop()
                if trail:
                    trail.pop()
                continue
            u = g.src(e)
            if colour[u] == GREY:
                # cycle closes at u: take the trail from where u was entered
                idx = [w for w, _ in stack].index(u)
                cyc = trail[idx:] + [e]
                return False, g.path(cyc)
            if colour[u] == WHITE:
                colour[u] = GREY
                trail.append(e)
                stack.append((u, iter([f for f in g.in_edges(u) if g.src(f) in keep])))
    return True, None


def reaches(g: Graph, v: str, w: str) -> bool:
    """v <= w: some path mu has r(mu) = v and s(mu) = w."""
    return w in hereditary_closure(g, [v])


def hereditary_closure(g: Graph, V: Iterable[str]) -> FrozenSet[str]:
    H = set(g.require_vertices(V))
    work = sorted(H)
    while work:
        v = work.pop()
        for e in g.in_edges(v):
            u = g.src(e)
            if u not in H:
                H.add(u)
                work.append(u)
    return frozenset(H)


def saturated_hereditary_closure(g: Graph, V: Iterable[str]) -> FrozenSet[str]:
    """Sigma H(V): least set containing V closed under both rules.

    Saturation only adds vertices whose in-sources already lie in H, so the
    hereditary property survives and one hereditary pass suffices.
    """
    H = set(hereditary_closure(g, V))
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        for v in g.vertices:
            if v in H:
                continue
            ins = g.in_edges(v)
            if ins and all(g.src(e) in H for e in ins):
                H.add(v)
                changed = True
    logger.debug("saturation of %d seed vertices settled after %d rounds", len(H), rounds)
    return frozenset(H)


def is_hereditary(g: Graph, H: Iterable[str]) -> bool:
    H = frozenset(H)
    return all(g.src(e) in H for v in H for e in g.in_edges(v))


def is_saturated(g: Graph, H: Iterable[str]) -> bool:
    H = frozenset(H)
    for v in g.vertices:
        ins = g.in_edges(v)
        if v not in H and ins and all(g.src(e) in H for e in ins):
            return False
    return True


def is_full(g: Graph, V: Iterable[str]) -> bool:
    return saturated_hereditary_closure(g, V) == g.vertex_set


def quotient_graph(g: Graph, H: Iterable[str]) -> Graph:
    """E/H: drop H and every edge whose source lies in H."""
    H = g.require_vertices(H)
    if not (is_hereditary(g, H) and is_saturated(g, H)):
        raise GraphError(f"{{{','.join(sorted(H))}}} is not saturated and hereditary in {g.name}")
    kept = tuple(e for e in g.edges if e.src not in H)
    for e in kept:
        assert e.rng not in H, f"hereditary set left edge {e.id} ranging into H"
    return Graph(f"{g.name}_quot", tuple(v for v in g.vertices if v not in H), kept)


def _as_predicate(f: VertexFilter) -> Optional[Callable[[str], bool]]:
    if f is None:
        return None
    if callable(f):
        return f
    allowed = frozenset(f)
    return allowed.__contains__


def enumerate_paths(
    g: Graph,
    max_len: int,
    sources: VertexFilter = None,
    ranges: VertexFilter = None,
    interior: VertexFilter = None,
) -> Iterator[Path]:
    """All paths with |mu| <= max_len, in (length, lexicographic) order.

    sources/ranges filter s(mu)/r(mu); interior constrains s(mu_i) for i < |mu|.
    """
    if max_len < 0:
        return
    src_ok = _as_predicate(sources)
    rng_ok = _as_predicate(ranges)
    mid_ok = _as_predicate(interior)
    level = [g.vertex_path(v) for v in g.vertices if rng_ok is None or rng_ok(v)]
    for length in range(max_len + 1):
        for p in level:
            if src_ok is None or src_ok(p.src):
                yield p
        if length == max_len:
            break
        nxt: List[Path] = []
        for p in level:
            if p.edges and mid_ok is not None and not mid_ok(p.src):
                continue
            for e in g.in_edges(p.src):
                nxt.append(g.extend(p, e))
        nxt.sort(key=Path.sort_key)
        if not nxt:
            break
        level = nxt


@dataclass(frozen=True)
class Rename:
    """Vertex and edge renaming; identifiers not listed map to themselves."""

    vertices: Mapping[str, str] = field(default_factory=dict)
    edges: Mapping[str, str] = field(default_factory=dict)

    def vertex(self, v: str) -> str:
        return self.vertices.get(v, v)

    def edge(self, e: str) -> str:
        return self.edges.get(e, e)

    def inverse(self) -> "Rename":
        return Rename({b: a for a, b in self.vertices.items()}, {b: a for a, b in self.edges.items()})


def canonical_isomorphic(g1: Graph, g2: Graph, rename: Rename) -> bool:
    """Is rename a bijective, endpoint-preserving map from g1 onto g2?"""
    vmap = {v: rename.vertex(v) for v in g1.vertices}
    emap = {e.id: rename.edge(e.id) for e in g1.edges}
    if len(set(vmap.values())) != len(vmap) or len(set(emap.values())) != len(emap):
        raise GraphError("rename is not injective")
    if set(vmap.values()) != g2.vertex_set or set(emap.values()) != g2.edge_ids:
        return False
    for e in g1.edges:
        image = g2.edge(emap[e.id])
        if image.src != vmap[e.src] or image.rng != vmap[e.rng]:
            return False
    return True


def apply_rename(g: Graph, rename: Rename, name: Optional[str] = None) -> Graph:
    return Graph(
        name or g.name,
        tuple(rename.vertex(v) for v in g.vertices),
        tuple(Edge(rename.edge(e.id), rename.vertex(e.src), rename.vertex(e.rng)) for e in g.edges),
    )
