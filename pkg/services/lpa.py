"""Exact arithmetic in the Leavitt path algebra L_R(E) of a finite graph.

Elements are finite R-combinations of monomials s_mu s_nu* kept in a canonical
normal form.  For every non-singular vertex v one incoming edge gamma(v) (the
smallest id in r^{-1}(v)) is special, and the relation

    p_v = sum_{r(e)=v} s_e s_e*

is oriented as the rewrite rule

    mu' gamma (nu' gamma)*  ->  mu' nu'*  -  sum_{e in r^{-1}(v), e != gamma} (mu' e)(nu' e)*

A monomial has at most one redex (its last edges), every rewrite shortens the
term it applies to and the spawned terms are irreducible, so the normal form is
unique and equality of elements is equality of their term maps.  Rewriting never
changes r(mu), r(nu) or |mu| - |nu|.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from utils.checks import Report
from utils.errors import MismatchError, UnverifiedFamilyError
from utils.graph import Graph, Path, singular_vertices
from utils.rings import RingSpec

logger = logging.getLogger(__name__)

Key = Tuple[Path, Path]


def _term_order(item: Tuple[Key, int]) -> tuple:
    (mu, nu), _ = item
    return (mu.sort_key(), nu.sort_key())


class Element:
    """An immutable element of L_R(E) in normal form.

    Build through the module functions (vertex, edge, monomial, normal_form,
    ...) or the arithmetic operators; the constructor trusts its input.
    """

    __slots__ = ("graph", "ring", "_terms", "_hash")

    def __init__(self, graph: Graph, ring: RingSpec, terms: Mapping[Key, int]) -> None:
        self.graph = graph
        self.ring = ring
        self._terms: Tuple[Tuple[Key, int], ...] = tuple(sorted(terms.items(), key=_term_order))
        self._hash: Optional[int] = None

    @property
    def terms(self) -> Dict[Key, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Key, int]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (
            (self.graph is other.graph or self.graph == other.graph)
            and self.ring == other.ring
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.graph.name, self.ring, self._terms))
        return self._hash

    def __add__(self, other: "Element") -> "Element":
        return add(self, other)

    def __sub__(self, other: "Element") -> "Element":
        return add(self, scale(-1, other))

    def __neg__(self) -> "Element":
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        return NotImplemented

    def star(self) -> "Element":
        return involution(self)

    def __repr__(self) -> str:
        from services.expressions import format_element

        return f"Element[{self.graph.name}, {self.ring}]({format_element(self)})"


# construction ----------------------------------------------------------------

def zero(graph: Graph, ring: RingSpec) -> Element:
    return Element(graph, ring, {})


def _accumulate(out: Dict[Key, int], key: Key, c: int, ring: RingSpec) -> None:
    out[key] = ring.add(out.get(key, 0), c)


def _reduce_into(graph: Graph, ring: RingSpec, mu: Path, nu: Path, c: int, out: Dict[Key, int]) -> int:
    """Add the normal form of c * s_mu s_nu* to out; returns the number of rewrites."""
    if mu.src != nu.src:
        return 0
    steps = 0
    while mu.edges and nu.edges and mu.edges[-1] == nu.edges[-1]:
        gamma = mu.edges[-1]
        v = graph.rng(gamma)
        if graph.special_edge(v) != gamma:
            break
        mu = graph.drop_last(mu)
        nu = graph.drop_last(nu)
        neg = ring.neg(c)
        for e in graph.in_edges(v):
            if e != gamma:
                _accumulate(out, (graph.extend(mu, e), graph.extend(nu, e)), neg, ring)
        steps += 1
    _accumulate(out, (mu, nu), c, ring)
    return steps


def _finish(graph: Graph, ring: RingSpec, out: Dict[Key, int]) -> Element:
    return Element(graph, ring, {k: c for k, c in out.items() if not ring.is_zero(c)})


def normal_form(graph: Graph, ring: RingSpec, raw: Iterable[Tuple[int, Path, Path]]) -> Element:
    """Normal form of a formal combination of (coefficient, mu, nu) triples.

    Raises MismatchError when mu or nu is not a path of `graph`.
    """
    out: Dict[Key, int] = {}
    steps = 0
    for c, mu, nu in raw:
        for p in (mu, nu):
            if not graph.owns(p):
                raise MismatchError(f"path {p} is not a path of graph {graph.name}")
        c = ring.normalize(c)
        if c:
            steps += _reduce_into(graph, ring, mu, nu, c, out)
    if steps:
        logger.debug("normal_form applied %d rewrites", steps)
    return _finish(graph, ring, out)


def monomial(graph: Graph, ring: RingSpec, c: int, mu: Path, nu: Path) -> Element:
    """c * s_mu s_nu*; zero when s(mu) != s(nu)."""
    return normal_form(graph, ring, [(c, mu, nu)])


def vertex(graph: Graph, ring: RingSpec, v: str) -> Element:
    p = graph.vertex_path(v)
    return monomial(graph, ring, 1, p, p)


def path_element(graph: Graph, ring: RingSpec, path: Path) -> Element:
    """s_mu."""
    return monomial(graph, ring, 1, path, graph.vertex_path(path.src))


def ghost_element(graph: Graph, ring: RingSpec, path: Path) -> Element:
    """s_{mu*}."""
    return monomial(graph, ring, 1, graph.vertex_path(path.src), path)


def edge(graph: Graph, ring: RingSpec, e: str) -> Element:
    return path_element(graph, ring, graph.path([e]))


def ghost_edge(graph: Graph, ring: RingSpec, e: str) -> Element:
    return ghost_element(graph, ring, graph.path([e]))


def unit(graph: Graph, ring: RingSpec) -> Element:
    """1 = sum of all vertex idempotents (finite graphs are unital)."""
    return normal_form(graph, ring, [(1, p, p) for p in (graph.vertex_path(v) for v in graph.vertices)])


# arithmetic ------------------------------------------------------------------

def _check_same(a: Element, b: Element) -> None:
    if not (a.graph is b.graph or a.graph == b.graph):
        raise MismatchError(f"elements over different graphs: {a.graph.name} vs {b.graph.name}")
    if a.ring != b.ring:
        raise MismatchError(f"elements over different rings: {a.ring} vs {b.ring}")


def add(a: Element, b: Element) -> Element:
    _check_same(a, b)
    out = dict(a.items())
    for k, c in b.items():
        _accumulate(out, k, c, a.ring)
    return _finish(a.graph, a.ring, out)


def scale(c: int, a: Element) -> Element:
    ring = a.ring
    c = ring.normalize(c)
    if not c:
        return zero(a.graph, ring)
    return _finish(a.graph, ring, {k: ring.mul(c, x) for k, x in a.items()})


def _product_key(graph: Graph, left: Key, right: Key) -> Optional[Key]:
    """(s_mu s_nu*)(s_alpha s_beta*) as a single raw monomial, or None for zero."""
    mu, nu = left
    alpha, beta = right
    if nu.rng != alpha.rng:
        return None
    n, a = nu.edges, alpha.edges
    if a[: len(n)] == n:
        # alpha = nu delta
        delta = a[len(n):]
        if not delta:
            return (mu, beta)
        return (_append(graph, mu, delta), beta)
    if n[: len(a)] == a:
        # nu = alpha delta
        delta = n[len(a):]
        return (mu, _append(graph, beta, delta))
    return None


def _append(graph: Graph, p: Path, delta: Tuple[str, ...]) -> Path:
    return Path(p.rng, graph.src(delta[-1]), p.edges + delta)


def multiply(a: Element, b: Element) -> Element:
    _check_same(a, b)
    graph, ring = a.graph, a.ring
    out: Dict[Key, int] = {}
    for lk, lc in a.items():
        for rk, rc in b.items():
            key = _product_key(graph, lk, rk)
            if key is None:
                continue
            c = ring.mul(lc, rc)
            if c:
                _reduce_into(graph, ring, key[0], key[1], c, out)
    return _finish(graph, ring, out)


def involution(a: Element) -> Element:
    return normal_form(a.graph, a.ring, [(c, nu, mu) for (mu, nu), c in a.items()])


def degree(key: Key) -> int:
    mu, nu = key
    return len(mu) - len(nu)


def degrees(a: Element) -> Tuple[int, ...]:
    return tuple(sorted({degree(k) for k, _ in a.items()}))


def grade_component(a: Element, n: int) -> Element:
    return Element(a.graph, a.ring, {k: c for k, c in a.items() if degree(k) == n})


# Leavitt families and homomorphisms --------------------------------------------

@dataclass(frozen=True)
class FamilyAssignment:
    """Images P_v, S_e, S_{e*} of the generators of L_R(source) inside L_R(target)."""

    source: Graph
    target: Graph
    ring: RingSpec
    vertex_images: Mapping[str, Element] = field(default_factory=dict)
    edge_images: Mapping[str, Element] = field(default_factory=dict)
    ghost_images: Mapping[str, Element] = field(default_factory=dict)
    verified: bool = False

    def vertex(self, v: str) -> Element:
        return self.vertex_images[v]

    def missing(self) -> list:
        out = [f"vertex {v}" for v in self.source.vertices if v not in self.vertex_images]
        for e in self.source.edges:
            if e.id not in self.edge_images:
                out.append(f"edge {e.id}")
            if e.id not in self.ghost_images:
                out.append(f"ghost {e.id}")
        return out


def universal_family(graph: Graph, ring: RingSpec) -> FamilyAssignment:
    return FamilyAssignment(
        graph,
        graph,
        ring,
        {v: vertex(graph, ring, v) for v in graph.vertices},
        {e.id: edge(graph, ring, e.id) for e in graph.edges},
        {e.id: ghost_edge(graph, ring, e.id) for e in graph.edges},
        verified=True,
    )


def check_family(fam: FamilyAssignment) -> Report:
    """Verify orthogonal idempotents, (L1), (L2) and (L3) by normal-form equality."""
    from services.expressions import format_element

    report = Report(f"Leavitt {fam.source.name}-family in L({fam.target.name})")
    missing = fam.missing()
    if not report.add("total", not missing, ", ".join(missing[:5]) or None):
        return report
    src = fam.source
    P = fam.vertex_images
    S = fam.edge_images
    Sx = fam.ghost_images

    bad = None
    for v in src.vertices:
        if P[v] * P[v] != P[v]:
            bad = f"P[{v}]^2-P[{v}]={format_element(P[v] * P[v] - P[v])}"
            break
        for w in src.vertices:
            if w > v and not (P[v] * P[w]).is_zero():
                bad = f"P[{v}]*P[{w}]={format_element(P[v] * P[w])}"
                break
        if bad:
            break
    report.add("orthogonal-idempotents", bad is None, bad)

    bad = None
    for e in src.edges:
        s, r = e.src, e.rng
        pairs = [
            (f"P[{r}]*S[{e.id}]-S[{e.id}]", P[r] * S[e.id] - S[e.id]),
            (f"S[{e.id}]*P[{s}]-S[{e.id}]", S[e.id] * P[s] - S[e.id]),
            (f"P[{s}]*Sx[{e.id}]-Sx[{e.id}]", P[s] * Sx[e.id] - Sx[e.id]),
            (f"Sx[{e.id}]*P[{r}]-Sx[{e.id}]", Sx[e.id] * P[r] - Sx[e.id]),
        ]
        for label, diff in pairs:
            if diff:
                bad = f"{label}={format_element(diff)}"
                break
        if bad:
            break
    report.add("L1", bad is None, bad)

    bad = None
    for e in src.edges:
        for f in src.edges:
            lhs = Sx[e.id] * S[f.id]
            rhs = P[e.src] if e.id == f.id else zero(fam.target, fam.ring)
            if lhs != rhs:
                bad = f"Sx[{e.id}]*S[{f.id}]-expected={format_element(lhs - rhs)}"
                break
        if bad:
            break
    report.add("L2", bad is None, bad)

    bad = None
    sources = singular_vertices(src)
    for v in src.vertices:
        if v in sources:
            continue
        total = zero(fam.target, fam.ring)
        for e in src.in_edges(v):
            total = total + S[e] * Sx[e]
        if total != P[v]:
            bad = f"P[{v}]-sum={format_element(P[v] - total)}"
            break
    report.add("L3", bad is None, bad)
    return report


def verified_family(fam: FamilyAssignment) -> Tuple[FamilyAssignment, Report]:
    report = check_family(fam)
    return replace(fam, verified=report.ok), report


def eval_hom(fam: FamilyAssignment, x: Element, trusted: bool = False) -> Element:
    """pi(x) for the homomorphism L_R(source) -> L_R(target) induced by fam."""
    if not (fam.verified or trusted):
        raise UnverifiedFamilyError(
            f"family {fam.source.name} -> {fam.target.name} has not passed check_family"
        )
    if x.graph != fam.source:
        raise MismatchError(f"element lives over {x.graph.name}, family starts at {fam.source.name}")
    tgt = fam.target
    result = zero(tgt, fam.ring)
    cache: Dict[Tuple[str, Path], Element] = {}

    def forward(mu: Path) -> Element:
        key = ("s", mu)
        if key not in cache:
            if mu.is_vertex:
                cache[key] = fam.vertex_images[mu.rng]
            else:
                img = fam.edge_images[mu.edges[0]]
                for e in mu.edges[1:]:
                    img = img * fam.edge_images[e]
                cache[key] = img
        return cache[key]

    def backward(nu: Path) -> Element:
        key = ("x", nu)
        if key not in cache:
            img = fam.ghost_images[nu.edges[-1]]
            for e in reversed(nu.edges[:-1]):
                img = img * fam.ghost_images[e]
            cache[key] = img
        return cache[key]

    for (mu, nu), c in x.items():
        img = forward(mu)
        if not nu.is_vertex:
            img = img * backward(nu)
        result = result + scale(c, img)
    return result
