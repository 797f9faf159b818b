"""Contraction of a graph E onto a vertex subset G0.

T is the subgraph on T0 = E0 minus G0. For v in E0, B_v is the set of paths
beta of length >= 1 with r(beta) = v, s(beta) in G0 and every interior source
s(beta_i), 1 <= i < |beta|, in T0. The contracted graph G has vertex set G0
and one edge c_<beta> : s(beta) -> r(beta) for every beta in the union of the
B_w, w in G0.

    Q_v = p_v,   T_{c_beta} = s_beta,   T_{c_beta*} = s_beta*

is a Leavitt G-family in L(E); the homomorphism phi it induces maps L(G)
isomorphically onto MM* for V = G0. Only finite E is accepted, so T being
acyclic makes every B_v finite.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from config import settings
from services import lpa
from services.expressions import format_element
from services.lpa import Element, FamilyAssignment
from services.morita import MoritaContextSpec, in_MMstar, in_MstarM
from utils.checks import Report
from utils.errors import FactorizationError, GraphError, MismatchError, ValidationError
from utils.graph import (
    Graph,
    Path,
    enumerate_paths,
    has_heads,
    induced_subgraph,
    is_acyclic,
    is_full,
    singular_vertices,
)
from utils.graph_format import serialize_graph
from utils.rings import INTEGERS, RingSpec
from utils.sampling import MonomialSampler

logger = logging.getLogger(__name__)

EDGE_PREFIX = "c_"


def contracted_edge_name(edges: Iterable[str]) -> str:
    return EDGE_PREFIX + ".".join(edges)


def validate(E: Graph, G0: Iterable[str]) -> Report:
    G0 = E.require_vertices(G0)
    T0 = E.vertex_set - G0
    report = Report(f"contraction hypotheses for G0={{{','.join(sorted(G0))}}} in {E.name}")
    outside = sorted(singular_vertices(E) - G0)
    report.add("singular-in-G0", not outside, outside[0] if outside else None)
    acyclic, cycle = is_acyclic(E, T0)
    report.add("T-acyclic", acyclic, None if acyclic else str(cycle))
    heads = has_heads(E)
    report.add("no-heads", not heads, note=None if heads else "finite graph: an infinite path repeats a vertex")
    vacuous = "vacuous: E is finite and T acyclic, so no infinite path stays in T"
    for name in ("T1", "T2", "T3", "T4"):
        report.add(name, acyclic, None if acyclic else str(cycle), note=vacuous if acyclic else None)
    return report


def _require_valid(E: Graph, G0: FrozenSet[str]) -> None:
    report = validate(E, G0)
    if not report.ok:
        raise ValidationError(f"contraction hypotheses fail for {E.name}:\n{report.to_text()}", report)


def _b_paths(E: Graph, G0: FrozenSet[str], v: str) -> Tuple[Path, ...]:
    """B_v, assuming T is acyclic."""
    out: List[Path] = []
    stack = [E.vertex_path(v)]
    while stack:
        p = stack.pop()
        for e in E.in_edges(p.src):
            q = E.extend(p, e)
            if q.src in G0:
                out.append(q)
            else:
                stack.append(q)
    return tuple(sorted(out, key=Path.sort_key))


def b_set(E: Graph, G0: Iterable[str], v: str) -> Tuple[Path, ...]:
    G0 = E.require_vertices(G0)
    E.require_vertex(v)
    _require_valid(E, G0)
    return _b_paths(E, G0, v)


@dataclass(frozen=True)
class ContractionResult:
    E: Graph
    G0: FrozenSet[str]
    T: Graph
    G: Graph
    witness: Mapping[str, Path]
    family: FamilyAssignment
    b_sets: Mapping[str, Tuple[Path, ...]] = field(default_factory=dict)

    @property
    def ring(self) -> RingSpec:
        return self.family.ring

    @property
    def T0(self) -> FrozenSet[str]:
        return self.T.vertex_set

    def edge_for(self, edges: Tuple[str, ...]) -> Optional[str]:
        name = contracted_edge_name(edges)
        return name if name in self.witness and self.witness[name].edges == edges else None


def contract(E: Graph, G0: Iterable[str], ring: RingSpec = INTEGERS) -> ContractionResult:
    G0 = E.require_vertices(G0)
    _require_valid(E, G0)
    T = induced_subgraph(E, E.vertex_set - G0, name=f"{E.name}_T")
    b_sets = {v: _b_paths(E, G0, v) for v in E.vertices}
    witness: Dict[str, Path] = {}
    for w in sorted(G0):
        for beta in b_sets[w]:
            witness[contracted_edge_name(beta.edges)] = beta
    G = Graph.build(
        f"{E.name}_G",
        sorted(G0),
        [(name, beta.src, beta.rng) for name, beta in witness.items()],
    )
    fam = FamilyAssignment(
        G,
        E,
        ring,
        {v: lpa.vertex(E, ring, v) for v in G.vertices},
        {name: lpa.path_element(E, ring, beta) for name, beta in witness.items()},
        {name: lpa.ghost_element(E, ring, beta) for name, beta in witness.items()},
    )
    logger.info("contracted %s onto %d vertices: %d edges in G", E.name, len(G0), len(witness))
    return ContractionResult(E, G0, T, G, witness, fam, b_sets)


def family_check(res: ContractionResult) -> Report:
    report = lpa.check_family(res.family)
    report.title = f"Leavitt {res.G.name}-family Q_v=p_v, T_c=s_beta in L({res.E.name})"
    return report


def certify(res: ContractionResult) -> Tuple[ContractionResult, Report]:
    """Run family_check and mark the family verified when it passes."""
    fam, report = lpa.verified_family(res.family)
    report.title = f"Leavitt {res.G.name}-family Q_v=p_v, T_c=s_beta in L({res.E.name})"
    return replace(res, family=fam), report


def _certified(res: ContractionResult) -> ContractionResult:
    if res.family.verified:
        return res
    res, report = certify(res)
    if not report.ok:
        raise ValidationError(f"contraction family of {res.G.name} fails:\n{report.to_text()}", report)
    return res


def _b_identity(E: Graph, ring: RingSpec, v: str, paths: Tuple[Path, ...]) -> Element:
    """p_v - sum over beta in paths of s_beta s_beta*."""
    raw = [(1, E.vertex_path(v), E.vertex_path(v))]
    raw += [(-1, beta, beta) for beta in paths]
    return lpa.normal_form(E, ring, raw)


def b_identity_check(E: Graph, G0: Iterable[str], v: str, ring: RingSpec = INTEGERS) -> bool:
    paths = b_set(E, G0, v)
    if not paths:
        raise GraphError(f"B_{v} is empty in {E.name}")
    return _b_identity(E, ring, v, paths).is_zero()


def cover_check(res: ContractionResult) -> Report:
    """p_u = sum_{beta in B_u} s_beta s_beta* for every u in T0, plus both fullness routes."""
    report = Report(f"cover of T0 by B-paths in {res.E.name}")
    bad: Optional[str] = None
    for u in sorted(res.T0):
        paths = res.b_sets[u]
        if not paths:
            bad = f"B_{u} empty"
            break
        diff = _b_identity(res.E, res.ring, u, paths)
        if diff:
            bad = f"p({u})-sum={format_element(diff)}"
            break
    report.add("b-identity", bad is None, bad, note=f"{len(res.T0)} vertices in T0")
    full = is_full(res.E, res.G0)
    report.add("validate-implies-full", full, None if full else ",".join(sorted(res.G0)))
    spec = MoritaContextSpec(res.E, res.G0, res.ring)
    missing = [v for v in res.E.vertices if not in_MstarM(spec, lpa.vertex(res.E, res.ring, v))]
    report.add("fullness-routes-agree", (not missing) == full, missing[0] if missing else None)
    return report


def phi(res: ContractionResult, x: Element) -> Element:
    return lpa.eval_hom(res.family, x)


def _factor(res: ContractionResult, p: Path, where: str) -> Path:
    """Rewrite an E-path with both ends in G0 as the G-path of its B-segments."""
    if p.is_vertex:
        return res.G.vertex_path(p.rng)
    segments: List[str] = []
    current: List[str] = []
    E = res.E
    for e in p.edges:
        current.append(e)
        if E.src(e) in res.G0:
            name = res.edge_for(tuple(current))
            if name is None:
                raise FactorizationError(f"segment {'.'.join(current)} of {p} ({where}) is not a B-path")
            segments.append(name)
            current = []
    if current:
        raise FactorizationError(f"path {p} ({where}) ends at {p.src} outside G0")
    return res.G.path(segments)


def preimage(res: ContractionResult, y: Element) -> Element:
    """x over G with phi(x) = y, for y in MM* (V = G0)."""
    if y.graph != res.E or y.ring != res.ring:
        raise MismatchError(f"element over {y.graph.name}/{y.ring}, contraction of {res.E.name}/{res.ring}")
    spec = MoritaContextSpec(res.E, res.G0, res.ring)
    if not in_MMstar(spec, y):
        raise ValidationError(f"{format_element(y)} is not in MM* for G0={{{','.join(sorted(res.G0))}}}")
    raw = []
    for (mu, nu), c in y.items():
        j = mu.src
        if j in res.G0:
            pieces = [(mu, nu)]
        else:
            betas = res.b_sets.get(j, ())
            if not betas:
                raise FactorizationError(f"junction {j} of s({mu})*sx({nu}) has empty B-set")
            pieces = [(res.E.concat(mu, b), res.E.concat(nu, b)) for b in betas]
        for m, n in pieces:
            raw.append((c, _factor(res, m, f"in term {mu}/{nu}"), _factor(res, n, f"in term {mu}/{nu}")))
    return lpa.normal_form(res.G, res.ring, raw)


def injectivity_check(res: ContractionResult, samples: Optional[int] = None, seed: Optional[int] = None) -> Report:
    samples = settings.get_default_samples() if samples is None else samples
    seed = settings.get_default_seed() if seed is None else seed
    res = _certified(res)
    report = Report(f"injectivity of phi: L({res.G.name}) -> L({res.E.name})")
    bad = None
    for v, img in res.family.vertex_images.items():
        terms = list(img.items())
        if not (len(terms) == 1 and terms[0][1] == 1 and terms[0][0][0].is_vertex and terms[0][0][1].is_vertex):
            bad = f"phi(p({v}))={format_element(img)}"
            break
    report.add("vertex-images", bad is None, bad)
    bad = None
    for e, img in res.family.edge_images.items():
        terms = list(img.items())
        if not (len(terms) == 1 and terms[0][1] == 1 and len(terms[0][0][0]) >= 1 and terms[0][0][1].is_vertex):
            bad = f"phi(s({e}))={format_element(img)}"
            break
    report.add("edge-images", bad is None, bad)
    sampler = MonomialSampler(res.G, res.ring, seed)
    bad = None
    tried = 0
    for _ in range(samples):
        x = sampler.element(nonzero=True)
        if not x:
            continue
        tried += 1
        if phi(res, x).is_zero():
            bad = format_element(x)
            break
    report.add("spot-check", bad is None, bad, note=f"{tried} nonzero samples")
    return report


def verify_contraction(
    res: ContractionResult,
    max_len: Optional[int] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> Report:
    """Family check, phi properties, preimage sweep, injectivity and fullness in one report."""
    max_len = settings.PREIMAGE_SWEEP_MAX_LEN if max_len is None else max_len
    samples = settings.get_default_samples() if samples is None else samples
    seed = settings.get_default_seed() if seed is None else seed
    E, G0 = res.E, res.G0
    report = Report(f"contraction of {E.name} onto G0={{{','.join(sorted(G0))}}}")
    report.header.append(f"# ring={res.ring} maxlen={max_len} samples={samples} seed={seed}")
    report.extend(validate(E, G0))
    res, fam_report = certify(res)
    report.extend(fam_report)
    if not fam_report.ok:
        return report
    report.extend(cover_check(res))

    spec = MoritaContextSpec(E, G0, res.ring)
    sampler = MonomialSampler(res.G, res.ring, seed)
    hom_bad = star_bad = range_bad = None
    for _ in range(samples):
        x, y = sampler.element(), sampler.element()
        px, py = phi(res, x), phi(res, y)
        if hom_bad is None and (phi(res, x + y) != px + py or phi(res, x * y) != px * py):
            hom_bad = f"x={format_element(x)} y={format_element(y)}"
        if star_bad is None and phi(res, x.star()) != px.star():
            star_bad = format_element(x)
        if range_bad is None and not in_MMstar(spec, px):
            range_bad = format_element(x)
    report.add("phi-homomorphism", hom_bad is None, hom_bad, note=f"{samples} pairs")
    report.add("phi-involution", star_bad is None, star_bad)
    report.add("phi-range-in-MMstar", range_bad is None, range_bad)

    bad = None
    count = 0
    nus_by_src: Dict[str, List[Path]] = {}
    for nu in enumerate_paths(E, max_len, ranges=G0):
        nus_by_src.setdefault(nu.src, []).append(nu)
    for mu in enumerate_paths(E, max_len, ranges=G0):
        for nu in nus_by_src.get(mu.src, ()):
            y = lpa.monomial(E, res.ring, 1, mu, nu)
            count += 1
            try:
                back = phi(res, preimage(res, y))
            except FactorizationError as e:
                bad = f"{format_element(y)} ({e})"
                break
            if back != y:
                bad = format_element(y)
                break
        if bad:
            break
    report.add("preimage-sweep", bad is None, bad, note=f"{count} monomials")
    report.extend(injectivity_check(res, samples, seed))
    if not report.ok:
        logger.warning("contraction checks failed for %s: %s", E.name, [c.name for c in report.failures])
    return report


def serialize_contracted(G: Graph, witness: Mapping[str, Path], source_name: str, G0: Iterable[str]) -> str:
    header = [f"contracted from {source_name} onto g0: {','.join(sorted(G0))}"]
    text = serialize_graph(G, comments=header)
    lines = [f"witness {name} = {'.'.join(witness[name].edges)}" for name in sorted(witness)]
    return text + ("\n".join(lines) + "\n" if lines else "")


def serialize_contraction(res: ContractionResult) -> str:
    return serialize_contracted(res.G, res.witness, res.E.name, res.G0)
