"""Certified search for reduction pairs.

For a nonzero x there are paths mu, nu with s_mu* x s_nu nonzero and either

    r * p_v                                  (vertex form), or
    sum_{m <= i <= n} r_i s_alpha^i           (cycle form)

where alpha is a cycle and s_alpha^i means s_alpha*^|i| for i < 0. No bound on
|mu|, |nu| is known, so reduce() searches pairs in (|mu| + |nu|, mu, nu) order
up to a bound and reports EXHAUSTED (None) when nothing matches. Certificates
are checked by recomputation, so a returned certificate is always sound.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from config import settings
from services import lpa
from services.lpa import Element
from utils.errors import GraphError, ZeroElementError
from utils.graph import Graph, Path, enumerate_paths, is_cycle
from utils.rings import RingSpec

logger = logging.getLogger(__name__)

VERTEX = "vertex"
CYCLE = "cycle"


@dataclass(frozen=True)
class ReductionCertificate:
    mu: Path
    nu: Path
    kind: str
    coefficient: int = 0
    vertex: Optional[str] = None
    alpha: Optional[Path] = None
    coeffs: Tuple[Tuple[int, int], ...] = ()

    @property
    def powers(self) -> Dict[int, int]:
        return dict(self.coeffs)


def cycle_power(graph: Graph, ring: RingSpec, alpha: Path, i: int) -> Element:
    """s_alpha^i, with s_alpha^0 = p_{r(alpha)} and negative powers ghost."""
    if i == 0:
        return lpa.vertex(graph, ring, alpha.rng)
    p = Path(alpha.rng, alpha.src, alpha.edges * abs(i))
    return lpa.path_element(graph, ring, p) if i > 0 else lpa.ghost_element(graph, ring, p)


def certified_form(graph: Graph, ring: RingSpec, cert: ReductionCertificate) -> Element:
    if cert.kind == VERTEX:
        return lpa.scale(cert.coefficient, lpa.vertex(graph, ring, cert.vertex))
    total = lpa.zero(graph, ring)
    for i, c in cert.coeffs:
        total = total + lpa.scale(c, cycle_power(graph, ring, cert.alpha, i))
    return total


def compress(x: Element, mu: Path, nu: Path) -> Element:
    """s_mu* x s_nu."""
    g, ring = x.graph, x.ring
    return lpa.ghost_element(g, ring, mu) * x * lpa.path_element(g, ring, nu)


def _primitive_root(edges: Tuple[str, ...]) -> Tuple[str, ...]:
    n = len(edges)
    for d in range(1, n + 1):
        if n % d == 0 and edges[:d] * (n // d) == edges:
            return edges[:d]
    return edges


def match(y: Element) -> Optional[Tuple]:
    """('vertex', r, v) or ('cycle', alpha, {i: r_i}) when y has one of the two forms."""
    if y.is_zero():
        return None
    terms = list(y.items())
    if len(terms) == 1:
        (mu, nu), c = terms[0]
        if mu.is_vertex and nu.is_vertex:
            return (VERTEX, c, mu.rng)
    sides = [p for (mu, nu), _ in terms for p in (mu, nu) if not p.is_vertex]
    if not sides:
        return None
    g = y.graph
    shortest = min(sides, key=Path.sort_key)
    root = _primitive_root(shortest.edges)
    alpha = Path(shortest.rng, g.src(root[-1]), root)
    if not is_cycle(g, alpha):
        return None
    v = alpha.rng
    powers: Dict[int, int] = {}
    for (mu, nu), c in terms:
        if mu.is_vertex and nu.is_vertex:
            if mu.rng != v:
                return None
            i = 0
        elif nu.is_vertex or mu.is_vertex:
            p, sign = (mu, 1) if nu.is_vertex else (nu, -1)
            if p.rng != v or p.src != v or len(p) % len(root) or p.edges != root * (len(p) // len(root)):
                return None
            i = sign * (len(p) // len(root))
        else:
            return None
        powers[i] = c
    return (CYCLE, alpha, powers)


def _candidate_pairs(x: Element, max_len: int, skip_len: int = -1) -> Iterator[Tuple[Path, Path]]:
    """(mu, nu) pairs with |mu|, |nu| <= max_len, skipping those already covered by skip_len."""
    g = x.graph
    mu_ranges = {mu.rng for (mu, _), _ in x.items()}
    nu_ranges = {nu.rng for (_, nu), _ in x.items()}
    mus = list(enumerate_paths(g, max_len, ranges=mu_ranges))
    nus = list(enumerate_paths(g, max_len, ranges=nu_ranges))
    pairs = [
        (m, n) for m in mus for n in nus
        if not (len(m) <= skip_len and len(n) <= skip_len)
    ]
    pairs.sort(key=lambda mn: (len(mn[0]) + len(mn[1]), mn[0].sort_key(), mn[1].sort_key()))
    return iter(pairs)


def _certificate(mu: Path, nu: Path, found: Tuple) -> ReductionCertificate:
    if found[0] == VERTEX:
        return ReductionCertificate(mu, nu, VERTEX, coefficient=found[1], vertex=found[2])
    return ReductionCertificate(mu, nu, CYCLE, alpha=found[1], coeffs=tuple(sorted(found[2].items())))


def default_bound(x: Element) -> int:
    return max(len(mu) + len(nu) for (mu, nu), _ in x.items())


def reduce(x: Element, max_len: Optional[int] = None) -> Optional[ReductionCertificate]:
    """First (mu, nu) in search order giving the vertex or cycle form; None when the search is exhausted."""
    if x.is_zero():
        raise ZeroElementError("reduce needs a nonzero element")
    if max_len is None:
        bound = default_bound(x)
        bounds = [bound, bound + settings.get_reduction_escalation()]
    else:
        bounds = [max_len]
    covered = -1
    tried = 0
    for bound in bounds:
        for mu, nu in _candidate_pairs(x, bound, covered):
            tried += 1
            found = match(compress(x, mu, nu))
            if found is not None:
                logger.debug("reduction found after %d pairs at bound %d", tried, bound)
                return _certificate(mu, nu, found)
        covered = bound
    logger.warning("reduction search exhausted after %d pairs (bounds %s)", tried, bounds)
    return None


def verify_certificate(x: Element, cert: ReductionCertificate) -> bool:
    g, ring = x.graph, x.ring
    try:
        if cert.kind == VERTEX:
            if cert.vertex is None or ring.is_zero(cert.coefficient):
                return False
            g.require_vertex(cert.vertex)
        elif cert.kind == CYCLE:
            if cert.alpha is None or not is_cycle(g, cert.alpha):
                return False
            if all(ring.is_zero(c) for _, c in cert.coeffs):
                return False
        else:
            return False
        y = compress(x, cert.mu, cert.nu)
    except GraphError:
        return False
    return not y.is_zero() and y == certified_form(g, ring, cert)


def format_certificate(cert: ReductionCertificate, ring: RingSpec) -> str:
    head = f"mu={cert.mu} nu={cert.nu} kind={cert.kind}"
    if cert.kind == VERTEX:
        return f"{head} r={ring.signed(cert.coefficient)} v={cert.vertex}"
    coeffs = ",".join(f"{i}:{ring.signed(c)}" for i, c in cert.coeffs)
    return f"{head} alpha={cert.alpha} coeffs={coeffs}"


_FIELD_RE = re.compile(r"(\w+)=(\S+)")


def parse_certificate(graph: Graph, text: str) -> ReductionCertificate:
    fields: Dict[str, str] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        for key, value in _FIELD_RE.findall(line):
            fields[key] = value
    missing = [k for k in ("mu", "nu", "kind") if k not in fields]
    if missing:
        raise GraphError(f"certificate lacks {', '.join(missing)}")
    mu = graph.parse_path(fields["mu"])
    nu = graph.parse_path(fields["nu"])
    kind = fields["kind"]
    try:
        if kind == VERTEX:
            return ReductionCertificate(mu, nu, VERTEX, coefficient=int(fields["r"]), vertex=fields["v"])
        if kind == CYCLE:
            coeffs: List[Tuple[int, int]] = []
            for part in fields["coeffs"].split(","):
                i, c = part.split(":")
                coeffs.append((int(i), int(c)))
            alpha = graph.parse_path(fields["alpha"])
            return ReductionCertificate(mu, nu, CYCLE, alpha=alpha, coeffs=tuple(sorted(coeffs)))
    except (KeyError, ValueError) as e:
        raise GraphError(f"malformed {kind} certificate: {e}") from None
    raise GraphError(f"unknown certificate kind '{kind}'")
