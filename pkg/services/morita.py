"""Membership tests and the surjective Morita context for a vertex subset V.

With V fixed,

    M   = span{ s_mu s_nu* : r(mu) in V }        (a right ideal, p_V L)
    M*  = span{ s_mu s_nu* : r(nu) in V }        (a left ideal,  L p_V)
    MM* = span{ s_mu s_nu* : r(mu), r(nu) in V }
    M*M = the ideal generated by { p_v : v in V }

None of these is materialized. M, M* and MM* are read off the ranges of the
normal-form terms (rewriting never changes r(mu) or r(nu)); M*M membership is
decided by mapping onto L(E/H) with H the saturated hereditary closure of V.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Optional

from config import settings
from services import lpa
from services.expressions import format_element
from services.lpa import Element, FamilyAssignment
from utils.checks import Report
from utils.errors import LpaError, MismatchError
from utils.graph import Graph, enumerate_paths, is_full, quotient_graph, saturated_hereditary_closure
from utils.rings import INTEGERS, RingSpec
from utils.sampling import MonomialSampler

logger = logging.getLogger(__name__)

KINDS = ("M", "Mstar", "MMstar")


@dataclass(frozen=True)
class MoritaContextSpec:
    graph: Graph
    V: FrozenSet[str]
    ring: RingSpec = INTEGERS

    def __post_init__(self) -> None:
        object.__setattr__(self, "V", self.graph.require_vertices(self.V))

    @cached_property
    def closure(self) -> FrozenSet[str]:
        return saturated_hereditary_closure(self.graph, self.V)

    @cached_property
    def quotient_family(self) -> FamilyAssignment:
        """L(E) -> L(E/H): generators meeting H go to zero, the rest to themselves."""
        g, ring, H = self.graph, self.ring, self.closure
        quot = quotient_graph(g, H)
        zero = lpa.zero(quot, ring)
        fam = FamilyAssignment(
            g,
            quot,
            ring,
            {v: zero if v in H else lpa.vertex(quot, ring, v) for v in g.vertices},
            {e.id: zero if e.src in H else lpa.edge(quot, ring, e.id) for e in g.edges},
            {e.id: zero if e.src in H else lpa.ghost_edge(quot, ring, e.id) for e in g.edges},
        )
        fam, report = lpa.verified_family(fam)
        if not report.ok:
            raise LpaError(f"quotient map onto {quot.name} is not a Leavitt family:\n{report.to_text()}")
        return fam


def _check_graph(spec: MoritaContextSpec, x: Element) -> None:
    if x.graph != spec.graph:
        raise MismatchError(f"element over {x.graph.name}, context over {spec.graph.name}")
    if x.ring != spec.ring:
        raise MismatchError(f"element over {x.ring}, context over {spec.ring}")


def in_M(spec: MoritaContextSpec, x: Element) -> bool:
    _check_graph(spec, x)
    return all(mu.rng in spec.V for (mu, _), _c in x.items())


def in_Mstar(spec: MoritaContextSpec, x: Element) -> bool:
    _check_graph(spec, x)
    return all(nu.rng in spec.V for (_, nu), _c in x.items())


def in_MMstar(spec: MoritaContextSpec, x: Element) -> bool:
    _check_graph(spec, x)
    return all(mu.rng in spec.V and nu.rng in spec.V for (mu, nu), _c in x.items())


def in_MstarM(spec: MoritaContextSpec, x: Element) -> bool:
    _check_graph(spec, x)
    if spec.closure == spec.graph.vertex_set:
        return True
    return lpa.eval_hom(spec.quotient_family, x).is_zero()


def generators(spec: MoritaContextSpec, kind: str, max_len: int) -> Iterator[Element]:
    """Defining monomials s_mu s_nu* of M, M* or MM* with |mu|, |nu| <= max_len."""
    if kind not in KINDS:
        raise ValueError(f"unknown generator kind '{kind}' (expected one of {', '.join(KINDS)})")
    g = spec.graph
    mu_ranges = spec.V if kind in ("M", "MMstar") else None
    nu_ranges = spec.V if kind in ("Mstar", "MMstar") else None
    nus_by_src: Dict[str, List] = {}
    for nu in enumerate_paths(g, max_len, ranges=nu_ranges):
        nus_by_src.setdefault(nu.src, []).append(nu)
    for mu in enumerate_paths(g, max_len, ranges=mu_ranges):
        for nu in nus_by_src.get(mu.src, ()):
            yield lpa.monomial(g, spec.ring, 1, mu, nu)


def verify_morita_context(
    spec: MoritaContextSpec,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    generator_len: int = 2,
) -> Report:
    """Sampled checks that (MM*, M*M, M, M*) with multiplication is a surjective Morita context."""
    samples = settings.get_default_samples() if samples is None else samples
    seed = settings.get_default_seed() if seed is None else seed
    g, V = spec.graph, spec.V
    report = Report(f"Morita context for V={{{','.join(sorted(V))}}} in {g.name}")
    full = is_full(g, V)
    report.header.append(f"# ring={spec.ring} samples={samples} seed={seed} full={str(full).lower()}")
    sampler = MonomialSampler(g, spec.ring, seed)

    def draw_M() -> Element:
        return sampler.element(mu_ranges=V)

    def draw_Mstar() -> Element:
        return sampler.element(nu_ranges=V)

    def draw_MMstar() -> Element:
        return sampler.element(mu_ranges=V, nu_ranges=V)

    def draw_any() -> Element:
        return sampler.element()

    def draw_MstarM() -> Element:
        return draw_Mstar() * draw_M()

    fails: Dict[str, str] = {}

    def record(name: str, ok: bool, witness: str) -> None:
        if not ok and name not in fails:
            fails[name] = witness

    # defining monomials
    gens = 0
    for y in generators(spec, "MMstar", generator_len):
        gens += 1
        record("MMstar-generators", in_MMstar(spec, y) and in_MstarM(spec, y), format_element(y))

    for _ in range(samples):
        x, y = draw_MMstar(), draw_MMstar()
        record("MMstar-product-closed", in_MMstar(spec, x * y), f"({format_element(x)})*({format_element(y)})")
        record("MMstar-in-MstarM", in_MstarM(spec, x), format_element(x))

        z = draw_MstarM()
        a, b = draw_any(), draw_any()
        record("MstarM-pairing", in_MstarM(spec, z), format_element(z))
        record(
            "ideal-absorption",
            in_MstarM(spec, a * z * b) and in_MstarM(spec, a * z + z * b),
            f"a={format_element(a)} x={format_element(z)} b={format_element(b)}",
        )

        m, m2 = draw_M(), draw_M()
        n, n2 = draw_Mstar(), draw_Mstar()
        record("MMstar-pairing", in_MMstar(spec, m * n), f"({format_element(m)})*({format_element(n)})")
        record(
            "mixed-associativity-M",
            (m * n) * m2 == m * (n * m2),
            f"m={format_element(m)} n={format_element(n)} m'={format_element(m2)}",
        )
        record(
            "mixed-associativity-Mstar",
            (n * m) * n2 == n * (m * n2),
            f"n={format_element(n)} m={format_element(m)} n'={format_element(n2)}",
        )
        record("bimodule-MMstar-M", in_M(spec, x * m), f"({format_element(x)})*({format_element(m)})")
        record("bimodule-M-MstarM", in_M(spec, m * z), f"({format_element(m)})*({format_element(z)})")
        record("bimodule-MstarM-Mstar", in_Mstar(spec, z * n), f"({format_element(z)})*({format_element(n)})")
        record("bimodule-Mstar-MMstar", in_Mstar(spec, n * x), f"({format_element(n)})*({format_element(x)})")

        key = sampler.monomial_key(mu_ranges=V, nu_ranges=V)
        if key is not None:
            mono = lpa.monomial(g, spec.ring, 1, *key)
            p = lpa.vertex(g, spec.ring, key[0].rng)
            record(
                "MMstar-factorization",
                in_Mstar(spec, p) and in_M(spec, mono) and p * mono == mono,
                format_element(mono),
            )

    routes = all(in_MstarM(spec, lpa.vertex(g, spec.ring, v)) for v in g.vertices)
    record("fullness-routes-agree", routes == full, f"is_full={full} vertex-route={routes}")

    names = [
        "MMstar-generators",
        "MMstar-product-closed",
        "MMstar-in-MstarM",
        "MstarM-pairing",
        "ideal-absorption",
        "MMstar-pairing",
        "mixed-associativity-M",
        "mixed-associativity-Mstar",
        "bimodule-MMstar-M",
        "bimodule-M-MstarM",
        "bimodule-MstarM-Mstar",
        "bimodule-Mstar-MMstar",
        "MMstar-factorization",
        "fullness-routes-agree",
    ]
    for name in names:
        note = f"{gens} generators" if name == "MMstar-generators" else None
        report.add(name, name not in fails, fails.get(name), note)
    if not report.ok:
        logger.warning("Morita context checks failed for %s: %s", g.name, [c.name for c in report.failures])
    return report
