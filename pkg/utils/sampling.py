"""Seeded random elements for the verification suites.

Every draw goes through one random.Random, so a (graph, seed) pair always
yields the same sequence of elements.
"""

from __future__ import annotations

import random
from typing import Dict, FrozenSet, List, Optional, Tuple

from config import settings
from services import lpa
from services.lpa import Element
from utils.graph import Graph, Path, enumerate_paths
from utils.rings import RingSpec

_RETRIES = 20


class MonomialSampler:
    """Random normal-form elements over one graph.

    mu_ranges / nu_ranges restrict r(mu) / r(nu), which is how the Morita
    suite draws from M, M* and MM*.
    """

    def __init__(
        self,
        graph: Graph,
        ring: RingSpec,
        seed: int = 0,
        max_terms: Optional[int] = None,
        max_path_len: Optional[int] = None,
    ) -> None:
        self.graph = graph
        self.ring = ring
        self.rng = random.Random(seed)
        self.max_terms = max_terms or settings.get_max_terms()
        self.max_path_len = settings.get_max_path_len() if max_path_len is None else max_path_len
        self._paths: List[Path] = list(enumerate_paths(graph, self.max_path_len))
        self._by_src: Dict[str, List[Path]] = {}
        for p in self._paths:
            self._by_src.setdefault(p.src, []).append(p)
        self._filtered: Dict[Tuple[str, Optional[FrozenSet[str]]], List[Path]] = {}

    def _pool(self, src: Optional[str], ranges: Optional[FrozenSet[str]]) -> List[Path]:
        key = (src or "", ranges)
        if key not in self._filtered:
            base = self._paths if src is None else self._by_src.get(src, [])
            self._filtered[key] = [p for p in base if ranges is None or p.rng in ranges]
        return self._filtered[key]

    def coefficient(self) -> int:
        bound = settings.SAMPLE_COEFF_BOUND
        c = 0
        while c == 0:
            c = self.rng.randint(-bound, bound)
        return c

    def monomial_key(
        self, mu_ranges: Optional[FrozenSet[str]] = None, nu_ranges: Optional[FrozenSet[str]] = None
    ) -> Optional[Tuple[Path, Path]]:
        mus = self._pool(None, mu_ranges)
        for _ in range(_RETRIES):
            if not mus:
                return None
            mu = self.rng.choice(mus)
            nus = self._pool(mu.src, nu_ranges)
            if nus:
                return mu, self.rng.choice(nus)
        return None

    def element(
        self,
        mu_ranges: Optional[FrozenSet[str]] = None,
        nu_ranges: Optional[FrozenSet[str]] = None,
        nonzero: bool = False,
    ) -> Element:
        for _ in range(_RETRIES):
            raw = []
            for _ in range(self.rng.randint(1, self.max_terms)):
                key = self.monomial_key(mu_ranges, nu_ranges)
                if key is not None:
                    raw.append((self.coefficient(), key[0], key[1]))
            x = lpa.normal_form(self.graph, self.ring, raw)
            if x or not nonzero:
                return x
        return x
