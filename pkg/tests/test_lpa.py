from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services import lpa
from services.moves import fixture
from tests.strategies import (
    LAW_GRAPHS,
    LOOP,
    RINGS,
    TWO_CYCLE,
    TWO_EDGES,
    Z4,
    elements,
    graph_ring_elements,
    raw_terms,
)
from utils.errors import MismatchError, UnverifiedFamilyError
from utils.graph import singular_vertices
from utils.rings import INTEGERS
from utils.sampling import MonomialSampler

RELATION_GRAPHS = LAW_GRAPHS + (fixture("EX51", 3).E, fixture("EX52", 4).E)


def _p(g, v, ring=INTEGERS):
    return lpa.vertex(g, ring, v)


def _s(g, e, ring=INTEGERS):
    return lpa.edge(g, ring, e)


def _sx(g, e, ring=INTEGERS):
    return lpa.ghost_edge(g, ring, e)


def _swap_family(ring):
    """TWO_EDGES onto itself, exchanging the parallel edges."""
    fam = lpa.FamilyAssignment(
        TWO_EDGES,
        TWO_EDGES,
        ring,
        {v: _p(TWO_EDGES, v, ring) for v in TWO_EDGES.vertices},
        {"e": _s(TWO_EDGES, "f", ring), "f": _s(TWO_EDGES, "e", ring)},
        {"e": _sx(TWO_EDGES, "f", ring), "f": _sx(TWO_EDGES, "e", ring)},
    )
    return lpa.verified_family(fam)[0]


def _sign_family(ring):
    """LOOP onto itself with s_e -> -s_e."""
    fam = lpa.FamilyAssignment(
        LOOP,
        LOOP,
        ring,
        {"v": _p(LOOP, "v", ring)},
        {"e": -_s(LOOP, "e", ring)},
        {"e": -_sx(LOOP, "e", ring)},
    )
    return lpa.verified_family(fam)[0]


@st.composite
def family_pairs(draw):
    make = draw(st.sampled_from((_swap_family, _sign_family)))
    fam = make(draw(st.sampled_from(RINGS)))
    return fam, draw(elements(fam.source, fam.ring)), draw(elements(fam.source, fam.ring))


class TestNormalForm:
    def test_special_edge_rewrite(self):
        x = _s(TWO_EDGES, "e") * _sx(TWO_EDGES, "e")
        assert x == _p(TWO_EDGES, "v") - _s(TWO_EDGES, "f") * _sx(TWO_EDGES, "f")
        assert [(str(mu), str(nu)) for (mu, nu), _ in x.items()] == [("v", "v"), ("f", "f")]

    def test_loop_is_unitary(self):
        e, ex = _s(LOOP, "e"), _sx(LOOP, "e")
        assert e * ex == _p(LOOP, "v")
        assert ex * e == _p(LOOP, "v")

    def test_mismatched_sources_vanish(self):
        mu = TWO_EDGES.path(["e"])
        assert lpa.monomial(TWO_EDGES, INTEGERS, 1, mu, TWO_EDGES.vertex_path("v")).is_zero()

    def test_non_composable_product_is_zero(self):
        assert (_s(TWO_EDGES, "e") * _s(TWO_EDGES, "f")).is_zero()
        assert (_sx(TWO_EDGES, "e") * _s(TWO_EDGES, "f")).is_zero()

    def test_coefficients_reduce_mod_n(self):
        x = lpa.scale(4, _s(TWO_EDGES, "e", Z4))
        assert x.is_zero()
        assert 3 * _p(LOOP, "v", Z4) == -_p(LOOP, "v", Z4)

    def test_unit(self):
        one = lpa.unit(TWO_CYCLE, INTEGERS)
        x = _s(TWO_CYCLE, "e") + _sx(TWO_CYCLE, "f")
        assert one * x == x == x * one

    def test_mixing_graphs_raises(self):
        with pytest.raises(MismatchError):
            _p(LOOP, "v") + _p(TWO_EDGES, "v")
        with pytest.raises(MismatchError):
            _p(LOOP, "v") * _p(LOOP, "v", Z4)

    @settings(deadline=None, max_examples=80)
    @given(graph_ring_elements(count=2))
    def test_order_independent_and_idempotent(self, args):
        g, ring, x, y = args
        raw = [(c, mu, nu) for (mu, nu), c in list(x.items()) + list(y.items())]
        assert lpa.normal_form(g, ring, raw) == x + y
        assert lpa.normal_form(g, ring, list(reversed(raw))) == x + y
        assert lpa.normal_form(g, ring, [(c, mu, nu) for (mu, nu), c in x.items()]) == x

    def test_foreign_paths_rejected(self):
        v = LOOP.vertex_path("v")
        with pytest.raises(MismatchError, match="not a path of graph two"):
            lpa.monomial(TWO_EDGES, INTEGERS, 1, LOOP.path(["e", "e"]), v)
        with pytest.raises(MismatchError):
            lpa.monomial(TWO_EDGES, INTEGERS, 1, LOOP.path(["e"]), LOOP.path(["e"]))
        with pytest.raises(MismatchError):
            lpa.normal_form(LOOP, INTEGERS, [(1, TWO_CYCLE.vertex_path("a"), TWO_CYCLE.vertex_path("a"))])

    @settings(deadline=None, max_examples=100)
    @given(raw_terms())
    def test_rewriting_preserves_ranges_and_degree(self, args):
        g, ring, raw = args
        allowed = {(mu.rng, nu.rng, len(mu) - len(nu)) for _, mu, nu in raw}
        for (mu, nu), _ in lpa.normal_form(g, ring, raw).items():
            assert (mu.rng, nu.rng, len(mu) - len(nu)) in allowed

    @settings(deadline=None, max_examples=100)
    @given(graph_ring_elements(count=2))
    def test_products_keep_outer_ranges(self, args):
        g, ring, x, y = args
        left = {mu.rng for (mu, _), _ in x.items()}
        right = {nu.rng for (_, nu), _ in y.items()}
        for (mu, nu), _ in (x * y).items():
            assert mu.rng in left and nu.rng in right


class TestLaws:
    @settings(deadline=None, max_examples=150)
    @given(graph_ring_elements())
    def test_associativity(self, args):
        g, ring, x, y, z = args
        assert (x * y) * z == x * (y * z)

    @settings(deadline=None, max_examples=150)
    @given(graph_ring_elements())
    def test_distributivity(self, args):
        g, ring, x, y, z = args
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z

    @settings(deadline=None, max_examples=150)
    @given(graph_ring_elements(count=2))
    def test_involution(self, args):
        g, ring, x, y = args
        assert (x * y).star() == y.star() * x.star()
        assert x.star().star() == x
        assert (x + y).star() == x.star() + y.star()

    @settings(deadline=None, max_examples=80)
    @given(graph_ring_elements(count=1))
    def test_additive_group(self, args):
        g, ring, x = args
        assert (x - x).is_zero()
        assert x + lpa.zero(g, ring) == x

    @pytest.mark.parametrize("g", LAW_GRAPHS, ids=lambda g: g.name)
    @pytest.mark.parametrize("ring", RINGS, ids=str)
    def test_seeded_sweep(self, g, ring):
        sampler = MonomialSampler(g, ring, seed=11)
        for _ in range(60):
            x, y, z = sampler.element(), sampler.element(), sampler.element()
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert (x * y).star() == y.star() * x.star()


class TestRelations:
    @pytest.mark.parametrize("g", RELATION_GRAPHS, ids=lambda g: g.name)
    def test_vertex_relations(self, g):
        sources = singular_vertices(g)
        for v in g.vertices:
            total = lpa.zero(g, INTEGERS)
            for e in g.in_edges(v):
                total = total + _s(g, e) * _sx(g, e)
            diff = _p(g, v) - total
            assert diff.is_zero() == (v not in sources)

    @pytest.mark.parametrize("g", RELATION_GRAPHS, ids=lambda g: g.name)
    def test_edge_relations(self, g):
        for e in g.edges:
            assert _p(g, e.rng) * _s(g, e.id) == _s(g, e.id) == _s(g, e.id) * _p(g, e.src)
            assert _sx(g, e.id) * _p(g, e.rng) == _sx(g, e.id)
            for f in g.edges:
                expected = _p(g, e.src) if e.id == f.id else lpa.zero(g, INTEGERS)
                assert _sx(g, e.id) * _s(g, f.id) == expected


class TestGrading:
    def test_components(self):
        x = _s(LOOP, "e") + _sx(LOOP, "e") + 2 * _p(LOOP, "v")
        assert lpa.degrees(x) == (-1, 0, 1)
        assert lpa.grade_component(x, 1) == _s(LOOP, "e")
        assert lpa.grade_component(x, 0) == 2 * _p(LOOP, "v")
        assert lpa.grade_component(x, 5).is_zero()

    @settings(deadline=None, max_examples=60)
    @given(graph_ring_elements(count=1))
    def test_components_sum_back(self, args):
        g, ring, x = args
        total = lpa.zero(g, ring)
        for d in lpa.degrees(x):
            total = total + lpa.grade_component(x, d)
        assert total == x

    @settings(deadline=None, max_examples=150)
    @given(graph_ring_elements(count=2))
    def test_grading_is_multiplicative(self, args):
        g, ring, x, y = args
        xy = x * y
        degrees = {i + j for i in lpa.degrees(x) for j in lpa.degrees(y)} | set(lpa.degrees(xy))
        for n in degrees:
            expected = lpa.zero(g, ring)
            for i in lpa.degrees(x):
                expected = expected + lpa.grade_component(x, i) * lpa.grade_component(y, n - i)
            assert lpa.grade_component(xy, n) == expected


class TestFamilies:
    def test_universal_family_passes(self):
        for g in RELATION_GRAPHS:
            assert lpa.check_family(lpa.universal_family(g, INTEGERS)).ok

    def test_swapped_ghosts_fail(self):
        fam = lpa.universal_family(TWO_EDGES, INTEGERS)
        fam = replace(fam, ghost_images={"e": fam.ghost_images["f"], "f": fam.ghost_images["e"]}, verified=False)
        report = lpa.check_family(fam)
        assert not report.ok
        assert report.get("L1").passed
        assert not report.get("L2").passed
        assert report.get("L2").witness.startswith("Sx[e]*S[e]")
        assert not report.get("L3").passed

    def test_incomplete_family(self):
        fam = lpa.FamilyAssignment(TWO_EDGES, TWO_EDGES, INTEGERS)
        report = lpa.check_family(fam)
        assert [c.name for c in report.checks] == ["total"]
        assert not report.ok

    def test_eval_requires_verification(self):
        fam = replace(lpa.universal_family(LOOP, INTEGERS), verified=False)
        x = _s(LOOP, "e")
        with pytest.raises(UnverifiedFamilyError):
            lpa.eval_hom(fam, x)
        assert lpa.eval_hom(fam, x, trusted=True) == x
        verified, report = lpa.verified_family(fam)
        assert report.ok and verified.verified

    def test_eval_rejects_foreign_elements(self):
        fam = lpa.universal_family(LOOP, INTEGERS)
        with pytest.raises(MismatchError):
            lpa.eval_hom(fam, _p(TWO_EDGES, "v"))

    @settings(deadline=None, max_examples=60)
    @given(graph_ring_elements(count=1))
    def test_universal_family_is_identity(self, args):
        g, ring, x = args
        assert lpa.eval_hom(lpa.universal_family(g, ring), x) == x

    def test_swap_family_moves_edges(self):
        fam = _swap_family(INTEGERS)
        assert fam.verified
        x = _s(TWO_EDGES, "e") * _sx(TWO_EDGES, "f")
        assert lpa.eval_hom(fam, x) == _s(TWO_EDGES, "f") * _sx(TWO_EDGES, "e")

    def test_sign_family_counts_edges(self):
        fam = _sign_family(INTEGERS)
        assert lpa.eval_hom(fam, _s(LOOP, "e")) == -_s(LOOP, "e")
        ee = _s(LOOP, "e") * _s(LOOP, "e")
        assert lpa.eval_hom(fam, ee) == ee
        assert lpa.eval_hom(fam, _s(LOOP, "e") * _sx(LOOP, "e")) == _p(LOOP, "v")

    @settings(deadline=None, max_examples=120)
    @given(family_pairs())
    def test_eval_is_a_star_homomorphism(self, args):
        fam, x, y = args
        assert lpa.eval_hom(fam, x * y) == lpa.eval_hom(fam, x) * lpa.eval_hom(fam, y)
        assert lpa.eval_hom(fam, x + y) == lpa.eval_hom(fam, x) + lpa.eval_hom(fam, y)
        assert lpa.eval_hom(fam, x.star()) == lpa.eval_hom(fam, x).star()
