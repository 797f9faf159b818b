import pytest
from hypothesis import given, settings

from services import lpa
from services.expressions import format_element, parse_element, tokenize
from tests.strategies import LOOP, TWO_EDGES, Z4, graph_ring_elements
from utils.errors import ExpressionError
from utils.graph import Graph
from utils.rings import INTEGERS


def _parse(text, g=TWO_EDGES, ring=INTEGERS):
    return parse_element(g, ring, text)


class TestTokenize:
    def test_kinds(self):
        kinds = [t.kind for t in tokenize("-2*s(e) + (sx(f))")]
        assert kinds == ["minus", "num", "mul", "gen", "plus", "lpar", "gen", "rpar"]

    def test_integer_values(self):
        assert [t.value for t in tokenize("12 3")] == [12, 3]

    def test_bad_character(self):
        with pytest.raises(ExpressionError) as info:
            list(tokenize("p(v) $"))
        assert info.value.column == 6


class TestParse:
    def test_generators(self):
        assert _parse("p(v)") == lpa.vertex(TWO_EDGES, INTEGERS, "v")
        assert _parse("s(e)") == lpa.edge(TWO_EDGES, INTEGERS, "e")
        assert _parse("sx( f )") == lpa.ghost_edge(TWO_EDGES, INTEGERS, "f")

    def test_products_are_reduced(self):
        assert _parse("s(e)*sx(e)") == _parse("p(v) - s(f)*sx(f)")
        assert _parse("sx(e)*s(f)").is_zero()

    def test_precedence_and_parentheses(self):
        assert _parse("2*p(v) + p(w)") == 2 * lpa.vertex(TWO_EDGES, INTEGERS, "v") + lpa.vertex(TWO_EDGES, INTEGERS, "w")
        assert _parse("2*(p(v) + p(w))") == 2 * lpa.unit(TWO_EDGES, INTEGERS)

    def test_unary_minus(self):
        assert _parse("-p(v) + p(v)").is_zero()
        assert _parse("-(s(e) - s(e))").is_zero()

    def test_bare_integer_terms(self):
        assert _parse("0").is_zero()
        assert _parse("1") == lpa.unit(TWO_EDGES, INTEGERS)
        assert _parse("1*s(e)") == _parse("s(e)")
        assert _parse("(1) * s(e)") == _parse("s(e)")

    def test_whitespace_is_insignificant(self):
        assert _parse("s (e)") == _parse("s(e)")
        assert _parse("p ( v )") == lpa.vertex(TWO_EDGES, INTEGERS, "v")
        assert _parse("sx\t(f)  *  s ( f )") == lpa.vertex(TWO_EDGES, INTEGERS, "w")
        assert _parse(" 2 * s ( e . e ) ", g=LOOP) == _parse("2*s(e.e)", g=LOOP)

    def test_loop_paths(self):
        assert _parse("s(e.e)*sx(e.e)", g=LOOP) == lpa.vertex(LOOP, INTEGERS, "v")

    def test_dotted_edge_ids(self):
        g = Graph.build("G", ["v#0", "w#0"], [("c_e_1", "w#0", "v#0"), ("c_e_2.d_w#1", "w#0", "v#0")])
        x = parse_element(g, INTEGERS, "s(c_e_2.d_w#1)")
        assert x == lpa.edge(g, INTEGERS, "c_e_2.d_w#1")
        assert format_element(x) == "s(c_e_2.d_w#1)"


class TestErrors:
    @pytest.mark.parametrize(
        "text, column",
        [
            ("", 1),
            ("p(v) +", 7),
            ("p(v) p(w)", 6),
            ("(p(v)", 6),
            ("p(x)", 1),
            ("p(v) + s(e.e)", 8),
            ("p(v) * s(g)", 8),
            ("*p(v)", 1),
            ("p(v)*3", 6),
            ("2*3*p(v)", 3),
        ],
    )
    def test_column(self, text, column):
        with pytest.raises(ExpressionError) as info:
            _parse(text)
        assert info.value.column == column

    def test_message_names_the_problem(self):
        with pytest.raises(ExpressionError, match="do not compose"):
            _parse("s(e.f)")
        with pytest.raises(ExpressionError, match="unknown vertex 'x'"):
            _parse("p(x)")


class TestFormat:
    def test_zero(self):
        assert format_element(lpa.zero(TWO_EDGES, INTEGERS)) == "0"

    def test_term_order_and_signs(self):
        assert format_element(_parse("s(e)*sx(e)")) == "p(v) - s(f)*sx(f)"
        assert format_element(_parse("-3*sx(f) + 2*p(w)")) == "2*p(w) - 3*sx(f)"

    def test_modular_coefficients_print_signed(self):
        assert format_element(_parse("3*p(v)", ring=Z4)) == "-p(v)"
        assert format_element(_parse("2*p(v) + 5*p(w)", ring=Z4)) == "2*p(v) + p(w)"

    @settings(deadline=None, max_examples=120)
    @given(graph_ring_elements(count=1))
    def test_parse_reads_back_format(self, args):
        g, ring, x = args
        assert parse_element(g, ring, format_element(x)) == x
