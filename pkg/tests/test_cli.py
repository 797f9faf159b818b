from pathlib import Path

import pytest

import cli
from tests.strategies import LOOP, PENDANT_LOOP, TWO_EDGES
from utils.graph import Graph

CHAIN = Graph.build("chain", ["a", "b", "c"], [("x", "a", "b"), ("y", "b", "c")])
SINGLE_EDGE = Graph.build("F", ["v", "w"], [("e", "w", "v")])


def run(*argv):
    return cli.run([str(a) for a in argv])


class TestClosures:
    def test_closure(self, write_graph):
        code, text = run("closure", write_graph(PENDANT_LOOP), "--set", "v")
        assert code == 0
        assert text == "hereditary {a,v}\nsaturated-hereditary {a,v}\n"

    def test_full(self, write_graph):
        assert run("full", write_graph(LOOP), "--set", "v") == (0, "true\n")
        assert run("full", write_graph(TWO_EDGES), "--set", "v") == (0, "true\n")
        isolated = Graph.build("iso", ["a", "b"], [])
        assert run("full", write_graph(isolated), "--set", "a") == (0, "false\n")

    def test_quotient(self, write_graph):
        path = write_graph(PENDANT_LOOP)
        assert run("quotient", path, "--set", "a") == (0, "graph pendant_quot\nvertex v\nedge l : v -> v\n")

    def test_quotient_needs_closed_set(self, write_graph):
        path = write_graph(TWO_EDGES)
        code, text = run("quotient", path, "--set", "w")
        assert code == 2 and "not saturated and hereditary" in text
        assert run("quotient", path, "--set", "w", "--close") == (0, "graph two_quot\n")


class TestAlgebra:
    def test_nf(self, write_graph):
        assert run("nf", write_graph(TWO_EDGES), "--expr", "s(e)*sx(e)") == (0, "p(v) - s(f)*sx(f)\n")

    def test_nf_mod_n(self, write_graph):
        assert run("nf", write_graph(LOOP), "--ring", "Zmod:3", "--expr", "4*p(v) + s(e)*sx(e)") == (0, "-p(v)\n")

    def test_mul(self, write_graph):
        assert run("mul", write_graph(TWO_EDGES), "--lhs", "sx(e)", "--rhs", "s(e) + s(f)") == (0, "p(w)\n")

    def test_grade(self, write_graph):
        path = write_graph(LOOP)
        assert run("grade", path, "--expr", "s(e) + sx(e) + 2*p(v)", "--deg=-1") == (0, "sx(e)\n")
        assert run("grade", path, "--expr", "s(e)", "--deg", "3") == (0, "0\n")

    def test_bad_expression(self, write_graph):
        code, text = run("nf", write_graph(TWO_EDGES), "--expr", "p(v) +")
        assert code == 2
        assert text.startswith("error: column 7:")

    def test_bad_ring(self, write_graph):
        code, text = run("nf", write_graph(TWO_EDGES), "--ring", "Q", "--expr", "p(v)")
        assert code == 2 and text.startswith("error:")


class TestMorita:
    def test_report(self, write_graph):
        code, text = run("morita", write_graph(TWO_EDGES), "--set", "v", "--samples", "3", "--seed", "2")
        assert code == 0
        lines = text.splitlines()
        assert lines[0] == "# Morita context for V={v} in two"
        assert lines[1] == "# ring=Z samples=3 seed=2 full=true"
        assert all(line.endswith("PASS") or " PASS (" in line for line in lines[2:])


class TestContraction:
    def test_fixture_contracts_to_expected(self, write_graph):
        code, fixture_text = run("fixture", "EX53", "--depth", "3")
        assert code == 0
        assert fixture_text.splitlines()[1:3] == ["# fixture EX53 depth 3", "# g0: v#0,w#0"]
        code, contracted = run("cg-contract", write_graph(fixture_text))
        assert code == 0
        assert run("fixture", "EX53", "--depth", "3", "--emit-expected") == (0, contracted)

    @pytest.mark.parametrize("name", ["EX51", "EX52"])
    def test_other_fixtures_match(self, write_graph, name):
        _, fixture_text = run("fixture", name, "--depth", "3")
        _, contracted = run("cg-contract", write_graph(fixture_text))
        _, expected = run("fixture", name, "--depth", "3", "--emit-expected")
        assert contracted == expected

    def test_validate_failure_exits_one(self, write_graph):
        code, text = run("cg-validate", write_graph(LOOP), "--g0", "")
        assert code == 1
        assert text.startswith("# contraction hypotheses for G0={} in loop\n")
        assert "T-acyclic FAIL witness=e" in text

    def test_missing_g0(self, write_graph):
        code, text = run("cg-validate", write_graph(LOOP))
        assert code == 2 and "--g0" in text

    def test_contract_refuses_invalid(self, write_graph):
        code, text = run("cg-contract", write_graph(TWO_EDGES), "--g0", "v")
        assert code == 1
        assert "singular-in-G0 FAIL witness=w" in text

    def test_verify(self, write_graph):
        _, fixture_text = run("fixture", "EX53", "--depth", "2")
        code, text = run("cg-verify", write_graph(fixture_text), "--maxlen", "2", "--samples", "3")
        assert code == 0, text
        assert "preimage-sweep PASS" in text

    def test_verify_stops_at_validation(self, write_graph):
        code, text = run("cg-verify", write_graph(LOOP), "--g0", "")
        assert code == 1 and "T-acyclic FAIL" in text


class TestMoves:
    def test_delay_in_then_contract(self, write_graph, tmp_path):
        d = tmp_path / "d.txt"
        d.write_text("vertex w 1\nedge e 1\n", encoding="utf-8")
        code, text = run("delay-in", write_graph(SINGLE_EDGE), "--d", d)
        assert code == 0
        assert text.splitlines()[:2] == ["graph F_delay", "# g0: v#0,w#0"]
        code, contracted = run("cg-contract", write_graph(text, name="delayed.txt"))
        assert code == 0
        assert "edge c_e.d_w#1 : w#0 -> v#0" in contracted

    def test_desing(self, write_graph):
        mg = "graph F\nvertex v\nvertex w\nbundle e : w -> v * inf\n"
        code, text = run("desing", write_graph(mg), "--depth", "2")
        assert code == 0
        assert "edge t_v#1 : v#1 -> v" in text
        _, contracted = run("cg-contract", write_graph(text, name="desing.txt"))
        assert "edge c_t_v#1.e#1 : w -> v" in contracted

    def test_collapse(self, write_graph):
        code, text = run("collapse", write_graph(CHAIN), "--seg", "b")
        assert code == 0
        assert text.startswith("# collapse of {b} in chain\n# b in=1 out=1 exits=1\n# single-exit segment: yes\n")
        assert "edge c_y.x : a -> c" in text

    def test_collapse_rejects_source(self, write_graph):
        code, text = run("collapse", write_graph(CHAIN), "--seg", "a")
        assert code == 1 and "no-singular FAIL witness=a" in text

    def test_fixture_depth(self):
        code, text = run("fixture", "EX51", "--depth", "1")
        assert code == 2 and "depth" in text


class TestReduction:
    def test_reduce(self, write_graph):
        assert run("reduce", write_graph(TWO_EDGES), "--expr", "s(e)") == (0, "mu=e nu=w kind=vertex r=1 v=w\n")

    def test_exhausted(self, write_graph):
        assert run("reduce", write_graph(TWO_EDGES), "--expr", "s(e)", "--maxlen", "0") == (1, "EXHAUSTED\n")

    def test_zero_is_input_error(self, write_graph):
        code, _ = run("reduce", write_graph(TWO_EDGES), "--expr", "s(e) - s(e)")
        assert code == 2

    def test_verify_cert(self, write_graph, tmp_path):
        graph = write_graph(TWO_EDGES)
        good = tmp_path / "good.txt"
        good.write_text("mu=e nu=w kind=vertex r=1 v=w\n", encoding="utf-8")
        assert run("verify-cert", graph, "--expr", "s(e)", "--cert", good) == (
            0,
            "# reduction certificate for s(e)\ncertificate PASS\n",
        )
        bad = tmp_path / "bad.txt"
        bad.write_text("mu=e nu=w kind=vertex r=2 v=w\n", encoding="utf-8")
        code, text = run("verify-cert", graph, "--expr", "s(e)", "--cert", bad)
        assert code == 1
        assert "certificate FAIL witness=mu=e nu=w kind=vertex r=2 v=w" in text


class TestInputErrors:
    def test_unknown_command(self):
        code, text = run("explode")
        assert code == 2 and text.startswith("error:")

    def test_missing_required_option(self, write_graph):
        code, _ = run("nf", write_graph(LOOP))
        assert code == 2

    def test_malformed_graph(self, write_graph):
        code, text = run("closure", write_graph("graph E\nnode v\n"), "--set", "v")
        assert code == 2 and "line 2" in text

    def test_missing_file(self, tmp_path):
        code, text = run("closure", tmp_path / "nope.txt", "--set", "v")
        assert code == 2 and "cannot read" in text

    def test_unknown_vertex(self, write_graph):
        code, text = run("closure", write_graph(LOOP), "--set", "q")
        assert code == 2 and "unknown vertex 'q'" in text


def test_main_routes_streams(write_graph, capsys):
    assert cli.main(["full", write_graph(LOOP), "--set", "v"]) == 0
    assert capsys.readouterr().out == "true\n"
    assert cli.main(["explode"]) == 2
    captured = capsys.readouterr()
    assert captured.out == "" and captured.err.startswith("error:")


GOLDEN = Path(__file__).parent / "golden"
GRAPH = "{graph}"

TOUR = [
    (name, argv, f"{name.lower()}_{golden}.txt")
    for name in ("EX51", "EX52", "EX53")
    for argv, golden in (
        (["fixture", name, "--depth", "3"], "fixture"),
        (["fixture", name, "--depth", "3", "--emit-expected"], "contracted"),
        (["cg-validate", GRAPH], "validate"),
        (["cg-contract", GRAPH], "contracted"),
    )
] + [
    ("EX53", ["closure", GRAPH, "--set", "v#0"], "ex53_closure.txt"),
    ("EX53", ["nf", GRAPH, "--expr", "s(e_1)*sx(e_1)"], "ex53_nf.txt"),
    ("EX53", ["reduce", GRAPH, "--expr", "s(e_1)"], "ex53_reduce.txt"),
]


@pytest.mark.parametrize("name, argv, golden", TOUR, ids=lambda v: v if isinstance(v, str) else None)
def test_command_tour_matches_golden(write_graph, name, argv, golden):
    _, fixture_text = run("fixture", name, "--depth", "3")
    path = write_graph(fixture_text, name=f"{name}.txt")
    code, text = run(*[path if a == GRAPH else a for a in argv])
    assert code == 0, text
    assert text == (GOLDEN / golden).read_text(encoding="utf-8")
