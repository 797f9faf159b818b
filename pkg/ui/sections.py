"""
UI section rendering helpers for the Leavitt path algebra explorer.
"""
import streamlit as st
import plotly.graph_objects as go

from services import contraction, lpa, reduction
from services.expressions import format_element, parse_element
from services.moves import FIXTURES
from utils.frames import b_set_frame, edge_frame, multiplicity_frame, vertex_frame, witness_frame
from utils.graph import Graph, hereditary_closure, is_full, quotient_graph, saturated_hereditary_closure
from utils.graph_format import serialize_graph
from utils.rings import RingSpec
from ui.components import show_element, show_report

PASTE = "Paste a graph"


def _fmt_set(vs) -> str:
    return "{" + ", ".join(sorted(vs)) + "}"


def _split(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def render_header() -> None:
    """Render the app header and subtitle."""
    st.markdown("""
    <div style='text-align:center; margin-bottom:2em;'>
        <span style='font-size:2.3rem; font-weight:700; color:#4f8cff;'>Leavitt Path Algebra Explorer</span>
        <br>
        <span style='font-size:1.15rem; color:#444;'>Normal forms, Morita contexts, graph contractions and reduction certificates<br>for finite directed graphs.</span>
    </div>
    """, unsafe_allow_html=True)
    st.markdown("---")


def render_graph_input(fixture_text) -> tuple[str, str, str]:
    """Pick a fixture or paste a graph. Returns (graph text, suggested G0, ring text).

    fixture_text(name, depth) -> (text, g0) is passed in so the caller owns caching.
    """
    cols = st.columns([1, 1.6])
    with cols[0]:
        st.markdown("<div class='section-title'>🧭 Graph</div>", unsafe_allow_html=True)
        st.markdown("<div class='section-sub'>Start from a built-in example or paste a graph in the text format.</div>", unsafe_allow_html=True)
        source = st.selectbox("Source:", list(FIXTURES) + [PASTE], key="graph_source")
        depth = st.number_input("Depth:", min_value=2, max_value=8, value=3, key="fixture_depth", disabled=source == PASTE)
        ring_text = st.text_input("Coefficient ring:", value="Z", key="ring_input", help="Z or Zmod:n")
    with cols[1]:
        if source == PASTE:
            text = st.text_area("Graph text:", height=260, key="pasted_graph",
                                placeholder="graph E\nvertex v\nvertex w\nedge e: w -> v")
            g0 = ""
        else:
            text, g0 = fixture_text(source, int(depth))
            st.text_area("Graph text:", value=text, height=260, disabled=True, key=f"fixture_text_{source}_{depth}")
    return text, g0, ring_text


def render_graph_tables(g: Graph) -> None:
    """Render vertex and edge tables."""
    st.markdown("<div class='modern-card'>", unsafe_allow_html=True)
    st.markdown(f"<div class='section-title'>📋 {g.name}: {len(g.vertices)} vertices, {len(g.edges)} edges</div>", unsafe_allow_html=True)
    cols = st.columns([1, 1])
    with cols[0]:
        st.dataframe(vertex_frame(g), width='stretch', hide_index=True)
    with cols[1]:
        st.dataframe(edge_frame(g), width='stretch', hide_index=True)
    st.markdown("</div>", unsafe_allow_html=True)


def render_closure_section(g: Graph) -> None:
    st.markdown("<div class='section-sub'>Hereditary and saturated hereditary closures of a vertex set, fullness, and the quotient graph.</div>", unsafe_allow_html=True)
    V = _split(st.text_input("Vertex set (comma-separated):", key="closure_set"))
    if not V:
        return
    g.require_vertices(V)
    H = saturated_hereditary_closure(g, V)
    st.markdown(f"**Hereditary closure:** `{_fmt_set(hereditary_closure(g, V))}`")
    st.markdown(f"**Saturated hereditary closure:** `{_fmt_set(H)}`")
    if is_full(g, V):
        st.success("The set is full: its saturated hereditary closure is every vertex.")
    else:
        st.info("Not full. Quotient by the closure:")
        st.code(serialize_graph(quotient_graph(g, H)), language=None)


def render_algebra_section(g: Graph, ring: RingSpec) -> None:
    st.markdown("<div class='section-sub'>Expressions use p(v), s(path), sx(path), integers, +, - and *. Paths are dotted edge ids, written from the range end.</div>", unsafe_allow_html=True)
    cols = st.columns([1, 1])
    with cols[0]:
        lhs_text = st.text_input("x =", key="lhs_expr")
    with cols[1]:
        rhs_text = st.text_input("y = (optional)", key="rhs_expr")
    if not lhs_text.strip():
        return
    x = parse_element(g, ring, lhs_text)
    show_element("Normal form of x", format_element(x))
    show_element("x*", format_element(x.star()))
    degs = lpa.degrees(x)
    if degs:
        st.caption("Degrees present: " + ", ".join(str(d) for d in degs))
    if rhs_text.strip():
        y = parse_element(g, ring, rhs_text)
        show_element("Normal form of y", format_element(y))
        show_element("x · y", format_element(x * y))


def render_contraction_section(res: contraction.ContractionResult) -> None:
    """Render G, its witnesses and the |B_v| / multiplicity charts."""
    st.markdown(f"<div class='section-sub'>Contracted graph {res.G.name} on {len(res.G.vertices)} vertices with {len(res.G.edges)} edges.</div>", unsafe_allow_html=True)
    st.dataframe(witness_frame(res), width='stretch', hide_index=True)

    cols = st.columns([1, 1])
    with cols[0]:
        df = b_set_frame(res)
        fig = go.Figure()
        for side, color in (("G0", "#4f8cff"), ("T0", "#ff7f0e")):
            part = df[df["Side"] == side]
            fig.add_trace(go.Bar(x=part["Vertex"], y=part["|B_v|"], name=side, marker_color=color))
        fig.update_layout(title="|B_v| per vertex", template='plotly_white', height=340,
                          margin=dict(l=10, r=10, t=40, b=10))
        st.plotly_chart(fig, width='stretch')
    with cols[1]:
        mult = multiplicity_frame(res.G)
        fig = go.Figure()
        fig.add_trace(go.Bar(x=mult["Pair"], y=mult["Edges"], name="edges", marker_color='#6f6fff'))
        fig.update_layout(title="G-edges per (source, range)", template='plotly_white', height=340,
                          margin=dict(l=10, r=10, t=40, b=10))
        st.plotly_chart(fig, width='stretch')

    with st.expander("Contracted graph text"):
        st.code(contraction.serialize_contraction(res), language=None)


def render_report_section(report) -> None:
    show_report(report)
    with st.expander("Plain text report"):
        st.code(report.to_text(), language=None)


def render_reduction_section(g: Graph, ring: RingSpec) -> None:
    st.markdown("<div class='section-sub'>Search for paths mu, nu with s_mu* x s_nu a nonzero vertex multiple or a Laurent polynomial in a cycle.</div>", unsafe_allow_html=True)
    cols = st.columns([2, 1])
    with cols[0]:
        text = st.text_input("x =", key="reduce_expr")
    with cols[1]:
        bound = st.number_input("Path bound (0 = default):", min_value=0, max_value=12, value=0, key="reduce_bound")
    if not text.strip() or not st.button("Search", key="reduce_btn"):
        return
    x = parse_element(g, ring, text)
    if x.is_zero():
        st.warning("x is zero; there is nothing to reduce.")
        return
    with st.spinner("Searching path pairs..."):
        cert = reduction.reduce(x, int(bound) or None)
    if cert is None:
        st.error("EXHAUSTED: no pair within the bound gives a certified form.")
        return
    st.success("Certificate found and rechecked" if reduction.verify_certificate(x, cert) else "Certificate found")
    show_element("Certificate", reduction.format_certificate(cert, ring))
    show_element("s_mu* x s_nu", format_element(reduction.compress(x, cert.mu, cert.nu)))
