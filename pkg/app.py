"""
Main Streamlit app for the Leavitt path algebra explorer.

    streamlit run app.py
"""
# --- Imports ---
import logging

import streamlit as st

from config import settings
from services import contraction, moves
from services.morita import MoritaContextSpec, verify_morita_context
from ui.sections import (
    render_algebra_section,
    render_closure_section,
    render_contraction_section,
    render_graph_input,
    render_graph_tables,
    render_header,
    render_reduction_section,
    render_report_section,
)
from utils.errors import LpaError
from utils.graph_format import parse_graph, serialize_graph
from utils.rings import parse_ring

logger = logging.getLogger(__name__)

# --- Set Page Config ---
st.set_page_config(
    page_title="LPA Explorer",
    page_icon="🕸️",
    layout="wide"
)

# --- Custom CSS for better UI ---
st.markdown("""
    <style>
    body, .main {
        background-color: #f5f7fa;
    }
    .block-container {
        padding-top: 2.5rem;
        padding-bottom: 2.5rem;
        max-width: 1200px;
        margin-left: auto;
        margin-right: auto;
    }
    .stButton>button {
        border-radius: 10px;
        font-weight: 600;
        padding: 0.5em 2em;
        background: linear-gradient(90deg, #4f8cff 0%, #6f6fff 100%);
        color: white;
        border: none;
        box-shadow: 0 2px 8px #0001;
    }
    .stTextInput>div>input, .stTextArea textarea {
        border-radius: 10px;
        font-family: monospace;
        background: #fff;
        border: 1px solid #dbeafe;
    }
    .modern-card {
        background: #fff;
        border-radius: 18px;
        padding: 1.5em 2em 1em 2em;
        margin-bottom: 2em;
        box-shadow: 0 4px 16px #0002;
    }
    .section-title {
        font-size: 1.5rem;
        font-weight: 700;
        color: #4f8cff;
        margin-bottom: 0.5em;
    }
    .section-sub {
        font-size: 1.05rem;
        color: #555;
        margin-bottom: 1.2em;
    }
    </style>
""", unsafe_allow_html=True)


@st.cache_resource
def _setup_logging() -> None:
    settings.configure_logging()


_setup_logging()

# --- Session State Initialization ---
for key in ("morita_report", "contraction_report"):
    if key not in st.session_state:
        st.session_state[key] = None


@st.cache_data(show_spinner=False)
def cached_fixture_text(name: str, depth: int) -> tuple[str, str]:
    fx = moves.fixture(name, depth)
    g0 = ",".join(sorted(fx.G0))
    return serialize_graph(fx.E, comments=[f"fixture {name} depth {depth}", f"g0: {g0}"]), g0


@st.cache_resource(show_spinner=False)
def cached_contraction(text: str, g0: tuple[str, ...], ring_text: str) -> contraction.ContractionResult:
    return contraction.contract(parse_graph(text), g0, parse_ring(ring_text))


# --- UI: Header and Inputs ---
render_header()
graph_text, suggested_g0, ring_text = render_graph_input(cached_fixture_text)

if not graph_text.strip():
    st.info("Pick an example or paste a graph to begin.")
    st.stop()

try:
    graph = parse_graph(graph_text)
    ring = parse_ring(ring_text)
except LpaError as e:
    st.error(f"Input error: {e}")
    st.stop()

if st.session_state.get("graph_text") != graph_text:
    logger.info("loaded graph %s", graph)
    st.session_state["graph_text"] = graph_text
    st.session_state["morita_report"] = None
    st.session_state["contraction_report"] = None

render_graph_tables(graph)

tab_closure, tab_algebra, tab_contraction, tab_morita, tab_reduce = st.tabs(
    ["Closures", "Normal forms", "Contraction", "Morita context", "Reduction"]
)

with tab_closure:
    try:
        render_closure_section(graph)
    except LpaError as e:
        st.error(str(e))

with tab_algebra:
    try:
        render_algebra_section(graph, ring)
    except LpaError as e:
        st.error(str(e))

with tab_contraction:
    g0_text = st.text_input("G0 (comma-separated):", value=suggested_g0, key=f"g0_{suggested_g0}")
    g0 = tuple(sorted(v.strip() for v in g0_text.split(",") if v.strip()))
    if g0:
        validation = contraction.validate(graph, g0) if graph.vertex_set.issuperset(g0) else None
        if validation is None:
            st.error("G0 names vertices that are not in the graph.")
        elif not validation.ok:
            render_report_section(validation)
        else:
            try:
                res = cached_contraction(graph_text, g0, ring_text)
                render_contraction_section(res)
                if st.button("Run full verification", key="cg_verify_btn"):
                    with st.spinner("Checking family, phi, preimages and injectivity..."):
                        st.session_state["contraction_report"] = contraction.verify_contraction(res)
                if st.session_state["contraction_report"] is not None:
                    render_report_section(st.session_state["contraction_report"])
            except LpaError as e:
                st.error(str(e))

with tab_morita:
    st.markdown("<div class='section-sub'>Sample the Morita context of L(E) with the corner generated by a vertex set.</div>", unsafe_allow_html=True)
    set_text = st.text_input("Vertex set V (comma-separated):", value=suggested_g0, key=f"morita_set_{suggested_g0}")
    samples = st.number_input("Samples:", min_value=1, max_value=500, value=settings.get_default_samples(), key="morita_samples")
    if st.button("Verify Morita context", key="morita_btn"):
        try:
            spec = MoritaContextSpec(graph, frozenset(v.strip() for v in set_text.split(",") if v.strip()), ring)
            with st.spinner("Sampling..."):
                st.session_state["morita_report"] = verify_morita_context(spec, int(samples))
        except LpaError as e:
            st.error(str(e))
    if st.session_state["morita_report"] is not None:
        render_report_section(st.session_state["morita_report"])

with tab_reduce:
    try:
        render_reduction_section(graph, ring)
    except LpaError as e:
        st.error(str(e))
