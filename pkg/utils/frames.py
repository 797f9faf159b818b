"""pandas tables shown by the explorer."""

from __future__ import annotations

from collections import Counter

import pandas as pd

from services.contraction import ContractionResult
from utils.checks import Report
from utils.graph import Graph, singular_vertices


def vertex_frame(g: Graph) -> pd.DataFrame:
    sing = singular_vertices(g)
    return pd.DataFrame(
        {
            "Vertex": list(g.vertices),
            "In": [len(g.in_edges(v)) for v in g.vertices],
            "Out": [len(g.out_edges(v)) for v in g.vertices],
            "Singular": [v in sing for v in g.vertices],
            "Special edge": [g.special_edge(v) or "" for v in g.vertices],
        }
    )


def edge_frame(g: Graph) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "Edge": [e.id for e in g.edges],
            "Source": [e.src for e in g.edges],
            "Range": [e.rng for e in g.edges],
        }
    )


def b_set_frame(res: ContractionResult) -> pd.DataFrame:
    """|B_v| for every vertex of E, flagged by side of the G0 / T0 split."""
    rows = [(v, "G0" if v in res.G0 else "T0", len(res.b_sets.get(v, ()))) for v in res.E.vertices]
    return pd.DataFrame(rows, columns=["Vertex", "Side", "|B_v|"])


def witness_frame(res: ContractionResult) -> pd.DataFrame:
    names = sorted(res.witness)
    return pd.DataFrame(
        {
            "G-edge": names,
            "Source": [res.witness[n].src for n in names],
            "Range": [res.witness[n].rng for n in names],
            "Length": [len(res.witness[n]) for n in names],
            "Witness path": [".".join(res.witness[n].edges) for n in names],
        }
    )


def multiplicity_frame(g: Graph) -> pd.DataFrame:
    """Number of parallel edges per (source, range) pair."""
    counts = Counter((e.src, e.rng) for e in g.edges)
    rows = [(f"{s}->{r}", n) for (s, r), n in sorted(counts.items())]
    return pd.DataFrame(rows, columns=["Pair", "Edges"])


def report_frame(report: Report) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "Check": [c.name for c in report.checks],
            "Result": ["PASS" if c.passed else "FAIL" for c in report.checks],
            "Detail": [c.witness if not c.passed else (c.note or "") for c in report.checks],
        }
    )
