import logging

import pytest

from utils.graph_format import serialize_graph


@pytest.fixture(autouse=True)
def _restore_root_logging():
    # the CLI reconfigures the root logger
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def write_graph(tmp_path):
    """Write a Graph (or raw text) to a file and return its path as a string."""

    def _write(g, name="graph.txt", comments=None):
        text = g if isinstance(g, str) else serialize_graph(g, comments=comments)
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
