"""Heegaard Floer homology HF+ of plumbed three-manifolds.

Graphs are accepted as a path to a JSON file, a JSON string, or a dict in
the same format. Reports come back as dicts following schema 1 (see
docs/report_schema.md).
"""

import json
import os

from . import _core
from ._core import Error, ParseError, UnsupportedGraph

__all__ = [
    "Error",
    "ParseError",
    "UnsupportedGraph",
    "basic_vectors",
    "classify",
    "cross_check",
    "d_invariants",
    "hf",
    "random_tree",
    "torus_knot_alexander",
    "version",
]


def _graph_text(graph):
    if isinstance(graph, dict):
        return json.dumps(graph)
    if isinstance(graph, os.PathLike) or (isinstance(graph, str) and not graph.lstrip().startswith("{")):
        try:
            with open(graph, encoding="utf-8") as f:
                return f.read()
        except OSError as e:
            raise ParseError(f"cannot open graph file '{graph}': {e.strerror}") from e
    return graph


def version():
    return _core.version()


def classify(graph):
    return json.loads(_core.classify(_graph_text(graph)))


def basic_vectors(graph):
    return json.loads(_core.basic_vectors(_graph_text(graph)))


def hf(graph, dual=None, alexander=None, even_bottoms=None, jobs=1, depth=None, expansion=None):
    """Full report. `even_bottoms` maps a sector key (label or comma-separated
    pairings) to a rational string such as "3/2"."""
    return json.loads(
        _core.hf(
            _graph_text(graph),
            None if dual is None else _graph_text(dual),
            None if alexander is None else [int(a) for a in alexander],
            {str(k): str(v) for k, v in (even_bottoms or {}).items()},
            jobs,
            False,
            depth,
            expansion,
        )
    )


def d_invariants(graph, dual=None, alexander=None, even_bottoms=None, jobs=1):
    """Torsion sectors only, with d, d_half and d_minus_half where known."""
    return json.loads(
        _core.hf(
            _graph_text(graph),
            None if dual is None else _graph_text(dual),
            None if alexander is None else [int(a) for a in alexander],
            {str(k): str(v) for k, v in (even_bottoms or {}).items()},
            jobs,
            True,
            None,
            None,
        )
    )


def cross_check(graph):
    """Compare the pipeline with the brute-force model on a small graph."""
    return _core.cross_check(_graph_text(graph))


def torus_knot_alexander(n):
    return _core.torus_knot_alexander(n)


def random_tree(seed, max_vertices=5):
    return json.loads(_core.random_tree(seed, max_vertices))
