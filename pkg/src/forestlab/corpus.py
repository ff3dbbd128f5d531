"""Exhaustive small-graph corpus: all connected simple graphs with n <= 6
vertices (143 graphs), generated from the networkx graph atlas."""

from __future__ import annotations

from functools import lru_cache

import networkx as nx

from .graphs import Multigraph


@lru_cache(maxsize=None)
def connected_graphs(max_n: int = 6) -> tuple[Multigraph, ...]:
    """All connected simple graphs with 1 <= n <= max_n (max_n <= 7)."""
    if not 1 <= max_n <= 7:
        raise ValueError("the graph atlas covers n <= 7")
    out = []
    for graph in nx.graph_atlas_g():
        n = graph.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(graph):
            edges = tuple(sorted(tuple(sorted(e)) for e in graph.edges()))
            out.append(Multigraph(n, edges))
    return tuple(out)
