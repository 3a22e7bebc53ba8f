"""Modularity clustering with annealer-solved local subproblems.

The heavy lifting lives in the compiled ``_core`` module; this package adds a
small convenience wrapper so the common path is one call:

    >>> import ilouvain
    >>> g = ilouvain.load_graph("karate")
    >>> res = ilouvain.cluster(g, algorithm="ising", seed=7)
    >>> res.modularity  # doctest: +SKIP
    0.41
"""

from ._core import (
    ClusterResult,
    Graph,
    ParseError,
    ProtocolViolation,
    RemoteUnavailable,
    builtin_names,
    graph_from_edges,
    ising_louvain,
    load_graph,
    louvain,
    modularity,
    qubo_size_quartiles,
)

__all__ = [
    "ClusterResult",
    "Graph",
    "ParseError",
    "ProtocolViolation",
    "RemoteUnavailable",
    "builtin_names",
    "cluster",
    "graph_from_edges",
    "ising_louvain",
    "load_graph",
    "louvain",
    "modularity",
    "qubo_size_quartiles",
]

__version__ = "0.1.0"


def cluster(graph, algorithm="ising", **kwargs):
    """Run one algorithm on a graph.

    ``algorithm`` is ``"ising"`` or ``"louvain"``. Keyword arguments are
    forwarded; the baseline accepts ``theta`` and ``seed`` only.
    """
    if algorithm == "louvain":
        return louvain(graph, **kwargs)
    if algorithm == "ising":
        return ising_louvain(graph, **kwargs)
    raise ValueError(f"unknown algorithm {algorithm!r}")
