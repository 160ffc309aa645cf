"""The corner graph of a host graph compressed along a directed subtree.

Given a subtree spanning the hereditary closure of a root set, the corner
graph keeps the spanned vertices that either are sinks or emit some
non-tree edge, and replaces each non-tree edge e by one edge per kept
tree-descendant of its range.  The corner graph presents the compression
of the host graph algebra by the sum of the root projections.
"""

from __future__ import annotations

from dataclasses import dataclass

from .multigraph import DirectedMultigraph, Edge
from .subtree import DirectedSubtree, descendants


@dataclass(frozen=True)
class CornerGraph:
    """The corner graph plus the provenance of each of its edges.

    ``provenance`` maps each corner edge name ``e@u`` back to the pair
    (host edge e, target vertex u) it came from.
    """

    graph: DirectedMultigraph
    provenance: dict[str, tuple[str, str]]


def corner_graph(host: DirectedMultigraph, tree: DirectedSubtree) -> CornerGraph:
    """Build the corner graph of ``host`` along the subtree ``tree``.

    Kept vertices: spanned vertices except those whose (non-empty) set of
    outgoing host edges lies entirely inside the tree.  For every host
    edge e outside the tree with source in the spanned set, one corner
    edge ``e@u`` from s(e) to u is emitted for each kept vertex u that is
    a tree-descendant of r(e).
    """
    spanned = tree.tree_vertices
    excluded = set()
    for v in spanned:
        out = host.out_edges(v)
        if out and all(tree.is_tree_edge(e.name) for e in out):
            excluded.add(v)
    kept = [v for v in host.vertices if v in spanned and v not in excluded]
    kept_set = set(kept)

    edges: list[Edge] = []
    provenance: dict[str, tuple[str, str]] = {}
    for e in host.edges:
        if e.src not in spanned or tree.is_tree_edge(e.name):
            continue
        for u in descendants(tree, e.dst):
            if u not in kept_set:
                continue
            name = f"{e.name}@{u}"
            edges.append(Edge(name, e.src, u))
            provenance[name] = (e.name, u)
    return CornerGraph(DirectedMultigraph(kept, edges), provenance)
