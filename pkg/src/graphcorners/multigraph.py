"""Finite directed multigraphs with named vertices and edges.

The graph file format is line oriented (UTF-8):

    # comment lines and blank lines are ignored
    vertex NAME
    edge NAME SRC DST [LABEL]

Names match ``[A-Za-z0-9_@.-]+``.  Edge endpoints must be declared before
the edge line that uses them.  The optional LABEL column is kept verbatim
on the edge; it is interpreted by the labelling module.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

NAME_RE = re.compile(r"[A-Za-z0-9_@.-]+")


class GraphFormatError(ValueError):
    """Raised for malformed graph files or inconsistent graph data."""


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    dst: str
    label: str | None = None


@dataclass(frozen=True)
class Path:
    """A finite path: a start vertex plus a sequence of edge names.

    The empty edge sequence is the length-0 path at ``start``.
    """

    start: str
    edges: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    def is_prefix_of(self, other: "Path") -> bool:
        """Initial-subpath order: same start, edge sequence a prefix."""
        return (
            self.start == other.start
            and self.edges == other.edges[: len(self.edges)]
        )


class DirectedMultigraph:
    """Immutable directed multigraph; parallel edges and loops allowed.

    Vertices and edges keep the insertion order of their source, and all
    queries iterate in that order, so downstream constructions are
    deterministic.
    """

    __slots__ = ("vertices", "edges", "_edge_by_name", "_out", "_in")

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[Edge | Sequence[str]] = (),
    ) -> None:
        vs: list[str] = []
        seen = set()
        for v in vertices:
            _check_name(v, "vertex")
            if v in seen:
                raise GraphFormatError(f"duplicate vertex name {v!r}")
            seen.add(v)
            vs.append(v)
        self.vertices: tuple[str, ...] = tuple(vs)

        es: list[Edge] = []
        by_name: dict[str, Edge] = {}
        out: dict[str, list[Edge]] = {v: [] for v in vs}
        inc: dict[str, list[Edge]] = {v: [] for v in vs}
        for item in edges:
            e = item if isinstance(item, Edge) else Edge(*item)
            _check_name(e.name, "edge")
            if e.name in by_name:
                raise GraphFormatError(f"duplicate edge name {e.name!r}")
            for endpoint in (e.src, e.dst):
                if endpoint not in out:
                    raise GraphFormatError(
                        f"edge {e.name!r}: endpoint {endpoint!r} undeclared"
                    )
            by_name[e.name] = e
            out[e.src].append(e)
            inc[e.dst].append(e)
            es.append(e)
        self.edges: tuple[Edge, ...] = tuple(es)
        self._edge_by_name = by_name
        self._out = {v: tuple(lst) for v, lst in out.items()}
        self._in = {v: tuple(lst) for v, lst in inc.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedMultigraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self) -> str:
        return (
            f"DirectedMultigraph({len(self.vertices)} vertices, "
            f"{len(self.edges)} edges)"
        )

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def edge(self, name: str) -> Edge:
        try:
            return self._edge_by_name[name]
        except KeyError:
            raise GraphFormatError(f"unknown edge {name!r}") from None

    def has_edge(self, name: str) -> bool:
        return name in self._edge_by_name

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        """All edges with source v, in insertion order."""
        self._require_vertex(v)
        return self._out[v]

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        """All edges with range v, in insertion order."""
        self._require_vertex(v)
        return self._in[v]

    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self._out[v])

    def _require_vertex(self, v: str) -> None:
        if v not in self._out:
            raise GraphFormatError(f"unknown vertex {v!r}")


def _check_name(name: str, kind: str) -> None:
    if not isinstance(name, str) or not NAME_RE.fullmatch(name):
        raise GraphFormatError(f"invalid {kind} name {name!r}")


def parse_graph(text: str) -> DirectedMultigraph:
    """Parse graph-file content; errors report the offending line number."""
    vertices: list[str] = []
    edges: list[Edge] = []
    declared: set[str] = set()
    edge_names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) != 2:
                raise GraphFormatError(
                    f"line {lineno}: expected 'vertex NAME', got {raw!r}"
                )
            name = tokens[1]
            _name_or_line_error(name, "vertex", lineno)
            if name in declared:
                raise GraphFormatError(
                    f"line {lineno}: duplicate vertex name {name!r}"
                )
            declared.add(name)
            vertices.append(name)
        elif kind == "edge":
            if len(tokens) not in (4, 5):
                raise GraphFormatError(
                    f"line {lineno}: expected 'edge NAME SRC DST [LABEL]', "
                    f"got {raw!r}"
                )
            name, src, dst = tokens[1:4]
            label = tokens[4] if len(tokens) == 5 else None
            for n, k in ((name, "edge"), (src, "vertex"), (dst, "vertex")):
                _name_or_line_error(n, k, lineno)
            if name in edge_names:
                raise GraphFormatError(
                    f"line {lineno}: duplicate edge name {name!r}"
                )
            for endpoint in (src, dst):
                if endpoint not in declared:
                    raise GraphFormatError(
                        f"line {lineno}: endpoint {endpoint!r} undeclared"
                    )
            edge_names.add(name)
            edges.append(Edge(name, src, dst, label))
        else:
            raise GraphFormatError(
                f"line {lineno}: unknown declaration {kind!r}"
            )
    return DirectedMultigraph(vertices, edges)


def _name_or_line_error(name: str, kind: str, lineno: int) -> None:
    if not NAME_RE.fullmatch(name):
        raise GraphFormatError(f"line {lineno}: invalid {kind} name {name!r}")


def serialize_graph(g: DirectedMultigraph) -> str:
    """Emit the graph file format; parse(serialize(g)) == g."""
    lines = [f"vertex {v}" for v in g.vertices]
    for e in g.edges:
        if e.label is None:
            lines.append(f"edge {e.name} {e.src} {e.dst}")
        else:
            lines.append(f"edge {e.name} {e.src} {e.dst} {e.label}")
    return "\n".join(lines) + ("\n" if lines else "")


def to_dot(g: DirectedMultigraph) -> str:
    """DOT export, one arrow per parallel edge, sorted for stable diffs."""
    lines = ["digraph G {"]
    for v in sorted(g.vertices):
        lines.append(f'  "{v}";')
    for e in sorted(g.edges, key=lambda e: e.name):
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def is_acyclic(g: DirectedMultigraph) -> bool:
    """True iff the graph contains no directed cycle."""
    indeg = {v: len(g.in_edges(v)) for v in g.vertices}
    queue = deque(v for v in g.vertices if indeg[v] == 0)
    removed = 0
    while queue:
        v = queue.popleft()
        removed += 1
        for e in g.out_edges(v):
            indeg[e.dst] -= 1
            if indeg[e.dst] == 0:
                queue.append(e.dst)
    return removed == len(g.vertices)


def topological_order(g: DirectedMultigraph) -> tuple[str, ...]:
    """Vertices in an order compatible with the edges; g must be acyclic."""
    indeg = {v: len(g.in_edges(v)) for v in g.vertices}
    queue = deque(v for v in g.vertices if indeg[v] == 0)
    order: list[str] = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for e in g.out_edges(v):
            indeg[e.dst] -= 1
            if indeg[e.dst] == 0:
                queue.append(e.dst)
    if len(order) != len(g.vertices):
        raise GraphFormatError("graph has a cycle")
    return tuple(order)


def hereditary_closure(g: DirectedMultigraph, X: Iterable[str]) -> set[str]:
    """Smallest hereditary (forward-closed) vertex set containing X."""
    todo = deque()
    for v in X:
        g._require_vertex(v)
        todo.append(v)
    closure: set[str] = set(todo)
    while todo:
        v = todo.popleft()
        for e in g.out_edges(v):
            if e.dst not in closure:
                closure.add(e.dst)
                todo.append(e.dst)
    return closure


def is_hereditary(g: DirectedMultigraph, X: Iterable[str]) -> bool:
    xs = set(X)
    for v in xs:
        g._require_vertex(v)
    return all(e.dst in xs for v in xs for e in g.out_edges(v))


def saturate(g: DirectedMultigraph, H: Iterable[str]) -> set[str]:
    """Smallest saturated superset of the hereditary set H.

    A vertex that emits at least one edge, all of whose emitted edges end
    inside the set, is forced into it; iterate to a fixed point.
    """
    sat = set(H)
    if not is_hereditary(g, sat):
        raise GraphFormatError("input set is not hereditary")
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in sat:
                continue
            out = g.out_edges(v)
            if out and all(e.dst in sat for e in out):
                sat.add(v)
                changed = True
    return sat


def path_range(g: DirectedMultigraph, path: Path) -> str:
    """Range vertex of a path, validating composition along the way."""
    g._require_vertex(path.start)
    at = path.start
    for name in path.edges:
        e = g.edge(name)
        if e.src != at:
            raise GraphFormatError(
                f"path breaks at {name!r}: expected source {at!r}, "
                f"edge has source {e.src!r}"
            )
        at = e.dst
    return at


def relabelled(
    g: DirectedMultigraph,
    vertex_map: dict[str, str],
    edge_map: dict[str, str] | None = None,
) -> DirectedMultigraph:
    """Rename vertices (and optionally edges), preserving order and labels."""
    emap = edge_map or {}
    return DirectedMultigraph(
        (vertex_map[v] for v in g.vertices),
        (
            Edge(emap.get(e.name, e.name), vertex_map[e.src],
                 vertex_map[e.dst], e.label)
            for e in g.edges
        ),
    )
