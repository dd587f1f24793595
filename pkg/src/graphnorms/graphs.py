"""Finite simple graphs: parsing, components, isomorphism, structural predicates.

Graphs are immutable values: a vertex count plus a set of normalized edges
(u, v) with u < v.  All helpers are pure functions, so everything here is
safe to use concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator


class GraphParseError(ValueError):
    """Raised for malformed edge-list text or graph JSON documents."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..vertex_count-1, no loops."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge ({u}, {v}) not normalized (need u < v)")
            if not (0 <= u and v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.vertex_count} vertices")

    @staticmethod
    def from_edges(edges: Iterable[tuple[int, int]], vertex_count: int | None = None) -> "Graph":
        """Build a graph from unordered endpoint pairs; duplicates collapse."""
        normalized = set()
        top = -1
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u < 0 or v < 0:
                raise ValueError(f"negative vertex index in edge ({u}, {v})")
            normalized.add((u, v) if u < v else (v, u))
            top = max(top, u, v)
        n = top + 1
        if vertex_count is not None:
            if vertex_count < n:
                raise ValueError(f"vertex_count {vertex_count} too small for edges (need {n})")
            n = vertex_count
        return Graph(n, frozenset(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def relabel(self, mapping: dict[int, int], vertex_count: int | None = None) -> "Graph":
        """Apply an injective vertex relabeling to all edges."""
        n = vertex_count if vertex_count is not None else self.vertex_count
        return Graph.from_edges(((mapping[u], mapping[v]) for u, v in self.edges), vertex_count=n)


def adjacency(g: Graph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(g.vertex_count)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse edge-list text: one "u v" pair per line.

    An optional header line "vertices N" declares at least N vertices (for
    isolated ones).  Blank lines and lines starting with '#' are skipped.
    """
    edges: set[tuple[int, int]] = set()
    declared = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "vertices":
            if len(tokens) != 2:
                raise GraphParseError(f"line {lineno}: expected 'vertices N', got {line!r}")
            try:
                declared = max(declared, int(tokens[1]))
            except ValueError:
                raise GraphParseError(f"line {lineno}: vertex count {tokens[1]!r} is not an integer") from None
            if declared < 0:
                raise GraphParseError(f"line {lineno}: vertex count must be non-negative")
            continue
        if len(tokens) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphParseError(f"line {lineno}: negative vertex index in {line!r}")
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
        edge = (u, v) if u < v else (v, u)
        if edge in edges:
            raise GraphParseError(f"line {lineno}: duplicate edge {edge}")
        edges.add(edge)
    top = max((v for e in edges for v in e), default=-1) + 1
    return Graph(max(top, declared), frozenset(edges))


def graph_to_json(g: Graph) -> dict:
    return {"vertices": g.vertex_count, "edges": [list(e) for e in g.sorted_edges]}


def graph_from_json(obj: dict) -> Graph:
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise GraphParseError("graph JSON must have 'vertices' and 'edges' fields")
    n = obj["vertices"]
    if not isinstance(n, int) or n < 0:
        raise GraphParseError("'vertices' must be a non-negative integer")
    try:
        return Graph.from_edges(((int(u), int(v)) for u, v in obj["edges"]), vertex_count=n)
    except (TypeError, ValueError) as exc:
        raise GraphParseError(f"bad edge list in graph JSON: {exc}") from None


# ---------------------------------------------------------------------------
# Components
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    """A connected component: standalone relabeled graph plus its original vertices."""

    graph: Graph
    vertices: tuple[int, ...]

    @property
    def is_singleton(self) -> bool:
        return self.graph.vertex_count == 1 and self.graph.edge_count == 0


def components(g: Graph) -> list[Component]:
    """Connected components, ordered by smallest original vertex."""
    adj = adjacency(g)
    seen = [False] * g.vertex_count
    out: list[Component] = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        stack, members = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            members.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        members.sort()
        index = {v: i for i, v in enumerate(members)}
        sub = Graph.from_edges(
            ((index[u], index[v]) for u, v in g.edges if u in index),
            vertex_count=len(members),
        )
        out.append(Component(sub, tuple(members)))
    return out


def is_connected(g: Graph) -> bool:
    return g.vertex_count <= 1 or len(components(g)) == 1


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.vertex_count
    return Graph.from_edges(edges, vertex_count=offset)


def remove_isolated_vertices(g: Graph) -> Graph:
    """Drop degree-zero vertices and relabel the rest, keeping all edges."""
    support = sorted({x for e in g.edges for x in e})
    index = {v: i for i, v in enumerate(support)}
    return Graph.from_edges(((index[u], index[v]) for u, v in g.edges), vertex_count=len(support))


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------

def _refined_colors(g1: Graph, g2: Graph) -> tuple[list[int], list[int]] | None:
    """Joint iterated neighborhood refinement; None when color multisets split."""
    adj1, adj2 = adjacency(g1), adjacency(g2)
    colors1 = g1.degrees()
    colors2 = g2.degrees()
    for _ in range(g1.vertex_count + 1):
        table: dict[tuple, int] = {}

        def recolor(colors, adj):
            new = []
            for v in range(len(colors)):
                sig = (colors[v], tuple(sorted(colors[w] for w in adj[v])))
                new.append(table.setdefault(sig, len(table)))
            return new

        new1 = recolor(colors1, adj1)
        new2 = recolor(colors2, adj2)
        if sorted(new1) != sorted(new2):
            return None
        stable = len(set(new1)) == len(set(colors1))
        colors1, colors2 = new1, new2
        if stable:
            break
    return colors1, colors2


def find_isomorphism(g1: Graph, g2: Graph) -> dict[int, int] | None:
    """A vertex bijection mapping edges onto edges, or None.

    Degree/neighborhood refinement prunes the search; a backtracking pass
    over color classes settles the rest.  Intended for the small graphs
    (a dozen or so vertices per component) this package works with.
    """
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return None
    if g1.vertex_count == 0:
        return {}
    refined = _refined_colors(g1, g2)
    if refined is None:
        return None
    colors1, colors2 = refined
    adj1, adj2 = adjacency(g1), adjacency(g2)

    # Most-constrained-first order: vertices adjacent to already-chosen ones
    # come early, then small color classes, then high degree.
    class_size = {c: colors2.count(c) for c in set(colors2)}
    chosen: set[int] = set()
    order: list[int] = []
    while len(order) < g1.vertex_count:
        nxt = min(
            (v for v in range(g1.vertex_count) if v not in chosen),
            key=lambda v: (-sum(1 for w in adj1[v] if w in chosen), class_size[colors1[v]], -len(adj1[v]), v),
        )
        chosen.add(nxt)
        order.append(nxt)

    mapping: dict[int, int] = {}
    used = [False] * g2.vertex_count

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(g2.vertex_count):
            if used[w] or colors2[w] != colors1[v]:
                continue
            ok = True
            for u in adj1[v]:
                if u in mapping and mapping[u] not in adj2[w]:
                    ok = False
                    break
            if not ok:
                continue
            # Mapped non-neighbors of v must not become neighbors of w.
            for u, x in mapping.items():
                if u not in adj1[v] and x in adj2[w]:
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            if extend(i + 1):
                return True
            del mapping[v]
            used[w] = False
        return False

    if extend(0):
        return dict(mapping)
    return None


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    return find_isomorphism(g1, g2) is not None


def find_subgraph_embedding(f: Graph, h: Graph) -> dict[int, int] | None:
    """Injective map from V(f) into V(h) sending every edge of f to an edge of h."""
    if f.vertex_count > h.vertex_count or f.edge_count > h.edge_count:
        return None
    adjf, adjh = adjacency(f), adjacency(h)
    degh = h.degrees()
    order = sorted(range(f.vertex_count), key=lambda v: (-len(adjf[v]), v))
    mapping: dict[int, int] = {}
    used = [False] * h.vertex_count

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(h.vertex_count):
            if used[w] or degh[w] < len(adjf[v]):
                continue
            if any(u in mapping and mapping[u] not in adjh[w] for u in adjf[v]):
                continue
            mapping[v] = w
            used[w] = True
            if extend(i + 1):
                return True
            del mapping[v]
            used[w] = False
        return False

    return dict(mapping) if extend(0) else None


# ---------------------------------------------------------------------------
# Numeric invariants and predicates
# ---------------------------------------------------------------------------

def average_degree(g: Graph) -> Fraction:
    """Exact 2 e(g) / v(g)."""
    if g.vertex_count == 0:
        raise ValueError("average degree of the empty graph is undefined")
    return Fraction(2 * g.edge_count, g.vertex_count)


def enumerate_subgraphs(g: Graph, max_vertices: int) -> Iterator[Graph]:
    """All subgraphs given by a nonempty edge subset, endpoints relabeled.

    Subsets are enumerated in increasing bitmask order over the sorted edge
    list, so the stream is deterministic.  Only subgraphs spanning at most
    max_vertices vertices are yielded; isolated vertices never appear.
    """
    if max_vertices < 1:
        raise ValueError("max_vertices must be at least 1")
    es = g.sorted_edges
    m = len(es)
    if m > 22:
        raise ValueError(f"refusing exhaustive enumeration over 2^{m} edge subsets")
    for mask in range(1, 1 << m):
        chosen = [es[i] for i in range(m) if (mask >> i) & 1]
        support = sorted({x for e in chosen for x in e})
        if len(support) > max_vertices:
            continue
        index = {v: i for i, v in enumerate(support)}
        yield Graph.from_edges(((index[u], index[v]) for u, v in chosen), vertex_count=len(support))


def _require_connected_no_isolated(g: Graph, what: str) -> None:
    if g.vertex_count == 0 or g.edge_count == 0:
        raise ValueError(f"{what} needs a connected graph with at least one edge")
    if min(g.degrees()) == 0:
        raise ValueError(f"{what}: graph has isolated vertices; apply per connected component")
    if not is_connected(g):
        raise ValueError(f"{what}: graph is disconnected; apply per connected component")


def is_star(g: Graph) -> bool:
    """True iff g is K_{1,t} for some t >= 1 (connected input required)."""
    _require_connected_no_isolated(g, "is_star")
    return g.edge_count == g.vertex_count - 1 and max(g.degrees()) == g.edge_count


def is_eulerian(g: Graph) -> bool:
    """True iff every degree is even (connected input required)."""
    _require_connected_no_isolated(g, "is_eulerian")
    return all(d % 2 == 0 for d in g.degrees())


# ---------------------------------------------------------------------------
# Named small graphs
# ---------------------------------------------------------------------------

def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)], vertex_count=n)


def path(n: int) -> Graph:
    """Path on n vertices (n - 1 edges)."""
    if n < 1:
        raise ValueError("path needs at least 1 vertex")
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], vertex_count=n)


def star(leaves: int) -> Graph:
    """K_{1,leaves}: vertex 0 joined to each leaf."""
    if leaves < 1:
        raise ValueError("star needs at least 1 leaf")
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)], vertex_count=leaves + 1)


def complete(n: int) -> Graph:
    return Graph.from_edges(combinations(range(n), 2), vertex_count=n)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(((i, a + j) for i in range(a) for j in range(b)), vertex_count=a + b)
