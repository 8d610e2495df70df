"""Bounded-degree simple graphs, BFS balls and vertex boundaries."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BadParams,
    DegreeExceeded,
    Disconnected,
    DuplicateEdge,
    EmptySet,
    SelfLoop,
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with declared degree bound ``d``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``. Instances are
    immutable; build them with :func:`build_graph` so the invariants hold.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    d: int

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        # adjacency lists are short (<= d), linear scan is fine
        return v in a

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self, 0)) == self.n


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    d: int,
    *,
    require_connected: bool = False,
) -> Graph:
    """Validate an edge list and return a :class:`Graph`.

    Raises SelfLoop, DuplicateEdge, DegreeExceeded, and Disconnected (only
    when ``require_connected`` is set). Edge order does not matter.
    """
    if n < 0 or d < 0:
        raise BadParams(f"n and d must be non-negative (n={n}, d={d})")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise BadParams(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            raise DuplicateEdge(f"duplicate edge ({min(u, v)}, {max(u, v)})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    for v, s in enumerate(nbrs):
        if len(s) > d:
            raise DegreeExceeded(f"vertex {v} has degree {len(s)} > d={d}")
    g = Graph(n, tuple(tuple(sorted(s)) for s in nbrs), d)
    if require_connected and not g.is_connected():
        raise Disconnected("graph is not connected")
    return g


def bfs_distances(g: Graph, v: int, r: int | None = None) -> dict[int, int]:
    """Shortest-path distances from ``v`` to every vertex within ``r`` (all if None)."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if r is not None and dx >= r:
            continue
        for y in g.adj[x]:
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def bfs_ball(g: Graph, v: int, r: int) -> tuple[list[int], dict[int, int]]:
    """Vertices at distance at most ``r`` from ``v`` (sorted) and their distances."""
    if not 0 <= v < g.n:
        raise BadParams(f"vertex {v} out of range")
    if r < 0:
        raise BadParams("radius must be non-negative")
    dist = bfs_distances(g, v, r)
    return sorted(dist), dist


def vertex_set(g: Graph, a: Iterable[int]) -> list[int]:
    """Normalize ``a`` to a sorted duplicate-free vertex list, checking range."""
    s = sorted(set(int(x) for x in a))
    if s and not (0 <= s[0] and s[-1] < g.n):
        raise BadParams("vertex id out of range")
    return s


def vertex_boundary(g: Graph, a: Iterable[int]) -> list[int]:
    """Members of ``a`` having at least one neighbour outside ``a``."""
    s = set(vertex_set(g, a))
    return sorted(x for x in s if any(y not in s for y in g.adj[x]))


def is_connected_induced(g: Graph, a: Iterable[int]) -> bool:
    s = set(vertex_set(g, a))
    if not s:
        raise EmptySet("vertex set is empty")
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in s and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(s)


def induced_subgraph(g: Graph, a: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph relabelled to ``0..|a|-1`` in sorted order, plus the vertex list."""
    verts = vertex_set(g, a)
    index = {x: i for i, x in enumerate(verts)}
    edges = [(index[x], index[y]) for x in verts for y in g.adj[x] if y in index and x < y]
    return build_graph(len(verts), edges, g.d), verts


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()], g.d)
