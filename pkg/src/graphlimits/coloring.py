"""Proper edge colorings with at most ``max_degree + 1`` colors (Misra-Gries)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InvariantViolation
from .graph import Graph


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class EdgeColoring:
    """Map from undirected edge ``(u, v)``, ``u < v``, to a color in ``1..d+1``."""

    colors: Mapping[tuple[int, int], int]

    def __getitem__(self, edge: tuple[int, int]) -> int:
        return self.colors[_key(*edge)]

    def color(self, u: int, v: int) -> int:
        return self.colors[_key(u, v)]

    def num_colors(self) -> int:
        return len(set(self.colors.values()))

    def relabel(self, perm) -> "EdgeColoring":
        return EdgeColoring({_key(perm[u], perm[v]): c for (u, v), c in self.colors.items()})


def check_coloring(g: Graph, col: EdgeColoring) -> None:
    """Raise InvariantViolation unless ``col`` is a total proper coloring in ``1..d+1``."""
    edges = g.edges()
    if set(col.colors) != set(edges):
        raise InvariantViolation("coloring does not cover exactly the edge set")
    for u in range(g.n):
        seen = set()
        for v in g.adj[u]:
            c = col.color(u, v)
            if not 1 <= c <= g.d + 1:
                raise InvariantViolation(f"color {c} on ({u}, {v}) outside 1..{g.d + 1}")
            if c in seen:
                raise InvariantViolation(f"color {c} repeated at vertex {u}")
            seen.add(c)


def is_proper(g: Graph, col: EdgeColoring) -> bool:
    try:
        check_coloring(g, col)
    except InvariantViolation:
        return False
    return True


class _State:
    """Partial coloring with per-vertex color -> neighbour index."""

    def __init__(self, g: Graph, ncolors: int):
        self.g = g
        self.ncolors = ncolors
        self.at: list[dict[int, int]] = [{} for _ in range(g.n)]
        self.col: dict[tuple[int, int], int] = {}

    def get(self, u: int, v: int) -> int:
        return self.col.get(_key(u, v), 0)

    def set(self, u: int, v: int, c: int) -> None:
        old = self.col.get(_key(u, v), 0)
        if old:
            del self.at[u][old]
            del self.at[v][old]
        if c:
            assert c not in self.at[u] and c not in self.at[v]
            self.col[_key(u, v)] = c
            self.at[u][c] = v
            self.at[v][c] = u
        else:
            self.col.pop(_key(u, v), None)

    def is_free(self, x: int, c: int) -> bool:
        return c not in self.at[x]

    def free_color(self, x: int) -> int:
        for c in range(1, self.ncolors + 1):
            if c not in self.at[x]:
                return c
        raise InvariantViolation(f"no free color at vertex {x}")


def _maximal_fan(s: _State, u: int, v: int) -> list[int]:
    fan = [v]
    in_fan = {v}
    while True:
        last = fan[-1]
        nxt = None
        for x in s.g.adj[u]:
            if x in in_fan:
                continue
            c = s.get(u, x)
            if c and s.is_free(last, c):
                nxt = x
                break
        if nxt is None:
            return fan
        fan.append(nxt)
        in_fan.add(nxt)


def _invert_path(s: _State, u: int, c: int, d: int) -> None:
    # maximal path from u alternating d, c, d, ...; c is free at u
    path = []
    x, want = u, d
    while want in s.at[x]:
        y = s.at[x][want]
        path.append((x, y, want))
        x, want = y, (c if want == d else d)
    for a, b, _ in path:
        s.set(a, b, 0)
    for a, b, cc in path:
        s.set(a, b, c if cc == d else d)


def misra_gries(g: Graph) -> EdgeColoring:
    """Color the edges of ``g`` with at most ``max_degree + 1`` colors.

    Edges are processed in lexicographic ``(u, v)`` order and every choice
    takes the smallest candidate, so the result is a function of ``g`` alone.
    """
    s = _State(g, g.max_degree + 1)
    for u, v in g.edges():
        fan = _maximal_fan(s, u, v)
        c = s.free_color(u)
        d = s.free_color(fan[-1])
        if c != d:
            _invert_path(s, u, c, d)
        # after inversion d is free at u; find the first fan prefix ending in a vertex where d is free
        w = None
        for i, x in enumerate(fan):
            if i > 0 and not s.is_free(fan[i - 1], s.get(u, x)):
                break
            if s.is_free(x, d):
                w = i
                break
        if w is None:
            raise InvariantViolation(f"Misra-Gries found no rotation point for edge ({u}, {v})")
        # rotate the fan prefix: edge (u, fan[j]) takes the color of (u, fan[j+1])
        for j in range(w):
            nc = s.get(u, fan[j + 1])
            s.set(u, fan[j + 1], 0)
            s.set(u, fan[j], nc)
        s.set(u, fan[w], d)
    col = EdgeColoring(dict(sorted(s.col.items())))
    check_coloring(g, col)
    return col


def proper_edge_coloring(g: Graph) -> EdgeColoring:
    return misra_gries(g)
