"""Graph families used as test sequences, each with a fixed edge coloring.

Even cycles and even tori get translation-invariant colorings (alternating
1, 2 along each cycle direction; 3, 4 for the second torus direction), so
every vertex sees the same colored neighbourhood. Everything else is
colored by Misra-Gries.
"""

from __future__ import annotations

import random

from .coloring import EdgeColoring, check_coloring, misra_gries
from .errors import BadParams, RetriesExhausted
from .graph import Graph, build_graph

MASK64 = (1 << 64) - 1
SEED_MIX = 0x9E3779B97F4A7C15
MAX_RETRIES = 1000


def member_seed(seed: int, index: int) -> int:
    """Per-member seed: ``seed XOR (index * 0x9E3779B97F4A7C15)`` modulo 2**64."""
    return (seed ^ (index * SEED_MIX)) & MASK64


def cycle(n: int, d: int = 2) -> tuple[Graph, EdgeColoring]:
    if n < 3:
        raise BadParams("cycle needs n >= 3")
    g = build_graph(n, [(i, (i + 1) % n) for i in range(n)], d)
    if n % 2:
        return g, misra_gries(g)
    col = {}
    for i in range(n):
        j = (i + 1) % n
        col[(min(i, j), max(i, j))] = 1 if i % 2 == 0 else 2
    return g, EdgeColoring(dict(sorted(col.items())))


def path(n: int, d: int = 2) -> tuple[Graph, EdgeColoring]:
    if n < 1:
        raise BadParams("path needs n >= 1")
    g = build_graph(n, [(i, i + 1) for i in range(n - 1)], d)
    return g, EdgeColoring({(i, i + 1): 1 + i % 2 for i in range(n - 1)})


def complete(n: int, d: int | None = None) -> tuple[Graph, EdgeColoring]:
    if n < 1:
        raise BadParams("complete graph needs n >= 1")
    d = n - 1 if d is None else d
    g = build_graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)], d)
    return g, misra_gries(g)


def torus2d(s: int, d: int = 4) -> tuple[Graph, EdgeColoring]:
    """``s x s`` grid with wraparound; vertex ``(x, y)`` has id ``x * s + y``."""
    if s < 3:
        raise BadParams("torus2d needs s >= 3")
    idx = lambda x, y: (x % s) * s + (y % s)  # noqa: E731
    col = {}
    for x in range(s):
        for y in range(s):
            a, b = idx(x, y), idx(x + 1, y)
            col[(min(a, b), max(a, b))] = 1 if x % 2 == 0 else 2
            a, b = idx(x, y), idx(x, y + 1)
            col[(min(a, b), max(a, b))] = 3 if y % 2 == 0 else 4
    g = build_graph(s * s, list(col), d)
    if s % 2:
        return g, misra_gries(g)
    return g, EdgeColoring(dict(sorted(col.items())))


def binary_tree(depth: int, d: int = 3) -> tuple[Graph, EdgeColoring]:
    """Complete binary tree with ``2**(depth+1) - 1`` vertices; children of ``i`` are ``2i+1, 2i+2``."""
    if depth < 0:
        raise BadParams("depth must be >= 0")
    n = 2 ** (depth + 1) - 1
    g = build_graph(n, [((i - 1) // 2, i) for i in range(1, n)], d)
    return g, misra_gries(g)


def random_regular(d: int, n: int, seed: int, *, bound: int | None = None) -> tuple[Graph, EdgeColoring]:
    """Simple connected ``d``-regular graph from the configuration model.

    Half-edges are shuffled (Fisher-Yates, seeded) and paired consecutively;
    pairings with loops, repeated edges or more than one component are
    rejected and redrawn, at most ``MAX_RETRIES`` times.
    """
    if d < 1 or n <= d or (d * n) % 2:
        raise BadParams(f"random_regular needs 1 <= d < n and d*n even (d={d}, n={n})")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    for _ in range(MAX_RETRIES):
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            e = (min(u, v), max(u, v))
            if u == v or e in edges:
                ok = False
                break
            edges.add(e)
        if not ok:
            continue
        g = build_graph(n, sorted(edges), d if bound is None else bound)
        if g.is_connected():
            return g, misra_gries(g)
    raise RetriesExhausted(f"no simple connected {d}-regular graph on {n} vertices in {MAX_RETRIES} tries")


def random_bounded(n: int, d: int, seed: int, extra: float = 0.5) -> tuple[Graph, EdgeColoring]:
    """Random connected graph with maximum degree <= ``d``.

    A random spanning tree is grown under the degree cap, then about
    ``extra * n`` random non-edges are added where both endpoints have room.
    """
    if n < 1 or (d < 2 and n > 2) or (d < 1 and n > 1):
        raise BadParams(f"cannot build a connected graph with n={n}, d={d}")
    rng = random.Random(seed)
    deg = [0] * n
    edges: set[tuple[int, int]] = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        v = order[i]
        room = [u for u in order[:i] if deg[u] < d]
        u = rng.choice(room)
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1
    for _ in range(int(extra * n)):
        u, v = rng.randrange(n), rng.randrange(n)
        e = (min(u, v), max(u, v))
        if u != v and e not in edges and deg[u] < d and deg[v] < d:
            edges.add(e)
            deg[u] += 1
            deg[v] += 1
    g = build_graph(n, sorted(edges), d)
    return g, misra_gries(g)


FAMILY_DEGREE = {"cycle": 2, "torus2d": 4, "binary_tree": 3}


def generate_family(family: str, size: int, d: int | None, seed: int) -> tuple[Graph, EdgeColoring]:
    """One member of a named family; ``size`` is n, side length or depth as appropriate."""
    if family == "cycle":
        out = cycle(size, d or 2)
    elif family == "torus2d":
        out = torus2d(size, d or 4)
    elif family == "binary_tree":
        out = binary_tree(size, d or 3)
    elif family == "random_regular":
        if d is None:
            raise BadParams("random_regular needs d")
        out = random_regular(d, size, seed)
    elif family == "random_bounded":
        if d is None:
            raise BadParams("random_bounded needs d")
        out = random_bounded(size, d, seed)
    elif family == "complete":
        out = complete(size, d)
    else:
        raise BadParams(f"unknown family {family!r}")
    check_coloring(*out)
    return out
