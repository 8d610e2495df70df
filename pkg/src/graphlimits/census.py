"""Rooted colored balls, their canonical codes, and neighbourhood censuses.

A ball of radius ``r`` around ``v`` is the subgraph induced on the vertices
within distance ``r``. It is labelled breadth-first from the root (label 1);
a dequeued vertex labels its unvisited neighbours in increasing order of the
connecting edge's color. Because the coloring is proper, this order is
forced, so two balls get the same code exactly when some color-preserving
isomorphism maps one root to the other.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .coloring import EdgeColoring
from .errors import BadParams, BallTooLarge, InvariantViolation, RadiusMismatch
from .graph import Graph, bfs_distances

CODE_VERSION = "v1"


@dataclass(frozen=True)
class RootedBall:
    """Canonically labelled rooted colored ball.

    ``nbrs[i]`` lists ``(neighbour label, color)`` pairs of label ``i + 1``
    sorted by color; labels run ``1..k`` and the root is label 1.
    """

    k: int
    nbrs: tuple[tuple[tuple[int, int], ...], ...]
    radius: int
    d: int

    def distances(self) -> list[int]:
        """Distance from the root for each label (index ``label - 1``)."""
        dist = [-1] * self.k
        dist[0] = 0
        queue = deque([1])
        while queue:
            x = queue.popleft()
            for y, _ in self.nbrs[x - 1]:
                if dist[y - 1] < 0:
                    dist[y - 1] = dist[x - 1] + 1
                    queue.append(y)
        return dist

    def degree(self, label: int) -> int:
        return len(self.nbrs[label - 1])

    def truncate(self, r: int) -> "RootedBall":
        """The radius-``r`` ball around the same root (``r <= radius``)."""
        if r > self.radius:
            raise BadParams(f"cannot truncate radius {self.radius} ball to {r}")
        dist = self.distances()
        keep = [i + 1 for i in range(self.k) if dist[i] <= r]
        # distance-monotone labels: the kept labels are exactly 1..len(keep)
        kk = len(keep)
        nbrs = tuple(
            tuple((y, c) for y, c in self.nbrs[x - 1] if y <= kk) for x in keep
        )
        return RootedBall(kk, nbrs, r, self.d)

    @classmethod
    def from_code(cls, code: str, radius: int, d: int) -> "RootedBall":
        body = code.split("|", 1)[1] if "|" in code else code
        parts = body.split(";")
        k = int(parts[0])
        if len(parts) != k + 1:
            raise InvariantViolation(f"malformed ball code: {code[:40]}")
        nbrs = []
        for i, part in enumerate(parts[1:], start=1):
            label, _, rest = part.partition(":")
            if int(label) != i:
                raise InvariantViolation(f"malformed ball code: {code[:40]}")
            pairs = tuple((int(a), int(b)) for a, b in re.findall(r"\((\d+),(\d+)\)", rest))
            nbrs.append(pairs)
        return cls(k, tuple(nbrs), radius, d)


def colored_adjacency(g: Graph, col: EdgeColoring) -> list[tuple[tuple[int, int], ...]]:
    """Per vertex, ``(color, neighbour)`` pairs sorted by color."""
    return [tuple(sorted((col.color(x, y), y) for y in g.adj[x])) for x in range(g.n)]


def _extract(cadj, v: int, r: int, d: int) -> RootedBall:
    label = {v: 1}
    order = [v]
    frontier = [v]
    for _ in range(r):
        nxt = []
        for x in frontier:
            for _, y in cadj[x]:
                if y not in label:
                    label[y] = len(order) + 1
                    order.append(y)
                    nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    nbrs = tuple(
        tuple((label[y], c) for c, y in cadj[x] if y in label) for x in order
    )
    return RootedBall(len(order), nbrs, r, d)


def extract_rooted_ball(g: Graph, col: EdgeColoring, v: int, r: int) -> RootedBall:
    """Radius-``r`` ball around ``v``, labelled breadth-first in edge-color order."""
    if not 0 <= v < g.n:
        raise BadParams(f"vertex {v} out of range")
    if r < 0:
        raise BadParams("radius must be non-negative")
    cadj = [()] * g.n
    for x in bfs_distances(g, v, r):
        cadj[x] = tuple(sorted((col.color(x, y), y) for y in g.adj[x]))
    return _extract(cadj, v, r, g.d)


def canonical_code(b: RootedBall) -> str:
    """Serialize as ``"k;1:(nbr,color),...;2:...;..."``."""
    _check_ball(b)
    return _code(b)


def _code(b: RootedBall) -> str:
    rows = [
        f"{i}:" + ",".join(f"({y},{c})" for y, c in b.nbrs[i - 1])
        for i in range(1, b.k + 1)
    ]
    return ";".join([str(b.k)] + rows)


def _check_ball(b: RootedBall) -> None:
    if b.k < 1 or len(b.nbrs) != b.k:
        raise InvariantViolation("ball must have labels 1..k")
    for i, row in enumerate(b.nbrs, start=1):
        colors = [c for _, c in row]
        if colors != sorted(set(colors)):
            raise InvariantViolation(f"label {i}: colors not distinct and sorted")
        for y, c in row:
            if not 1 <= y <= b.k or y == i:
                raise InvariantViolation(f"label {i}: bad neighbour {y}")
            if (i, c) not in b.nbrs[y - 1]:
                raise InvariantViolation(f"edge {i}-{y} not symmetric")
    dist = b.distances()
    if min(dist) < 0:
        raise InvariantViolation("ball is not connected")
    if max(dist) > b.radius:
        raise InvariantViolation("ball eccentricity exceeds its radius")
    if dist != sorted(dist):
        raise InvariantViolation("labels are not distance-monotone")


def ball_code(g: Graph, col: EdgeColoring, v: int, r: int) -> str:
    return canonical_code(extract_rooted_ball(g, col, v, r))


@dataclass(frozen=True)
class BallCensus:
    """Distribution of rooted ball classes over all root choices."""

    r: int
    d: int
    n: int
    counts: Mapping[str, int]

    def p(self, code: str) -> Fraction:
        return Fraction(self.counts.get(code, 0), self.n)

    def probabilities(self) -> dict[str, Fraction]:
        return {c: Fraction(k, self.n) for c, k in self.counts.items()}

    def coarsen(self, r: int) -> "BallCensus":
        """Merge classes by their radius-``r`` truncation."""
        merged: Counter[str] = Counter()
        for code, cnt in self.counts.items():
            ball = RootedBall.from_code(code, self.r, self.d).truncate(r)
            merged[canonical_code(ball)] += cnt
        return BallCensus(r, self.d, self.n, dict(sorted(merged.items())))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "n": self.n,
            "classes": [
                {"code": f"{CODE_VERSION}|{c}", "count": k}
                for c, k in sorted(self.counts.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "BallCensus":
        counts = {}
        for entry in obj["classes"]:
            code = entry["code"]
            if "|" in code:
                tag, code = code.split("|", 1)
                if tag != CODE_VERSION:
                    raise BadParams(f"unsupported code version {tag!r}")
            counts[code] = int(entry["count"])
        return cls(int(obj["r"]), int(obj["d"]), int(obj["n"]), dict(sorted(counts.items())))


def _count_codes(args) -> Counter:
    g, col, r, roots = args
    cadj = colored_adjacency(g, col)
    return Counter(_code(_extract(cadj, v, r, g.d)) for v in roots)


def census(
    g: Graph, col: EdgeColoring, r: int, *, workers: int | None = None
) -> BallCensus:
    """Count ball classes of radius ``r`` over every root.

    With ``workers > 1`` roots are split into contiguous chunks evaluated in
    a process pool; counts are merged in chunk order, so the result is the
    same value as the sequential census.
    """
    if workers is None or workers <= 1 or g.n < 2:
        counts = _count_codes((g, col, r, range(g.n)))
    else:
        step = -(-g.n // workers)
        chunks = [(g, col, r, range(i, min(i + step, g.n))) for i in range(0, g.n, step)]
        counts = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_count_codes, chunks):
                counts.update(part)
    return BallCensus(r, g.d, g.n, dict(sorted(counts.items())))


def tv_distance(a: BallCensus, b: BallCensus) -> Fraction:
    """Total variation distance ``1/2 * sum |p_a - p_b|`` (exact)."""
    if a.r != b.r or a.d != b.d:
        raise RadiusMismatch(f"censuses differ in (r, d): ({a.r}, {a.d}) vs ({b.r}, {b.d})")
    total = Fraction(0)
    for code in set(a.counts) | set(b.counts):
        total += abs(a.p(code) - b.p(code))
    return total / 2


# ---------------------------------------------------------------------------
# uncolored rooted balls

MAX_UNCOLORED_BALL = 20


def _refine(verts: list[int], dist: dict[int, int], nb: dict[int, set[int]]) -> dict[int, int]:
    """Isomorphism-invariant vertex colors: distance layer refined by neighbour colors."""
    color = {x: dist[x] for x in verts}
    while True:
        sig = {x: (color[x], tuple(sorted(color[y] for y in nb[x]))) for x in verts}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {x: ranks[sig[x]] for x in verts}
        if len(set(new.values())) == len(set(color.values())):
            return new
        color = new


def canonical_code_uncolored(g: Graph, v: int, r: int) -> str:
    """Canonical code of the uncolored radius-``r`` ball around ``v``.

    Among breadth-first labelings that are distance-monotone and respect an
    invariant refinement of the vertices, pick the one whose column-wise
    upper-triangular adjacency string is lexicographically smallest, using
    branch-and-bound on prefixes. Interchangeable twin vertices are branched
    on once.
    """
    dist = bfs_distances(g, v, r)
    verts = sorted(dist)
    if len(verts) > MAX_UNCOLORED_BALL:
        raise BallTooLarge(
            f"ball has {len(verts)} vertices; limit is {MAX_UNCOLORED_BALL}"
        )
    inside = set(verts)
    nb = {x: {y for y in g.adj[x] if y in inside} for x in verts}
    color = _refine(verts, dist, nb)
    k = len(verts)
    best: list[tuple[int, ...]] = []
    best_order: list[int] = []

    def columns_cmp(prefix: list[tuple[int, ...]]) -> int:
        b = best[: len(prefix)]
        return (prefix > b) - (prefix < b)

    def search(order: list[int], cols: list[tuple[int, ...]]) -> None:
        nonlocal best, best_order
        if best and columns_cmp(cols) > 0:
            return
        if len(order) == k:
            if not best or cols < best:
                best = list(cols)
                best_order = list(order)
            return
        placed = set(order)
        rest = [x for x in verts if x not in placed]
        key_min = min((color[x] for x in rest))
        cands = [x for x in rest if color[x] == key_min]
        # column entries: 0 for an edge to a placed label, 1 otherwise, so
        # early adjacency sorts first
        scored = sorted(
            (tuple(0 if y in nb[x] else 1 for y in order), x) for x in cands
        )
        top = scored[0][0]
        tried: list[int] = []
        for c, x in scored:
            if c != top:
                break
            if any(_twins(nb, x, y) for y in tried):
                continue
            tried.append(x)
            search(order + [x], cols + [c])

    # root first; everything else ordered by (layer-refined color, adjacency)
    search([v], [()])
    index = {x: i + 1 for i, x in enumerate(best_order)}
    rows = [
        f"{i + 1}:" + ",".join(str(j) for j in sorted(index[y] for y in nb[x]))
        for i, x in enumerate(best_order)
    ]
    return ";".join([str(k)] + rows)


def _twins(nb: Mapping[int, set[int]], x: int, y: int) -> bool:
    return nb[x] - {y} == nb[y] - {x}


def census_uncolored(g: Graph, r: int) -> BallCensus:
    counts = Counter(canonical_code_uncolored(g, v, r) for v in range(g.n))
    return BallCensus(r, g.d, g.n, dict(sorted(counts.items())))


def summarize(c: BallCensus, top: int = 5) -> dict:
    ranked = sorted(c.counts.items(), key=lambda t: (-t[1], t[0]))
    return {
        "r": c.r,
        "n": c.n,
        "classes": len(c.counts),
        "top": [{"code": f"{CODE_VERSION}|{code}", "count": cnt} for code, cnt in ranked[:top]],
    }


def union_codes(censuses: Iterable[BallCensus]) -> list[str]:
    out: set[str] = set()
    for c in censuses:
        out.update(c.counts)
    return sorted(out)
