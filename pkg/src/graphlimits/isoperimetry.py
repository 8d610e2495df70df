"""Vertex-boundary isoperimetry: Cheeger constants, small good sets, packings.

A good set for ``(eps, k)`` is a connected induced vertex set ``A`` with
``|A| <= k`` and ``|boundary(A)| / |A| <= eps``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import BadParams, BudgetExceeded, EmptySet, NotConnected, TooLarge
from .graph import Graph, bfs_distances, is_connected_induced, vertex_boundary, vertex_set
from .spectral import fiedler_vector

DEFAULT_BUDGET = 10**7
MAX_EXACT_CHEEGER = 18
MAX_ENUM_K = 30


@dataclass(frozen=True, order=True)
class GoodSet:
    ratio: Fraction
    size: int
    vertices: tuple[int, ...]
    boundary_size: int

    @classmethod
    def of(cls, g: Graph, a: Iterable[int]) -> "GoodSet":
        verts = tuple(vertex_set(g, a))
        b = len(vertex_boundary(g, verts))
        return cls(Fraction(b, len(verts)), len(verts), verts, b)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "boundary": self.boundary_size, "ratio": str(self.ratio)}


@dataclass
class EnumerationStats:
    visited: int = 0
    emitted: int = 0
    complete: bool = True
    exhausted_roots: list[int] = field(default_factory=list)


def boundary_ratio(g: Graph, a: Iterable[int]) -> Fraction:
    verts = vertex_set(g, a)
    if not verts:
        raise EmptySet("vertex set is empty")
    if not is_connected_induced(g, verts):
        raise NotConnected("induced subgraph is not connected")
    return Fraction(len(vertex_boundary(g, verts)), len(verts))


def connected_sets(
    g: Graph,
    k: int,
    *,
    budget: int | None = DEFAULT_BUDGET,
    stats: EnumerationStats | None = None,
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(sorted vertices, boundary size)`` for every connected set of size <= k.

    Each set is produced once, from its minimum vertex ``v``: the search keeps
    a set ``S``, a frontier of addable vertices ``> v`` adjacent to ``S``, and
    an excluded set; it branches on one frontier vertex (include it, or
    exclude it for the rest of the branch). The branching vertex is the one
    with the most neighbours in ``S``, then the one nearest to ``v``, then the
    smallest id, so compact ball-like sets come out first.

    ``budget`` caps the number of sets visited. It is shared out among the
    roots in order: each root may use the unspent budget divided by the number
    of roots still to go. A root that runs out is cut short and the stats are
    marked incomplete.
    """
    if stats is None:
        stats = EnumerationStats()
    n = g.n
    adj = g.adj
    deg = [len(a) for a in adj]
    remaining = budget
    for v in range(n):
        allowance = None
        if remaining is not None:
            allowance = max(remaining // (n - v), 1)
        used = 0
        inside = {v: 0}
        # inside[x] = number of neighbours of x inside S
        members = [v]
        boundary = 1 if deg[v] > 0 else 0
        excluded: set[int] = set()
        near = bfs_distances(g, v, k)

        def frontier_add(x: int, front: dict[int, int]) -> list[int]:
            added = []
            for y in adj[x]:
                if y > v and y not in inside and y not in excluded:
                    if y in front:
                        front[y] += 1
                    else:
                        front[y] = 1
                        added.append(y)
            return added

        front: dict[int, int] = {}
        frontier_add(v, front)

        stack_out: list[tuple[tuple[int, ...], int]] = []

        def rec(front: dict[int, int]) -> bool:
            # returns False when the allowance is exhausted
            nonlocal boundary, used
            if len(members) >= k or not front:
                return True
            w = max(front, key=lambda x: (front[x], -near[x], -x))
            # include w
            cnt = 0
            for y in adj[w]:
                if y in inside:
                    inside[y] += 1
                    cnt += 1
                    if inside[y] == deg[y]:
                        boundary -= 1
            inside[w] = cnt
            if cnt < deg[w]:
                boundary += 1
            members.append(w)
            used += 1
            stats.visited += 1
            stack_out.append((tuple(sorted(members)), boundary))
            new_front = dict(front)
            del new_front[w]
            frontier_add(w, new_front)
            ok = True
            if allowance is not None and used >= allowance:
                ok = False
            else:
                ok = rec(new_front)
            members.pop()
            del inside[w]
            if cnt < deg[w]:
                boundary -= 1
            for y in adj[w]:
                if y in inside:
                    if inside[y] == deg[y]:
                        boundary += 1
                    inside[y] -= 1
            if not ok:
                return False
            # exclude w
            excluded.add(w)
            rest = dict(front)
            del rest[w]
            ok = rec(rest)
            excluded.discard(w)
            return ok

        # the singleton itself
        used += 1
        stats.visited += 1
        yield (v,), boundary
        finished = True
        if k > 1:
            if allowance is not None and used >= allowance:
                finished = not front
            else:
                finished = rec(front)
                yield from stack_out
        if not finished:
            stats.complete = False
            stats.exhausted_roots.append(v)
        if remaining is not None:
            remaining -= used


def enumerate_good_sets(
    g: Graph,
    eps,
    k: int,
    *,
    budget: int | None = DEFAULT_BUDGET,
    strict: bool = True,
    stats: EnumerationStats | None = None,
) -> Iterator[GoodSet]:
    """Stream every good set for ``(eps, k)``.

    If the visit budget runs out, everything found so far has been yielded
    and then BudgetExceeded is raised (``strict``) or ``stats.complete`` is
    left False (non-strict).
    """
    if k < 1:
        raise BadParams("k must be >= 1")
    if k > MAX_ENUM_K:
        raise TooLarge(f"k={k} exceeds enumeration limit {MAX_ENUM_K}")
    eps = Fraction(eps)
    if stats is None:
        stats = EnumerationStats()
    for verts, b in connected_sets(g, k, budget=budget, stats=stats):
        if b <= eps * len(verts):
            stats.emitted += 1
            yield GoodSet(Fraction(b, len(verts)), len(verts), verts, b)
    if strict and not stats.complete:
        raise BudgetExceeded(
            f"enumeration budget {budget} exhausted after {stats.visited} visited sets",
            visited=stats.visited,
        )


def collect_good_sets(g: Graph, eps, k: int, *, budget: int | None = DEFAULT_BUDGET):
    """All good sets found within ``budget`` plus the enumeration stats."""
    stats = EnumerationStats()
    sets = list(enumerate_good_sets(g, eps, k, budget=budget, strict=False, stats=stats))
    return sets, stats


def covered_vertices(sets: Iterable[GoodSet]) -> set[int]:
    out: set[int] = set()
    for s in sets:
        out.update(s.vertices)
    return out


def coverable_fraction(g: Graph, eps, k: int, *, budget: int | None = DEFAULT_BUDGET) -> Fraction:
    """Fraction of vertices lying in at least one good set."""
    sets = list(enumerate_good_sets(g, eps, k, budget=budget))
    return Fraction(len(covered_vertices(sets)), g.n)


# ---------------------------------------------------------------------------
# Cheeger constant


def _cheeger_key(s: GoodSet):
    return (s.ratio, s.size, s.vertices)


def cheeger_exact(g: Graph) -> tuple[Fraction, GoodSet]:
    """Minimum ``|boundary(A)|/|A|`` over connected induced ``A`` with ``|A| <= n/2``.

    Ties go to the smaller set, then the lexicographically smaller vertex list.
    """
    if g.n > MAX_EXACT_CHEEGER:
        raise TooLarge(f"n={g.n} exceeds exact Cheeger limit {MAX_EXACT_CHEEGER}")
    if g.n < 2:
        raise EmptySet("Cheeger constant needs at least two vertices")
    best = None
    for verts, b in connected_sets(g, g.n // 2, budget=None):
        cand = GoodSet(Fraction(b, len(verts)), len(verts), verts, b)
        if best is None or _cheeger_key(cand) < _cheeger_key(best):
            best = cand
    return best.ratio, best


def _components(g: Graph, verts: Iterable[int]) -> list[list[int]]:
    s = set(verts)
    seen: set[int] = set()
    out = []
    for x in sorted(s):
        if x in seen:
            continue
        comp = [x]
        seen.add(x)
        stack = [x]
        while stack:
            y = stack.pop()
            for z in g.adj[y]:
                if z in s and z not in seen:
                    seen.add(z)
                    comp.append(z)
                    stack.append(z)
        out.append(sorted(comp))
    return out


def cheeger_sweep(g: Graph, method: str = "auto") -> tuple[Fraction, GoodSet]:
    """Upper bound on the Cheeger constant from a Fiedler-vector sweep.

    Vertices are sorted by their Fiedler coordinate (ties by id); every
    connected component of every prefix with at most ``n/2`` vertices is a
    candidate. Both sweep directions are tried.
    """
    if g.n < 2:
        raise EmptySet("Cheeger constant needs at least two vertices")
    f = fiedler_vector(g, method)
    best = None
    for sign in (1.0, -1.0):
        order = sorted(range(g.n), key=lambda x: (sign * f[x], x))
        for size in range(1, g.n // 2 + 1):
            for comp in _components(g, order[:size]):
                cand = GoodSet.of(g, comp)
                if best is None or _cheeger_key(cand) < _cheeger_key(best):
                    best = cand
    return best.ratio, best


# ---------------------------------------------------------------------------
# packings


@dataclass
class GoodSetFamily:
    sets: list[GoodSet]
    n: int
    disjoint: bool = True
    complete: bool = True

    @property
    def count(self) -> int:
        return len(self.sets)

    @property
    def m_norm(self) -> Fraction:
        return Fraction(len(self.sets), self.n)

    def union(self) -> set[int]:
        return covered_vertices(self.sets)


def _greedy_key(s: GoodSet):
    return (s.ratio, -s.size, s.vertices)


def greedy_packing(candidates: Iterable[GoodSet], n: int) -> GoodSetFamily:
    used: set[int] = set()
    chosen = []
    for s in sorted(candidates, key=_greedy_key):
        if used.isdisjoint(s.vertices):
            chosen.append(s)
            used.update(s.vertices)
    return GoodSetFamily(chosen, n)


def pack_greedy(g: Graph, eps, k: int, *, budget: int | None = DEFAULT_BUDGET) -> GoodSetFamily:
    """Inclusion-maximal disjoint family of good sets, greedy by (ratio, -size, vertices)."""
    return greedy_packing(enumerate_good_sets(g, eps, k, budget=budget), g.n)


MAX_EXACT_SETS = 24
MAX_EXACT_N = 16


def exact_packing(candidates: list[GoodSet], n: int) -> GoodSetFamily:
    """Maximum number of pairwise disjoint sets among ``candidates``."""
    masks = []
    for s in candidates:
        m = 0
        for x in s.vertices:
            m |= 1 << x
        masks.append(m)
    by_min: dict[int, list[int]] = {}
    for i, m in enumerate(masks):
        low = (m & -m).bit_length() - 1
        by_min.setdefault(low, []).append(i)
    relevant = 0
    for m in masks:
        relevant |= m
    memo: dict[int, tuple[int, tuple[int, ...]]] = {}

    def best(avail: int) -> tuple[int, tuple[int, ...]]:
        # branch on the lowest available vertex still coverable by some set
        live = avail & relevant
        if not live:
            return 0, ()
        if live in memo:
            return memo[live]
        low = (live & -live).bit_length() - 1
        # either the lowest vertex stays uncovered ...
        result = best(live & ~(1 << low))
        # ... or it is covered by a set whose minimum it is
        for i in by_min.get(low, ()):
            if masks[i] & live == masks[i]:
                cnt, chosen = best(live & ~masks[i])
                if cnt + 1 > result[0]:
                    result = (cnt + 1, (i,) + chosen)
        memo[live] = result
        return result

    _, chosen = best(relevant)
    return GoodSetFamily([candidates[i] for i in sorted(chosen)], n)


def pack_exact(g: Graph, eps, k: int, *, budget: int | None = DEFAULT_BUDGET) -> GoodSetFamily:
    """Maximum-cardinality disjoint family of good sets (small instances only)."""
    candidates = list(enumerate_good_sets(g, eps, k, budget=budget))
    if len(candidates) > MAX_EXACT_SETS and g.n > MAX_EXACT_N:
        raise TooLarge(
            f"{len(candidates)} good sets on n={g.n}; exact packing needs "
            f"<= {MAX_EXACT_SETS} sets or n <= {MAX_EXACT_N}"
        )
    return exact_packing(candidates, g.n)


def packing_constant(d: int, k: int) -> Fraction:
    """``1 / (k * sum_{i<k} d^i)``: lower bound on ``m_norm / h_cover`` for maximal packings."""
    return Fraction(1, k * sum(d**i for i in range(k)))


def check_family(g: Graph, fam: GoodSetFamily, eps, k: int) -> None:
    """Re-verify witnesses against graph primitives; raise AssertionError on failure."""
    eps = Fraction(eps)
    seen: set[int] = set()
    for s in fam.sets:
        assert s.size <= k
        assert boundary_ratio(g, s.vertices) == s.ratio <= eps
        assert seen.isdisjoint(s.vertices)
        seen.update(s.vertices)


@dataclass
class IsoperimetryReport:
    eps: Fraction
    k: int
    n: int
    h_cover: Fraction
    family: GoodSetFamily
    status: str
    visited: int
    cheeger: Fraction | None = None
    cheeger_kind: str | None = None
    cheeger_witness: GoodSet | None = None
    best_ratio_by_size: dict[int, Fraction] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "eps": str(self.eps),
            "k": self.k,
            "n": self.n,
            "h_cover": str(self.h_cover),
            "m_norm": str(self.family.m_norm),
            "m_count": self.family.count,
            "family": [list(s.vertices) for s in self.family.sets],
            "status": self.status,
            "visited": self.visited,
            "best_ratio_by_size": {str(s): str(r) for s, r in sorted(self.best_ratio_by_size.items())},
        }
        if self.cheeger is not None:
            out[f"h_{self.cheeger_kind}"] = str(self.cheeger)
            out["cheeger_witness"] = list(self.cheeger_witness.vertices)
        return out


def isoperimetry_report(
    g: Graph,
    eps,
    k: int,
    *,
    budget: int | None = DEFAULT_BUDGET,
    cheeger: str | None = None,
) -> IsoperimetryReport:
    """Coverable fraction and greedy packing in one enumeration pass.

    With a budget overrun the numbers describe the good sets actually found
    and ``status`` is ``"budget_exceeded"``.
    """
    eps = Fraction(eps)
    stats = EnumerationStats()
    sets = []
    best: dict[int, Fraction] = {}
    for verts, b in connected_sets(g, k, budget=budget, stats=stats):
        r = Fraction(b, len(verts))
        if len(verts) not in best or r < best[len(verts)]:
            best[len(verts)] = r
        if r <= eps:
            sets.append(GoodSet(r, len(verts), verts, b))
    fam = greedy_packing(sets, g.n)
    fam.complete = stats.complete
    rep = IsoperimetryReport(
        eps,
        k,
        g.n,
        Fraction(len(covered_vertices(sets)), g.n),
        fam,
        "ok" if stats.complete else "budget_exceeded",
        stats.visited,
        best_ratio_by_size=best,
    )
    if cheeger == "exact":
        rep.cheeger, rep.cheeger_witness = cheeger_exact(g)
        rep.cheeger_kind = "exact"
    elif cheeger == "sweep":
        rep.cheeger, rep.cheeger_witness = cheeger_sweep(g)
        rep.cheeger_kind = "upper"
    return rep
