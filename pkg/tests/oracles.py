"""Brute-force reference computations, deliberately independent of the package code paths."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def adjacency_sets(n, edges):
    nb = [set() for _ in range(n)]
    for u, v in edges:
        nb[u].add(v)
        nb[v].add(u)
    return nb


def laplacian_exact(n, edges):
    """Laplacian as an object-dtype matrix of Python ints."""
    lap = np.zeros((n, n), dtype=object)
    for u, v in edges:
        lap[u, v] -= 1
        lap[v, u] -= 1
        lap[u, u] += 1
        lap[v, v] += 1
    return lap


def trace_moment(n, edges, p):
    """Tr(L^p) / n by dense exact matrix powers."""
    lap = laplacian_exact(n, edges)
    acc = np.identity(n, dtype=object)
    for _ in range(p):
        acc = acc.dot(lap)
    return Fraction(int(sum(acc[i, i] for i in range(n))), n)


def induced_connected(nb, s):
    s = set(s)
    if not s:
        return False
    start = min(s)
    seen, todo = {start}, [start]
    while todo:
        x = todo.pop()
        for y in nb[x] & s:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen == s


def boundary(nb, s):
    s = set(s)
    return {x for x in s if nb[x] - s}


def all_connected_subsets(n, edges, kmax):
    nb = adjacency_sets(n, edges)
    for size in range(1, kmax + 1):
        for s in itertools.combinations(range(n), size):
            if induced_connected(nb, s):
                yield s, Fraction(len(boundary(nb, s)), size)


def cheeger_bruteforce(n, edges):
    return min(r for _, r in all_connected_subsets(n, edges, n // 2))


def good_sets_bruteforce(n, edges, eps, k):
    return sorted(s for s, r in all_connected_subsets(n, edges, k) if r <= Fraction(eps))


def max_disjoint_bruteforce(sets):
    # a disjoint family of size s contains one of size s - 1, so stop at the first miss
    sets = [frozenset(s) for s in sets]
    best = 0
    for size in range(1, len(sets) + 1):
        if not any(
            sum(len(s) for s in combo) == len(frozenset().union(*combo))
            for combo in itertools.combinations(sets, size)
        ):
            break
        best = size
    return best


def min_maximal_disjoint_bruteforce(sets):
    """Smallest size of an inclusion-maximal disjoint subfamily."""
    sets = [frozenset(s) for s in sets]
    best = None
    for size in range(0, len(sets) + 1):
        for combo in itertools.combinations(sets, size):
            union = frozenset().union(*combo) if combo else frozenset()
            if sum(len(s) for s in combo) != len(union):
                continue
            if all(s & union for s in sets):
                return size
    return best


def edge_2_colorable(n, edges):
    """Whether some assignment of colors {1, 2} to the edges is proper."""
    nb_edges = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        nb_edges[u].append(i)
        nb_edges[v].append(i)
    for assign in itertools.product((1, 2), repeat=len(edges)):
        if all(len({assign[i] for i in inc}) == len(inc) for inc in nb_edges):
            return True
    return False
