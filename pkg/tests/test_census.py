import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_graph, cycle_graph, path_graph
from graphlimits.census import (
    BallCensus,
    RootedBall,
    ball_code,
    canonical_code,
    canonical_code_uncolored,
    census,
    census_uncolored,
    extract_rooted_ball,
    tv_distance,
)
from graphlimits.coloring import EdgeColoring, misra_gries
from graphlimits.errors import BallTooLarge, InvariantViolation, RadiusMismatch
from graphlimits.generators import cycle, random_bounded, random_regular, torus2d
from graphlimits.graph import bfs_distances, build_graph, relabel


def test_k2_ball_and_code():
    g = build_graph(2, [(0, 1)], 1)
    col = EdgeColoring({(0, 1): 1})
    b0 = extract_rooted_ball(g, col, 0, 1)
    assert b0.k == 2 and b0.nbrs == (((2, 1),), ((1, 1),))
    assert canonical_code(b0) == "2;1:(2,1);2:(1,1)"
    assert canonical_code(extract_rooted_ball(g, col, 1, 1)) == canonical_code(b0)


def test_c6_alternating_radius1():
    g, col = cycle(6)
    codes = {ball_code(g, col, v, 1) for v in range(6)}
    assert codes == {"3;1:(2,1),(3,2);2:(1,1);3:(1,2)"}


def test_path_end_ball():
    g = path_graph(3)
    col = EdgeColoring({(0, 1): 1, (1, 2): 2})
    assert extract_rooted_ball(g, col, 0, 1).k == 2


def test_ball_sizes_differ_codes_differ():
    g, col = cycle(6)
    assert ball_code(g, col, 0, 1) != ball_code(g, col, 0, 2)


def test_census_c6_single_class():
    g, col = cycle(6)
    c = census(g, col, 1)
    assert list(c.probabilities().values()) == [Fraction(1)]


def test_census_c5_breaks_symmetry():
    g = cycle_graph(5)
    col = misra_gries(g)
    c = census(g, col, 1)
    assert len(c.counts) >= 2 and sum(c.counts.values()) == 5


def test_tv_examples():
    a = BallCensus(1, 2, 2, {"A": 2})
    b = BallCensus(1, 2, 2, {"A": 1, "B": 1})
    c = BallCensus(1, 2, 3, {"C": 3})
    assert tv_distance(a, a) == 0
    assert tv_distance(a, c) == 1
    assert tv_distance(a, b) == Fraction(1, 2)
    with pytest.raises(RadiusMismatch):
        tv_distance(a, BallCensus(2, 2, 2, {"A": 2}))


def test_code_checks_invariants():
    bad = RootedBall(2, (((2, 1),), ()), 1, 1)  # asymmetric edge
    with pytest.raises(InvariantViolation):
        canonical_code(bad)
    far = RootedBall(3, (((2, 1),), ((1, 1), (3, 2)), ((2, 2),)), 1, 2)
    with pytest.raises(InvariantViolation):
        canonical_code(far)


def test_from_code_roundtrip():
    g, col = random_regular(3, 40, seed=5)
    for v in range(0, 40, 7):
        b = extract_rooted_ball(g, col, v, 3)
        assert RootedBall.from_code(canonical_code(b), 3, 3) == b


def _random_colored(seed):
    rng = random.Random(seed)
    return random_bounded(rng.randint(3, 40), rng.randint(2, 4), seed, extra=1.0)


@pytest.mark.parametrize("seed", range(12))
def test_label_monotone_and_refinement(seed):
    g, col = _random_colored(seed)
    for r in range(1, 4):
        big = census(g, col, r)
        assert sum(big.counts.values()) == g.n
        assert sum(big.probabilities().values()) == 1
        assert big.coarsen(r - 1) == census(g, col, r - 1)
    for v in range(g.n):
        b = extract_rooted_ball(g, col, v, 3)
        dist = b.distances()
        assert dist == sorted(dist)
        truth = bfs_distances(g, v, 3)
        assert sorted(truth.values()) == dist


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), r=st.integers(0, 3))
def test_census_invariant_under_relabeling(seed, r):
    g, col = _random_colored(seed)
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    h = relabel(g, perm)
    assert census(h, col.relabel(perm), r).counts == census(g, col, r).counts


def test_colored_codes_match_brute_force_isomorphism():
    # compare code equality with a brute-force rooted colored isomorphism test
    g, col = torus2d(3)
    balls = [extract_rooted_ball(g, col, v, 1) for v in range(g.n)]
    for a, b in itertools.combinations(balls, 2):
        assert (canonical_code(a) == canonical_code(b)) == _colored_iso(a, b)


def _colored_iso(a, b):
    if a.k != b.k:
        return False
    ea = {(i + 1, y, c) for i, row in enumerate(a.nbrs) for y, c in row}
    eb = {(i + 1, y, c) for i, row in enumerate(b.nbrs) for y, c in row}
    for perm in itertools.permutations(range(2, a.k + 1)):
        f = {1: 1, **{i + 2: p for i, p in enumerate(perm)}}
        if {(f[x], f[y], c) for x, y, c in ea} == eb:
            return True
    return False


def test_parallel_census_equals_sequential():
    g, col = random_regular(3, 120, seed=11)
    seq = census(g, col, 3)
    par = census(g, col, 3, workers=3)
    assert par == seq
    assert list(par.counts) == list(seq.counts)


def test_json_roundtrip():
    g, col = torus2d(6)
    c = census(g, col, 2)
    obj = c.to_json()
    assert all(e["code"].startswith("v1|") for e in obj["classes"])
    assert [e["code"] for e in obj["classes"]] == sorted(e["code"] for e in obj["classes"])
    assert BallCensus.from_json(obj) == c


# uncolored codes


def test_uncolored_examples():
    c6 = cycle_graph(6)
    codes = {canonical_code_uncolored(c6, v, 1) for v in range(6)}
    assert len(codes) == 1
    p7 = path_graph(7)
    assert canonical_code_uncolored(p7, 3, 1) == codes.pop()
    assert canonical_code_uncolored(complete_graph(4), 0, 1) != canonical_code_uncolored(c6, 0, 1)


def test_uncolored_guard():
    g, _ = random_regular(4, 100, seed=2)
    with pytest.raises(BallTooLarge):
        canonical_code_uncolored(g, 0, 3)


def _uncolored_iso(g, v, h, w, r):
    dg, dh = bfs_distances(g, v, r), bfs_distances(h, w, r)
    if len(dg) != len(dh):
        return False
    vg = sorted(dg, key=lambda x: (x != v, x))
    eg = {frozenset((x, y)) for x in dg for y in g.adj[x] if y in dg}
    eh = {frozenset((x, y)) for x in dh for y in h.adj[x] if y in dh}
    if len(eg) != len(eh):
        return False
    rest = [x for x in dh if x != w]
    for perm in itertools.permutations(rest):
        f = dict(zip(vg, [w] + list(perm)))
        if all(frozenset((f[x], f[y])) in eh for x, y in map(tuple, eg)):
            return True
    return False


def test_uncolored_codes_match_brute_force():
    rng = random.Random(0)
    graphs = [random_bounded(rng.randint(4, 9), 3, s, extra=0.8)[0] for s in range(10)]
    roots = [(g, v) for g in graphs for v in range(g.n)]
    rng.shuffle(roots)
    roots = roots[:40]
    for (g, v), (h, w) in itertools.combinations(roots, 2):
        if len(bfs_distances(g, v, 2)) > 7 or len(bfs_distances(h, w, 2)) > 7:
            continue
        same = canonical_code_uncolored(g, v, 2) == canonical_code_uncolored(h, w, 2)
        assert same == _uncolored_iso(g, v, h, w, 2)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_uncolored_invariant_under_relabeling(seed):
    rng = random.Random(seed)
    g, _ = random_bounded(rng.randint(3, 14), 4, seed, extra=1.0)
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = relabel(g, perm)
    for v in range(g.n):
        try:
            a = canonical_code_uncolored(g, v, 2)
        except BallTooLarge:
            continue
        assert a == canonical_code_uncolored(h, perm[v], 2)


def test_uncolored_census_ignores_coloring():
    g, _ = cycle(8)
    c = census_uncolored(g, 2)
    assert len(c.counts) == 1 and sum(c.counts.values()) == 8
