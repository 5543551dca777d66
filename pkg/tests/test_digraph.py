import itertools
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftdg import (
    Digraph,
    EventuallyPeriodicWalk,
    InvalidWalk,
    NotStronglyConnected,
    Walk,
    backward_extend,
    covering_closed_walk,
    diligent_schedule,
    find_isomorphism,
    is_diligent,
    is_strongly_connected,
    shortest_path,
    strongly_connected_components,
)

TWO_CYCLE = Digraph(["a", "b"], [("a", "b"), ("b", "a")])
TWO_LOOPS = Digraph(["x", "y"], [("x", "x"), ("y", "y")])
LOOP = Digraph(["a"], [("a", "a")])
BARE = Digraph(["a"], [])
A3 = Digraph(
    ["A", "B", "C"],
    [("A", "A"), ("B", "B"), ("C", "C"), ("A", "B"), ("B", "A"), ("B", "C"), ("C", "B")],
)


def bfs_reachable(g, u):
    """Vertices reachable from u by walks of length >= 1 (test oracle)."""
    seen = set()
    frontier = deque(g.successors(u))
    while frontier:
        v = frontier.popleft()
        if v in seen:
            continue
        seen.add(v)
        frontier.extend(g.successors(v))
    return seen


def sc_by_pairwise_bfs(g):
    if not g.vertices:
        return False
    return all(
        v in bfs_reachable(g, u) for u in g.vertices for v in g.vertices
    )


def shortest_covering_walk_length(g, v, w):
    """BFS over (vertex, covered-edge-set) states: the length of the
    shortest walk from v to w traversing every edge (test oracle)."""
    edges = sorted(g.edges)
    index = {e: i for i, e in enumerate(edges)}
    full = (1 << len(edges)) - 1
    start = (v, 0)
    dist = {start: 0}
    frontier = deque([start])
    while frontier:
        x, mask = frontier.popleft()
        if x == w and mask == full:
            return dist[(x, mask)]
        for y in g.successors(x):
            state = (y, mask | 1 << index[(x, y)])
            if state not in dist:
                dist[state] = dist[(x, mask)] + 1
                frontier.append(state)
    return None


def all_digraphs(n):
    labels = [f"v{i}" for i in range(n)]
    pairs = [(u, v) for u in labels for v in labels]
    for mask in range(1 << len(pairs)):
        yield Digraph(labels, [p for i, p in enumerate(pairs) if mask >> i & 1])


def test_digraph_validation():
    with pytest.raises(ValueError):
        Digraph(["a", "a"], [])
    with pytest.raises(ValueError):
        Digraph(["a"], [("a", "b")])


def test_strong_connectivity_basics():
    assert is_strongly_connected(TWO_CYCLE)
    assert not is_strongly_connected(TWO_LOOPS)
    assert is_strongly_connected(LOOP)
    assert not is_strongly_connected(BARE)
    assert not is_strongly_connected(Digraph([], []))


def test_scc_decomposition():
    assert strongly_connected_components(TWO_CYCLE) == [["a", "b"]]
    assert strongly_connected_components(TWO_LOOPS) == [["x"], ["y"]]
    chain = Digraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "b")])
    assert strongly_connected_components(chain) == [["a"], ["b", "c"]]


def test_scc_agrees_with_connectivity_exhaustively():
    for n in range(5):
        for g in all_digraphs(n):
            comps = strongly_connected_components(g)
            assert sorted(v for c in comps for v in c) == sorted(g.vertices)
            one_comp = len(comps) == 1 and bool(g.vertices)
            no_isolated = all(not g.is_isolated(v) for v in g.vertices)
            expected = one_comp and no_isolated and (
                len(g.vertices) > 1 or g.has_edge(g.vertices[0], g.vertices[0])
            )
            assert is_strongly_connected(g) == expected == sc_by_pairwise_bfs(g)


@pytest.mark.slow
def test_sc_agrees_with_bfs_on_five_vertices():
    for g in all_digraphs(5):
        assert is_strongly_connected(g) == sc_by_pairwise_bfs(g)


@given(st.integers(0, 2**25 - 1))
@settings(max_examples=300, deadline=None)
def test_sc_agrees_with_bfs_sampled_five_vertices(mask):
    labels = [f"v{i}" for i in range(5)]
    edges = [
        (labels[i], labels[j])
        for i in range(5)
        for j in range(5)
        if mask >> (i * 5 + j) & 1
    ]
    g = Digraph(labels, edges)
    assert is_strongly_connected(g) == sc_by_pairwise_bfs(g)


def test_covering_closed_walk_two_cycle():
    # Oracle: the shortest covering walk from a to a has length 2, and the
    # only such walk is a,b,a.
    assert shortest_covering_walk_length(TWO_CYCLE, "a", "a") == 2
    walk = covering_closed_walk(TWO_CYCLE, "a", "a")
    assert walk.steps == ("a", "b", "a")


def test_covering_closed_walk_loop():
    assert covering_closed_walk(LOOP, "a", "a").steps == ("a", "a")


def test_covering_closed_walk_a3():
    # Oracle: 7 edges and an Eulerian circuit exists, so the optimum is 7.
    assert shortest_covering_walk_length(A3, "A", "A") == 7
    walk = covering_closed_walk(A3, "A", "A")
    assert walk.length >= 7
    assert walk.is_walk_in(A3)
    assert walk.covers_all_edges(A3)
    assert walk.start == walk.end == "A"


def test_covering_walk_properties_exhaustive():
    for g in all_digraphs(3):
        if not is_strongly_connected(g):
            continue
        for v in g.vertices:
            for w in g.vertices:
                walk = covering_closed_walk(g, v, w)
                assert walk.is_walk_in(g)
                assert walk.covers_all_edges(g)
                assert walk.start == v and walk.end == w
                assert walk.length <= len(g.edges) * (len(g.vertices) + 1)


def test_covering_walk_requires_connectivity():
    with pytest.raises(NotStronglyConnected):
        covering_closed_walk(TWO_LOOPS, "x", "x")


def test_backward_extend():
    assert backward_extend(TWO_CYCLE, "a", 3).steps == ("b", "a", "b", "a")
    assert backward_extend(LOOP, "a", 5).steps == ("a",) * 6
    walk = backward_extend(A3, "C", 1)
    assert walk.length == 1 and walk.end == "C" and walk.is_walk_in(A3)
    with pytest.raises(NotStronglyConnected):
        backward_extend(TWO_LOOPS, "x", 2)


def test_backward_extend_lengths_exhaustive():
    for g in all_digraphs(3):
        if not is_strongly_connected(g):
            continue
        for v in g.vertices:
            for length in range(7):
                walk = backward_extend(g, v, length)
                assert walk.length == length
                assert walk.end == v
                assert walk.is_walk_in(g)


def test_diligent_schedule_two_cycle():
    assert diligent_schedule(TWO_CYCLE).period == ("a", "b")
    assert diligent_schedule(LOOP).period == ("a",)


def test_diligent_schedule_a3():
    sched = diligent_schedule(A3)
    assert len(sched.period) >= 7
    assert sched.preamble == ()
    assert is_diligent(A3, sched)


def test_is_diligent():
    assert is_diligent(TWO_CYCLE, EventuallyPeriodicWalk((), ["a", "b"]))
    loops = Digraph(["a", "b"], [("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")])
    assert not is_diligent(loops, EventuallyPeriodicWalk((), ["a", "b"]))
    with pytest.raises(InvalidWalk):
        is_diligent(TWO_CYCLE, EventuallyPeriodicWalk((), ["a", "a"]))


def test_walks0_characterization_exhaustive():
    # Strong connectivity iff no isolated vertices, positive degrees, and a
    # diligent schedule can be built and accepted.
    for g in all_digraphs(3):
        sc = is_strongly_connected(g)
        degrees_ok = bool(g.vertices) and all(
            g.in_degree(v) > 0 and g.out_degree(v) > 0 for v in g.vertices
        )
        try:
            sched = diligent_schedule(g)
            built = is_diligent(g, sched)
        except NotStronglyConnected:
            built = False
        assert sc == (degrees_ok and built)


def test_epwalk_values_and_pairs():
    w = EventuallyPeriodicWalk(["x"], ["y", "z"])
    assert [w.value(i) for i in range(6)] == ["x", "y", "z", "y", "z", "y"]
    assert w.cycle_pairs() == {("y", "z"), ("z", "y")}
    with pytest.raises(ValueError):
        EventuallyPeriodicWalk(["x"], [])


def test_epwalk_same_values():
    w1 = EventuallyPeriodicWalk((), ["a", "b"])
    w2 = EventuallyPeriodicWalk(["a"], ["b", "a"])
    w3 = EventuallyPeriodicWalk((), ["b", "a"])
    assert w1.same_values(w2)
    assert not w1.same_values(w3)


def test_shortest_path_determinism():
    g = Digraph(
        ["s", "m1", "m2", "t"],
        [("s", "m1"), ("s", "m2"), ("m1", "t"), ("m2", "t"), ("t", "s")],
    )
    assert shortest_path(g, "s", "t").steps == ("s", "m1", "t")
    assert shortest_path(g, "s", "s").steps == ("s",)
    assert shortest_path(TWO_LOOPS, "x", "y") is None


def test_json_roundtrip():
    for g in [TWO_CYCLE, A3, BARE]:
        assert Digraph.from_obj(g.to_obj()) == g
    w = Walk(["a", "b", "a"])
    assert Walk.from_obj(w.to_obj()) == w
    ep = EventuallyPeriodicWalk(["a"], ["b", "a"])
    assert EventuallyPeriodicWalk.from_obj(ep.to_obj()) == ep


def test_dot_export():
    dot = TWO_CYCLE.to_dot()
    assert dot.startswith("digraph G {")
    assert '"a" -> "b";' in dot


def test_find_isomorphism():
    g = Digraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    h = Digraph(["x", "y", "z"], [("y", "x"), ("x", "z"), ("z", "y")])
    iso = find_isomorphism(g, h)
    assert iso is not None
    for u, v in itertools.product(g.vertices, repeat=2):
        assert g.has_edge(u, v) == h.has_edge(iso[u], iso[v])
    assert find_isomorphism(g, TWO_LOOPS) is None
    assert find_isomorphism(TWO_CYCLE, TWO_LOOPS) is None
