"""Finite digraphs, finite walks, and eventually periodic infinite walks.

Vertices are opaque string labels.  The declaration order of the vertex
tuple is significant: every operation that has to make an arbitrary choice
(shortest paths, backward steps, schedules) resolves ties by declaration
order, so all outputs are deterministic.

Strong connectivity here demands a walk of length >= 1 between *every*
ordered vertex pair, the pair (v, v) included.  A lone vertex without a
loop is therefore not strongly connected; a lone vertex with a loop is.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import lcm

from .errors import InvalidWalk, NotStronglyConnected


@dataclass(frozen=True)
class Digraph:
    """A finite directed graph with loops allowed.

    Fields:
        vertices: ordered, unique vertex labels.
        edges: set of ordered pairs of declared labels.
    """

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __init__(self, vertices, edges):
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", frozenset((u, v) for u, v in edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        declared = set(self.vertices)
        for u, v in self.edges:
            if u not in declared or v not in declared:
                raise ValueError(f"edge ({u!r}, {v!r}) uses an undeclared vertex")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _succ(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.sorted_edges():
            out[u].append(v)
        return {v: tuple(ws) for v, ws in out.items()}

    @cached_property
    def _pred(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.sorted_edges():
            inc[v].append(u)
        return {v: tuple(us) for v, us in inc.items()}

    def sorted_edges(self) -> list[tuple[str, str]]:
        """Edges ordered by (source index, target index)."""
        ix = self._index
        return sorted(self.edges, key=lambda e: (ix[e[0]], ix[e[1]]))

    def successors(self, v: str) -> tuple[str, ...]:
        return self._succ[v]

    def predecessors(self, v: str) -> tuple[str, ...]:
        return self._pred[v]

    def has_edge(self, u: str, v: str) -> bool:
        return (u, v) in self.edges

    def out_degree(self, v: str) -> int:
        return len(self._succ[v])

    def in_degree(self, v: str) -> int:
        return len(self._pred[v])

    def is_isolated(self, v: str) -> bool:
        """No incident edges at all (a loop counts as incident)."""
        return self.out_degree(v) == 0 and self.in_degree(v) == 0

    def induced(self, subset) -> "Digraph":
        """Sub-digraph induced on the given vertices, declaration order kept."""
        keep = set(subset)
        return Digraph(
            tuple(v for v in self.vertices if v in keep),
            [(u, v) for u, v in self.edges if u in keep and v in keep],
        )

    def same_labeled(self, other: "Digraph") -> bool:
        """Equality up to vertex declaration order."""
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges

    def to_obj(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.sorted_edges()],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "Digraph":
        return cls(obj["vertices"], [tuple(e) for e in obj["edges"]])

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for u, v in self.sorted_edges():
            lines.append(f'  "{u}" -> "{v}";')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Walk:
    """A finite walk: a nonempty vertex sequence; length counts the arrows."""

    steps: tuple[str, ...]

    def __init__(self, steps):
        object.__setattr__(self, "steps", tuple(steps))
        if not self.steps:
            raise ValueError("a walk has at least one vertex")

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    @property
    def start(self) -> str:
        return self.steps[0]

    @property
    def end(self) -> str:
        return self.steps[-1]

    def is_walk_in(self, g: Digraph) -> bool:
        return all(v in g._index for v in self.steps) and all(
            g.has_edge(a, b) for a, b in zip(self.steps, self.steps[1:])
        )

    def validate_in(self, g: Digraph) -> None:
        if not self.is_walk_in(g):
            raise InvalidWalk(f"{self.steps} is not a walk in the given digraph")

    def covers_all_edges(self, g: Digraph) -> bool:
        return g.edges <= set(zip(self.steps, self.steps[1:]))

    def to_obj(self) -> dict:
        return {"steps": list(self.steps)}

    @classmethod
    def from_obj(cls, obj: dict) -> "Walk":
        return cls(obj["steps"])


@dataclass(frozen=True)
class EventuallyPeriodicWalk:
    """Finite representation of an infinite sequence: preamble then a cycle.

    value(n) is preamble[n] for n < |preamble| and cycles through the period
    afterwards.  Entries are usually vertex labels, but any hashable values
    are accepted (element sequences over a Boolean algebra reuse this type).
    """

    preamble: tuple
    period: tuple

    def __init__(self, preamble, period):
        object.__setattr__(self, "preamble", tuple(preamble))
        object.__setattr__(self, "period", tuple(period))
        if not self.period:
            raise ValueError("the period must be nonempty")

    def value(self, n: int):
        if n < 0:
            raise IndexError("positions start at 0")
        if n < len(self.preamble):
            return self.preamble[n]
        return self.period[(n - len(self.preamble)) % len(self.period)]

    def values(self, start: int, stop: int) -> list:
        return [self.value(n) for n in range(start, stop)]

    def cycle_pairs(self) -> set[tuple]:
        """Consecutive pairs over one full period cycle, wrap included."""
        base = len(self.preamble)
        return {
            (self.value(base + i), self.value(base + i + 1))
            for i in range(len(self.period))
        }

    def is_walk_in(self, g: Digraph) -> bool:
        entries = self.preamble + self.period
        if not all(v in g._index for v in entries):
            return False
        n_check = len(self.preamble) + len(self.period)
        return all(
            g.has_edge(self.value(i), self.value(i + 1)) for i in range(n_check)
        )

    def validate_in(self, g: Digraph) -> None:
        if not self.is_walk_in(g):
            raise InvalidWalk(
                f"preamble={self.preamble} period={self.period} is not a walk"
            )

    def same_values(self, other: "EventuallyPeriodicWalk") -> bool:
        """Do both representations describe the same infinite sequence?"""
        horizon = max(len(self.preamble), len(other.preamble)) + lcm(
            len(self.period), len(other.period)
        )
        return all(self.value(n) == other.value(n) for n in range(horizon))

    def to_obj(self) -> dict:
        return {"preamble": list(self.preamble), "period": list(self.period)}

    @classmethod
    def from_obj(cls, obj: dict) -> "EventuallyPeriodicWalk":
        return cls(obj["preamble"], obj["period"])


def is_strongly_connected(g: Digraph) -> bool:
    """Walks of length >= 1 between every ordered pair, (v, v) included.

    The empty digraph is not strongly connected: it admits no walks at all.
    """
    n = len(g.vertices)
    if n == 0:
        return False
    ix = g._index
    rows = [0] * n
    for u, v in g.edges:
        rows[ix[u]] |= 1 << ix[v]
    # Warshall on the edge relation: closure under >= 1 intermediate steps.
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    full = (1 << n) - 1
    return all(r == full for r in rows)


def strongly_connected_components(g: Digraph) -> list[list[str]]:
    """Tarjan's SCC decomposition, deterministically ordered.

    Components are sorted by their earliest-declared vertex, and vertices
    inside a component come in declaration order.
    """
    ix = g._index
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = itertools.count()
    comps: list[list[str]] = []

    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.successors(root)))]
        index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        while work:
            v, succs = work[-1]
            advanced = False
            for w in succs:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp, key=ix.get))
    comps.sort(key=lambda c: ix[c[0]])
    return comps


def shortest_path(g: Digraph, u: str, v: str) -> Walk | None:
    """BFS shortest walk from u to v; length 0 when u == v.

    Ties are broken by visiting successors in declaration order.
    """
    if u == v:
        return Walk([u])
    parent: dict[str, str] = {u: u}
    frontier = [u]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.successors(x):
                if y not in parent:
                    parent[y] = x
                    if y == v:
                        path = [v]
                        while path[-1] != u:
                            path.append(parent[path[-1]])
                        return Walk(reversed(path))
                    nxt.append(y)
        frontier = nxt
    return None


def covering_closed_walk(g: Digraph, v: str, w: str) -> Walk:
    """A walk from v to w in which every edge of g appears at least once.

    The edges are visited one by one in sorted order, connected by shortest
    paths, so the result has length at most |edges| * (|vertices| + 1).
    The overall shortest covering walk is not attempted.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnected("covering walks need a strongly connected digraph")
    if v not in g._index or w not in g._index:
        raise ValueError("endpoints must be declared vertices")
    steps = [v]
    for a, b in g.sorted_edges():
        link = shortest_path(g, steps[-1], a)
        steps.extend(link.steps[1:])
        steps.append(b)
    tail = shortest_path(g, steps[-1], w)
    steps.extend(tail.steps[1:])
    if len(steps) == 1:
        # No edges is impossible here: strong connectivity forces out-degree
        # >= 1 everywhere, so the loop above always appended something.
        raise NotStronglyConnected("digraph has no edges")
    return Walk(steps)


def backward_extend(g: Digraph, v: str, length: int) -> Walk:
    """A walk of exactly the requested length ending at v.

    Built by stepping backwards along in-edges; strong connectivity gives
    in-degree >= 1 everywhere, so this always succeeds.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnected("backward extension needs strong connectivity")
    if v not in g._index:
        raise ValueError(f"unknown vertex {v!r}")
    if length < 0:
        raise ValueError("length must be >= 0")
    rev = [v]
    for _ in range(length):
        rev.append(g.predecessors(rev[-1])[0])
    return Walk(reversed(rev))


def diligent_schedule(g: Digraph) -> EventuallyPeriodicWalk:
    """An eventually periodic walk (empty preamble) traversing every edge
    once per cycle, hence traversing every edge infinitely often.

    The period is a covering closed walk based at the first declared vertex
    with its final (repeated) vertex dropped, so position n carries the
    walk's entry at n mod period.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnected("diligent walks need a strongly connected digraph")
    base = g.vertices[0]
    closed = covering_closed_walk(g, base, base)
    return EventuallyPeriodicWalk((), closed.steps[:-1])


def is_diligent(g: Digraph, w: EventuallyPeriodicWalk) -> bool:
    """Does the infinite walk traverse every edge of g infinitely often?

    Equivalent to: every edge occurs as a consecutive pair somewhere in one
    full period cycle (positions past the preamble, wrap included).
    """
    w.validate_in(g)
    return g.edges <= w.cycle_pairs()


def find_isomorphism(a: Digraph, b: Digraph) -> dict[str, str] | None:
    """Brute-force digraph isomorphism search (intended for <= 8 vertices).

    Returns the first vertex bijection (in declaration-order backtracking)
    that carries edges exactly onto edges, or None.
    """
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return None
    n = len(a.vertices)
    # Degree signatures prune the permutation search.
    sig_a = {v: (a.out_degree(v), a.in_degree(v), a.has_edge(v, v)) for v in a.vertices}
    sig_b = {v: (b.out_degree(v), b.in_degree(v), b.has_edge(v, v)) for v in b.vertices}

    assignment: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == n:
            return True
        va = a.vertices[i]
        for vb in b.vertices:
            if vb in used or sig_a[va] != sig_b[vb]:
                continue
            ok = True
            for prev in a.vertices[:i]:
                if a.has_edge(va, prev) != b.has_edge(vb, assignment[prev]):
                    ok = False
                    break
                if a.has_edge(prev, va) != b.has_edge(assignment[prev], vb):
                    ok = False
                    break
            if ok and a.has_edge(va, va) == b.has_edge(vb, vb):
                assignment[va] = vb
                used.add(vb)
                if extend(i + 1):
                    return True
                del assignment[va]
                used.discard(vb)
        return False

    return dict(assignment) if extend(0) else None
