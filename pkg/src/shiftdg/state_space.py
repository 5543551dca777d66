"""The subset-construction state space of an epimorphism.

For an epimorphism phi: B -> A the states are all subsets of single fibers
phi^-1(a), the empty set included.  A codomain edge (a0, a1) induces the
edge S0 -> S1 where S1 collects the successors of S0 inside the target
fiber.  Tracking the state sequence along a walk in A decides whether some
walk in B projects onto it: the walk lifts exactly when the trajectory
never reaches the absorbing empty state, and for eventually periodic walks
this is decidable by a pigeonhole bound on (position residue, state) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, EventuallyPeriodicWalk, Walk, backward_extend
from .errors import InvalidWalk, NoProjectingWalk, NotEpimorphism, StateFiberMismatch
from .morphism import DigraphMap, is_epimorphism

State = frozenset  # subsets of domain vertices

EMPTY_STATE: State = frozenset()


def state_label(phi: DigraphMap, s: State) -> str:
    order = phi.dom._index
    return "{" + ",".join(sorted(s, key=order.get)) + "}"


def step_state(phi: DigraphMap, s: State, a_edge: tuple[str, str]) -> State:
    """One move of the subset construction along a codomain edge.

    Stepping from the empty state yields the empty state.
    """
    a0, a1 = a_edge
    if a_edge not in phi.cod.edges:
        raise StateFiberMismatch(f"({a0},{a1}) is not a codomain edge")
    src_fiber = set(phi.fiber(a0))
    if not s <= src_fiber:
        raise StateFiberMismatch("state is not contained in the source fiber")
    target_fiber = phi.fiber(a1)
    return frozenset(
        y for y in target_fiber if any(phi.dom.has_edge(x, y) for x in s)
    )


@dataclass
class StateSpace:
    """States, induced edges (with their inducing codomain edges), the
    digraph on state labels, and the natural map to the codomain."""

    base: DigraphMap
    states: tuple[State, ...]
    transitions: dict[tuple[State, tuple[str, str]], State]
    digraph: Digraph
    natural_map: dict[State, str]  # nonempty states only

    def label(self, s: State) -> str:
        return state_label(self.base, s)

    def nonempty_digraph(self) -> Digraph:
        keep = [self.label(s) for s in self.states if s]
        return self.digraph.induced(keep)

    def natural_digraph_map(self) -> DigraphMap:
        """Pi restricted to nonempty states, as a map onto the codomain."""
        sub = self.nonempty_digraph()
        return DigraphMap(
            sub,
            self.base.cod,
            {self.label(s): a for s, a in self.natural_map.items()},
        )

    def to_obj(self) -> dict:
        order = self.base.dom._index
        return {
            "states": [sorted(s, key=order.get) for s in self.states],
            "edges": [
                {
                    "from": self.label(s0),
                    "to": self.label(s1),
                    "inducing": list(edge),
                }
                for (s0, edge), s1 in sorted(
                    self.transitions.items(),
                    key=lambda kv: (self.label(kv[0][0]), kv[0][1]),
                )
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph S {"]
        for s in self.states:
            lines.append(f'  "{self.label(s)}";')
        for (s0, edge), s1 in sorted(
            self.transitions.items(), key=lambda kv: (self.label(kv[0][0]), kv[0][1])
        ):
            lines.append(
                f'  "{self.label(s0)}" -> "{self.label(s1)}" [label="{edge[0]}{edge[1]}"];'
            )
        lines.append("}")
        return "\n".join(lines)


def build_state_space(phi: DigraphMap) -> StateSpace:
    """All fiber subsets with the induced edges; |states| is
    1 + sum over fibers of (2^fiber_size - 1)."""
    if not is_epimorphism(phi):
        raise NotEpimorphism("state spaces are built over epimorphisms")
    states: list[State] = [EMPTY_STATE]
    for a in phi.cod.vertices:
        fiber = phi.fiber(a)
        # Nonempty subsets in bitmask order over the fiber.
        for mask in range(1, 1 << len(fiber)):
            states.append(
                frozenset(fiber[i] for i in range(len(fiber)) if mask >> i & 1)
            )
    transitions: dict[tuple[State, tuple[str, str]], State] = {}
    fiber_of = {a: frozenset(phi.fiber(a)) for a in phi.cod.vertices}
    for edge in phi.cod.sorted_edges():
        a0, _ = edge
        for s in states:
            if s <= fiber_of[a0]:
                transitions[(s, edge)] = step_state(phi, s, edge)
    labels = [state_label(phi, s) for s in states]
    edge_pairs = {
        (state_label(phi, s0), state_label(phi, s1))
        for (s0, _), s1 in transitions.items()
    }
    digraph = Digraph(labels, edge_pairs)
    natural = {}
    for s in states:
        if s:
            natural[s] = phi(next(iter(s)))
    return StateSpace(phi, tuple(states), transitions, digraph, natural)


def _check_walk(phi: DigraphMap, abar: EventuallyPeriodicWalk) -> None:
    if not abar.is_walk_in(phi.cod):
        raise InvalidWalk("the given walk is not a walk in the codomain")


def state_trajectory(
    phi: DigraphMap, abar: EventuallyPeriodicWalk, start: int, horizon: int
) -> list[State]:
    """States S_0..S_horizon of the projecting-walk recursion from `start`.

    S_0 is the full fiber over abar(start); each later state collects the
    successors of the previous one inside the next fiber.
    """
    _check_walk(phi, abar)
    s = frozenset(phi.fiber(abar.value(start)))
    out = [s]
    for k in range(horizon):
        s = step_state(phi, s, (abar.value(start + k), abar.value(start + k + 1)))
        out.append(s)
    return out


def pigeonhole_horizon(phi: DigraphMap, abar: EventuallyPeriodicWalk) -> int:
    """|preamble| + |period| * (|states| + 1): enough steps to force a
    repeated (position residue, state) pair or reach the empty state."""
    n_states = 1 + sum(
        (1 << len(phi.fiber(a))) - 1 for a in phi.cod.vertices
    )
    return len(abar.preamble) + len(abar.period) * (n_states + 1)


def never_empty_from(
    phi: DigraphMap, abar: EventuallyPeriodicWalk, start: int
) -> bool:
    """Does the state trajectory from `start` avoid the empty state forever?

    Simulates until either the empty state appears or a (residue, state)
    pair repeats inside the periodic region, which forces a cycle.
    """
    _check_walk(phi, abar)
    pre, p = len(abar.preamble), len(abar.period)
    s = frozenset(phi.fiber(abar.value(start)))
    seen: set[tuple[int, State]] = set()
    horizon = pigeonhole_horizon(phi, abar)
    for k in range(horizon + 1):
        if not s:
            return False
        pos = start + k
        if pos >= pre:
            key = ((pos - pre) % p, s)
            if key in seen:
                return True
            seen.add(key)
        s = step_state(phi, s, (abar.value(pos), abar.value(pos + 1)))
    return True  # unreachable in practice: the pigeonhole bound fired above


def projecting_walk_between(
    phi: DigraphMap,
    abar: EventuallyPeriodicWalk,
    lo: int,
    hi: int,
    v: str,
    w: str,
) -> Walk | None:
    """A concrete walk from v at position lo to w at position hi projecting
    onto abar, or None.  Backtracks deterministically through the forward
    reachable sets."""
    if phi(v) != abar.value(lo) or phi(w) != abar.value(hi):
        return None
    layers = [frozenset([v])]
    for pos in range(lo, hi):
        nxt = step_state(phi, layers[-1], (abar.value(pos), abar.value(pos + 1)))
        layers.append(nxt)
    if w not in layers[-1]:
        return None
    rev = [w]
    for k in range(hi - lo, 0, -1):
        prev = next(
            x for x in phi.dom.vertices
            if x in layers[k - 1] and phi.dom.has_edge(x, rev[-1])
        )
        rev.append(prev)
    return Walk(reversed(rev))


def extract_projecting_walk(
    phi: DigraphMap, abar: EventuallyPeriodicWalk, start: int
) -> EventuallyPeriodicWalk:
    """An eventually periodic walk in the domain projecting onto abar from
    `start` on, with an arbitrary valid prefix before it.

    Found by walking the (residue, vertex) product graph restricted to its
    live part (vertices that can reach a cycle) until a pair repeats, then
    pumping that cycle forever; the part between `start` and the periodic
    region comes from backtracking, the prefix from backward_extend.
    """
    if not never_empty_from(phi, abar, start):
        raise NoProjectingWalk(f"the state trajectory from {start} dies")
    pre, p = len(abar.preamble), len(abar.period)
    dom = phi.dom
    q = max(start, pre)

    # Product graph on (residue, vertex) pairs over the purely periodic tail.
    def fiber_at(residue: int) -> tuple[str, ...]:
        return phi.fiber(abar.period[residue])

    nodes = [(r, b) for r in range(p) for b in fiber_at(r)]
    succ = {
        (r, b): [
            ((r + 1) % p, c)
            for c in fiber_at((r + 1) % p)
            if dom.has_edge(b, c)
        ]
        for r, b in nodes
    }
    # Live part: nodes that reach a cycle, i.e. admit an infinite path.
    live = set(nodes)
    changed = True
    while changed:
        changed = False
        for node in nodes:
            if node in live and not any(s in live for s in succ[node]):
                live.discard(node)
                changed = True

    # Arrive at position q along the never-empty trajectory, then pick a
    # live vertex there to launch the periodic part.
    trajectory = state_trajectory(phi, abar, start, q - start)
    r_q = (q - pre) % p
    try:
        b_q = next(b for b in trajectory[-1] if (r_q, b) in live)
    except StopIteration:  # pragma: no cover - excluded by never_empty_from
        raise NoProjectingWalk("no live vertex is reachable at the periodic tail")

    node = (r_q, b_q)
    path = [node]
    seen_at = {node: 0}
    while True:
        node = next(s for s in succ[node] if s in live)
        if node in seen_at:
            cycle_start = seen_at[node]
            break
        seen_at[node] = len(path)
        path.append(node)

    # Values from q up to the start of the cycle, then the cycle itself.
    middle = [b for _, b in path[:cycle_start]]
    cycle = [b for _, b in path[cycle_start:]]

    # Backtrack from b_q to position start through the trajectory layers.
    rev = [b_q]
    for k in range(q - start, 0, -1):
        prev = next(
            x for x in dom.vertices
            if x in trajectory[k - 1] and dom.has_edge(x, rev[-1])
        )
        rev.append(prev)
    segment = list(reversed(rev))  # positions start .. q

    prefix = backward_extend(dom, segment[0], start).steps[:-1] if start else ()
    preamble = list(prefix) + segment[:-1] + middle
    return EventuallyPeriodicWalk(preamble, cycle)
