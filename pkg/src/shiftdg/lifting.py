"""Walk-lifting dichotomies for eventually periodic diligent walks.

Given an epimorphism phi: B -> A and a diligent eventually periodic walk
through A, exactly one of two things is produced:

  * Lift: an eventually periodic walk through B (diligent in the strong
    variant) that almost projects onto the given walk, or
  * Obstruct: a strongly connected digraph C with an epimorphism onto A
    and a diligent almost-projecting walk through C, such that the new
    epimorphism is incompatible with phi.

The weak stage decides liftability through the subset-construction state
trajectory.  The strong stage works with walkability relations between
aligned positions: for an eventually periodic walk the relations between
positions one period apart generate a finite cyclic semigroup of Boolean
matrices, some power of which is idempotent, and the homogeneous relation
plus an arithmetic progression of positions replaces the infinite Ramsey
argument exactly.  The dividing line is an anchored-circuit condition on a
reflexive vertex of the homogeneous relation; when it fails, the past and
future relations along one stabilized window assemble into the obstruction
digraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .digraph import (
    Digraph,
    EventuallyPeriodicWalk,
    backward_extend,
    is_diligent,
    is_strongly_connected,
)
from .errors import (
    InvalidRange,
    NoAlmostProjectingWalk,
    NotDiligent,
    NotEpimorphism,
)
from .morphism import DigraphMap, compatible_exact, is_epimorphism
from .state_space import (
    extract_projecting_walk,
    never_empty_from,
    projecting_walk_between,
    state_label,
    step_state,
)


@dataclass(frozen=True)
class Relation:
    """A Boolean relation on the vertex set of one digraph."""

    over: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def __init__(self, over, pairs):
        object.__setattr__(self, "over", tuple(over))
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in pairs))
        declared = set(self.over)
        for a, b in self.pairs:
            if a not in declared or b not in declared:
                raise ValueError(f"pair ({a!r}, {b!r}) is off the carrier set")

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def is_empty(self) -> bool:
        return not self.pairs

    def domain(self) -> tuple[str, ...]:
        firsts = {a for a, _ in self.pairs}
        return tuple(v for v in self.over if v in firsts)

    def reflexive_elements(self) -> tuple[str, ...]:
        return tuple(v for v in self.over if (v, v) in self.pairs)

    def compose(self, other: "Relation") -> "Relation":
        """Boolean matrix product, read left to right: (a, c) is present
        when (a, b) is in self and (b, c) is in other for some b."""
        by_first: dict[str, set[str]] = {}
        for b, c in other.pairs:
            by_first.setdefault(b, set()).add(c)
        out = {
            (a, c)
            for a, b in self.pairs
            for c in by_first.get(b, ())
        }
        return Relation(self.over, out)

    def union(self, other: "Relation") -> "Relation":
        return Relation(self.over, self.pairs | other.pairs)

    def is_idempotent(self) -> bool:
        return self.compose(self) == self

    def row(self, v: str) -> frozenset[str]:
        return frozenset(b for a, b in self.pairs if a == v)

    def column(self, v: str) -> frozenset[str]:
        return frozenset(a for a, b in self.pairs if b == v)

    def to_obj(self) -> list[list[str]]:
        order = {v: i for i, v in enumerate(self.over)}
        return [
            list(p)
            for p in sorted(self.pairs, key=lambda p: (order[p[0]], order[p[1]]))
        ]


@dataclass(frozen=True)
class Progression:
    """The arithmetic progression {start + k * step : k >= 0}."""

    start: int
    step: int

    def __contains__(self, n: int) -> bool:
        return n >= self.start and (n - self.start) % self.step == 0

    def __getitem__(self, k: int) -> int:
        return self.start + k * self.step

    def previous(self, n: int) -> int:
        """Largest member strictly below n (n must exceed start)."""
        if n <= self.start:
            raise InvalidRange(f"{n} has no predecessor in the progression")
        return self.start + (n - self.start - 1) // self.step * self.step

    def following(self, n: int) -> int:
        """Smallest member strictly above n."""
        if n < self.start:
            return self.start
        return self.start + ((n - self.start) // self.step + 1) * self.step

    def to_obj(self) -> dict:
        return {"start": self.start, "step": self.step}


@dataclass(frozen=True)
class Lift:
    """A lifting witness: a walk in the domain almost projecting from
    `threshold` on; `diligent` records which contract it was built under."""

    witness: EventuallyPeriodicWalk
    threshold: int
    diligent: bool
    audit: dict = field(default_factory=dict, compare=False)

    def to_obj(self) -> dict:
        return {
            "outcome": "lift",
            "witness": self.witness.to_obj(),
            "threshold": self.threshold,
            "diligent": self.diligent,
            "audit": self.audit,
        }


@dataclass(frozen=True)
class Obstruct:
    """An obstruction witness: psi maps c_digraph onto the codomain, the
    walk is diligent and almost projects via psi, and psi is incompatible
    with the map under test."""

    c_digraph: Digraph
    psi: DigraphMap
    c_walk: EventuallyPeriodicWalk
    threshold: int
    audit: dict = field(default_factory=dict, compare=False)

    def to_obj(self) -> dict:
        return {
            "outcome": "obstruct",
            "c_digraph": self.c_digraph.to_obj(),
            "psi": dict(self.psi.assignment),
            "c_walk": self.c_walk.to_obj(),
            "threshold": self.threshold,
            "audit": self.audit,
        }


DichotomyOutcome = Lift | Obstruct


def _fiber_identity(phi: DigraphMap, a: str) -> Relation:
    return Relation(phi.dom.vertices, {(v, v) for v in phi.fiber(a)})


def _one_step(phi: DigraphMap, a0: str, a1: str) -> Relation:
    f1 = set(phi.fiber(a1))
    return Relation(
        phi.dom.vertices,
        {(x, y) for x, y in phi.dom.edges if phi(x) == a0 and y in f1},
    )


def walkability_relation(
    phi: DigraphMap, abar: EventuallyPeriodicWalk, lo: int, hi: int
) -> Relation:
    """(v, w) is present when some walk from v to w projects onto the
    positions lo..hi of the given walk.  Computed by hi - lo fiber
    restricted relation steps."""
    if lo >= hi:
        raise InvalidRange("walkability needs lo < hi")
    rel = _fiber_identity(phi, abar.value(lo))
    for i in range(lo, hi):
        rel = rel.compose(_one_step(phi, abar.value(i), abar.value(i + 1)))
    return rel


def _idempotent_power(m: Relation) -> tuple[Relation, int]:
    """The unique idempotent in the cyclic semigroup {m, m^2, ...} and its
    exponent.  Exists because there are finitely many relations."""
    seen: dict[Relation, int] = {}
    power = m
    e = 1
    while power not in seen:
        seen[power] = e
        power = power.compose(m)
        e += 1
    first = seen[power]  # m^e == m^first, cycle length e - first
    cycle = e - first
    exp = first
    while exp % cycle or exp < first:  # the multiple of the cycle inside it
        exp += 1
    idem = m
    for _ in range(exp - 1):
        idem = idem.compose(m)
    assert idem.is_idempotent()
    return idem, exp


def _check_preconditions(phi: DigraphMap, abar: EventuallyPeriodicWalk) -> None:
    if not is_epimorphism(phi):
        raise NotEpimorphism("lifting is decided for epimorphisms only")
    if not is_diligent(phi.cod, abar):
        raise NotDiligent("the base walk must be diligent in the codomain")


def homogeneous_relation(
    phi: DigraphMap, abar: EventuallyPeriodicWalk
) -> tuple[Relation, Progression]:
    """The stable walkability relation between aligned far-apart positions.

    Let p be the walk's period and M the walkability relation across one
    period starting at the first periodic position m0.  Relations between
    positions of D = {m0 + k*e*p} all equal M^e, where M^e is the idempotent
    power of M; the spacing is doubled if e*p = 1 so that D never contains
    consecutive integers.  Requires some lift to exist at all; the returned
    relation is then nonempty, transitive, idempotent, and reflexive
    somewhere, and all of that is asserted.
    """
    _check_preconditions(phi, abar)
    pre, p = len(abar.preamble), len(abar.period)
    m0 = pre
    if not never_empty_from(phi, abar, m0):
        # Starting later never helps: trajectories from later starts contain
        # the shifted trajectories from earlier ones.
        raise NoAlmostProjectingWalk("no walk almost projects onto the base walk")
    m_matrix = walkability_relation(phi, abar, m0, m0 + p)
    rel, e = _idempotent_power(m_matrix)
    spacing = e * p if e * p >= 2 else 2 * e * p
    d = Progression(m0, spacing)

    assert not rel.is_empty()
    assert rel.is_idempotent()
    assert rel.compose(rel).pairs <= rel.pairs  # transitivity, a fortiori
    assert rel.reflexive_elements()
    assert len({abar.value(d[k]) for k in range(3)}) == 1
    for lo, hi in [(d[0], d[1]), (d[0], d[2]), (d[1], d[2])]:
        assert walkability_relation(phi, abar, lo, hi) == rel
    return rel, d


def past_future_relations(
    phi: DigraphMap,
    abar: EventuallyPeriodicWalk,
    rel: Relation,
    d: Progression,
    i: int,
) -> tuple[Relation, Relation]:
    """The Past and Future relations at position i.

    Past holds (v, b) when a walk from v at some earlier progression point
    reaches b at i, projecting all the way; Future holds (b, v) when b at i
    reaches v at some later progression point.  At progression points both
    equal the homogeneous relation.  The unions over all anchor choices
    collapse through idempotence to at most two terms each.
    """
    if i < d.start:
        raise InvalidRange(f"positions before {d.start} have no past relation")
    if i in d:
        return rel, rel
    prev_d = d.previous(i)
    next_d = d.following(i)
    past = walkability_relation(phi, abar, prev_d, i)
    if prev_d > d.start:  # a second anchor exists; earlier ones add nothing
        past = past.union(rel.compose(past))
    future = walkability_relation(phi, abar, i, next_d)
    future = future.union(future.compose(rel))
    return past, future


def dagger_check(
    phi: DigraphMap,
    abar: EventuallyPeriodicWalk,
    rel: Relation,
    d: Progression,
) -> str | None:
    """Search for a reflexive vertex all of whose edges sit on anchored
    projecting circuits.

    A vertex v with (v, v) in the homogeneous relation qualifies when every
    domain edge (b, b') occurs inside some projecting walk from v at one
    progression point back to v at a later one.  Each such circuit factors
    as Past-reach to b, the edge itself, then Future-reach back to v, and
    both relations are periodic past the first full window, so scanning one
    window of positions is sound and complete.  Returns the first qualifying
    vertex in declaration order, or None.
    """
    window = range(d[1], d[1] + d.step)
    pf = {i: past_future_relations(phi, abar, rel, d, i) for i in window}
    pf[d[1] + d.step] = (rel, rel)  # i + 1 may land on the next anchor

    def covered(v: str, edge: tuple[str, str]) -> bool:
        b, b2 = edge
        for i in window:
            if phi(b) != abar.value(i) or phi(b2) != abar.value(i + 1):
                continue
            past_i = pf[i][0]
            future_next = pf[i + 1][1]
            if (v, b) in past_i and (b2, v) in future_next:
                return True
        return False

    for v in rel.reflexive_elements():
        if all(covered(v, e) for e in phi.dom.sorted_edges()):
            return v
    return None


def _disjoint_labels(base: Digraph, raw: list[str]) -> list[str]:
    labels = list(raw)
    taken = set(base.vertices)
    while any(lb in taken for lb in labels):
        labels = ["#" + lb for lb in labels]
    return labels


def weak_dichotomy(
    phi: DigraphMap, abar: EventuallyPeriodicWalk
) -> DichotomyOutcome:
    """Decide whether any infinite walk almost projects onto abar.

    Lift: extracted from the earliest viable start, prefixed by a backward
    extension.  Obstruct: the codomain is glued to one dying state
    trajectory; entry goes from the vertex before the chosen start into the
    full starting fiber, exit from the empty state back into the codomain,
    and the natural map of states extended by identity is the new
    epimorphism.
    """
    _check_preconditions(phi, abar)
    pre, p = len(abar.preamble), len(abar.period)

    for m in range(pre + 1):
        # Viable starts are upward closed, so scanning up to the first
        # periodic position is exhaustive.
        if never_empty_from(phi, abar, m):
            witness = extract_projecting_walk(phi, abar, m)
            return Lift(witness, m, diligent=False, audit={"start": m})

    # Dying-trajectory data is residue determined from the first position
    # whose predecessor is already periodic; one representative stands for
    # the infinitely many positions sharing it.
    m = pre + 1
    states = [frozenset(phi.fiber(abar.value(m)))]
    while states[-1]:
        pos = m + len(states) - 1
        states.append(
            step_state(phi, states[-1], (abar.value(pos), abar.value(pos + 1)))
        )
    k = len(states) - 1  # S_0 .. S_k with S_k empty, k >= 1
    a = phi.cod

    raw_labels = [state_label(phi, s) for s in dict.fromkeys(states)]
    unique_states = list(dict.fromkeys(states))
    labels = _disjoint_labels(a, raw_labels)
    label_of = dict(zip(unique_states, labels))

    a_in = abar.value(m - 1)
    a_end = abar.value(m + k)
    a_out = abar.value(m + k + 1)
    s_in = states[0]
    empty = states[-1]

    edges = set(a.edges)
    edges |= {
        (label_of[states[i]], label_of[states[i + 1]]) for i in range(k)
    }
    edges.add((a_in, label_of[s_in]))
    edges.add((label_of[empty], a_out))
    c_digraph = Digraph(tuple(a.vertices) + tuple(labels), edges)

    psi_map = {v: v for v in a.vertices}
    for s, lb in label_of.items():
        psi_map[lb] = phi(next(iter(s))) if s else a_end
    psi = DigraphMap(c_digraph, a, psi_map)

    # One period of the diligent walk: the dying trajectory, then enough of
    # the codomain walk to traverse every codomain edge before re-entering.
    length = k + 2 + p
    length += (-length) % p  # round up to a period multiple
    period_values = [label_of[states[j]] for j in range(k + 1)]
    period_values += [abar.value(i) for i in range(m + k + 1, m + length)]
    preamble_values = [abar.value(i) for i in range(m)]
    c_walk = EventuallyPeriodicWalk(preamble_values, period_values)

    audit = {
        "start": m,
        "death_step": k,
        "entry": a_in,
        "exit": a_out,
        "empty_label": label_of[empty],
    }
    return Obstruct(c_digraph, psi, c_walk, 0, audit)


def _circuit_through_edge(
    phi: DigraphMap,
    abar: EventuallyPeriodicWalk,
    rel: Relation,
    d: Progression,
    v: str,
    edge: tuple[str, str],
) -> tuple[int, list[str]]:
    """A projecting circuit from v back to v between progression points,
    traversing the given edge.  Returns (anchor gap count, values); the
    values list covers the anchor positions inclusively and can be shifted
    by whole progression steps."""
    b, b2 = edge
    window = range(d[1], d[1] + d.step)

    def walk_values(lo, hi, x, y):
        w = projecting_walk_between(phi, abar, lo, hi, x, y)
        return None if w is None else list(w.steps)

    for i in window:
        if phi(b) != abar.value(i) or phi(b2) != abar.value(i + 1):
            continue
        past_i, _ = past_future_relations(phi, abar, rel, d, i)
        _, future_next = past_future_relations(phi, abar, rel, d, i + 1)
        if (v, b) not in past_i or (b2, v) not in future_next:
            continue

        # Past side: from v at an anchor to b at position i, possibly
        # routed across one extra gap through the homogeneous relation.
        left_lo = d.previous(i)
        left = walk_values(left_lo, i, v, b)
        if left is None and i not in d:
            for x in rel.row(v):
                tail = walk_values(left_lo, i, x, b)
                if tail is None:
                    continue
                head = walk_values(left_lo - d.step, left_lo, v, x)
                if head is not None:
                    left = join_walk_values(head, tail)
                    left_lo -= d.step
                    break
        if left is None:
            continue

        # Future side, mirrored.
        right_hi = i + 1 + d.step if (i + 1) in d else d.following(i + 1)
        right = walk_values(i + 1, right_hi, b2, v)
        if right is None and (i + 1) not in d:
            for y in rel.column(v):
                head = walk_values(i + 1, right_hi, b2, y)
                if head is None:
                    continue
                tail = walk_values(right_hi, right_hi + d.step, y, v)
                if tail is not None:
                    right = join_walk_values(head, tail)
                    right_hi += d.step
                    break
        if right is None:
            continue

        values = left + right  # b at i meets b2 at i + 1 across the edge
        gaps, remainder = divmod(right_hi - left_lo, d.step)
        assert remainder == 0
        assert values[0] == v and values[-1] == v
        assert len(values) == right_hi - left_lo + 1
        return gaps, values
    raise AssertionError(f"no anchored circuit through {edge} at {v}")


def join_walk_values(head, tail) -> list[str]:
    """Concatenate two vertex sequences that share their junction vertex."""
    head, tail = list(head), list(tail)
    assert head[-1] == tail[0]
    return head + tail[1:]


def diligent_dichotomy(
    phi: DigraphMap, abar: EventuallyPeriodicWalk
) -> DichotomyOutcome:
    """The strong dichotomy: a diligent lift or a validated obstruction.

    After the weak stage lifts, the anchored-circuit condition decides the
    rest.  When it holds, one circuit per domain edge is chained around the
    witnessing reflexive vertex into a single period.  When it fails, the
    (past, future) pairs along one stabilized window become the obstruction
    digraph: the domain of the homogeneous relation is the hub, the pairs
    are the spokes, and the walk visits the hub at every progression point.
    """
    weak = weak_dichotomy(phi, abar)
    if isinstance(weak, Obstruct):
        return weak
    if is_diligent(phi.dom, weak.witness):
        # The extracted walk already traverses everything (e.g. the
        # identity map, where it is the base walk itself).
        return Lift(weak.witness, weak.threshold, diligent=True, audit=weak.audit)

    rel, d = homogeneous_relation(phi, abar)
    sp = d.step
    pre, p = len(abar.preamble), len(abar.period)
    v = dagger_check(phi, abar, rel, d)
    audit = {
        "D": d.to_obj(),
        "R": rel.to_obj(),
        "window": [d[1], d[1] + sp],
        "stabilization": d[0] + sp,
    }

    if v is not None:
        anchor = d[1]
        values: list[str] = [v]
        for edge in phi.dom.sorted_edges():
            _, circuit = _circuit_through_edge(phi, abar, rel, d, v, edge)
            values = join_walk_values(values, circuit)
        period_len = len(values) - 1
        assert period_len % sp == 0
        prefix = backward_extend(phi.dom, v, anchor).steps[:-1]
        witness = EventuallyPeriodicWalk(list(prefix), values[:-1])
        audit["dagger_vertex"] = v
        return Lift(witness, anchor, diligent=True, audit=audit)

    # Obstruction from one window of (past, future) pairs.  The windows
    # between consecutive anchors past the first are all identical, so the
    # multi-component union of the general construction collapses to one.
    def window_tuple(k: int):
        lo, hi = d[k], d[k + 1]
        pairs = {i: past_future_relations(phi, abar, rel, d, i) for i in range(lo + 1, hi)}
        vertices = set(pairs.values())
        edges = {
            (pairs[i], pairs[i + 1]) for i in range(lo + 1, hi - 1)
        }
        return pairs, vertices, edges, pairs[lo + 1], pairs[hi - 1]

    pairs1, verts1, edges1, c_in, c_out = window_tuple(1)
    pairs2, verts2, edges2, c_in2, c_out2 = window_tuple(2)
    assert (verts1, edges1, c_in, c_out) == (verts2, edges2, c_in2, c_out2)

    hub = "T"
    pair_list = sorted(verts1, key=lambda pf: min(i for i in pairs1 if pairs1[i] == pf))
    raw_labels = [
        "PF" + str(min(i for i in pairs1 if pairs1[i] == pf) - d[1])
        for pf in pair_list
    ]
    base = phi.cod
    labels = _disjoint_labels(base, [hub] + raw_labels)
    hub = labels[0]
    label_of = dict(zip(pair_list, labels[1:]))

    c_edges = {(label_of[x], label_of[y]) for x, y in edges1}
    c_edges.add((hub, label_of[c_in]))
    c_edges.add((label_of[c_out], hub))
    c_digraph = Digraph([hub] + labels[1:], c_edges)

    a_d = abar.value(d[0])
    psi_map = {hub: a_d}
    for pf, lb in label_of.items():
        carried = {abar.value(j) for j in pairs1 if pairs1[j] == pf}
        assert len(carried) == 1  # equal (past, future) pairs share a value
        psi_map[lb] = carried.pop()
    psi = DigraphMap(c_digraph, base, psi_map)

    period_values = [hub] + [label_of[pairs1[i]] for i in range(d[1] + 1, d[2])]
    c_walk_threshold = d[1]
    preamble_values = backward_extend(c_digraph, hub, d[1]).steps[:-1]
    c_walk = EventuallyPeriodicWalk(list(preamble_values), period_values)

    outcome = Obstruct(c_digraph, psi, c_walk, c_walk_threshold, audit)
    report = verify_outcome(phi, abar, outcome)
    if not report.passed:  # an implementation bug, not a soft condition
        raise AssertionError(f"obstruction failed validation: {report.failures()}")
    return outcome


@dataclass
class VerificationReport:
    rows: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.rows)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.rows if not ok]

    def to_obj(self) -> dict:
        return {
            "passed": self.passed,
            "rows": [
                {"check": name, "ok": ok, "detail": detail}
                for name, ok, detail in self.rows
            ],
        }


def _almost_projects(
    f, walk: EventuallyPeriodicWalk, abar: EventuallyPeriodicWalk, threshold: int
) -> bool:
    horizon = max(threshold, len(walk.preamble), len(abar.preamble)) + lcm(
        len(walk.period), len(abar.period)
    )
    return all(f(walk.value(n)) == abar.value(n) for n in range(threshold, horizon))


def verify_outcome(
    phi: DigraphMap, abar: EventuallyPeriodicWalk, outcome: DichotomyOutcome
) -> VerificationReport:
    """Independent validation of every invariant a dichotomy outcome claims.

    For obstructions this re-walks the free-epimorphism argument: the
    hypotheses (no isolated points, a diligent walk almost projecting onto
    a diligent base walk) are checked on their own, then the conclusions
    (strong connectivity, epimorphism) are confirmed directly, and finally
    the exact compatibility search must come back empty.
    """
    rows: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        rows.append((name, bool(ok), detail))

    check("base_walk_valid", abar.is_walk_in(phi.cod), "walk lives in the codomain")
    check("base_walk_diligent", is_diligent(phi.cod, abar), "base walk is diligent")

    if isinstance(outcome, Lift):
        w = outcome.witness
        check("witness_valid_walk", w.is_walk_in(phi.dom), "walk lives in the domain")
        check(
            "witness_almost_projects",
            _almost_projects(phi, w, abar, outcome.threshold),
            f"projection matches from {outcome.threshold} on",
        )
        if outcome.diligent:
            check(
                "witness_diligent",
                w.is_walk_in(phi.dom) and is_diligent(phi.dom, w),
                "diligent in the domain",
            )
    else:
        c, psi, cw = outcome.c_digraph, outcome.psi, outcome.c_walk
        check("psi_maps_from_c", psi.dom == c, "psi is defined on the new digraph")
        check("psi_onto_codomain", psi.cod == phi.cod, "psi targets the codomain")
        check(
            "episforfree.no_isolated_points",
            all(not c.is_isolated(x) for x in c.vertices),
            "hypothesis of the free-epimorphism lemma",
        )
        walk_ok = cw.is_walk_in(c)
        check("episforfree.walk_valid", walk_ok, "walk lives in the new digraph")
        check(
            "episforfree.walk_diligent",
            walk_ok and is_diligent(c, cw),
            "hypothesis: the walk is diligent",
        )
        check(
            "episforfree.almost_projects",
            walk_ok and _almost_projects(psi, cw, abar, outcome.threshold),
            f"hypothesis: projection matches from {outcome.threshold} on",
        )
        check(
            "c_strongly_connected",
            is_strongly_connected(c),
            "conclusion confirmed directly",
        )
        check(
            "psi_epimorphism",
            is_epimorphism(psi),
            "conclusion confirmed directly",
        )
        try:
            # The search is polynomial, so validation ignores the public
            # size cap rather than refusing large obstructions.
            witness = compatible_exact(phi, psi, max_vertices=10**6)
            check(
                "incompatible_with_phi",
                witness is None,
                "exact search finds no common refinement",
            )
        except Exception as exc:
            check("incompatible_with_phi", False, f"search failed: {exc}")
    return VerificationReport(rows)
