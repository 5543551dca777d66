"""Independent brute-force implementations and exhaustive enumerators.

Everything here validates the fast paths elsewhere in the package and
deliberately shares no algorithmic machinery with them: projecting walks
are found by depth-first search over single vertices (no subset states),
reachability questions in checks are re-asked per pair, and digraphs are
enumerated raw over labeled vertex sets.  Isomorphism deduplication is
available as a flag and uses brute-force canonical forms.

Enumeration order is deterministic for a given budget; seeded sampling
supplements exhaustion above the caps and the seeds land in the reports.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .digraph import (
    Digraph,
    EventuallyPeriodicWalk,
    is_strongly_connected,
)
from .dynsys import (
    FiniteDynSys,
    all_partitions,
    hitting_digraph,
    is_incompressible,
    natural_partition_map,
    refines,
)
from .errors import BudgetExceeded
from .lifting import Lift, diligent_dichotomy, weak_dichotomy, verify_outcome
from .morphism import (
    DigraphMap,
    compatible_exact,
    compatible_fast,
    is_epimorphism,
    pullback,
)
from .realization import realize_digraph, shift_hitting_digraph
from .state_space import build_state_space, never_empty_from, pigeonhole_horizon


@dataclass(frozen=True)
class EnumerationBudget:
    max_vertices: int = 4
    max_period: int = 6
    max_atoms: int = 6
    sample_seed: int = 0

    def __post_init__(self):
        if min(self.max_vertices, self.max_period, self.max_atoms) < 1:
            raise ValueError("all caps must be >= 1")


DEFAULT_BUDGET = EnumerationBudget()

_LABELS = "v0 v1 v2 v3 v4 v5 v6 v7".split()


def canonical_form(g: Digraph) -> tuple:
    """Lexicographically least adjacency bitmask over all relabelings.

    Brute force over vertex permutations; intended for n <= 5.
    """
    n = len(g.vertices)
    ix = g._index
    edges = [(ix[u], ix[v]) for u, v in g.edges]
    best = None
    for perm in itertools.permutations(range(n)):
        mask = 0
        for i, j in edges:
            mask |= 1 << (perm[i] * n + perm[j])
        if best is None or mask < best:
            best = mask
    return (n, best)


def enumerate_digraphs(
    n: int,
    sc_only: bool = False,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    dedup_iso: bool = False,
):
    """All digraphs on the n labeled vertices v0..v{n-1}, in edge-bitmask
    order (bit i*n+j is the edge vi -> vj)."""
    if n > budget.max_vertices:
        raise BudgetExceeded(f"{n} vertices exceeds the cap {budget.max_vertices}")
    labels = _LABELS[:n]
    seen: set[tuple] = set()
    for mask in range(1 << (n * n)):
        edges = [
            (labels[i], labels[j])
            for i in range(n)
            for j in range(n)
            if mask >> (i * n + j) & 1
        ]
        g = Digraph(labels, edges)
        if sc_only and not is_strongly_connected(g):
            continue
        if dedup_iso:
            key = canonical_form(g)
            if key in seen:
                continue
            seen.add(key)
        yield g


def enumerate_epimorphisms(
    b: Digraph, a: Digraph, budget: EnumerationBudget = DEFAULT_BUDGET
) -> list[DigraphMap]:
    """Every vertex function b -> a that is an epimorphism, in lexicographic
    order over the codomain's declaration order."""
    if max(len(b.vertices), len(a.vertices)) > budget.max_vertices:
        raise BudgetExceeded("domain or codomain exceeds the vertex cap")
    out = []
    for images in itertools.product(a.vertices, repeat=len(b.vertices)):
        m = DigraphMap(b, a, dict(zip(b.vertices, images)))
        if is_epimorphism(m):
            out.append(m)
    return out


def brute_projecting_walk(
    phi: DigraphMap,
    abar: EventuallyPeriodicWalk,
    m: int,
    k: int,
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> bool:
    """Is there a length-k walk in the domain projecting onto positions
    m..m+k?  Depth-first search over single vertices with memoized dead
    ends; no subset-construction shortcut."""
    cap = budget.max_period * ((1 << budget.max_vertices) + 2)
    if k > cap:
        raise BudgetExceeded(f"walk length {k} exceeds the derived cap {cap}")
    target = [abar.value(m + i) for i in range(k + 1)]
    memo: dict[tuple[int, str], bool] = {}

    def extend(i: int, v: str) -> bool:
        if i == k:
            return True
        key = (i, v)
        if key not in memo:
            memo[key] = False  # guards the recursion; overwritten below
            memo[key] = any(
                phi(w) == target[i + 1] and extend(i + 1, w)
                for w in phi.dom.successors(v)
            )
        return memo[key]

    return any(phi(v) == target[0] and extend(0, v) for v in phi.dom.vertices)


def brute_state(
    phi: DigraphMap, abar: EventuallyPeriodicWalk, m: int, k: int
) -> frozenset:
    """Last vertices of all length-k projecting walks from position m,
    collected by explicit walk enumeration (the definition, not the
    recursion)."""
    walks: list[list[str]] = [
        [v] for v in phi.dom.vertices if phi(v) == abar.value(m)
    ]
    for i in range(k):
        nxt = abar.value(m + i + 1)
        walks = [
            w + [y]
            for w in walks
            for y in phi.dom.successors(w[-1])
            if phi(y) == nxt
        ]
        if not walks:
            break
    return frozenset(w[-1] for w in walks) if walks and len(walks[0]) == k + 1 else frozenset()


def enumerate_closed_diligent_periods(
    g: Digraph, max_period: int, dedup_rotations: bool = True
) -> list[EventuallyPeriodicWalk]:
    """All purely periodic diligent walks through g with period length up
    to max_period.  A period of length L can traverse at most L distinct
    edges, so digraphs with more edges yield nothing."""
    ix = g._index
    out = []
    seen: set[tuple] = set()
    if len(g.edges) > max_period:
        return []
    for length in range(max(1, len(g.edges)), max_period + 1):
        stack: list[list[str]] = [[v] for v in reversed(g.vertices)]
        while stack:
            walk = stack.pop()
            if len(walk) == length:
                if not g.has_edge(walk[-1], walk[0]):
                    continue
                pairs = set(zip(walk, walk[1:] + walk[:1]))
                if pairs != set(g.edges):
                    continue
                if dedup_rotations:
                    key = min(
                        tuple(walk[r:] + walk[:r]) for r in range(length)
                    )
                    if key in seen:
                        continue
                    seen.add(key)
                out.append(EventuallyPeriodicWalk((), walk))
                continue
            for w in reversed(g.successors(walk[-1])):
                stack.append(walk + [w])
    out.sort(key=lambda w: (len(w.period), tuple(ix[v] for v in w.period)))
    return out


def sc_digraph_catalog(
    max_vertices: int, budget: EnumerationBudget, dedup_iso: bool = True
) -> list[Digraph]:
    cat = []
    for n in range(1, max_vertices + 1):
        cat.extend(enumerate_digraphs(n, sc_only=True, budget=budget, dedup_iso=dedup_iso))
    return cat


def standard_instances(
    budget: EnumerationBudget = DEFAULT_BUDGET, max_cod_vertices: int = 3
):
    """The shared (codomain, walk, domain, epimorphism) enumeration used by
    the lifting agreement checks: strongly connected codomains up to
    isomorphism whose edge count fits inside the period cap, all their
    rotation-deduplicated diligent periods, strongly connected domains up
    to isomorphism, and every epimorphism between the two."""
    cods = [
        a
        for a in sc_digraph_catalog(min(max_cod_vertices, budget.max_vertices), budget)
        if len(a.edges) <= budget.max_period
    ]
    doms = sc_digraph_catalog(budget.max_vertices, budget)
    for a in cods:
        walks = enumerate_closed_diligent_periods(a, budget.max_period)
        if not walks:
            continue
        for b in doms:
            if len(b.vertices) < len(a.vertices):
                continue
            epis = enumerate_epimorphisms(b, a, budget)
            for phi in epis:
                for abar in walks:
                    yield a, abar, b, phi


@dataclass
class CrosscheckReport:
    instances: int = 0
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    seeds: dict = field(default_factory=dict)

    def bump(self, instances: int = 0, checks: int = 0) -> None:
        self.instances += instances
        self.checks += checks

    def fail(self, check: str, instance: str, expected, got) -> None:
        self.failures.append(
            {"check": check, "input": instance, "expected": expected, "got": got}
        )

    def merge(self, other: "CrosscheckReport") -> None:
        self.instances += other.instances
        self.checks += other.checks
        self.failures.extend(other.failures)
        self.seeds.update(other.seeds)

    def to_obj(self) -> dict:
        return {
            "instances": self.instances,
            "checks": self.checks,
            "failures": self.failures,
            "seeds": self.seeds,
        }


def check_incompressibility(budget: EnumerationBudget = DEFAULT_BUDGET) -> CrosscheckReport:
    """Incompressibility against all-partitions strong connectivity."""
    report = CrosscheckReport()
    for n in range(1, budget.max_atoms + 1):
        atoms = [f"t{i}" for i in range(n)]
        for images in itertools.permutations(atoms):
            sys = FiniteDynSys(atoms, dict(zip(atoms, images)))
            expected = all(
                is_strongly_connected(hitting_digraph(sys, p))
                for p in all_partitions(sys)
            )
            got = is_incompressible(sys)
            report.bump(instances=1, checks=1)
            if expected != got:
                report.fail(
                    "incompressible-vs-connectivity", repr(sys.alpha), expected, got
                )
    return report


def check_natural_maps(budget: EnumerationBudget = DEFAULT_BUDGET) -> CrosscheckReport:
    """Natural maps of refinement pairs are epimorphisms."""
    report = CrosscheckReport()
    for n in range(1, min(budget.max_atoms, 5) + 1):
        atoms = [f"t{i}" for i in range(n)]
        for images in itertools.permutations(atoms):
            sys = FiniteDynSys(atoms, dict(zip(atoms, images)))
            parts = list(all_partitions(sys))
            report.bump(instances=1)
            for fine in parts:
                for coarse in parts:
                    if not refines(fine, coarse):
                        continue
                    ok = is_epimorphism(natural_partition_map(fine, coarse, sys))
                    report.bump(checks=1)
                    if not ok:
                        report.fail(
                            "natural-map-epi",
                            f"{sys.alpha} {fine} <= {coarse}",
                            True,
                            False,
                        )
    return report


def mutated_pullback_digraph(phi, psi):
    """Negative-control hook: the pullback with its edge rule flipped from
    'both coordinates step' to 'either coordinate steps'."""
    pb = pullback(phi, psi)
    lookup = dict(zip(pb.digraph.vertices, pb.pairs))
    edges = [
        (x, y)
        for x in pb.digraph.vertices
        for y in pb.digraph.vertices
        if phi.dom.has_edge(lookup[x][0], lookup[y][0])
        or psi.dom.has_edge(lookup[x][1], lookup[y][1])
    ]
    return Digraph(pb.digraph.vertices, edges)


def check_compat_agreement(
    budget: EnumerationBudget = DEFAULT_BUDGET,
    min_pairs: int = 10_000,
    time_limit: float | None = None,
    mutate: str | None = None,
) -> CrosscheckReport:
    """compatible_fast against compatible_exact over epimorphism pairs with
    a common codomain: exhaustive over the small slice, then seeded random
    pairs up to the requested count."""
    import time

    report = CrosscheckReport()
    start_time = time.monotonic()

    def out_of_time() -> bool:
        return time_limit is not None and time.monotonic() - start_time > time_limit

    def compare(phi, psi) -> None:
        if mutate == "pullback-edge":
            fast = is_strongly_connected(mutated_pullback_digraph(phi, psi))
        else:
            fast = compatible_fast(phi, psi)
        exact = compatible_exact(phi, psi) is not None
        report.bump(instances=1, checks=1)
        if fast != exact:
            report.fail(
                "compat-fast-vs-exact",
                f"phi={dict(phi.assignment)} psi={dict(psi.assignment)} "
                f"cod={phi.cod.to_obj()}",
                exact,
                fast,
            )

    # Exhaustive slice: codomains up to 2 vertices, domains up to 3.
    small = EnumerationBudget(3, budget.max_period, budget.max_atoms, budget.sample_seed)
    for a in sc_digraph_catalog(2, small):
        epi_pool = [
            phi
            for b in sc_digraph_catalog(3, small)
            for phi in enumerate_epimorphisms(b, a, small)
        ]
        for phi in epi_pool:
            if out_of_time():
                break
            for psi in epi_pool:
                compare(phi, psi)

    # Seeded random pairs at the full size.
    rng = random.Random(budget.sample_seed)
    report.seeds["compat-sample"] = budget.sample_seed
    cods = sc_digraph_catalog(min(3, budget.max_vertices), budget)
    doms = sc_digraph_catalog(budget.max_vertices, budget)
    epis_by_cod: dict[int, list] = {}
    while report.instances < min_pairs and not out_of_time():
        a = rng.choice(cods)
        key = id(a)
        if key not in epis_by_cod:
            pool = []
            for b in doms:
                if len(b.vertices) >= len(a.vertices):
                    pool.extend(enumerate_epimorphisms(b, a, budget))
            epis_by_cod[key] = pool
        pool = epis_by_cod[key]
        if not pool:
            continue
        compare(rng.choice(pool), rng.choice(pool))
    return report


def check_never_empty(
    budget: EnumerationBudget = DEFAULT_BUDGET, mutate: str | None = None
) -> CrosscheckReport:
    """never_empty_from against the walk-existence oracle at every length
    up to the pigeonhole horizon."""
    report = CrosscheckReport()
    for a, abar, b, phi in standard_instances(budget):
        horizon = pigeonhole_horizon(phi, abar)
        fast = never_empty_from(phi, abar, 0)
        slow = all(
            brute_projecting_walk(phi, abar, 0, k, budget) for k in range(horizon + 1)
        )
        if mutate == "horizon-off":
            slow = not slow
        report.bump(instances=1, checks=1)
        if fast != slow:
            report.fail(
                "never-empty-vs-brute",
                f"phi={dict(phi.assignment)} abar={abar.period}",
                slow,
                fast,
            )
    return report


def check_weak_dichotomy(budget: EnumerationBudget = DEFAULT_BUDGET) -> CrosscheckReport:
    """Every weak outcome validates; lifts agree with the brute oracle."""
    report = CrosscheckReport()
    for a, abar, b, phi in standard_instances(budget):
        outcome = weak_dichotomy(phi, abar)
        verdict = verify_outcome(phi, abar, outcome)
        report.bump(instances=1, checks=1)
        if not verdict.passed:
            report.fail(
                "weak-dichotomy-verify",
                f"phi={dict(phi.assignment)} abar={abar.period}",
                "all checks pass",
                verdict.failures(),
            )
        lifted = isinstance(outcome, Lift)
        horizon = pigeonhole_horizon(phi, abar)
        brute_lift = any(
            all(
                brute_projecting_walk(phi, abar, m, k, budget)
                for k in range(horizon + 1)
            )
            for m in range(len(abar.preamble) + 1)
        )
        report.bump(checks=1)
        if lifted != brute_lift:
            report.fail(
                "weak-lift-vs-brute",
                f"phi={dict(phi.assignment)} abar={abar.period}",
                brute_lift,
                lifted,
            )
    return report


def check_diligent_dichotomy(budget: EnumerationBudget = DEFAULT_BUDGET) -> CrosscheckReport:
    """Every strong outcome validates (observation assertions run inside)."""
    report = CrosscheckReport()
    for a, abar, b, phi in standard_instances(budget):
        outcome = diligent_dichotomy(phi, abar)
        verdict = verify_outcome(phi, abar, outcome)
        report.bump(instances=1, checks=1)
        if not verdict.passed:
            report.fail(
                "diligent-dichotomy-verify",
                f"phi={dict(phi.assignment)} abar={abar.period}",
                "all checks pass",
                verdict.failures(),
            )
    return report


def check_realization_roundtrip(
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> CrosscheckReport:
    """Recovering a realized digraph gives it back label for label."""
    report = CrosscheckReport()
    for n in range(1, budget.max_vertices + 1):
        for g in enumerate_digraphs(n, sc_only=True, budget=budget):
            back = shift_hitting_digraph(realize_digraph(g))
            report.bump(instances=1, checks=1)
            if not back.same_labeled(g):
                report.fail(
                    "realization-round-trip", repr(g.to_obj()), g.to_obj(), back.to_obj()
                )
    return report


def check_state_spaces(budget: EnumerationBudget = DEFAULT_BUDGET) -> CrosscheckReport:
    """State counts, the natural state map, and trajectory agreement with
    the walk-enumeration definition."""
    from .state_space import state_trajectory

    report = CrosscheckReport()
    for a, abar, b, phi in standard_instances(budget):
        space = build_state_space(phi)
        expected_count = 1 + sum(
            (1 << len(phi.fiber(v))) - 1 for v in a.vertices
        )
        report.bump(instances=1, checks=3)
        if len(space.states) != expected_count:
            report.fail(
                "state-count", f"phi={dict(phi.assignment)}",
                expected_count, len(space.states),
            )
        if not is_epimorphism(space.natural_digraph_map()):
            report.fail(
                "state-natural-map-epi", f"phi={dict(phi.assignment)}", True, False
            )
        k_max = min(8, pigeonhole_horizon(phi, abar))
        fast = state_trajectory(phi, abar, 0, k_max)
        slow = [brute_state(phi, abar, 0, k) for k in range(k_max + 1)]
        if fast != slow:
            report.fail(
                "trajectory-vs-definition",
                f"phi={dict(phi.assignment)} abar={abar.period}",
                [sorted(s) for s in slow],
                [sorted(s) for s in fast],
            )
    return report


def crosscheck_suite(
    budget: EnumerationBudget = DEFAULT_BUDGET, mutate: str | None = None
) -> CrosscheckReport:
    """Run every fast/exact agreement check over the budgeted enumeration.

    The mutate hook deliberately miscomputes one rule inside a named check
    (a negative control for the reporting pipeline), never inside the
    library itself.
    """
    report = CrosscheckReport()
    report.merge(check_incompressibility(budget))
    report.merge(check_natural_maps(budget))
    report.merge(
        check_compat_agreement(budget, min_pairs=2_000, time_limit=120, mutate=mutate)
    )
    report.merge(check_never_empty(budget, mutate=None))
    report.merge(check_weak_dichotomy(budget))
    report.merge(check_diligent_dichotomy(budget))
    report.merge(check_realization_roundtrip(budget))
    report.merge(check_state_spaces(budget))
    return report
