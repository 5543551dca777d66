"""Finite Boolean-algebra dynamical systems.

A finite dynamical system is the powerset algebra over a finite atom set
together with an automorphism.  Automorphisms of a finite Boolean algebra
are exactly the atom permutations (atoms generate, and an automorphism must
permute them), so only the permutation is stored.  Elements are atom
subsets; partitions are disjoint covers by nonempty elements.

Sequence machinery is defined for eventually periodic element sequences,
reusing EventuallyPeriodicWalk with frozenset entries.

A finite-algebra reduction used throughout: an element lies below *every*
partition exactly when it is an atom, so "eventually small" collapses to
"all period entries are atoms".  The partition-quantified definition stays
around as the tested specification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm

from .digraph import Digraph, EventuallyPeriodicWalk
from .errors import (
    BudgetExceeded,
    InvalidPartition,
    NotARefinement,
    ZeroEntry,
)
from .morphism import DigraphMap

Element = frozenset  # subsets of the atom tuple

PARTITION_ENUMERATION_CAP = 8  # Bell(8) = 4140 partitions


@dataclass(frozen=True)
class FiniteDynSys:
    """Ordered atoms plus a permutation of them."""

    atoms: tuple[str, ...]
    alpha: tuple[tuple[str, str], ...]

    def __init__(self, atoms, alpha):
        mapping = dict(alpha)
        object.__setattr__(self, "atoms", tuple(atoms))
        object.__setattr__(
            self, "alpha", tuple((t, mapping[t]) for t in self.atoms)
        )
        if set(mapping) != set(self.atoms) or set(mapping.values()) != set(
            self.atoms
        ):
            raise ValueError("alpha must be a bijection on the atoms")

    @cached_property
    def _alpha(self) -> dict[str, str]:
        return dict(self.alpha)

    def apply(self, x: Element) -> Element:
        return frozenset(self._alpha[t] for t in x)

    @property
    def one(self) -> Element:
        return frozenset(self.atoms)

    def element(self, labels) -> Element:
        out = frozenset(labels)
        if not out <= set(self.atoms):
            raise ValueError("element uses unknown atoms")
        return out

    def orbits(self) -> list[list[str]]:
        seen: set[str] = set()
        out = []
        for t in self.atoms:
            if t in seen:
                continue
            orbit = [t]
            seen.add(t)
            nxt = self._alpha[t]
            while nxt != t:
                orbit.append(nxt)
                seen.add(nxt)
                nxt = self._alpha[nxt]
            out.append(orbit)
        return out

    def to_obj(self) -> dict:
        return {"atoms": list(self.atoms), "alpha": dict(self.alpha)}

    @classmethod
    def from_obj(cls, obj: dict) -> "FiniteDynSys":
        return cls(obj["atoms"], obj["alpha"])


Partition = tuple  # of frozensets


def make_partition(sys: FiniteDynSys, blocks) -> Partition:
    """Validate and canonicalize a partition: blocks ordered by their
    earliest atom, each block a frozenset."""
    blocks = [frozenset(b) for b in blocks]
    if any(not b for b in blocks):
        raise InvalidPartition("blocks must be nonempty")
    union: set[str] = set()
    total = 0
    for b in blocks:
        union |= b
        total += len(b)
    if union != set(sys.atoms) or total != len(sys.atoms):
        raise InvalidPartition("blocks must partition the atoms")
    order = {t: i for i, t in enumerate(sys.atoms)}
    return tuple(sorted(blocks, key=lambda b: min(order[t] for t in b)))


def block_label(sys: FiniteDynSys, block: Element) -> str:
    order = {t: i for i, t in enumerate(sys.atoms)}
    return "{" + ",".join(sorted(block, key=order.get)) + "}"


def atom_partition(sys: FiniteDynSys) -> Partition:
    return make_partition(sys, [{t} for t in sys.atoms])


def all_partitions(sys: FiniteDynSys):
    """Every partition of the atoms, by restricted-growth strings."""
    n = len(sys.atoms)
    if n > PARTITION_ENUMERATION_CAP:
        raise BudgetExceeded(
            f"partition enumeration is capped at {PARTITION_ENUMERATION_CAP} atoms"
        )
    rgs = [0] * n

    def emit():
        blocks: dict[int, set[str]] = {}
        for t, c in zip(sys.atoms, rgs):
            blocks.setdefault(c, set()).add(t)
        return make_partition(sys, blocks.values())

    def rec(i: int, top: int):
        if i == n:
            yield emit()
            return
        for c in range(top + 2):
            rgs[i] = c
            yield from rec(i + 1, max(top, c))

    if n == 0:
        return
    yield from rec(1, 0)


def is_incompressible(sys: FiniteDynSys) -> bool:
    """No proper nonzero element is mapped into itself by the automorphism.

    Decided two ways that must agree: brute force over all proper nonempty
    atom subsets, and the single-orbit criterion (an invariant subset is a
    union of orbits, and conversely).
    """
    if not sys.atoms:
        raise ValueError("a dynamical system needs at least one atom")
    by_orbits = len(sys.orbits()) == 1
    brute = True
    for mask in range(1, (1 << len(sys.atoms)) - 1):
        x = frozenset(t for i, t in enumerate(sys.atoms) if mask >> i & 1)
        if sys.apply(x) <= x:
            brute = False
            break
    if brute != by_orbits:  # pragma: no cover - would be an implementation bug
        raise AssertionError("orbit criterion disagrees with brute force")
    return brute


def hitting_digraph(sys: FiniteDynSys, partition: Partition) -> Digraph:
    """Blocks as vertices; an edge when the automorphism image of one block
    meets the other."""
    partition = make_partition(sys, partition)
    labels = [block_label(sys, b) for b in partition]
    edges = [
        (block_label(sys, x), block_label(sys, y))
        for x in partition
        for y in partition
        if sys.apply(x) & y
    ]
    return Digraph(labels, edges)


def refines(fine: Partition, coarse: Partition) -> bool:
    return all(any(b <= c for c in coarse) for b in fine)


def natural_partition_map(
    fine: Partition, coarse: Partition, sys: FiniteDynSys
) -> DigraphMap:
    """Block containment as a map between the two hitting digraphs."""
    fine = make_partition(sys, fine)
    coarse = make_partition(sys, coarse)
    if not refines(fine, coarse):
        raise NotARefinement("the first partition must refine the second")
    assignment = {}
    for b in fine:
        target = next(c for c in coarse if b <= c)
        assignment[block_label(sys, b)] = block_label(sys, target)
    return DigraphMap(
        hitting_digraph(sys, fine), hitting_digraph(sys, coarse), assignment
    )


def approx_under(a: Element, b: Element, partition: Partition) -> bool:
    """Same meet pattern against every block."""
    return all(bool(a & u) == bool(b & u) for u in partition)


def _require_nonzero_period(seq: EventuallyPeriodicWalk) -> None:
    if any(not entry for entry in seq.period):
        raise ZeroEntry("period entries must be nonzero elements")


def is_eventually_small(seq: EventuallyPeriodicWalk) -> bool:
    """Below every partition from some point on; in a finite algebra this
    means every period entry is an atom."""
    _require_nonzero_period(seq)
    return all(len(entry) == 1 for entry in seq.period)


def is_eventually_dense(seq: EventuallyPeriodicWalk, sys: FiniteDynSys) -> bool:
    """Every nonzero element has entries below it infinitely often, i.e.
    every atom occurs as a period entry."""
    _require_nonzero_period(seq)
    singletons = {entry for entry in seq.period if len(entry) == 1}
    return all(frozenset([t]) in singletons for t in sys.atoms)


def is_shift_compatible(sys: FiniteDynSys, seq: EventuallyPeriodicWalk) -> bool:
    """alpha(a_n) meets a_{n+1} at every position; checking the preamble,
    the junction, and one period wrap covers all of them."""
    if any(not e for e in seq.preamble) or any(not e for e in seq.period):
        raise ZeroEntry("entries must be nonzero elements")
    n_check = len(seq.preamble) + len(seq.period)
    return all(
        bool(sys.apply(seq.value(n)) & seq.value(n + 1)) for n in range(n_check)
    )


def prefix_induced_map(
    seq: EventuallyPeriodicWalk, n_prefix: int, sys: FiniteDynSys
) -> dict[Element, frozenset[int]]:
    """a -> {n < N : seq(n) <= a} for every element of the algebra.

    For an eventually small and dense sequence, restricting the index sets
    to positions past the preamble gives an injective Boolean homomorphism
    into the powerset of [|preamble|, N).
    """
    if n_prefix < len(seq.preamble):
        raise ValueError("the prefix must cover the preamble")
    atoms = sys.atoms
    out = {}
    values = [seq.value(n) for n in range(n_prefix)]
    for mask in range(1 << len(atoms)):
        a = frozenset(t for i, t in enumerate(atoms) if mask >> i & 1)
        out[a] = frozenset(n for n, v in enumerate(values) if v <= a)
    return out


def eventually_close(
    seq1: EventuallyPeriodicWalk,
    seq2: EventuallyPeriodicWalk,
    sys: FiniteDynSys,
) -> bool:
    """Termwise approx_under for every partition beyond a finite threshold.

    Both sequences are eventually periodic, so comparing one joint cycle
    past both preambles decides every partition at once.
    """
    start = max(len(seq1.preamble), len(seq2.preamble))
    span = lcm(len(seq1.period), len(seq2.period))
    window = [(seq1.value(n), seq2.value(n)) for n in range(start, start + span)]
    return all(
        approx_under(a, b, partition)
        for partition in all_partitions(sys)
        for a, b in window
    )


def element_to_obj(x: Element, sys: FiniteDynSys) -> list[str]:
    order = {t: i for i, t in enumerate(sys.atoms)}
    return sorted(x, key=order.get)


def partition_to_obj(p: Partition, sys: FiniteDynSys) -> list[list[str]]:
    return [element_to_obj(b, sys) for b in p]
