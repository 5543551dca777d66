"""Digraphs as eventually periodic partitions of the naturals under n -> n+1.

An OmegaPartitionSpec is an eventually periodic coloring of the naturals;
block v is the set of positions colored v.  Everything is compared modulo
finite differences, which for eventually periodic colorings means ignoring
preambles.  Realizing a strongly connected digraph colors positions along a
covering closed walk; recovering reads the digraph back off the pairs that
occur infinitely often.  The polarization engine feeds a virtual refinement
into the strong lifting dichotomy and converts either outcome into an
actual eventually periodic refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .digraph import (
    Digraph,
    EventuallyPeriodicWalk,
    backward_extend,
    diligent_schedule,
    find_isomorphism,
    is_diligent,
    is_strongly_connected,
)
from .errors import BaseMismatch, NotDiligent, NotIsomorphism, NotStronglyConnected
from .lifting import Lift, diligent_dichotomy
from .morphism import DigraphMap, is_epimorphism


@dataclass(frozen=True)
class OmegaPartitionSpec:
    """An eventually periodic coloring; every block must be infinite, so
    labels confined to the preamble are rejected."""

    coloring: EventuallyPeriodicWalk

    def __init__(self, coloring: EventuallyPeriodicWalk):
        object.__setattr__(self, "coloring", coloring)
        stray = set(coloring.preamble) - set(coloring.period)
        if stray:
            raise ValueError(
                f"labels {sorted(stray)} occur only in the preamble; "
                "blocks must be infinite"
            )

    @property
    def labels(self) -> tuple[str, ...]:
        seen = dict.fromkeys(self.coloring.period)
        return tuple(seen)

    def block_positions(self, label: str, upto: int) -> list[int]:
        return [n for n in range(upto) if self.coloring.value(n) == label]

    def to_obj(self) -> dict:
        return self.coloring.to_obj()

    @classmethod
    def from_obj(cls, obj: dict) -> "OmegaPartitionSpec":
        return cls(EventuallyPeriodicWalk.from_obj(obj))


@dataclass(frozen=True)
class VirtualRefinement:
    """A strongly connected digraph with an epimorphism onto a base digraph."""

    base: Digraph
    cover: Digraph
    phi: DigraphMap

    def __init__(self, base: Digraph, cover: Digraph, phi: DigraphMap):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "cover", cover)
        object.__setattr__(self, "phi", phi)
        if phi.dom != cover or phi.cod != base:
            raise ValueError("the map must go from the cover onto the base")
        if not is_strongly_connected(cover):
            raise NotStronglyConnected("virtual refinements are strongly connected")
        if not is_epimorphism(phi):
            raise ValueError("the map of a virtual refinement is an epimorphism")


def realize_digraph(g: Digraph) -> OmegaPartitionSpec:
    """Color the naturals along a covering closed walk of g."""
    if not is_strongly_connected(g):
        raise NotStronglyConnected("only strongly connected digraphs are realizable")
    return OmegaPartitionSpec(diligent_schedule(g))


def induced_realization(phi: DigraphMap) -> OmegaPartitionSpec:
    """The realization of the codomain obtained by projecting the domain's
    own schedule through an epimorphism.

    The projected coloring is diligent in the codomain (every codomain edge
    has a traversed preimage edge), and the domain schedule projects onto
    it by construction, so the walk-lifting machinery is guaranteed a
    diligent lift for phi over this particular realization.
    """
    if not is_epimorphism(phi):
        raise ValueError("induced realizations come from epimorphisms")
    schedule = diligent_schedule(phi.dom)
    return OmegaPartitionSpec(
        EventuallyPeriodicWalk((), [phi(v) for v in schedule.period])
    )


def shift_hitting_digraph(spec: OmegaPartitionSpec) -> Digraph:
    """Vertices are the blocks; u -> v when color u is followed by color v
    at infinitely many positions, i.e. somewhere in one period cycle."""
    return Digraph(spec.labels, spec.coloring.cycle_pairs())


def walk_from_spec(
    spec: OmegaPartitionSpec, target: Digraph, iso: dict[str, str]
) -> EventuallyPeriodicWalk:
    """A diligent walk through `target` whose associated coloring matches
    the spec under the isomorphism, up to a finite preamble repair.

    The period is pulled back through the isomorphism untouched; the
    preamble (which may be arbitrary garbage in the spec) is replaced by a
    backward extension of the right length, so only finitely many positions
    change.
    """
    shd = shift_hitting_digraph(spec)
    if set(iso) != set(target.vertices) or set(iso.values()) != set(shd.vertices):
        raise NotIsomorphism("the bijection must match the two vertex sets")
    for u in target.vertices:
        for v in target.vertices:
            if target.has_edge(u, v) != shd.has_edge(iso[u], iso[v]):
                raise NotIsomorphism(f"edge mismatch at ({u},{v})")
    inverse = {w: v for v, w in iso.items()}
    period = [inverse[w] for w in spec.coloring.period]
    n_pre = len(spec.coloring.preamble)
    preamble = backward_extend(target, period[0], n_pre).steps[:-1] if n_pre else ()
    return EventuallyPeriodicWalk(preamble, period)


def spec_refines(
    fine: OmegaPartitionSpec, coarse: OmegaPartitionSpec
) -> DigraphMap | None:
    """The natural map between the two recovered digraphs, when every fine
    block is eventually inside one coarse block; None otherwise."""
    start = max(len(fine.coloring.preamble), len(coarse.coloring.preamble))
    span = lcm(len(fine.coloring.period), len(coarse.coloring.period))
    containing: dict[str, set[str]] = {}
    for n in range(start, start + span):
        containing.setdefault(fine.coloring.value(n), set()).add(
            coarse.coloring.value(n)
        )
    if set(containing) != set(fine.labels) or any(
        len(cs) != 1 for cs in containing.values()
    ):
        return None
    return DigraphMap(
        shift_hitting_digraph(fine),
        shift_hitting_digraph(coarse),
        {u: cs.pop() for u, cs in containing.items()},
    )


@dataclass(frozen=True)
class Realized:
    fine: OmegaPartitionSpec
    iso: dict[str, str]  # cover vertex -> fine block label

    def to_obj(self) -> dict:
        return {"outcome": "realized", "fine": self.fine.to_obj(), "iso": self.iso}


@dataclass(frozen=True)
class Incompatible:
    psi: DigraphMap
    c_digraph: Digraph
    fine: OmegaPartitionSpec
    iso: dict[str, str]  # obstruction vertex -> fine block label

    def to_obj(self) -> dict:
        return {
            "outcome": "incompatible",
            "c_digraph": self.c_digraph.to_obj(),
            "psi": dict(self.psi.assignment),
            "fine": self.fine.to_obj(),
            "iso": self.iso,
        }


PolarizationOutcome = Realized | Incompatible


def polarize_virtual_refinement(
    spec: OmegaPartitionSpec, vr: VirtualRefinement
) -> PolarizationOutcome:
    """Either realize the virtual refinement by an actual eventually
    periodic refinement, or produce an incompatible one that is realized.

    Runs the strong lifting dichotomy on the refinement's epimorphism
    against the spec's coloring walk.  A diligent lift becomes the finer
    coloring directly, with the identity correspondence as the isomorphism;
    an obstruction's diligent walk becomes a finer coloring realizing the
    incompatible virtual refinement instead.
    """
    base = shift_hitting_digraph(spec)
    if not vr.base.same_labeled(base):
        raise BaseMismatch("the refinement's base must be the spec's digraph")
    if not is_diligent(vr.base, spec.coloring):
        raise NotDiligent("the spec's coloring must be diligent in its digraph")
    outcome = diligent_dichotomy(vr.phi, spec.coloring)
    if isinstance(outcome, Lift):
        fine = OmegaPartitionSpec(outcome.witness)
        iso = {v: v for v in vr.cover.vertices}
        return Realized(fine, iso)
    fine = OmegaPartitionSpec(outcome.c_walk)
    iso = {c: c for c in outcome.c_digraph.vertices}
    return Incompatible(outcome.psi, outcome.c_digraph, fine, iso)


@dataclass(frozen=True)
class NogoFixture:
    """The incompatible pair: a three-vertex looped path, its four-vertex
    looped-path cover folding the extra vertex onto the middle, and the
    looped directed-cycle cover whose middle fiber splits by direction."""

    a3: Digraph
    b4: Digraph
    fold: DigraphMap
    v4: Digraph
    cycle: DigraphMap


def fixture_nogo() -> NogoFixture:
    a3 = Digraph(
        ["A", "B", "C"],
        [
            ("A", "A"), ("B", "B"), ("C", "C"),
            ("A", "B"), ("B", "A"),
            ("B", "C"), ("C", "B"),
        ],
    )
    b4 = Digraph(
        ["Abar", "Bbar", "Cbar", "Dbar"],
        [
            ("Abar", "Abar"), ("Bbar", "Bbar"), ("Cbar", "Cbar"), ("Dbar", "Dbar"),
            ("Abar", "Bbar"), ("Bbar", "Abar"),
            ("Bbar", "Cbar"), ("Cbar", "Bbar"),
            ("Cbar", "Dbar"), ("Dbar", "Cbar"),
        ],
    )
    fold = DigraphMap(
        b4, a3, {"Abar": "A", "Bbar": "B", "Cbar": "C", "Dbar": "B"}
    )
    v4 = Digraph(
        ["Aprime", "Btop", "Bbot", "Cprime"],
        [
            ("Aprime", "Aprime"), ("Btop", "Btop"),
            ("Bbot", "Bbot"), ("Cprime", "Cprime"),
            ("Aprime", "Btop"), ("Btop", "Cprime"),
            ("Cprime", "Bbot"), ("Bbot", "Aprime"),
        ],
    )
    cycle = DigraphMap(
        v4, a3, {"Aprime": "A", "Btop": "B", "Bbot": "B", "Cprime": "C"}
    )
    return NogoFixture(a3, b4, fold, v4, cycle)


__all__ = [
    "OmegaPartitionSpec",
    "VirtualRefinement",
    "Realized",
    "Incompatible",
    "PolarizationOutcome",
    "NogoFixture",
    "realize_digraph",
    "induced_realization",
    "shift_hitting_digraph",
    "walk_from_spec",
    "spec_refines",
    "polarize_virtual_refinement",
    "fixture_nogo",
    "find_isomorphism",
]
