"""Digraph maps, epimorphisms, pullbacks, and the compatibility decision.

Two epimorphisms onto a common codomain are *compatible* when some strongly
connected digraph maps onto both domains with a commuting square.  The fast
check asks whether their pullback is strongly connected; the exact check
searches the pullback for a witnessing sub-digraph and is authoritative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .digraph import Digraph, is_strongly_connected, strongly_connected_components
from .errors import CodomainMismatch, DomainMismatch, NotEpimorphism, SearchTooLarge


@dataclass(frozen=True)
class DigraphMap:
    """A total vertex function between two digraphs.

    Surjectivity and edge conditions are checked properties (see
    is_epimorphism), not construction invariants.
    """

    dom: Digraph
    cod: Digraph
    assignment: tuple[tuple[str, str], ...]

    def __init__(self, dom: Digraph, cod: Digraph, assignment):
        mapping = dict(assignment)
        if set(mapping) != set(dom.vertices):
            raise ValueError("the assignment must cover exactly the domain vertices")
        for v, image in mapping.items():
            if image not in cod._index:
                raise ValueError(f"{v!r} maps to undeclared vertex {image!r}")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(
            self, "assignment", tuple((v, mapping[v]) for v in dom.vertices)
        )

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.assignment)

    def __call__(self, v: str) -> str:
        return self.mapping[v]

    def fiber(self, a: str) -> tuple[str, ...]:
        """Preimage of a codomain vertex, in domain declaration order."""
        return tuple(v for v in self.dom.vertices if self.mapping[v] == a)

    def to_obj(self) -> dict:
        return {
            "dom": self.dom.to_obj(),
            "cod": self.cod.to_obj(),
            "map": dict(self.assignment),
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "DigraphMap":
        return cls(
            Digraph.from_obj(obj["dom"]), Digraph.from_obj(obj["cod"]), obj["map"]
        )


def identity_map(g: Digraph) -> DigraphMap:
    return DigraphMap(g, g, {v: v for v in g.vertices})


def is_epimorphism(m: DigraphMap) -> bool:
    """Surjective on vertices, maps edges to edges, and hits every codomain
    edge with some domain edge."""
    if set(m.mapping.values()) != set(m.cod.vertices):
        return False
    # Edge preservation plus edge surjectivity is exactly image = codomain edges.
    return {(m(u), m(v)) for u, v in m.dom.edges} == m.cod.edges


def epimorphism_failure(m: DigraphMap) -> str | None:
    """None when m is an epimorphism, else a short reason (used by the CLI)."""
    if set(m.mapping.values()) != set(m.cod.vertices):
        return "not surjective"
    image_edges = {(m(u), m(v)) for u, v in m.dom.edges}
    stray = image_edges - set(m.cod.edges)
    if stray:
        u, v = sorted(stray)[0]
        return f"domain edge maps onto non-edge ({u},{v})"
    missed = set(m.cod.edges) - image_edges
    if missed:
        u, v = sorted(missed)[0]
        return f"codomain edge ({u},{v}) has no preimage edge"
    return None


def compose(f: DigraphMap, g: DigraphMap) -> DigraphMap:
    """The composite f after g (g first); requires cod(g) = dom(f)."""
    if g.cod != f.dom:
        raise DomainMismatch("cod of the inner map must equal dom of the outer map")
    return DigraphMap(g.dom, f.cod, {v: f(g(v)) for v in g.dom.vertices})


def commutes(
    top1: DigraphMap, top2: DigraphMap, left: DigraphMap, right: DigraphMap
) -> bool:
    """Pointwise equality of left . top1 and right . top2."""
    if top1.dom != top2.dom:
        raise DomainMismatch("the two top maps must share a domain")
    if left.cod != right.cod:
        raise DomainMismatch("the two bottom maps must share a codomain")
    return compose(left, top1).assignment == compose(right, top2).assignment


def pair_label(u: str, v: str) -> str:
    return f"({u},{v})"


@dataclass(frozen=True)
class Pullback:
    digraph: Digraph
    proj1: DigraphMap
    proj2: DigraphMap
    pairs: tuple[tuple[str, str], ...]  # matching (u, v) behind each label


def pullback(phi: DigraphMap, psi: DigraphMap) -> Pullback:
    """Fiber product of phi and psi over their common codomain.

    Vertices are the matching pairs (u, v) with phi(u) = psi(v); edges are
    componentwise.  phi . proj1 = psi . proj2 holds by construction.
    """
    if phi.cod != psi.cod:
        raise CodomainMismatch("pullback needs a common codomain")
    pairs = [
        (u, v)
        for u in phi.dom.vertices
        for v in psi.dom.vertices
        if phi(u) == psi(v)
    ]
    labels = [pair_label(u, v) for u, v in pairs]
    edges = [
        (pair_label(u, v), pair_label(x, y))
        for u, v in pairs
        for x, y in pairs
        if phi.dom.has_edge(u, x) and psi.dom.has_edge(v, y)
    ]
    w = Digraph(labels, edges)
    proj1 = DigraphMap(w, phi.dom, {pair_label(u, v): u for u, v in pairs})
    proj2 = DigraphMap(w, psi.dom, {pair_label(u, v): v for u, v in pairs})
    return Pullback(w, proj1, proj2, tuple(pairs))


@dataclass(frozen=True)
class CompatibilityWitness:
    """A strongly connected sub-digraph of the pullback whose restricted
    projections are epimorphisms onto both factors."""

    vertex_subset: tuple[str, ...]
    induced: Digraph
    proj1: DigraphMap
    proj2: DigraphMap

    def to_obj(self) -> dict:
        return {
            "vertices": list(self.vertex_subset),
            "proj1": dict(self.proj1.assignment),
            "proj2": dict(self.proj2.assignment),
        }


def _require_epi_pair(phi: DigraphMap, psi: DigraphMap) -> None:
    if phi.cod != psi.cod:
        raise CodomainMismatch("the two maps must share a codomain")
    if not is_epimorphism(phi) or not is_epimorphism(psi):
        raise NotEpimorphism("compatibility is defined for epimorphism pairs")


def compatible_fast(phi: DigraphMap, psi: DigraphMap) -> bool:
    """Heuristic fast path: is the pullback strongly connected?

    The equivalence with exact compatibility is an empirically tested
    conjecture; compatible_exact is authoritative.
    """
    _require_epi_pair(phi, psi)
    return is_strongly_connected(pullback(phi, psi).digraph)


def compatible_exact(
    phi: DigraphMap, psi: DigraphMap, max_vertices: int = 20
) -> CompatibilityWitness | None:
    """Exact compatibility decision with a constructive witness.

    A subset S of the pullback is a witness when the induced sub-digraph is
    strongly connected and both restricted projections are epimorphisms onto
    the full factors.  Any abstract witness digraph factors through the
    pullback via w -> (proj values), its image lies inside one strongly
    connected component, and passing from the image to that full component
    only adds vertices and edges while preserving both epimorphism
    conditions.  It therefore suffices to test the strongly connected
    components of the pullback, which is what this search does.
    """
    _require_epi_pair(phi, psi)
    pb = pullback(phi, psi)
    if len(pb.digraph.vertices) > max_vertices:
        raise SearchTooLarge(
            f"pullback has {len(pb.digraph.vertices)} vertices (cap {max_vertices})"
        )
    for component in strongly_connected_components(pb.digraph):
        induced = pb.digraph.induced(component)
        if not is_strongly_connected(induced):
            continue  # a loopless singleton component
        proj1 = DigraphMap(
            induced, phi.dom, {v: pb.proj1(v) for v in induced.vertices}
        )
        proj2 = DigraphMap(
            induced, psi.dom, {v: pb.proj2(v) for v in induced.vertices}
        )
        if is_epimorphism(proj1) and is_epimorphism(proj2):
            return CompatibilityWitness(tuple(component), induced, proj1, proj2)
    return None
