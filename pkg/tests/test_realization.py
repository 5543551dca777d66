import pytest

from shiftdg import (
    BaseMismatch,
    Digraph,
    EventuallyPeriodicWalk,
    Incompatible,
    NotIsomorphism,
    NotStronglyConnected,
    OmegaPartitionSpec,
    Realized,
    VirtualRefinement,
    compatible_exact,
    compose,
    diligent_schedule,
    find_isomorphism,
    identity_map,
    is_diligent,
    is_epimorphism,
    is_strongly_connected,
    polarize_virtual_refinement,
    realize_digraph,
    shift_hitting_digraph,
    spec_refines,
    walk_from_spec,
)
from shiftdg.oracle import enumerate_digraphs
from shiftdg.realization import fixture_nogo, induced_realization

FX = fixture_nogo()
TWO_CYCLE = Digraph(["a", "b"], [("a", "b"), ("b", "a")])
LOOP = Digraph(["a"], [("a", "a")])


def test_spec_validation():
    with pytest.raises(ValueError):
        OmegaPartitionSpec(EventuallyPeriodicWalk(["z"], ["a", "b"]))
    spec = OmegaPartitionSpec(EventuallyPeriodicWalk(["a"], ["a", "b"]))
    assert spec.labels == ("a", "b")


def test_realize_two_cycle_is_parity():
    spec = realize_digraph(TWO_CYCLE)
    assert spec.coloring.preamble == ()
    assert spec.coloring.period == ("a", "b")
    assert spec.block_positions("a", 10) == [0, 2, 4, 6, 8]
    assert spec.block_positions("b", 10) == [1, 3, 5, 7, 9]


def test_realize_loop_is_everything():
    spec = realize_digraph(LOOP)
    assert spec.block_positions("a", 7) == list(range(7))
    assert shift_hitting_digraph(spec).same_labeled(LOOP)


def test_realize_requires_connectivity():
    with pytest.raises(NotStronglyConnected):
        realize_digraph(Digraph(["a", "b"], [("a", "a"), ("b", "b")]))


def test_recover_parity_and_constant():
    parity = OmegaPartitionSpec(EventuallyPeriodicWalk((), ["a", "b"]))
    assert shift_hitting_digraph(parity).same_labeled(TWO_CYCLE)
    constant = OmegaPartitionSpec(EventuallyPeriodicWalk((), ["a"]))
    assert shift_hitting_digraph(constant).same_labeled(LOOP)


def test_roundtrip_exhaustive_small():
    for n in range(1, 4):
        for g in enumerate_digraphs(n, sc_only=True):
            assert shift_hitting_digraph(realize_digraph(g)).same_labeled(g)


def test_diligent_walk_correspondence():
    # The digraph of the coloring induced by any diligent walk is the
    # walked digraph itself, label for label.
    for g in [FX.a3, FX.b4, FX.v4, TWO_CYCLE]:
        walk = diligent_schedule(g)
        spec = OmegaPartitionSpec(walk)
        assert shift_hitting_digraph(spec).same_labeled(g)


def test_diligent_walk_correspondence_enumerated():
    from shiftdg.oracle import enumerate_closed_diligent_periods

    for n in range(1, 4):
        for g in enumerate_digraphs(n, sc_only=True):
            for walk in enumerate_closed_diligent_periods(g, 5):
                assert shift_hitting_digraph(OmegaPartitionSpec(walk)).same_labeled(g)


def test_walk_from_spec_parity_identity():
    parity = OmegaPartitionSpec(EventuallyPeriodicWalk((), ["a", "b"]))
    walk = walk_from_spec(parity, TWO_CYCLE, {"a": "a", "b": "b"})
    assert walk.period == ("a", "b")
    assert walk.preamble == ()


def test_walk_from_spec_repairs_preamble():
    messy = OmegaPartitionSpec(EventuallyPeriodicWalk(["b", "b", "b"], ["a", "b"]))
    walk = walk_from_spec(messy, TWO_CYCLE, {"a": "a", "b": "b"})
    assert walk.period == ("a", "b")
    assert len(walk.preamble) == 3
    assert walk.is_walk_in(TWO_CYCLE)
    assert is_diligent(TWO_CYCLE, walk)


def test_walk_from_spec_through_relabeling():
    target = Digraph(["p", "q"], [("p", "q"), ("q", "p")])
    parity = OmegaPartitionSpec(EventuallyPeriodicWalk((), ["a", "b"]))
    walk = walk_from_spec(parity, target, {"p": "a", "q": "b"})
    assert walk.period == ("p", "q")
    # The swap is also an isomorphism of the 2-cycle; a loopy target isn't.
    assert walk_from_spec(parity, target, {"p": "b", "q": "a"}).period == ("q", "p")
    loopy = Digraph(["p", "q"], [("p", "q"), ("q", "p"), ("p", "p")])
    with pytest.raises(NotIsomorphism):
        walk_from_spec(parity, loopy, {"p": "a", "q": "b"})
    with pytest.raises(NotIsomorphism):
        walk_from_spec(parity, LOOP, {"a": "a"})


def test_walk_from_spec_roundtrip_a3():
    spec = realize_digraph(FX.a3)
    walk = walk_from_spec(spec, FX.a3, {v: v for v in FX.a3.vertices})
    assert OmegaPartitionSpec(walk).coloring.same_values(spec.coloring)


def test_spec_refines_self_and_fold():
    parity = OmegaPartitionSpec(EventuallyPeriodicWalk((), ["a", "b"]))
    ident = spec_refines(parity, parity)
    assert ident is not None
    assert all(ident(v) == v for v in ident.dom.vertices)
    mod4 = OmegaPartitionSpec(EventuallyPeriodicWalk((), ["r0", "r1", "r2", "r3"]))
    fold = spec_refines(mod4, parity)
    assert fold is not None
    assert is_epimorphism(fold)
    assert fold.mapping == {"r0": "a", "r1": "b", "r2": "a", "r3": "b"}


def test_spec_refines_crossing_specs():
    parity = OmegaPartitionSpec(EventuallyPeriodicWalk((), ["a", "b"]))
    crossing = OmegaPartitionSpec(EventuallyPeriodicWalk((), ["x", "x", "y"]))
    assert spec_refines(crossing, parity) is None


def test_virtual_refinement_validation():
    from shiftdg import DigraphMap

    loops = Digraph(["u", "v"], [("u", "u"), ("v", "v")])
    single = Digraph(["z"], [("z", "z")])
    m = DigraphMap(loops, single, {"u": "z", "v": "z"})
    with pytest.raises(NotStronglyConnected):
        VirtualRefinement(single, loops, m)


def test_polarize_identity_is_trivial_realization():
    spec = realize_digraph(FX.a3)
    vr = VirtualRefinement(FX.a3, FX.a3, identity_map(FX.a3))
    out = polarize_virtual_refinement(spec, vr)
    assert isinstance(out, Realized)
    assert out.fine.coloring.same_values(spec.coloring)


def test_polarize_fold_realizes_over_induced_spec():
    spec = induced_realization(FX.fold)
    vr = VirtualRefinement(FX.a3, FX.b4, FX.fold)
    out = polarize_virtual_refinement(spec, vr)
    assert isinstance(out, Realized)
    # The fine coloring's digraph is the cover itself under the returned
    # correspondence, and the triangle with the natural map commutes.
    fine_digraph = shift_hitting_digraph(out.fine)
    assert find_isomorphism(FX.b4, fine_digraph) is not None
    natural = spec_refines(out.fine, spec)
    assert natural is not None
    for v in FX.b4.vertices:
        assert natural(out.iso[v]) == FX.fold(v)


def test_polarize_cycle_incompatible():
    for spec in [realize_digraph(FX.a3), induced_realization(FX.fold)]:
        vr = VirtualRefinement(FX.a3, FX.v4, FX.cycle)
        out = polarize_virtual_refinement(spec, vr)
        assert isinstance(out, Incompatible)
        assert compatible_exact(FX.cycle, out.psi, max_vertices=10**4) is None
        assert is_epimorphism(out.psi)
        assert is_strongly_connected(out.c_digraph)
        fine_digraph = shift_hitting_digraph(out.fine)
        assert fine_digraph.same_labeled(out.c_digraph)
        # The spec the obstruction realizes refines the base spec.
        natural = spec_refines(out.fine, spec)
        assert natural is not None
        for c in out.c_digraph.vertices:
            assert natural(out.iso[c]) == out.psi(c)


def test_polarize_base_mismatch():
    spec = realize_digraph(TWO_CYCLE)
    vr = VirtualRefinement(FX.a3, FX.b4, FX.fold)
    with pytest.raises(BaseMismatch):
        polarize_virtual_refinement(spec, vr)


def test_fixture_shapes():
    assert len(FX.a3.edges) == 7
    assert len(FX.b4.edges) == 10
    assert len(FX.v4.edges) == 8
    assert is_epimorphism(FX.fold) and is_epimorphism(FX.cycle)
    assert is_strongly_connected(FX.b4) and is_strongly_connected(FX.v4)


def test_embedding_analogue_for_cycle_systems():
    # Realizing the atom hitting digraph of an incompressible single-cycle
    # system gives a shift-compatible coloring whose tail induced map is an
    # injective homomorphism.
    from shiftdg import (
        FiniteDynSys,
        atom_partition,
        hitting_digraph,
        is_shift_compatible,
        prefix_induced_map,
    )

    for k in range(1, 7):
        atoms = [f"t{i}" for i in range(k)]
        sys = FiniteDynSys(atoms, {atoms[i]: atoms[(i + 1) % k] for i in range(k)})
        g = hitting_digraph(sys, atom_partition(sys))
        spec = realize_digraph(g)
        label_to_atom = {"{%s}" % t: frozenset([t]) for t in atoms}
        atom_coloring = EventuallyPeriodicWalk(
            (), [label_to_atom[v] for v in spec.coloring.period]
        )
        assert is_shift_compatible(sys, atom_coloring)
        eta = prefix_induced_map(atom_coloring, 10 * k, sys)
        assert len(set(eta.values())) == len(eta)
        for a in eta:
            for b in eta:
                assert eta[a | b] == eta[a] | eta[b]


def test_spec_json_roundtrip():
    spec = realize_digraph(FX.a3)
    assert OmegaPartitionSpec.from_obj(spec.to_obj()).coloring == spec.coloring
