"""Digraph epimorphisms, walk lifting, and eventually periodic realizations."""

from .digraph import (
    Digraph,
    EventuallyPeriodicWalk,
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
from .dynsys import (
    FiniteDynSys,
    all_partitions,
    approx_under,
    atom_partition,
    eventually_close,
    hitting_digraph,
    is_eventually_dense,
    is_eventually_small,
    is_incompressible,
    is_shift_compatible,
    make_partition,
    natural_partition_map,
    prefix_induced_map,
    refines,
)
from .errors import (
    BaseMismatch,
    BudgetExceeded,
    CodomainMismatch,
    DomainMismatch,
    InvalidPartition,
    InvalidRange,
    InvalidWalk,
    NoAlmostProjectingWalk,
    NoProjectingWalk,
    NotARefinement,
    NotDiligent,
    NotEpimorphism,
    NotIsomorphism,
    NotStronglyConnected,
    SearchTooLarge,
    ShiftdgError,
    StateFiberMismatch,
    ZeroEntry,
)
from .lifting import (
    Lift,
    Obstruct,
    Progression,
    Relation,
    dagger_check,
    diligent_dichotomy,
    homogeneous_relation,
    past_future_relations,
    verify_outcome,
    walkability_relation,
    weak_dichotomy,
)
from .morphism import (
    CompatibilityWitness,
    DigraphMap,
    commutes,
    compatible_exact,
    compatible_fast,
    compose,
    identity_map,
    is_epimorphism,
    pullback,
)
from .oracle import (
    DEFAULT_BUDGET,
    EnumerationBudget,
    brute_projecting_walk,
    crosscheck_suite,
    enumerate_digraphs,
    enumerate_epimorphisms,
)
from .realization import (
    Incompatible,
    OmegaPartitionSpec,
    Realized,
    VirtualRefinement,
    fixture_nogo,
    polarize_virtual_refinement,
    realize_digraph,
    shift_hitting_digraph,
    spec_refines,
    walk_from_spec,
)
from .state_space import (
    StateSpace,
    build_state_space,
    extract_projecting_walk,
    never_empty_from,
    pigeonhole_horizon,
    state_trajectory,
    step_state,
)
