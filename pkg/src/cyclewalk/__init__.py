"""Construction, canonical forms and unitary equivalence of quantum walks on cycles."""
from .canonicalizer import (
    CanonicalParams,
    EquivalenceVerdict,
    Verdict,
    are_equivalent,
    canonicalize,
    canonicalize_translation_invariant,
    extract_frames,
    is_translation_invariant,
)
from .dynamics import WalkState, VertexDistribution, distribution, evolve, spectrum
from .phase_ring import (
    doubled_phase_class,
    lattice_set_4pi_over_N,
    reduce_mod_2pi,
    solve_alpha_l,
)
from .walk_core import (
    CycleWalk,
    GaugeTransform,
    LocalFrame,
    apply_gauge,
    build_from_canonical,
    build_from_frames,
    check_conditions,
    digraph_of,
    natural_expression,
    random_cycle_walk,
    to_zeta_form,
)

__version__ = "0.1.0"
