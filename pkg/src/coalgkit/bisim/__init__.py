"""Bisimulations, coalgebra morphisms, quotients and modal equivalence."""

from .refine import (
    check_congruence,
    disjoint_union,
    largest_bisimulation,
    minimize,
    modal_equivalence_partition,
    quotient,
    refine,
)
from .relations import (
    MAX_MEDIATING_PAIRS,
    Verdict,
    as_relation,
    check_coalg_bisimulation,
    check_coalgebra_morphism,
    check_kripke_bisimulation,
    compose,
    construct_mediating,
    invert,
    is_bisimulation,
    projections_surjective,
    union,
)
from .views import (
    TAGS,
    BisimError,
    CoalgebraView,
    apply_to_view,
    as_view,
    fmap,
    mealy,
    powerset_view,
    render_value,
    view_to_model,
)
