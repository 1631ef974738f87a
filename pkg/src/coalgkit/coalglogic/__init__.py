"""Coalgebraic logic: predicate liftings and the languages L(𝕃) they induce.

The CTL path operators of the coalgebraic presentation are realized by the
fixpoint engine in :mod:`coalgkit.semantics.ctl` and are not repeated here.
"""

from .functors import (
    FUNCTOR_TAGS,
    NB,
    PK,
    CoalgLogicError,
    Coalgebra,
    FunctorInstance,
    check_coalgebra_morphism,
    coalgebra_to_model,
    model_to_coalgebra,
    random_map,
)
from .liftings import (
    LiftingCheck,
    PredicateLifting,
    check_monotone,
    check_naturality,
    first_projection,
    lift_box,
    lift_const,
    lift_diamond,
    lift_from_nat,
    lift_neg,
    random_lifting_suite,
    registry,
)
from .semantics import (
    MAX_ATOMS,
    MAX_DEPTH,
    BehavioralResult,
    Theory,
    behavioral_equiv,
    coproduct_coalgebra,
    depth_classes,
    eval_coalg,
    from_basic,
    logical_equiv,
    theory,
)
