"""Kleisli triples on finite carriers, their laws and their algebras."""

from .algebras import (
    EMAlgebra,
    OrderError,
    algebra_to_order,
    check_convex_structure,
    check_em_algebra,
    first_nonzero_projection,
    free_algebra,
    induced_algebra,
    semilattice_to_algebra,
    sup_of_support,
)
from .laws import (
    LawReport,
    LawResult,
    check_kleisli_laws,
    check_monad_diagrams,
    derive_functor_action,
    derive_mu,
    manes_roundtrip,
)
from .triples import (
    DISTRIBUTION,
    MONADS,
    POWERSET,
    SEQUENCE,
    ULTRAFILTER,
    UPPER_CLOSED,
    CapExceeded,
    FinDist,
    KleisliTriple,
    MonadError,
    PowersetMonad,
    Ultrafilter,
    UpperClosedFamily,
    all_ultrafilters_bruteforce,
    dist_extend,
    dist_mu,
    dist_unit,
    get_monad,
    pow_extend,
    pow_mu,
    pow_unit,
    random_dist,
    seq_extend,
    seq_mu,
    seq_unit,
    uc_extend,
    uc_unit,
    uf_extend,
    uf_unit,
    upper_closed_families,
    upward_closure,
)
