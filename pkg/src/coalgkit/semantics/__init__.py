"""Model checking for the modal languages over finite models."""

from .ctl import ctl_eval, infinite_path_states, lasso_holds, lasso_oracle, lassos_from
from .evaluate import (
    eval_basic,
    eval_extended,
    eval_game,
    eval_neighborhood,
    eval_pdl,
    evaluator_for,
    game_effectivity,
    holds,
    is_monotone,
    kripke_to_neighborhood,
    pdl_relation,
    pre_image,
    reflexive_transitive_closure,
)
from .models import (
    GameModel,
    KripkeModel,
    LabeledTS,
    Lasso,
    ModelError,
    NeighborhoodModel,
    PdlModel,
    TauModel,
)
from .random_models import (
    random_family,
    random_game_model,
    random_kripke,
    random_neighborhood,
    random_pdl,
    random_tau,
)
from .sat import find_model_bounded
