"""Formulas for basic, extended, dynamic, game and branching-time modal logic."""

from .parser import ParseError, parse, parse_program, tokenize
from .syntax import (
    LANGUAGES,
    AngelicChoice,
    AngelicIter,
    And,
    Atomic,
    Bottom,
    Box,
    Cap,
    Cross,
    DemonicChoice,
    DemonicIter,
    Diamond,
    Dual,
    Exists,
    Forall,
    Formula,
    Future,
    Globally,
    Implies,
    Letter,
    Lift,
    LogicError,
    Modal,
    Nabla,
    Necessarily,
    Next,
    Not,
    Or,
    Possibly,
    Program,
    Seq,
    Star,
    Test,
    Top,
    Union,
    Until,
    atomic_programs,
    check_language,
    letters,
    render,
    render_program,
    walk,
)
from .transform import (
    DIAMOND,
    FormulaGenerator,
    check_ctl,
    desugar,
    desugar_program,
    is_ctl,
    modal_depth,
    nabla,
    random_formula,
    substitute,
)
