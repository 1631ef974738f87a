import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coalgkit.logic import (
    LANGUAGES,
    And,
    Atomic,
    Bottom,
    Box,
    Cap,
    Diamond,
    Dual,
    Exists,
    Forall,
    FormulaGenerator,
    Future,
    Implies,
    Letter,
    Lift,
    LogicError,
    Modal,
    Nabla,
    Next,
    Not,
    Or,
    ParseError,
    Possibly,
    Seq,
    Test,
    Top,
    Until,
    check_ctl,
    desugar,
    is_ctl,
    modal_depth,
    nabla,
    parse,
    render,
    substitute,
)

p, q, r = Letter("p"), Letter("q"), Letter("r")
OPS = {"Op": 2, "a": 1, "N": 0}


def test_parse_examples():
    assert parse("<>[]p") == Diamond(Box(p))
    assert parse("p & q -> r") == Implies(And(p, q), r)
    prog = Seq(Seq(Atomic("init"), Atomic("run")), Atomic("print"))
    assert parse("<init ; run ; print> did_print", "pdl") == Possibly(prog, Letter("did_print"))


def test_precedence_and_associativity():
    assert parse("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse("p | q & r") == Or(p, And(q, r))
    assert parse("~p & q") == And(Not(p), q)
    assert parse("p & q & r") == And(And(p, q), r)
    assert parse("true | false") == Or(Top(), Bottom())


def test_unicode_aliases():
    assert parse("◇□p ∧ ¬q → ⊥") == Implies(And(Diamond(Box(p)), Not(q)), Bottom())


def test_tests_inside_programs():
    phi = parse("<(~is_init)?;print>did_print", "pdl")
    assert phi.prog == Seq(Test(Not(Letter("is_init"))), Atomic("print"))
    assert parse("<a* u p?>q", "pdl").prog.right == Test(p)


def test_game_syntax():
    g = parse("<(a cap b)^d ; c x>p", "game").prog
    assert g.left == Dual(Cap(Atomic("a"), Atomic("b")))
    with pytest.raises(ParseError):
        parse("<a cap b>p", "pdl")


def test_tau_syntax():
    assert parse("Op(p, q) & N()", "tau") == And(Modal("Op", (p, q)), Modal("N", ()))
    assert parse("<a>p -> [a]q", "tau") == Implies(Modal("a", (p,)), Nabla("a", (q,)))


def test_ctl_syntax():
    assert parse("EX p", "ctl") == Exists(Next(p))
    assert parse("E X p", "ctl") == Exists(Next(p))
    assert parse("A(p U q)", "ctl") == Forall(Until(p, q))
    assert parse("EF ~p & q", "ctl") == And(Exists(Future(Not(p))), q)


def test_coalg_syntax():
    assert parse("[box]q & [const_p]true", "coalg") == And(Lift("box", q), Lift("const_p", Top()))


def test_syntax_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse("p & & q")
    assert err.value.pos == 4
    with pytest.raises(ParseError):
        parse("(p")
    with pytest.raises(ParseError):
        parse("p $ q")
    with pytest.raises(ParseError):
        parse("Op(p)")  # operator application outside tau
    with pytest.raises(ParseError):
        parse("EX p", "basic")


@pytest.mark.parametrize("language", LANGUAGES)
def test_parse_render_round_trip(language):
    gen = FormulaGenerator(language, ops=OPS, liftings=("box", "dia", "const_p"))
    rng = random.Random(LANGUAGES.index(language))
    for _ in range(300):
        phi = gen.formula(rng, 6)
        assert parse(render(phi), language) == phi


def test_render_is_canonical():
    assert render(parse("((p)) & (q&r)")) == "p & (q & r)"
    assert render(parse("(p -> q) -> r")) == "(p -> q) -> r"
    assert render(parse("E(X p)", "ctl")) == "EX p"


def test_desugar_examples():
    assert desugar(Top()) == Not(Bottom())
    assert desugar(Box(p)) == Not(Diamond(Not(p)))
    assert desugar(Or(p, q)) == Not(And(Not(p), Not(q)))
    assert desugar(Implies(p, q)) == Not(And(p, Not(q)))


def test_desugar_leaves_only_primitives():
    gen = FormulaGenerator("basic")
    rng = random.Random(5)
    prim = (Bottom, Letter, And, Not, Diamond)
    from coalgkit.logic import walk

    for _ in range(100):
        phi = desugar(gen.formula(rng, 5))
        assert all(isinstance(n, prim) for n in walk(phi))


def test_nabla():
    assert nabla("<>", [p]) == Not(Diamond(Not(p)))
    assert nabla("N", [], arity=0) == Not(Modal("N", ()))
    assert nabla("Dia", [Letter("p0"), Letter("p1")]) == Not(
        Modal("Dia", (Not(Letter("p0")), Not(Letter("p1"))))
    )
    with pytest.raises(LogicError):
        nabla("Dia", [p], arity=2)


def test_substitute():
    assert substitute(p, {"p": q}) == q
    assert substitute(Bottom(), {"p": q}) == Bottom()
    phi = And(Diamond(p), r)
    assert substitute(phi, {"p": Or(q, r)}) == And(Diamond(Or(q, r)), r)
    prog = parse("<p? ; a>p", "pdl")
    assert substitute(prog, {"p": q}) == parse("<q? ; a>q", "pdl")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_identity_substitution(seed):
    phi = FormulaGenerator("tau", ops=OPS).formula(random.Random(seed), 5)
    assert substitute(phi, {}) == phi


def test_modal_depth():
    assert modal_depth(p) == 0
    assert modal_depth(Diamond(Box(p))) == 2
    assert modal_depth(Diamond(And(p, Diamond(q)))) == 2
    assert modal_depth(parse("<(<>p)?>q", "pdl")) == 2


def test_ctl_fragment_check():
    check_ctl(parse("E(p U AX q)", "ctl"))
    assert not is_ctl(parse("E(X p & q)", "ctl"))
    assert not is_ctl(parse("X p", "ctl"))
    assert not is_ctl(parse("EX X p", "ctl"))
    assert not is_ctl(Exists(p))
