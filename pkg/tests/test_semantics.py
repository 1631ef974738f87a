import itertools
import random

import pytest

from coalgkit.finset import FinSet, powerset_of
from coalgkit.logic import (
    Atomic,
    Box,
    Diamond,
    Dual,
    FormulaGenerator,
    Letter,
    LogicError,
    Not,
    Possibly,
    Seq,
    Star,
    Test,
    desugar,
    parse,
    parse_program,
    random_formula,
)
from coalgkit.semantics import (
    KripkeModel,
    LabeledTS,
    Lasso,
    ModelError,
    NeighborhoodModel,
    PdlModel,
    TauModel,
    ctl_eval,
    eval_basic,
    eval_extended,
    eval_game,
    eval_neighborhood,
    eval_pdl,
    find_model_bounded,
    game_effectivity,
    is_monotone,
    kripke_to_neighborhood,
    lasso_holds,
    lasso_oracle,
    pdl_relation,
    random_game_model,
    random_kripke,
    random_neighborhood,
    random_pdl,
    reflexive_transitive_closure,
)

W5 = [str(i) for i in range(1, 6)]
CHAIN = KripkeModel(
    W5, [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5")], {"p": ["2", "3"], "q": W5, "r": []}
)
DIV = ["1", "2", "3", "4", "6", "8", "12", "24"]
DIVISIBILITY = KripkeModel(
    DIV,
    [(x, y) for x in DIV for y in DIV if x != y and int(y) % int(x) == 0],
    {"p": ["4", "8", "12", "24"], "q": ["6"]},
)
PDL = PdlModel(
    ["-1", "0", "1"],
    {
        "init": [("-1", "0"), ("0", "0"), ("1", "1")],
        "run": [("-1", "-1"), ("0", "0"), ("1", "1")],
        "print": [("-1", "-1"), ("0", "1"), ("1", "1")],
    },
    {"is_init": ["0", "1"], "did_print": ["1"]},
)
# chain 1 -> 2 -> 3 with a loop on 3
LOOP = KripkeModel(["1", "2", "3"], [("1", "2"), ("2", "3"), ("3", "3")], {"p": ["3"]})


def ev(model, text):
    return set(eval_basic(model, parse(text)))


# ---------------------------------------------------------------------------
# basic modal logic


def test_chain_model():
    assert "1" in ev(CHAIN, "<>[]p")
    assert ev(CHAIN, "[]p") == {"1", "2", "5"}
    assert ev(CHAIN, "<>[]p") == {"1", "4"}
    assert "1" not in ev(CHAIN, "<>[]p -> p")
    assert "2" in ev(CHAIN, "<>(p & ~r)")
    phi = "q & <>(q & <>(q & <>(q & <>q)))"
    assert ev(CHAIN, phi) == {"1"}
    assert "1" not in ev(CHAIN, f"<>({phi}) & q")
    assert ev(CHAIN, "[]q") == set(W5)


def test_divisibility_model():
    box_p = ev(DIVISIBILITY, "[]p")
    assert {"4", "6"} <= box_p and "2" not in box_p
    assert box_p == {"4", "6", "8", "12", "24"}
    assert "2" in ev(DIVISIBILITY, "<>(q & []p) & <>(~q & []p)")


def test_boolean_clauses_and_desugaring():
    rng = random.Random(1)
    for _ in range(40):
        m = random_kripke(rng, rng.randint(1, 5))
        W = m.worlds.as_frozenset()
        for _ in range(5):
            phi = random_formula(rng, 4)
            S = eval_basic(m, phi)
            assert eval_basic(m, Not(phi)) == W - S
            assert eval_basic(m, desugar(phi)) == S


def test_undeclared_letter():
    with pytest.raises(ModelError):
        eval_basic(CHAIN, parse("<>s"))


def test_tau_model():
    T = TauModel(
        ["u", "v", "w", "s"],
        {"Dia": 2, "Club": 3},
        {"Dia": [("u", "v", "w")], "Club": [("u", "v", "w", "s")]},
        {"p0": ["v"], "p1": ["w"], "p2": ["s"]},
    )
    assert eval_extended(T, parse("Dia(p0, p1)", "tau")) == {"u"}
    assert "u" in eval_extended(T, parse("Club(p0, p1, p2)", "tau"))
    with pytest.raises(ModelError):
        eval_extended(T, parse("Spade(p0)", "tau"))


def test_labeled_transition_system():
    L = LabeledTS(
        ["w1", "w2", "w3", "w4"],
        {"a": [("w1", "w2"), ("w4", "w4")], "b": [("w2", "w3")], "c": [("w3", "w4")]},
        {"p": ["w2"]},
    )
    S = eval_extended(L, parse("<a>p -> <b>p", "tau"))
    assert "w1" not in S
    assert S == {"w2", "w3", "w4"}


# ---------------------------------------------------------------------------
# neighborhood semantics


def test_kripke_to_neighborhood_families():
    W = ["x", "y"]
    m = KripkeModel(W, [("y", "x"), ("y", "y")])
    N = kripke_to_neighborhood(m).nbhd
    assert set(N["x"].members) == set(powerset_of(FinSet(W)))
    assert set(N["y"].members) == {frozenset(W)}
    chain = kripke_to_neighborhood(CHAIN).nbhd["1"]
    assert set(chain.members) == {A for A in powerset_of(CHAIN.worlds) if "2" in A}


def test_neighborhood_agrees_with_kripke():
    N = kripke_to_neighborhood(CHAIN)
    rng = random.Random(2)
    gen = FormulaGenerator("basic", letters=("p", "q", "r"))
    for _ in range(100):
        phi = gen.formula(rng, 4)
        assert eval_neighborhood(N, phi) == eval_basic(CHAIN, phi)


def test_neighborhood_box_top_and_duality():
    N = NeighborhoodModel(["a", "b"], {"a": [["a", "b"]], "b": []}, {"p": ["a"]})
    assert eval_neighborhood(N, parse("[]true")) == {"a"}
    rng = random.Random(3)
    for _ in range(40):
        M = random_neighborhood(rng, rng.randint(1, 4))
        phi = random_formula(rng, 3)
        assert eval_neighborhood(M, Diamond(phi)) == eval_neighborhood(M, Not(Box(Not(phi))))


# ---------------------------------------------------------------------------
# PDL


def test_pdl_exercise():
    R = pdl_relation(PDL, parse_program("run ; print"))
    assert set(R.pairs) == {("-1", "-1"), ("0", "1"), ("1", "1")}
    assert "-1" not in eval_pdl(PDL, parse("<run ; print>did_print", "pdl"))
    assert eval_pdl(PDL, parse("<init ; run ; print>did_print", "pdl")) == {"-1", "0", "1"}
    assert eval_pdl(PDL, parse("<(~is_init)? ; print>did_print", "pdl")) == set()


def test_pdl_star_small_cases():
    m = PdlModel(["1", "2"], {"a": [("1", "2")]})
    assert set(pdl_relation(m, Star(Atomic("a"))).pairs) == {("1", "1"), ("2", "2"), ("1", "2")}
    empty = PdlModel(["1", "2"], {"a": []})
    assert set(pdl_relation(empty, Star(Atomic("a"))).pairs) == {("1", "1"), ("2", "2")}
    with pytest.raises(ModelError):
        pdl_relation(m, Atomic("b"))


def test_pdl_star_matches_closure_oracle():
    rng = random.Random(4)
    gen = FormulaGenerator("pdl")
    for _ in range(50):
        m = random_pdl(rng, rng.randint(1, 5))
        prog = gen.program(rng, 2)
        R = pdl_relation(m, prog)
        assert pdl_relation(m, Star(prog)) == reflexive_transitive_closure(R)


def test_pdl_sequence_law():
    rng = random.Random(5)
    gen = FormulaGenerator("pdl")
    for _ in range(50):
        m = random_pdl(rng, rng.randint(1, 5))
        p1, p2 = gen.program(rng, 2), gen.program(rng, 2)
        phi = gen.formula(rng, 2)
        lhs = eval_pdl(m, Possibly(Seq(p1, p2), phi))
        assert lhs == eval_pdl(m, Possibly(p1, Possibly(p2, phi)))


def test_pdl_test_relation_is_partial_diagonal():
    R = pdl_relation(PDL, Test(Letter("is_init")))
    assert set(R.pairs) == {("0", "0"), ("1", "1")}


# ---------------------------------------------------------------------------
# game logic


def test_game_effectivity_properties():
    rng = random.Random(6)
    gen = FormulaGenerator("game")
    for _ in range(50):
        M = random_game_model(rng, rng.randint(1, 4))
        g = gen.program(rng, 3)
        P = game_effectivity(M, g)
        assert is_monotone(P, M.worlds) is None
        PP = game_effectivity(M, Dual(Dual(g)))
        Q = game_effectivity(M, Atomic("a"))
        U = game_effectivity(M, parse_program("a u b"))
        R = game_effectivity(M, parse_program("b"))
        for A in powerset_of(M.worlds):
            assert PP(A) == P(A)
            assert U(A) == Q(A) | R(A)


def test_game_test_clause():
    rng = random.Random(7)
    gen = FormulaGenerator("game")
    for _ in range(30):
        M = random_game_model(rng, rng.randint(1, 4))
        phi = gen.formula(rng, 2)
        gilt = eval_game(M, phi)
        T = game_effectivity(M, Test(phi))
        for A in powerset_of(M.worlds):
            assert T(A) == gilt & A


def test_game_box_is_dual_diamond():
    rng = random.Random(8)
    gen = FormulaGenerator("game")
    for _ in range(30):
        M = random_game_model(rng, rng.randint(1, 3))
        g = gen.program(rng, 2)
        assert eval_game(M, parse(f"[{g}]p", "game")) == eval_game(M, Possibly(Dual(g), Letter("p")))


def test_undeclared_game():
    M = random_game_model(random.Random(0), 2)
    with pytest.raises(ModelError):
        eval_game(M, parse("<z>p", "game"))


# ---------------------------------------------------------------------------
# CTL


def test_ctl_examples():
    W = {"1", "2", "3"}
    for text in ("EF p", "E(~p U p)", "AG true"):
        assert ctl_eval(LOOP, parse(text, "ctl")) == W
    assert ctl_eval(LOOP, parse("AX p", "ctl")) == {"2", "3"}
    assert ctl_eval(LOOP, parse("EG ~p", "ctl")) == set()


def test_ctl_without_left_totality():
    dead = KripkeModel(["1", "2"], [("1", "2")], {"p": ["2"]})
    # no infinite path anywhere: E-formulas fail and A-formulas hold vacuously
    assert ctl_eval(dead, parse("EX p", "ctl")) == set()
    assert ctl_eval(dead, parse("AX false", "ctl")) == {"1", "2"}
    assert ctl_eval(dead, parse("EF p", "ctl")) == set()


def test_ctl_rejects_path_formulas():
    with pytest.raises(LogicError):
        ctl_eval(LOOP, parse("X p", "ctl"))
    with pytest.raises(LogicError):
        ctl_eval(LOOP, parse("E(X p & p)", "ctl"))


def test_ctl_matches_lasso_oracle():
    rng = random.Random(9)
    gen = FormulaGenerator("ctl")
    for _ in range(50):
        m = random_kripke(rng, rng.randint(1, 4), density=0.4)
        for _ in range(8):
            phi = gen.rooted(rng, 3)
            expected = lasso_oracle(m, phi)
            assert ctl_eval(m, phi) == expected
            assert ctl_eval(m, desugar(phi)) == expected


def test_simple_lassos_suffice():
    rng = random.Random(10)
    gen = FormulaGenerator("ctl")
    for _ in range(10):
        m = random_kripke(rng, rng.randint(1, 3), density=0.5)
        phi = gen.rooted(rng, 2)
        assert lasso_oracle(m, phi) == lasso_oracle(m, phi, simple=False)


def test_lasso_path_clauses():
    lasso = Lasso(("1", "2"), ("3",))
    assert lasso_holds(LOOP, lasso, parse("EG true", "ctl").path)
    assert lasso_holds(LOOP, Lasso(("2",), ("3",)), parse("EX p", "ctl").path)
    assert not lasso_holds(LOOP, lasso, parse("EX p", "ctl").path)
    with pytest.raises(ModelError):
        lasso_holds(LOOP, Lasso(("1",), ("3",)), parse("true"))


# ---------------------------------------------------------------------------
# bounded satisfiability


def test_sat_examples():
    assert find_model_bounded(parse("false")) is None
    assert find_model_bounded(parse("p & ~p")) is None
    model, w = find_model_bounded(parse("<>true"))
    assert len(model.worlds) == 1 and model.succ(w) == {w}


def test_sat_caps():
    with pytest.raises(ModelError):
        find_model_bounded(parse("p"), max_states=5)
    with pytest.raises(ModelError):
        find_model_bounded(parse("p & q & r & s"))


def _brute_force(phi, n, props):
    W = [str(i) for i in range(n)]
    pairs = [(a, b) for a in W for b in W]
    for bits in itertools.product([0, 1], repeat=len(pairs)):
        edges = [e for e, b in zip(pairs, bits) if b]
        for vals in itertools.product(range(2**n), repeat=len(props)):
            val = {p: [W[j] for j in range(n) if (v >> j) & 1] for p, v in zip(props, vals)}
            if eval_basic(KripkeModel(W, edges, val), phi):
                return True
    return False


def test_sat_agrees_with_brute_force():
    rng = random.Random(11)
    for _ in range(25):
        phi = random_formula(rng, 3)
        props = sorted({n.name for n in _letters(phi)})
        hit = find_model_bounded(phi, max_states=2)
        assert (hit is not None) == any(_brute_force(phi, n, props) for n in (1, 2))
        if hit is not None:
            model, w = hit
            assert w in eval_basic(model, phi)


def _letters(phi):
    from coalgkit.logic import walk

    return [n for n in walk(phi) if isinstance(n, Letter)]
