import random

import pytest
from fixtures import BISIM_M, BISIM_N, CHAIN

from coalgkit.bisim import largest_bisimulation, minimize
from coalgkit.finset import FinFn, FinSet, identity
from coalgkit.logic import FormulaGenerator, Letter, Lift, parse, random_formula
from coalgkit.monads import CapExceeded
from coalgkit.semantics import (
    KripkeModel,
    eval_basic,
    eval_neighborhood,
    random_kripke,
    random_neighborhood,
)
from coalgkit.coalglogic import (
    CoalgLogicError,
    Coalgebra,
    FunctorInstance,
    PredicateLifting,
    behavioral_equiv,
    check_coalgebra_morphism,
    check_monotone,
    check_naturality,
    coalgebra_to_model,
    eval_coalg,
    first_projection,
    from_basic,
    lift_box,
    lift_const,
    lift_diamond,
    lift_from_nat,
    lift_neg,
    logical_equiv,
    model_to_coalgebra,
    random_lifting_suite,
    registry,
    theory,
)

PK_P = FunctorInstance("pk", ("p",))
X12 = FinSet([1, 2])


def all_liftings(F):
    lifts = list(registry(F).values())
    lifts.append(lift_neg(lift_diamond(F)))
    lifts.append(lift_neg(lift_box(F)))
    if F.tag == "pk":
        lifts.append(lift_from_nat(F, first_projection))
    return lifts


# ---------------------------------------------------------------------------
# coalgebras from models


def test_chain_as_coalgebra():
    g = model_to_coalgebra(CHAIN)
    assert g("1") == (frozenset({"2"}), frozenset({"q"}))
    assert g("3") == (frozenset({"4"}), frozenset({"p", "q"}))


def test_empty_relation_coalgebra():
    M = KripkeModel(["a", "b"], [], {"p": ["a"]})
    g = model_to_coalgebra(M)
    assert g("a") == (frozenset(), frozenset({"p"}))
    assert g("b") == (frozenset(), frozenset())


def test_round_trips():
    rng = random.Random(0)
    for _ in range(30):
        M = random_kripke(rng, rng.randint(1, 5))
        assert coalgebra_to_model(model_to_coalgebra(M)) == M
        N = random_neighborhood(rng, rng.randint(1, 3))
        assert coalgebra_to_model(model_to_coalgebra(N)) == N


def test_model_morphisms_are_coalgebra_morphisms():
    rng = random.Random(1)
    for _ in range(20):
        M = random_kripke(rng, rng.randint(1, 4), letters=("p",))
        N, f = minimize(M)
        assert check_coalgebra_morphism(f, model_to_coalgebra(M), model_to_coalgebra(N))


# ---------------------------------------------------------------------------
# liftings


def test_lift_box_examples():
    box = lift_box(PK_P)
    assert box(X12, X12) == frozenset(PK_P.elements(X12))
    e, p = frozenset(), frozenset({"p"})
    one = frozenset({1})
    assert box(X12, {1}) == {(e, e), (e, p), (one, e), (one, p)}
    assert {c[0] for c in box(X12, set())} == {e}
    with pytest.raises(CoalgLogicError):
        box(X12, {3})


def test_derived_liftings():
    assert lift_neg(lift_diamond(PK_P))(X12, {1}) == lift_box(PK_P)(X12, {1})
    for D in X12.subsets():
        assert lift_neg(lift_diamond(PK_P))(X12, D) == lift_box(PK_P)(X12, D)
        assert lift_from_nat(PK_P, first_projection)(X12, D) == lift_box(PK_P)(X12, D)
    const = lift_const(PK_P, "p")
    assert const(X12, set()) == const(X12, X12)
    with pytest.raises(CoalgLogicError):
        lift_const(PK_P, "z")


@pytest.mark.parametrize("tag", ["pk", "nb"])
def test_liftings_natural_and_monotone(tag):
    F = FunctorInstance(tag, ("p", "q"))
    for lam in all_liftings(F):
        nat, mono = random_lifting_suite(lam, samples=200, seed=3)
        assert nat, (lam.name, nat.detail)
        assert mono, (lam.name, mono.detail)


def test_naturality_under_identity():
    box = lift_box(PK_P)
    for G in X12.subsets():
        assert check_naturality(box, identity(X12), G)


def test_non_monotone_transform_is_caught():
    # D ↦ {(D', Q) | D' ⊆ X ∖ D} shrinks as D grows
    bad = PredicateLifting("anti", PK_P, lambda X, D, c: c[0] <= X.as_frozenset() - D)
    v = check_monotone(bad, X12, set(), {1})
    assert not v
    assert v.witness in bad(X12, set()) and v.witness not in bad(X12, {1})
    nat, mono = random_lifting_suite(bad, samples=50)
    assert not mono


def test_non_natural_transform_is_caught():
    # depends on the size of X, which maps do not preserve
    bad = PredicateLifting("size", PK_P, lambda X, D, c: len(X) == 2 and c[0] <= D)
    f = FinFn([1, 2], [1], {1: 1, 2: 1})
    assert not check_naturality(bad, f, {1})


def test_enumeration_caps():
    with pytest.raises(CapExceeded):
        list(PK_P.elements(range(5)))
    assert len(list(FunctorInstance("nb").elements(range(4)))) == 168


# ---------------------------------------------------------------------------
# L(𝕃) semantics


def test_chain_evaluation():
    g = model_to_coalgebra(CHAIN)
    assert eval_coalg(g, parse("[box]q", "coalg")) == set(CHAIN.worlds)
    assert eval_coalg(g, parse("false", "coalg")) == set()
    assert eval_coalg(g, parse("[const_p]true", "coalg")) == CHAIN.val("p")
    with pytest.raises(CoalgLogicError):
        eval_coalg(g, Lift("nope", Letter("p")))


def test_pk_agrees_with_kripke():
    rng = random.Random(4)
    gen = FormulaGenerator("basic", letters=("p", "q"))
    for _ in range(30):
        M = random_kripke(rng, rng.randint(1, 5))
        g = model_to_coalgebra(M)
        for _ in range(10):
            phi = gen.formula(rng, 4)
            assert eval_coalg(g, from_basic(phi)) == eval_basic(M, phi)


def test_nb_agrees_with_neighborhood_semantics():
    rng = random.Random(5)
    gen = FormulaGenerator("basic", letters=("p", "q"))
    for _ in range(30):
        N = random_neighborhood(rng, rng.randint(1, 4))
        g = model_to_coalgebra(N)
        for _ in range(10):
            phi = gen.formula(rng, 4)
            assert eval_coalg(g, from_basic(phi)) == eval_neighborhood(N, phi)


def test_validity_invariant_under_morphisms():
    rng = random.Random(6)
    gen = FormulaGenerator("coalg", letters=("p",), liftings=("box", "dia", "const_p"))
    for _ in range(20):
        M = random_kripke(rng, rng.randint(1, 5), letters=("p",))
        N, f = minimize(M)
        gm, gn = model_to_coalgebra(M), model_to_coalgebra(N)
        for _ in range(10):
            phi = gen.formula(rng, 4)
            assert eval_coalg(gm, phi) == f.preimage(eval_coalg(gn, phi))


# ---------------------------------------------------------------------------
# theories and equivalences


def test_theory_depth_zero_is_letters():
    g = model_to_coalgebra(CHAIN)
    t = theory(g, "2", 0)
    assert t.profile == (frozenset({"2", "3"}),)
    assert t.holds(parse("p & q", "coalg"))


def test_theories_respect_definable_sets():
    rng = random.Random(7)
    gen = FormulaGenerator("coalg", letters=("p",), liftings=("box", "dia", "const_p"))
    for _ in range(20):
        M = random_kripke(rng, rng.randint(1, 5), letters=("p",))
        g = model_to_coalgebra(M)
        for _ in range(10):
            phi = gen.formula(rng, 3)
            from coalgkit.logic import modal_depth

            k = modal_depth(phi)
            S = eval_coalg(g, phi)
            for w in M.worlds:
                # a formula of depth k cannot split a depth-k theory class
                cls = theory(g, w, k).profile[-1]
                assert cls <= S or not (cls & S)


def test_dead_state_separated_at_depth_one():
    M = KripkeModel(["x", "y"], [("x", "y")])
    g = model_to_coalgebra(M)
    assert ("x", "y") in logical_equiv(g, g, 0)
    assert ("x", "y") not in logical_equiv(g, g, 1)
    with pytest.raises(CapExceeded):
        logical_equiv(g, g, 6)


def test_behavioral_equivalence_examples():
    gm, gn = model_to_coalgebra(BISIM_M), model_to_coalgebra(BISIM_N)
    r = behavioral_equiv(gm, gn, "4", "e")
    assert r and r.f("4") == r.f("5") == r.g("e")
    assert behavioral_equiv(gm, gm, "3", "3")
    assert not behavioral_equiv(gm, gn, "1", "b")


def test_behavioral_and_logical_equivalence_agree():
    rng = random.Random(8)
    for _ in range(25):
        M = random_kripke(rng, rng.randint(1, 4), letters=("p",))
        N = random_kripke(rng, rng.randint(1, 4), letters=("p",), prefix="v")
        gm, gn = model_to_coalgebra(M), model_to_coalgebra(N)
        L = largest_bisimulation(M, N)
        depth = min(5, len(M.worlds) + len(N.worlds))
        E = logical_equiv(gm, gn, depth)
        for s in M.worlds:
            for t in N.worlds:
                beh = bool(behavioral_equiv(gm, gn, s, t))
                assert beh == ((s, t) in L)
                if beh:
                    assert (s, t) in E
        if len(M.worlds) + len(N.worlds) <= 5:
            assert E == L


def test_mismatched_functors():
    gm = model_to_coalgebra(BISIM_M)
    other = Coalgebra(FunctorInstance("pk", ("r",)), ["z"], {"z": ((), ())})
    with pytest.raises(CoalgLogicError):
        logical_equiv(gm, other, 1)
