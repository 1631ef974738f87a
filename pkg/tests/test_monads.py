import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coalgkit.finset import FinSet
from coalgkit.monads import (
    DISTRIBUTION,
    POWERSET,
    SEQUENCE,
    ULTRAFILTER,
    UPPER_CLOSED,
    CapExceeded,
    EMAlgebra,
    FinDist,
    MonadError,
    OrderError,
    PowersetMonad,
    Ultrafilter,
    UpperClosedFamily,
    algebra_to_order,
    all_ultrafilters_bruteforce,
    check_convex_structure,
    check_em_algebra,
    check_kleisli_laws,
    check_monad_diagrams,
    derive_functor_action,
    derive_mu,
    dist_extend,
    dist_mu,
    dist_unit,
    first_nonzero_projection,
    free_algebra,
    manes_roundtrip,
    pow_extend,
    pow_mu,
    pow_unit,
    semilattice_to_algebra,
    seq_extend,
    seq_unit,
    sup_of_support,
    uc_extend,
    uc_unit,
    uf_extend,
    uf_unit,
    upper_closed_families,
    upward_closure,
)

F = frozenset
half, third = Fraction(1, 2), Fraction(1, 3)


# ---------- powerset ----------


def test_powerset_extend_examples():
    f = {1: F({1, 2}), 2: F({3})}.get
    assert pow_extend(f)(F()) == F()
    assert pow_extend(f)(F({1, 2})) == F({1, 2, 3})
    for B in FinSet([1, 2, 3]).subsets():
        assert pow_extend(pow_unit)(B) == B


def test_powerset_extend_rejects_non_subsets():
    with pytest.raises(MonadError):
        pow_extend(lambda x: F({"z"}), FinSet(["a"]))(F({1}))


def test_powerset_mu():
    assert pow_mu({F({1}), F({2, 3})}) == F({1, 2, 3})
    assert pow_mu(F()) == F()
    assert pow_mu([F(), F()]) == F()


# ---------- distributions ----------


def test_dist_extend_examples():
    f = {"s": dist_unit("s"), "t": FinDist({"s": half, "t": half})}.get
    p = FinDist({"s": half, "t": half})
    assert dist_extend(f)(p) == FinDist({"s": Fraction(3, 4), "t": Fraction(1, 4)})
    assert dist_extend(f)(dist_unit("t")) == f("t")
    q = FinDist({"a": third, "b": 2 * third})
    assert dist_extend(dist_unit)(q) == q


def test_dist_rejects_bad_weights():
    with pytest.raises(MonadError):
        FinDist({"a": half})
    with pytest.raises(MonadError):
        FinDist({"a": Fraction(3, 2), "b": -half})


def test_dist_mu_on_two_point_mixture():
    q1 = FinDist({"a": half, "b": half})
    q2 = dist_unit("b")
    M = FinDist({q1: third, q2: 2 * third})
    assert dist_mu(M) == FinDist({"a": Fraction(1, 6), "b": Fraction(5, 6)})


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_dist_extend_conserves_mass(seed):
    rng = random.Random(seed)
    X, Y = ["x0", "x1", "x2"], ["y0", "y1"]
    from coalgkit.monads import random_dist

    table = {x: random_dist(Y, rng) for x in X}
    p = random_dist(X, rng)
    out = dist_extend(table.get)(p)
    assert sum((w for _, w in out.items()), Fraction(0)) == 1


# ---------- ultrafilters and upper closed families ----------


def test_ultrafilters_are_principal():
    for n in range(0, 5):
        X = FinSet(str(i) for i in range(n))
        ufs = all_ultrafilters_bruteforce(X)
        assert len(ufs) == n
        for U in ufs:
            assert uf_unit(U.generator(), X) == U


def test_ultrafilter_invariants_enforced():
    X = FinSet(["1", "2"])
    with pytest.raises(MonadError):
        Ultrafilter(X, [F(["1", "2"])])
    with pytest.raises(MonadError):
        Ultrafilter(X, [F(["1"]), F(["2"]), F(["1", "2"])])


def test_ultrafilter_extend_examples():
    X, Y = FinSet(["1", "2"]), FinSet(["a", "b"])
    f = {"1": uf_unit("a", Y), "2": uf_unit("b", Y)}.get
    assert uf_extend(f, Y)(uf_unit("1", X)) == uf_unit("a", Y)
    assert uf_extend(f, Y)(uf_unit("2", X)) == f("2")


def test_upper_closed_counts():
    assert [len(upper_closed_families(FinSet(str(i) for i in range(n)))) for n in range(4)] == [
        2,
        3,
        6,
        20,
    ]


def test_upper_closed_rejects_non_upward_family():
    with pytest.raises(MonadError):
        UpperClosedFamily(FinSet(["1", "2"]), [F(["1"])])


def test_upper_closed_extend_by_definition():
    X, Y = FinSet(["1", "2"]), FinSet(["a", "b"])
    V = UpperClosedFamily.generated_by(X, [F(["1"])])
    nonempty = UpperClosedFamily(Y, [A for A in Y.subsets() if A])
    f = {"1": UpperClosedFamily.generated_by(Y, [F(["a"])]), "2": nonempty}.get
    got = uc_extend(f, Y)(V)
    expected = {B for B in Y.subsets() if F(s for s in X if B in f(s)) in V}
    assert got.members == F(expected)
    assert got.members == F([F(["a"]), F(["a", "b"])])
    for W in upper_closed_families(X):
        assert uc_extend(lambda x: uc_unit(x, X), X)(W) == W
    assert uc_extend(f, Y)(uc_unit("2", X)) == nonempty


# ---------- sequences ----------


def test_sequence_monad_quoted_values():
    upto = lambda w: tuple(range(w + 1))  # noqa: E731
    assert seq_extend(upto)((0, 1, 2)) == (0, 0, 1, 0, 1, 2)
    assert seq_extend(upto)(seq_unit(3)) == upto(3)
    p = ("a", "b", "a")
    assert seq_extend(seq_unit)(p) == p


def test_sequence_associativity_sampled():
    rng = random.Random(3)
    for _ in range(100):
        f = {x: tuple(rng.choice("ab") for _ in range(rng.randint(0, 2))) for x in "ab"}.get
        g = {x: tuple(rng.choice("xy") for _ in range(rng.randint(0, 2))) for x in "ab"}.get
        h = {x: tuple(rng.choice("ab") for _ in range(rng.randint(0, 2))) for x in "xy"}.get
        p = tuple(rng.choice("ab") for _ in range(rng.randint(0, 3)))
        lhs = seq_extend(lambda y: seq_extend(h)(g(y)))(seq_extend(f)(p))
        rhs = seq_extend(h)(seq_extend(g)(seq_extend(f)(p)))
        assert lhs == rhs


# ---------- derived structure ----------


def test_derived_functor_action():
    X, Y = FinSet(["1", "2"]), FinSet(["a"])
    const = lambda x: "a"  # noqa: E731
    assert derive_functor_action(POWERSET, const, Y)(F(["1", "2"])) == F(["a"])
    Tf = derive_functor_action(DISTRIBUTION, const, Y)
    assert Tf(FinDist({"1": half, "2": half})) == dist_unit("a")
    for n in range(4):
        Z = FinSet(str(i) for i in range(n))
        Tid = derive_functor_action(POWERSET, lambda x: x, Z)
        assert all(Tid(B) == B for B in Z.subsets())


def test_derived_mu_is_flat_union_and_right_unit():
    for n in range(4):
        X = FinSet(str(i) for i in range(n))
        mu = derive_mu(POWERSET, X)
        for B in X.subsets():
            assert mu(F([B])) == B
        for beta in itertools.islice(FinSet(X.subsets()).subsets(), 50):
            assert mu(beta) == pow_mu(beta)


def test_derived_mu_cap():
    with pytest.raises(CapExceeded):
        derive_mu(UPPER_CLOSED, FinSet("abcd"), tabulate=True)


def test_kleisli_laws_powerset_small():
    r = check_kleisli_laws(POWERSET, 2)
    assert r.passed, r.render()
    assert r.render() == "law1 PASS\nlaw2 PASS\nlaw3 PASS"


def test_kleisli_laws_ultrafilter_and_sequence():
    assert check_kleisli_laws(ULTRAFILTER, 3).passed
    assert check_kleisli_laws(SEQUENCE, 2, mode="sampled").passed


def test_kleisli_laws_distribution_sampled():
    r = check_kleisli_laws(DISTRIBUTION, 3, mode="sampled", samples=200)
    assert r.passed, r.render()


def test_kleisli_cap_is_an_error():
    with pytest.raises(CapExceeded):
        check_kleisli_laws(POWERSET, 4)


class DropsAnElement(PowersetMonad):
    name = "broken"

    def extend(self, f, Y=None):
        inner = super().extend(f, Y)

        def ext(B):
            out = inner(B)
            return out - {min(out)} if len(out) > 1 else out

        return ext


def test_corrupted_extend_fails_law1_with_witness():
    r = check_kleisli_laws(DropsAnElement(), 2)
    assert not r["law1"].passed
    assert r["law1"].witness
    assert r.render().splitlines()[0].startswith("law1 FAIL: ")


def test_manes_roundtrip_small():
    for m in (POWERSET, ULTRAFILTER, SEQUENCE):
        assert manes_roundtrip(m, 2).passed
    assert manes_roundtrip(DISTRIBUTION, 3, mode="sampled").passed


def test_monad_diagrams_small():
    for m in (POWERSET, ULTRAFILTER, SEQUENCE, DISTRIBUTION):
        assert check_monad_diagrams(m, 2).passed


# ---------- algebras ----------


def test_chain_semilattice_algebra():
    alg = semilattice_to_algebra(["0", "1"], {("0", "0"), ("0", "1"), ("1", "1")})
    r = check_em_algebra(alg)
    assert r.passed and r["mult"].checked == 16
    assert alg(F()) == "0"
    assert algebra_to_order(alg).pairs == F({("0", "0"), ("0", "1"), ("1", "1")})


def test_diamond_lattice_round_trip():
    X = ["bot", "l", "r", "top"]
    leq = {(a, a) for a in X} | {("bot", x) for x in X} | {(x, "top") for x in X}
    alg = semilattice_to_algebra(X, leq)
    assert check_em_algebra(alg).passed
    assert algebra_to_order(alg).pairs == F(leq)


def test_antichain_has_no_sup():
    with pytest.raises(OrderError):
        semilattice_to_algebra(["a", "b"], {("a", "a"), ("b", "b")})


def test_pretender_fails_unit_law():
    X = FinSet(["0", "1"])
    alg = EMAlgebra(POWERSET, X, lambda A: "0")
    assert not check_em_algebra(alg)["unit"].passed


def test_free_algebras():
    for m in (POWERSET, ULTRAFILTER):
        assert check_em_algebra(free_algebra(m, FinSet(["0", "1"]))).passed


def test_convex_structures():
    assert check_convex_structure(["only"], sup_of_support()).passed
    assert check_convex_structure(["0", "1"], sup_of_support(), samples=500).passed
    r = check_convex_structure(["a", "b"], first_nonzero_projection)
    assert r["projection"].passed
    assert not r["composition"].passed
    assert r["composition"].witness.startswith("α=(1/2,1/2), β1=(0,1), β2=(1,0)")


def test_upward_closure_helper():
    X = FinSet(["1", "2"])
    assert upward_closure(X, [F(["1"])]) == F([F(["1"]), F(["1", "2"])])
