"""Predicate liftings λ_X: P(X) → P(T X) and their property checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from ..finset import FinFn, FinSet, as_finset, show, show_set
from .functors import CoalgLogicError, FunctorInstance

# member(X, D, c) decides c ∈ λ_X(D)
Member = Callable[[FinSet, frozenset, tuple], bool]


@dataclass(frozen=True)
class PredicateLifting:
    name: str
    functor: FunctorInstance
    member: Member

    def __call__(self, X, D) -> frozenset:
        """λ_X(D) as a subset of T X."""
        X = as_finset(X)
        D = _subset(X, D)
        return frozenset(c for c in self.functor.elements(X) if self.member(X, D, c))

    def contains(self, X, D, c) -> bool:
        return self.member(as_finset(X), frozenset(D), c)


def _subset(X: FinSet, D) -> frozenset:
    D = frozenset(D)
    if not D <= X.as_frozenset():
        extra = sorted(D - X.as_frozenset(), key=str)
        raise CoalgLogicError(f"{show_set(D)} is not a subset of {X.render()} ({show(extra[0])})")
    return D


def lift_box(functor: FunctorInstance) -> PredicateLifting:
    """pk: {(D', Q) | D' ⊆ D}; nb: {(N, Q) | D ∈ N}."""
    if functor.tag == "pk":
        return PredicateLifting("box", functor, lambda X, D, c: c[0] <= D)
    return PredicateLifting("box", functor, lambda X, D, c: D in c[0].members)


def lift_diamond(functor: FunctorInstance) -> PredicateLifting:
    """pk: {(D', Q) | D' ∩ D ≠ ∅}; nb: {(N, Q) | X∖D ∉ N}."""
    if functor.tag == "pk":
        return PredicateLifting("dia", functor, lambda X, D, c: bool(c[0] & D))
    return PredicateLifting(
        "dia", functor, lambda X, D, c: X.as_frozenset() - D not in c[0].members
    )


def lift_const(functor: FunctorInstance, p: str) -> PredicateLifting:
    """{(a, Q) | p ∈ Q}, ignoring D."""
    if p not in functor.letters:
        raise CoalgLogicError(f"letter {p!r} is not in Φ")
    return PredicateLifting(f"const_{p}", functor, lambda X, D, c: p in c[1])


def lift_neg(lam: PredicateLifting, name: str | None = None) -> PredicateLifting:
    """The dual (T X) ∖ λ_X(X ∖ D)."""
    return PredicateLifting(
        name or f"neg_{lam.name}",
        lam.functor,
        lambda X, D, c: not lam.member(X, X.as_frozenset() - D, c),
    )


def lift_from_nat(functor: FunctorInstance, eta: Callable, name: str = "nat") -> PredicateLifting:
    """{c | η_X(c) ⊆ D} for a natural transformation η: T → P."""
    return PredicateLifting(name, functor, lambda X, D, c: frozenset(eta(X, c)) <= D)


def first_projection(X, c) -> frozenset:
    """η_X(D', Q) = D', the natural map from the pk functor to P."""
    return c[0]


def registry(functor: FunctorInstance) -> dict[str, PredicateLifting]:
    """Liftings available by name: box, dia and const_p for each letter p."""
    out = {"box": lift_box(functor), "dia": lift_diamond(functor)}
    for p in functor.letters:
        out[f"const_{p}"] = lift_const(functor, p)
    return out


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class LiftingCheck:
    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_naturality(lam: PredicateLifting, f: FinFn, G) -> LiftingCheck:
    """λ_X(f⁻¹ G) = (T f)⁻¹(λ_Y(G)), element by element of T X."""
    X, Y = f.domain, f.codomain
    G = _subset(Y, G)
    pre = f.preimage(G)
    F = lam.functor
    for c in F.elements(X):
        left = lam.member(X, pre, c)
        right = lam.member(Y, G, F.fmap(f, c))
        if left != right:
            return LiftingCheck(
                False, c,
                f"{F.render(c)} ∈ λ_X(f⁻¹G) is {left} but T f of it ∈ λ_Y(G) is {right}",
            )
    return LiftingCheck(True)


def check_monotone(lam: PredicateLifting, X, D, E) -> LiftingCheck:
    """λ_X(D) ⊆ λ_X(E) for D ⊆ E."""
    X = as_finset(X)
    D, E = _subset(X, D), _subset(X, E)
    if not D <= E:
        raise CoalgLogicError(f"{show_set(D)} is not contained in {show_set(E)}")
    for c in lam.functor.elements(X):
        if lam.member(X, D, c) and not lam.member(X, E, c):
            return LiftingCheck(
                False, c, f"{lam.functor.render(c)} ∈ λ({show_set(D)}) but ∉ λ({show_set(E)})"
            )
    return LiftingCheck(True)


def random_lifting_suite(
    lam: PredicateLifting, samples: int = 200, seed: int = 0, max_size: int = 3
) -> tuple[LiftingCheck, LiftingCheck]:
    """First failure (or success) of naturality and monotonicity on random instances."""
    rng = random.Random(seed)
    nat = mono = LiftingCheck(True)
    for _ in range(samples):
        X = FinSet(range(rng.randint(0, max_size)))
        Y = FinSet(range(rng.randint(1, max_size)))
        f = FinFn(X, Y, {x: rng.choice(Y.elements) for x in X})
        G = frozenset(y for y in Y if rng.random() < 0.5)
        if nat:
            nat = check_naturality(lam, f, G)
        E = frozenset(x for x in X if rng.random() < 0.6)
        D = frozenset(x for x in E if rng.random() < 0.6)
        if mono:
            mono = check_monotone(lam, X, D, E)
        if not nat and not mono:
            break
    return nat, mono
