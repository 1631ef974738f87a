"""The two functors used by coalgebraic logic here, and their coalgebras.

``pk``  T X = P(X) × P(Φ): Kripke models, γ(w) = (R(w), V₁(w))
``nb``  G X = 𝕍(X) × P(Φ): neighborhood models, γ(w) = (N(w), V₁(w))

Elements of T X are pairs (first component, frozenset of letters).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from ..finset import FinFn, FinSet, as_finset, powerset_of, show
from ..monads import CapExceeded, UpperClosedFamily
from ..semantics import KripkeModel, NeighborhoodModel

FUNCTOR_TAGS = ("pk", "nb")
# enumeration caps for T X
MAX_CARRIER = 4
MAX_LETTERS = 2


class CoalgLogicError(ValueError):
    pass


@lru_cache(maxsize=None)
def _upper_sets(X: FinSet) -> tuple:
    """Every upward closed family over X, by backtracking from the top."""
    subs = sorted(X.subsets(), key=len, reverse=True)
    base = X.as_frozenset()
    out = []

    def go(i, chosen):
        if i == len(subs):
            out.append(UpperClosedFamily(X, chosen))
            return
        S = subs[i]
        go(i + 1, chosen)
        # S may join only if all its one-point extensions already did
        if all(S | {x} in chosen for x in base - S):
            go(i + 1, chosen | {S})

    go(0, frozenset())
    return tuple(out)


@dataclass(frozen=True)
class FunctorInstance:
    tag: str
    letters: tuple = ()

    def __post_init__(self):
        if self.tag not in FUNCTOR_TAGS:
            raise CoalgLogicError(f"unknown functor {self.tag!r}; expected pk or nb")
        object.__setattr__(self, "letters", tuple(sorted(self.letters)))

    def _check_caps(self, X: FinSet) -> None:
        if len(X) > MAX_CARRIER:
            raise CapExceeded(f"T X is enumerated only for |X| ≤ {MAX_CARRIER}, got {len(X)}")
        if len(self.letters) > MAX_LETTERS:
            raise CapExceeded(f"T X is enumerated only for |Φ| ≤ {MAX_LETTERS}")

    def elements(self, X) -> Iterator[tuple]:
        """All of T X."""
        X = as_finset(X)
        self._check_caps(X)
        firsts = powerset_of(X).elements if self.tag == "pk" else _upper_sets(X)
        labels = powerset_of(FinSet(self.letters)).elements
        return (
            (a, frozenset(q)) for a, q in itertools.product(firsts, labels)
        )

    def fmap(self, f: FinFn, c: tuple) -> tuple:
        """(T f)(c)."""
        first, q = c
        if self.tag == "pk":
            return (f.image(first), q)
        Y = f.codomain
        kept = [B for B in Y.subsets() if f.preimage(B) in first.members]
        return (UpperClosedFamily(Y, kept), q)

    def render(self, c: tuple) -> str:
        first, q = c
        return f"({show(first)},{show(q)})"


PK = FunctorInstance("pk")
NB = FunctorInstance("nb")


@dataclass(frozen=True, eq=False)
class Coalgebra:
    """A carrier with dynamics γ: C → T C."""

    functor: FunctorInstance
    carrier: FinSet
    dynamics: dict

    def __init__(self, functor: FunctorInstance, carrier, dynamics: Mapping):
        C = as_finset(carrier)
        dyn = {}
        for c in C:
            if c not in dynamics:
                raise CoalgLogicError(f"γ is undefined at {show(c)}")
            first, q = dynamics[c]
            q = frozenset(q)
            if not q <= set(functor.letters):
                raise CoalgLogicError(f"γ({show(c)}) uses undeclared letters {show(q)}")
            if functor.tag == "pk":
                first = frozenset(first)
                if not first <= C.as_frozenset():
                    raise CoalgLogicError(f"γ({show(c)}) leaves the carrier")
            elif not isinstance(first, UpperClosedFamily) or first.carrier != C:
                raise CoalgLogicError(f"γ({show(c)}) is not an upper closed family over the carrier")
            dyn[c] = (first, q)
        object.__setattr__(self, "functor", functor)
        object.__setattr__(self, "carrier", C)
        object.__setattr__(self, "dynamics", dyn)

    def __call__(self, c) -> tuple:
        return self.dynamics[c]

    def __eq__(self, other):
        return (
            isinstance(other, Coalgebra)
            and (self.functor, self.carrier, self.dynamics)
            == (other.functor, other.carrier, other.dynamics)
        )

    __hash__ = None

    def render(self) -> str:
        return "\n".join(f"γ({show(c)}) = {self.functor.render(self(c))}" for c in self.carrier)


def model_to_coalgebra(model) -> Coalgebra:
    """γ(w) = (R(w), V₁(w)) for Kripke models, (N(w), V₁(w)) for neighborhoods."""
    if isinstance(model, KripkeModel):
        F = FunctorInstance("pk", model.letters)
        return Coalgebra(F, model.worlds, {w: (model.succ(w), model.labels(w)) for w in model.worlds})
    if isinstance(model, NeighborhoodModel):
        F = FunctorInstance("nb", model.letters)
        return Coalgebra(F, model.worlds, {w: (model.nbhd[w], model.labels(w)) for w in model.worlds})
    raise CoalgLogicError(f"no coalgebra for {type(model).__name__}")


def coalgebra_to_model(coalg: Coalgebra):
    C = coalg.carrier
    val = {p: [c for c in C if p in coalg(c)[1]] for p in coalg.functor.letters}
    if coalg.functor.tag == "pk":
        return KripkeModel(C, [(c, d) for c in C for d in coalg(c)[0]], val)
    return NeighborhoodModel(C, {c: coalg(c)[0] for c in C}, val)


def check_coalgebra_morphism(f: FinFn, S: Coalgebra, T: Coalgebra) -> bool:
    """(T f) ∘ γ = δ ∘ f."""
    if S.functor != T.functor:
        raise CoalgLogicError("coalgebras for different functors")
    return all(S.functor.fmap(f, S(c)) == T(f(c)) for c in S.carrier)


def random_map(rng, X, Y) -> FinFn:
    X, Y = as_finset(X), as_finset(Y)
    return FinFn(X, Y, {x: rng.choice(Y.elements) for x in X})

