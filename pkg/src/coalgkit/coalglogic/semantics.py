"""L(𝕃): evaluation over coalgebras, theories and the two equivalences.

Theories are infinite sets of formulas, so they are represented here by what
they determine: at depth k, the set of states satisfying exactly the same
formulas of depth ≤ k. These classes are computed from the definable sets,
which form a finite Boolean algebra at every depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..finset import FinFn, FinRel, FinSet, canon_sorted, show
from ..logic.syntax import (
    And,
    Bottom,
    Formula,
    Implies,
    Letter,
    Lift,
    Not,
    Or,
    Top,
    check_language,
)
from ..monads import CapExceeded
from .functors import CoalgLogicError, Coalgebra, check_coalgebra_morphism
from .liftings import registry

MAX_DEPTH = 5
MAX_ATOMS = 12


def eval_coalg(coalg: Coalgebra, phi: Formula, liftings: dict | None = None) -> frozenset:
    """Gilt[φ]_γ; [λ]φ holds at c iff γ(c) ∈ λ_C(Gilt[φ])."""
    check_language(phi, "coalg")
    lifts = registry(coalg.functor) if liftings is None else liftings
    C = coalg.carrier
    W = C.as_frozenset()
    cache: dict = {}

    def ev(phi):
        if phi in cache:
            return cache[phi]
        t = type(phi)
        if t is Bottom:
            out = frozenset()
        elif t is Top:
            out = W
        elif t is Letter:
            if phi.name not in coalg.functor.letters:
                raise CoalgLogicError(f"letter {phi.name!r} is not in Φ")
            out = frozenset(c for c in C if phi.name in coalg(c)[1])
        elif t is Not:
            out = W - ev(phi.arg)
        elif t is And:
            out = ev(phi.left) & ev(phi.right)
        elif t is Or:
            out = ev(phi.left) | ev(phi.right)
        elif t is Implies:
            out = (W - ev(phi.left)) | ev(phi.right)
        else:
            lam = lifts.get(phi.name)
            if lam is None:
                raise CoalgLogicError(f"lifting {phi.name!r} is not registered")
            S = ev(phi.arg)
            out = frozenset(c for c in C if lam.member(C, S, coalg(c)))
        cache[phi] = out
        return out

    return ev(phi)


def from_basic(phi: Formula) -> Formula:
    """Translate a basic modal formula: □ becomes [box], ◇ becomes [dia]."""
    from ..logic.syntax import Box, Diamond

    t = type(phi)
    if t in (Bottom, Top, Letter):
        return phi
    if t is Not:
        return Not(from_basic(phi.arg))
    if t in (And, Or, Implies):
        return t(from_basic(phi.left), from_basic(phi.right))
    if t is Box:
        return Lift("box", from_basic(phi.arg))
    if t is Diamond:
        return Lift("dia", from_basic(phi.arg))
    raise CoalgLogicError(f"{t.__name__} is not a basic modal connective")


# ---------------------------------------------------------------------------
# theories


def _class_ids(carrier, key) -> dict:
    ids: dict = {}
    return {x: ids.setdefault(key(x), len(ids)) for x in carrier}


def depth_classes(coalg: Coalgebra, depth: int, liftings: dict | None = None) -> list[dict]:
    """Class maps for depths 0..depth: equal class iff equal depth-k theory.

    Depth-(k+1) formulas are Boolean combinations of letters and [λ]ψ with ψ
    of depth ≤ k, and the ψ range over all unions of depth-k classes.
    """
    if not 0 <= depth <= MAX_DEPTH:
        raise CapExceeded(f"depth must lie in 0..{MAX_DEPTH}, got {depth}")
    lifts = registry(coalg.functor) if liftings is None else liftings
    lams = [lifts[n] for n in sorted(lifts)]
    C = coalg.carrier
    cls = _class_ids(C, lambda c: coalg(c)[1])
    out = [cls]
    for _ in range(depth):
        blocks: dict = {}
        for c, k in cls.items():
            blocks.setdefault(k, set()).add(c)
        if len(blocks) > MAX_ATOMS:
            raise CapExceeded(f"{len(blocks)} theory classes exceed the cap {MAX_ATOMS}")
        atoms = [frozenset(b) for _, b in sorted(blocks.items())]
        unions = [
            frozenset().union(*combo) for r in range(len(atoms) + 1) for combo in combinations(atoms, r)
        ]

        def key(c, cls=cls, unions=unions):
            g = coalg(c)
            return (cls[c], tuple(lam.member(C, U, g) for lam in lams for U in unions))

        cls = _class_ids(C, key)
        out.append(cls)
    return out


@dataclass(frozen=True)
class Theory:
    """The depth-stratified theory of one state.

    ``profile[k]`` holds the states sharing its depth-k theory.
    """

    coalgebra: Coalgebra
    state: object
    depth: int
    profile: tuple

    def holds(self, phi: Formula) -> bool:
        return self.state in eval_coalg(self.coalgebra, phi)

    def same_as(self, other: "Theory") -> bool:
        return self.coalgebra is other.coalgebra and other.state in self.profile[-1]

    def render(self) -> str:
        return " | ".join(
            f"depth {k}: " + "{" + ",".join(show(s) for s in canon_sorted(b)) + "}"
            for k, b in enumerate(self.profile)
        )


def theory(coalg: Coalgebra, state, depth: int, liftings: dict | None = None) -> Theory:
    if state not in coalg.carrier:
        raise CoalgLogicError(f"{show(state)} is not a state")
    maps = depth_classes(coalg, depth, liftings)
    profile = tuple(frozenset(c for c in coalg.carrier if m[c] == m[state]) for m in maps)
    return Theory(coalg, state, depth, profile)


def coproduct_coalgebra(S: Coalgebra, T: Coalgebra) -> tuple[Coalgebra, FinFn, FinFn]:
    """S + T with both injections, which are coalgebra morphisms."""
    if S.functor != T.functor:
        raise CoalgLogicError("coalgebras for different functors")
    F = S.functor
    U = FinSet([(0, s) for s in S.carrier] + [(1, t) for t in T.carrier])
    i0 = FinFn(S.carrier, U, {s: (0, s) for s in S.carrier})
    i1 = FinFn(T.carrier, U, {t: (1, t) for t in T.carrier})
    dyn = {i0(s): F.fmap(i0, S(s)) for s in S.carrier}
    dyn.update({i1(t): F.fmap(i1, T(t)) for t in T.carrier})
    return Coalgebra(F, U, dyn), i0, i1


def logical_equiv(S: Coalgebra, T: Coalgebra, depth: int, liftings: dict | None = None) -> FinRel:
    """Pairs (s, t) satisfying the same formulas of depth ≤ depth."""
    U, i0, i1 = coproduct_coalgebra(S, T)
    cls = depth_classes(U, depth, liftings)[-1]
    return FinRel(
        S.carrier, T.carrier,
        ((s, t) for s in S.carrier for t in T.carrier if cls[i0(s)] == cls[i1(t)]),
    )


# ---------------------------------------------------------------------------
# behavioral equivalence


@dataclass(frozen=True)
class BehavioralResult:
    equivalent: bool
    f: FinFn
    g: FinFn
    mediator: Coalgebra

    def __bool__(self) -> bool:
        return self.equivalent


def behavioral_equiv(S: Coalgebra, T: Coalgebra, s, t) -> BehavioralResult:
    """Map both into the minimized S + T and compare the images of s and t.

    The witnesses f: S → Q and g: T → Q are re-verified as morphisms.
    """
    from ..bisim import as_view, largest_bisimulation, quotient
    from .functors import coalgebra_to_model

    if S.functor.tag != "pk" or T.functor.tag != "pk":
        raise CoalgLogicError("behavioral equivalence is implemented for the pk functor")
    U, i0, i1 = coproduct_coalgebra(S, T)
    view = as_view(coalgebra_to_model(U))
    Qv, q = quotient(view, largest_bisimulation(view, view))
    F = S.functor
    Q = Coalgebra(F, Qv.carrier, {c: (Qv(c), Qv.labels[c]) for c in Qv.carrier})
    f = FinFn(S.carrier, Q.carrier, {x: q(i0(x)) for x in S.carrier})
    g = FinFn(T.carrier, Q.carrier, {y: q(i1(y)) for y in T.carrier})
    if not (check_coalgebra_morphism(f, S, Q) and check_coalgebra_morphism(g, T, Q)):
        raise AssertionError("witness maps failed to be morphisms")
    return BehavioralResult(f(s) == g(t), f, g, Q)


