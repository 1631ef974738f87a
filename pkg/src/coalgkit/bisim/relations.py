"""Checking relations: bisimulations, mediating structures and morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..finset import FinFn, FinRel, FinSet, FinSetError, show, show_set
from ..monads import UpperClosedFamily
from ..semantics import KripkeModel
from .views import BisimError, CoalgebraView, as_view, fmap, render_value, same_tag

# neighborhood mediating structures enumerate all subsets of the relation
MAX_MEDIATING_PAIRS = 12


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; falsy with the first violation when it fails."""

    ok: bool
    pair: tuple | None = None
    clause: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def render(self) -> str:
        if self.ok:
            return "ok"
        where = f" at {show(self.pair)}" if self.pair is not None else ""
        return f"violation{where}: {self.clause}: {self.detail}"


OK = Verdict(True)


def _fail(pair, clause, detail) -> Verdict:
    return Verdict(False, pair, clause, detail)


def _check_endpoints(B: FinRel, left: FinSet, right: FinSet) -> None:
    for s, t in B.pairs:
        if s not in left:
            raise BisimError(f"pair {show((s, t))}: {show(s)} is not a state of the first system")
        if t not in right:
            raise BisimError(f"pair {show((s, t))}: {show(t)} is not a state of the second system")


def as_relation(left, right, pairs: Iterable[tuple]) -> FinRel:
    try:
        return FinRel(left, right, pairs)
    except FinSetError as e:
        raise BisimError(str(e)) from None


# ---------------------------------------------------------------------------
# Kripke models


def check_kripke_bisimulation(M: KripkeModel, N: KripkeModel, B: FinRel) -> Verdict:
    """Atomic harmony, forth and back for every pair, in lexicographic order."""
    _check_endpoints(B, M.worlds, N.worlds)
    succ = B.successor_map()
    pred = B.inverse().successor_map()
    for s, t in B:
        ls, lt = M.labels(s), N.labels(t)
        if ls != lt:
            diff = sorted(ls ^ lt)
            return _fail((s, t), "harmony", f"letter {diff[0]} holds at only one side")
        for s2 in sorted(M.succ(s)):
            if not succ.get(s2, frozenset()) & N.succ(t):
                return _fail((s, t), "forth", f"{show(s)}->{show(s2)} has no matching successor of {show(t)}")
        for t2 in sorted(N.succ(t)):
            if not pred.get(t2, frozenset()) & M.succ(s):
                return _fail((s, t), "back", f"{show(t)}->{show(t2)} has no matching successor of {show(s)}")
    return OK


# ---------------------------------------------------------------------------
# coalgebras


def projections_surjective(B: FinRel) -> tuple[bool, bool]:
    """Whether B covers the first and the second carrier."""
    return (
        {s for s, _ in B.pairs} == B.left.as_frozenset(),
        {t for _, t in B.pairs} == B.right.as_frozenset(),
    )


def _mediate(S: CoalgebraView, T: CoalgebraView, B: FinRel):
    """Candidate dynamics on B, or the first pair where none exists."""
    tag = S.tag
    pairs = FinSet(B.pairs)
    h = {}
    for s, t in B:
        if tag == "powerset":
            h[(s, t)] = frozenset(p for p in B.pairs if p[0] in S(s) and p[1] in T(t))
        elif tag == "lts":
            h[(s, t)] = frozenset(
                (a, (s2, t2)) for a, s2 in S(s) for b, t2 in T(t) if a == b and (s2, t2) in B.pairs
            )
        elif tag == "mealy":
            row = []
            tin = {i: (o, x) for i, o, x in T(t)}
            for i, o, s2 in S(s):
                if i not in tin:
                    return None, _fail((s, t), "input", f"input {show(i)} missing at {show(t)}")
                o2, t2 = tin[i]
                if o != o2:
                    return None, _fail((s, t), "output", f"input {show(i)} gives {show(o)} vs {show(o2)}")
                if (s2, t2) not in B.pairs:
                    return None, _fail((s, t), "next", f"input {show(i)} leads to unrelated {show((s2, t2))}")
                row.append((i, o, (s2, t2)))
            h[(s, t)] = tuple(row)
        else:
            if len(pairs) > MAX_MEDIATING_PAIRS:
                raise BisimError(
                    f"neighborhood mediating structure over {len(pairs)} pairs exceeds the cap {MAX_MEDIATING_PAIRS}"
                )
            # W ∈ h(s,t) iff its projections lie in f(s) and g(t)
            keep = [
                W for W in pairs.subsets()
                if frozenset(a for a, _ in W) in S(s).members
                and frozenset(b for _, b in W) in T(t).members
            ]
            h[(s, t)] = UpperClosedFamily(pairs, keep)
    return h, None


def _check_projections(S, T, B, h) -> Verdict:
    p1 = FinFn(FinSet(B.pairs), S.carrier, lambda p: p[0])
    p2 = FinFn(FinSet(B.pairs), T.carrier, lambda p: p[1])
    for s, t in B:
        if S.labels[s] != T.labels[t]:
            diff = sorted(S.labels[s] ^ T.labels[t])
            return _fail((s, t), "harmony", f"letter {diff[0]} holds at only one side")
        if fmap(S.tag, h[(s, t)], p1, S.carrier) != S(s):
            return _fail((s, t), "forth", f"left projection misses part of {render_value(S.tag, S(s))}")
        if fmap(T.tag, h[(s, t)], p2, T.carrier) != T(t):
            return _fail((s, t), "back", f"right projection misses part of {render_value(T.tag, T(t))}")
    return OK


def construct_mediating(S, T, B: FinRel) -> dict | None:
    """Dynamics h on the pairs of B making both projections morphisms, or None.

    For the powerset-like tags h(s,t) = {(s',t') ∈ B | s ⇝ s', t ⇝ t'}.
    For neighborhoods h(s,t) = {W ⊆ B | π₁[W] ∈ f(s), π₂[W] ∈ g(t)}, which
    works whenever both projections of B are surjective.
    """
    S, T = as_view(S), as_view(T)
    same_tag(S, T)
    _check_endpoints(B, S.carrier, T.carrier)
    h, bad = _mediate(S, T, B)
    if bad is not None or not _check_projections(S, T, B, h):
        return None
    return h


def _neighborhood_clauses(S, T, B: FinRel) -> Verdict:
    fwd = B.successor_map()
    bwd = B.inverse().successor_map()

    def image(X, m):
        return frozenset(y for x in X for y in m.get(x, ()))

    for s, t in B:
        if S.labels[s] != T.labels[t]:
            diff = sorted(S.labels[s] ^ T.labels[t])
            return _fail((s, t), "harmony", f"letter {diff[0]} holds at only one side")
        # upward closure lets the minimal members stand for the whole family
        for X in S(s).minimal_members():
            if image(X, fwd) not in T(t).members:
                return _fail((s, t), "forth", f"no neighborhood of {show(t)} inside B[{show_set(X)}]")
        for Y in T(t).minimal_members():
            if image(Y, bwd) not in S(s).members:
                return _fail((s, t), "back", f"no neighborhood of {show(s)} inside B⁻¹[{show_set(Y)}]")
    return OK


def check_coalg_bisimulation(S, T, B: FinRel) -> Verdict:
    S, T = as_view(S), as_view(T)
    same_tag(S, T)
    _check_endpoints(B, S.carrier, T.carrier)
    if S.tag == "neighborhood":
        return _neighborhood_clauses(S, T, B)
    h, bad = _mediate(S, T, B)
    if bad is not None:
        return bad
    return _check_projections(S, T, B, h)


def is_bisimulation(S, T, B: FinRel) -> bool:
    if isinstance(S, KripkeModel) and isinstance(T, KripkeModel):
        return bool(check_kripke_bisimulation(S, T, B))
    return bool(check_coalg_bisimulation(S, T, B))


# ---------------------------------------------------------------------------
# morphisms


def check_coalgebra_morphism(f: FinFn, S, T) -> Verdict:
    """(T f) ∘ γ = δ ∘ f, state by state, plus preservation of labels."""
    S, T = as_view(S), as_view(T)
    same_tag(S, T)
    if f.domain != S.carrier or f.codomain != T.carrier:
        raise BisimError(
            f"map {f.signature()} does not go from {S.carrier.render()} to {T.carrier.render()}"
        )
    for s in S.carrier:
        t = f(s)
        if S.labels[s] != T.labels[t]:
            diff = sorted(S.labels[s] ^ T.labels[t])
            return _fail((s, t), "harmony", f"letter {diff[0]} not preserved")
        lhs = fmap(S.tag, S(s), f, T.carrier)
        if lhs != T(t):
            return _fail(
                (s, t), "square",
                f"T f(γ({show(s)})) = {render_value(T.tag, lhs)} but δ({show(t)}) = {render_value(T.tag, T(t))}",
            )
    return OK


# ---------------------------------------------------------------------------
# algebra of relations


def invert(B: FinRel) -> FinRel:
    return B.inverse()


def compose(B1: FinRel, B2: FinRel) -> FinRel:
    """B1 followed by B2."""
    if B1.right != B2.left:
        raise BisimError("cannot compose: the middle systems differ")
    return B1.then(B2)


def union(family: Iterable[FinRel]) -> FinRel:
    family = list(family)
    if not family:
        raise BisimError("union of an empty family needs the carriers")
    L, R = family[0].left, family[0].right
    for B in family[1:]:
        if B.left != L or B.right != R:
            raise BisimError("union of relations between different systems")
    return FinRel(L, R, frozenset().union(*(B.pairs for B in family)))
