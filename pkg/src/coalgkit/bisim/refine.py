"""Largest bisimulations, quotients, congruences and modal equivalence."""

from __future__ import annotations

from ..finset import FinFn, FinRel, FinSet, Partition, block_name, canon_sorted, show_set
from ..semantics import KripkeModel
from .relations import OK, Verdict, _fail, check_coalg_bisimulation, check_coalgebra_morphism
from .views import BisimError, CoalgebraView, as_view, fmap, same_tag, view_to_model


def _class_ids(carrier, key) -> dict:
    """Number the distinct keys in carrier order."""
    ids: dict = {}
    return {x: ids.setdefault(key(x), len(ids)) for x in carrier}


def refine(view: CoalgebraView) -> dict:
    """Stable class map of the coarsest partition respecting labels and dynamics.

    Each round splits blocks whose members have different images of their
    dynamics under the current class map; stops once no block splits.
    """
    if view.tag == "neighborhood":
        raise BisimError("neighborhood systems are handled by the greatest fixpoint")
    X = view.carrier
    cls = _class_ids(X, lambda x: view.labels[x])
    while True:
        nxt = _class_ids(X, lambda x: (cls[x], fmap(view.tag, view(x), cls.__getitem__)))
        if len(set(nxt.values())) == len(set(cls.values())):
            return nxt
        cls = nxt


def disjoint_union(S: CoalgebraView, T: CoalgebraView) -> CoalgebraView:
    """S + T with states tagged (0, s) and (1, t)."""
    same_tag(S, T)
    carrier = [(0, s) for s in S.carrier] + [(1, t) for t in T.carrier]
    dyn, labels = {}, {}
    for k, V in ((0, S), (1, T)):
        inj = lambda x, k=k: (k, x)  # noqa: E731
        for x in V.carrier:
            dyn[(k, x)] = fmap(V.tag, V(x), inj, carrier)
            labels[(k, x)] = V.labels[x]
    return CoalgebraView(S.tag, FinSet(carrier), dyn, labels, S.letters + T.letters)


def _neighborhood_gfp(S: CoalgebraView, T: CoalgebraView) -> FinRel:
    pairs = {(s, t) for s in S.carrier for t in T.carrier if S.labels[s] == T.labels[t]}
    while True:
        B = FinRel(S.carrier, T.carrier, pairs)
        fwd = B.successor_map()
        bwd = B.inverse().successor_map()

        def image(X, m):
            return frozenset(y for x in X for y in m[x])

        keep = {
            (s, t) for s, t in pairs
            if all(image(X, fwd) in T(t).members for X in S(s).minimal_members())
            and all(image(Y, bwd) in S(s).members for Y in T(t).minimal_members())
        }
        if keep == pairs:
            return B
        pairs = keep


def largest_bisimulation(M, N) -> FinRel:
    """Largest bisimulation between two systems of the same functor tag.

    Powerset-like tags: partition refinement on the disjoint union, restricted
    to cross pairs. Neighborhoods: greatest fixpoint of the bisimulation
    clauses starting from all pairs in atomic harmony.
    """
    S, T = as_view(M), as_view(N)
    same_tag(S, T)
    if S.tag == "neighborhood":
        return _neighborhood_gfp(S, T)
    cls = refine(disjoint_union(S, T))
    return FinRel(
        S.carrier, T.carrier,
        ((s, t) for s in S.carrier for t in T.carrier if cls[(0, s)] == cls[(1, t)]),
    )


# ---------------------------------------------------------------------------
# congruences and quotients


def _require_equivalence(view: CoalgebraView, alpha: FinRel) -> Partition:
    if alpha.left != view.carrier or alpha.right != view.carrier:
        raise BisimError("relation is not over the system's carrier")
    if not alpha.is_equivalence():
        raise BisimError("relation is not an equivalence")
    return Partition.from_equivalence(alpha)


def check_congruence(S, alpha: FinRel) -> Verdict:
    """Is the class-wise dynamics s ↦ (T η)(γ(s)) constant on every block?"""
    view = as_view(S)
    part = _require_equivalence(view, alpha)
    cmap = part.class_map()
    for block in part.sorted_blocks():
        members = canon_sorted(block)
        first = members[0]
        ref = (view.labels[first], fmap(view.tag, view(first), cmap.__getitem__, part.blocks))
        for s in members[1:]:
            val = (view.labels[s], fmap(view.tag, view(s), cmap.__getitem__, part.blocks))
            if val != ref:
                return _fail((first, s), "congruence", f"block {show_set(block)} has two dynamics values")
    return OK


def quotient(M, alpha: FinRel):
    """Factor a system through a bisimulation equivalence.

    Returns ``(N, f)`` with states named after the blocks and ``f`` the class
    map, verified to be a morphism. Since ``f`` is onto, δ(f(s)) = (T f)(γ(s))
    is forced, so these are the only dynamics making ``f`` a morphism.
    Kripke models give Kripke models back; views give views.
    """
    view = as_view(M)
    part = _require_equivalence(view, alpha)
    for block in part.sorted_blocks():
        if len({view.labels[s] for s in block}) > 1:
            raise BisimError(f"valuation is split across the block {show_set(block)}")
    verdict = check_coalg_bisimulation(view, view, alpha)
    if not verdict:
        raise BisimError(f"relation is not a bisimulation ({verdict.render()})")
    cong = check_congruence(view, alpha)
    if not cong:
        raise BisimError(f"relation is not a congruence ({cong.render()})")
    names = {b: block_name(b) for b in part.blocks}
    Q = FinSet(names.values())
    f = FinFn(view.carrier, Q, {s: names[b] for s, b in part.class_map().items()})
    dyn, labels = {}, {}
    for b in part.blocks:
        rep = canon_sorted(b)[0]
        dyn[names[b]] = fmap(view.tag, view(rep), f, Q)
        labels[names[b]] = view.labels[rep]
    N = CoalgebraView(view.tag, Q, dyn, labels, view.letters)
    if not check_coalgebra_morphism(f, view, N):
        raise AssertionError("class map failed to be a morphism")
    if isinstance(M, CoalgebraView):
        return N, f
    return view_to_model(N), f


def minimize(M):
    """Quotient by the largest self-bisimulation."""
    return quotient(M, largest_bisimulation(M, M))


# ---------------------------------------------------------------------------
# Hennessy-Milner


def modal_equivalence_partition(M: KripkeModel, N: KripkeModel, depth: int) -> FinRel:
    """Pairs (s, t) agreeing on every basic formula of modal depth ≤ depth.

    Round 0 compares the letters; round k+1 also compares the sets of
    round-k classes reachable in one step. Two states differ on a depth-(k+1)
    formula exactly when one of these comparisons fails.
    """
    if depth < 0:
        raise BisimError("depth must be non-negative")
    carrier = [(0, s) for s in M.worlds] + [(1, t) for t in N.worlds]
    succ = {(0, s): [(0, x) for x in M.succ(s)] for s in M.worlds}
    succ.update({(1, t): [(1, x) for x in N.succ(t)] for t in N.worlds})
    labels = {(0, s): M.labels(s) for s in M.worlds}
    labels.update({(1, t): N.labels(t) for t in N.worlds})
    cls = _class_ids(carrier, labels.__getitem__)
    for _ in range(depth):
        nxt = _class_ids(carrier, lambda x: (cls[x], frozenset(cls[y] for y in succ[x])))
        if len(set(nxt.values())) == len(set(cls.values())):
            break
        cls = nxt
    return FinRel(
        M.worlds, N.worlds,
        ((s, t) for s in M.worlds for t in N.worlds if cls[(0, s)] == cls[(1, t)]),
    )
