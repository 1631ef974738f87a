"""CTL by fixpoint iteration, and a lasso-enumerating reference semantics.

The accessibility relation need not be total. Paths are infinite, so a
state without an infinite path satisfies no E-formula and every A-formula.
"""

from __future__ import annotations

from typing import Iterator

from ..logic.syntax import (
    And,
    Bottom,
    Exists,
    Forall,
    Formula,
    Future,
    Globally,
    Implies,
    Letter,
    LogicError,
    Next,
    Not,
    Or,
    Top,
    Until,
)
from ..logic.transform import check_ctl
from .evaluate import pre_image
from .models import KripkeModel, Lasso, ModelError


def _gfp(f, top: frozenset) -> frozenset:
    Z = top
    while True:
        nxt = f(Z)
        if nxt == Z:
            return Z
        Z = nxt


def _lfp(f) -> frozenset:
    Z = frozenset()
    while True:
        nxt = f(Z)
        if nxt == Z:
            return Z
        Z = nxt


def infinite_path_states(model: KripkeModel) -> frozenset:
    """EG ⊤: states from which some infinite path starts."""
    W = model.worlds.as_frozenset()
    return _gfp(lambda Z: pre_image(model, Z), W)


class _Ctl:
    def __init__(self, model: KripkeModel):
        self.m = model
        self.W = model.worlds.as_frozenset()
        self.inf = infinite_path_states(model)
        self.cache: dict = {}

    def __call__(self, phi: Formula) -> frozenset:
        hit = self.cache.get(phi)
        if hit is not None:
            return hit
        t = type(phi)
        if t is Bottom:
            out = frozenset()
        elif t is Top:
            out = self.W
        elif t is Letter:
            out = self.m.val(phi.name)
        elif t is Not:
            out = self.W - self(phi.arg)
        elif t is And:
            out = self(phi.left) & self(phi.right)
        elif t is Or:
            out = self(phi.left) | self(phi.right)
        elif t is Implies:
            out = (self.W - self(phi.left)) | self(phi.right)
        elif t is Exists:
            out = self.exists(phi.path)
        elif t is Forall:
            out = self.forall(phi.path)
        else:
            raise LogicError(f"{t.__name__} outside a path quantifier")
        self.cache[phi] = out
        return out

    # existential forms
    def ex(self, S):
        return pre_image(self.m, S & self.inf)

    def eu(self, A, B):
        base = B & self.inf
        return _lfp(lambda Z: base | (A & pre_image(self.m, Z)))

    def eg(self, A):
        return _gfp(lambda Z: A & pre_image(self.m, Z), A)

    def exists(self, path):
        t = type(path)
        if t is Next:
            return self.ex(self(path.arg))
        if t is Future:
            return self.eu(self.W, self(path.arg))
        if t is Globally:
            return self.eg(self(path.arg))
        if t is Until:
            return self.eu(self(path.left), self(path.right))
        raise LogicError(f"E applied to {t.__name__} is outside the CTL fragment")

    def forall(self, path):
        W = self.W
        t = type(path)
        if t is Next:
            return W - self.ex(W - self(path.arg))
        if t is Future:
            return W - self.eg(W - self(path.arg))
        if t is Globally:
            return W - self.eu(W, W - self(path.arg))
        if t is Until:
            a, b = self(path.left), self(path.right)
            nb = W - b
            return W - (self.eu(nb, nb - a) | self.eg(nb))
        raise LogicError(f"A applied to {t.__name__} is outside the CTL fragment")


def ctl_eval(model: KripkeModel, phi: Formula) -> frozenset:
    check_ctl(phi)
    return _Ctl(model)(phi)


# ---------------------------------------------------------------------------
# lasso oracle


def lassos_from(
    model: KripkeModel, w, max_prefix: int | None = None, max_cycle: int | None = None,
    simple: bool = True,
) -> Iterator[Lasso]:
    """Lassos starting at ``w`` within the bounds.

    Simple lassos visit every state at most once before closing the cycle;
    every infinite path's first repetition yields one, which suffices for the
    CTL fragment. ``simple=False`` also allows repeated states.
    """
    n = len(model.worlds)
    max_prefix = n if max_prefix is None else max_prefix
    max_cycle = n if max_cycle is None else max_cycle
    if max_cycle < 1 or max_prefix < 0:
        raise ModelError("lasso bounds must be positive")
    limit = max_prefix + max_cycle
    path = [w]

    def extend():
        last = path[-1]
        for v in sorted(model.succ(last)):
            # close a cycle back to position j
            for j, u in enumerate(path):
                if u == v and j <= max_prefix and len(path) - j <= max_cycle:
                    yield Lasso(tuple(path[:j]), tuple(path[j:]))
            if len(path) < limit and (not simple or v not in path):
                path.append(v)
                yield from extend()
                path.pop()

    yield from extend()


def _positions(lasso: Lasso, phi: Formula, state_sets) -> frozenset:
    """Positions of the lasso where the path formula holds."""
    seq = lasso.states
    idx = range(len(seq))
    t = type(phi)
    if t is Not:
        return frozenset(idx) - _positions(lasso, phi.arg, state_sets)
    if t is And:
        return _positions(lasso, phi.left, state_sets) & _positions(lasso, phi.right, state_sets)
    if t is Or:
        return _positions(lasso, phi.left, state_sets) | _positions(lasso, phi.right, state_sets)
    if t is Implies:
        left = _positions(lasso, phi.left, state_sets)
        return (frozenset(idx) - left) | _positions(lasso, phi.right, state_sets)
    if t is Next:
        S = _positions(lasso, phi.arg, state_sets)
        return frozenset(i for i in idx if lasso.successor(i) in S)
    if t in (Future, Globally, Until):
        return frozenset(i for i in idx if _walk(lasso, i, phi, state_sets))
    S = state_sets(phi)
    return frozenset(i for i in idx if seq[i] in S)


def _orbit(lasso: Lasso, i: int) -> list[int]:
    out, seen = [], set()
    while i not in seen:
        seen.add(i)
        out.append(i)
        i = lasso.successor(i)
    return out


def _walk(lasso, i, phi, state_sets) -> bool:
    t = type(phi)
    orbit = _orbit(lasso, i)
    if t is Future:
        S = _positions(lasso, phi.arg, state_sets)
        return any(k in S for k in orbit)
    if t is Globally:
        S = _positions(lasso, phi.arg, state_sets)
        return all(k in S for k in orbit)
    A = _positions(lasso, phi.left, state_sets)
    B = _positions(lasso, phi.right, state_sets)
    for k in orbit:
        if k in B:
            return True
        if k not in A:
            return False
    return False


def lasso_oracle(
    model: KripkeModel,
    phi: Formula,
    max_prefix: int | None = None,
    max_cycle: int | None = None,
    simple: bool = True,
) -> frozenset:
    """Validity set of a state formula, quantifying over enumerated lassos.

    Path formulas are evaluated literally on each lasso; nested quantifiers
    recurse through the oracle itself.
    """
    W = model.worlds.as_frozenset()
    lassos = {
        w: list(lassos_from(model, w, max_prefix, max_cycle, simple)) for w in model.worlds
    }
    cache: dict = {}

    def state(phi):
        if phi in cache:
            return cache[phi]
        t = type(phi)
        if t is Bottom:
            out = frozenset()
        elif t is Top:
            out = W
        elif t is Letter:
            out = model.val(phi.name)
        elif t is Not:
            out = W - state(phi.arg)
        elif t is And:
            out = state(phi.left) & state(phi.right)
        elif t is Or:
            out = state(phi.left) | state(phi.right)
        elif t is Implies:
            out = (W - state(phi.left)) | state(phi.right)
        elif t in (Exists, Forall):
            pick = any if t is Exists else all
            out = frozenset(
                w for w in model.worlds
                if pick(0 in _positions(L, phi.path, state) for L in lassos[w])
            )
        else:
            raise LogicError(f"{t.__name__} outside a path quantifier")
        cache[phi] = out
        return out

    return state(phi)


def lasso_holds(model: KripkeModel, lasso: Lasso, path: Formula) -> bool:
    """Does the path formula hold on the infinite path the lasso denotes?

    State subformulas are evaluated with :func:`ctl_eval`.
    """
    lasso.check(model)
    return 0 in _positions(lasso, path, lambda phi: ctl_eval(model, phi))
