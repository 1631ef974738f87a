"""Validity sets Gilt[φ] for the relational, neighborhood, PDL and game models."""

from __future__ import annotations

import itertools
from typing import Callable

from ..finset import FinRel, FinSet, diagonal, show
from ..logic.syntax import (
    And,
    Atomic,
    Bottom,
    Box,
    Cap,
    Cross,
    Diamond,
    Dual,
    Formula,
    Implies,
    Letter,
    LogicError,
    Modal,
    Nabla,
    Necessarily,
    Not,
    Or,
    Possibly,
    Seq,
    Star,
    Test,
    Top,
    Union,
)
from ..monads.triples import UpperClosedFamily
from .models import (
    GameModel,
    KripkeModel,
    LabeledTS,
    ModelError,
    NeighborhoodModel,
    PdlModel,
    TauModel,
)

Transformer = Callable[[frozenset], frozenset]


class _Evaluator:
    """Boolean clauses plus a model-specific hook for modal nodes."""

    def __init__(self, model, modal: Callable):
        self.model = model
        self.W = model.worlds.as_frozenset()
        self.modal = modal
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
            out = self.model.val(phi.name)
        elif t is Not:
            out = self.W - self(phi.arg)
        elif t is And:
            out = self(phi.left) & self(phi.right)
        elif t is Or:
            out = self(phi.left) | self(phi.right)
        elif t is Implies:
            out = (self.W - self(phi.left)) | self(phi.right)
        else:
            out = self.modal(self, phi)
        self.cache[phi] = out
        return out


def _unsupported(phi, what: str):
    raise LogicError(f"{type(phi).__name__} cannot be evaluated on a {what}")


# ---------------------------------------------------------------------------
# Kripke models


def pre_image(model: KripkeModel, S: frozenset) -> frozenset:
    """◇: worlds with some successor in S."""
    return frozenset(w for w in model.worlds if model.succ(w) & S)


def _kripke_modal(ev: _Evaluator, phi):
    t = type(phi)
    m = ev.model
    if t is Diamond:
        return pre_image(m, ev(phi.arg))
    if t is Box:
        S = ev(phi.arg)
        return frozenset(w for w in m.worlds if m.succ(w) <= S)
    _unsupported(phi, "Kripke model")


def eval_basic(model: KripkeModel, phi: Formula) -> frozenset:
    return _Evaluator(model, _kripke_modal)(phi)


def holds(model, world, phi: Formula, evaluator=None) -> bool:
    ev = evaluator or evaluator_for(model)
    if world not in model.worlds:
        raise ModelError(f"unknown world {show(world)}")
    return world in ev(phi)


def evaluator_for(model) -> Callable[[Formula], frozenset]:
    if isinstance(model, KripkeModel):
        return lambda phi: eval_basic(model, phi)
    if isinstance(model, (TauModel, LabeledTS)):
        return lambda phi: eval_extended(model, phi)
    if isinstance(model, NeighborhoodModel):
        return lambda phi: eval_neighborhood(model, phi)
    if isinstance(model, PdlModel):
        return lambda phi: eval_pdl(model, phi)
    if isinstance(model, GameModel):
        return lambda phi: eval_game(model, phi)
    raise ModelError(f"no evaluator for {type(model).__name__}")


# ---------------------------------------------------------------------------
# τ-models


def _tau_modal(ev: _Evaluator, phi):
    m = ev.model
    t = type(phi)
    if t in (Modal, Nabla):
        if phi.op not in m.arity:
            raise ModelError(f"operator {phi.op!r} is not declared in the model")
        k = m.arity[phi.op]
        if len(phi.args) != k:
            raise LogicError(f"operator {phi.op} has arity {k}, got {len(phi.args)} arguments")
        if t is Nabla:
            inner = Modal(phi.op, tuple(Not(a) for a in phi.args))
            return ev.W - ev(inner)
        sets = [ev(a) for a in phi.args]
        return frozenset(
            tup[0]
            for tup in m.relations[phi.op]
            if all(x in S for x, S in zip(tup[1:], sets))
        )
    _unsupported(phi, "τ-model")


def eval_extended(model, phi: Formula) -> frozenset:
    if isinstance(model, LabeledTS):
        model = model.as_tau()
    return _Evaluator(model, _tau_modal)(phi)


# ---------------------------------------------------------------------------
# neighborhood models


def _nbhd_modal(ev: _Evaluator, phi):
    m = ev.model
    t = type(phi)
    if t is Box:
        S = ev(phi.arg)
        return frozenset(w for w in m.worlds if S in m.nbhd[w])
    if t is Diamond:
        co = ev.W - ev(phi.arg)
        return frozenset(w for w in m.worlds if co not in m.nbhd[w])
    _unsupported(phi, "neighborhood model")


def eval_neighborhood(model: NeighborhoodModel, phi: Formula) -> frozenset:
    return _Evaluator(model, _nbhd_modal)(phi)


def kripke_to_neighborhood(model: KripkeModel) -> NeighborhoodModel:
    """N(w) = {A | R(w) ⊆ A}."""
    W = model.worlds
    fam = {w: UpperClosedFamily.generated_by(W, [model.succ(w)]) for w in W}
    return NeighborhoodModel(W, fam, model.valuation)


# ---------------------------------------------------------------------------
# PDL


def reflexive_transitive_closure(R: FinRel) -> FinRel:
    """Warshall-style closure, kept independent of :func:`pdl_relation`."""
    W = list(R.left)
    reach = {w: set(R.image_of(w)) | {w} for w in W}
    for k in W:
        for i in W:
            if k in reach[i]:
                reach[i] |= reach[k]
    return FinRel(R.left, R.right, ((i, j) for i in W for j in reach[i]))


def pdl_relation(model: PdlModel, prog, _ev=None) -> FinRel:
    ev = _ev or _Evaluator(model, _pdl_modal)
    W = model.worlds
    t = type(prog)
    if t is Atomic:
        try:
            return model.programs[prog.name]
        except KeyError:
            raise ModelError(f"atomic program {prog.name!r} is not declared") from None
    if t is Union:
        return pdl_relation(model, prog.left, ev).union(pdl_relation(model, prog.right, ev))
    if t is Seq:
        return pdl_relation(model, prog.left, ev).then(pdl_relation(model, prog.right, ev))
    if t is Star:
        R = pdl_relation(model, prog.arg, ev)
        power = acc = diagonal(W)
        while True:
            power = power.then(R)
            nxt = acc.union(power)
            if nxt == acc:
                return acc
            acc = nxt
    if t is Test:
        S = ev(prog.formula)
        return FinRel(W, W, ((w, w) for w in S))
    raise LogicError(f"{t.__name__} is not a PDL program")


def _pdl_modal(ev: _Evaluator, phi):
    t = type(phi)
    if t in (Possibly, Necessarily):
        R = pdl_relation(ev.model, phi.prog, ev)
        S = ev(phi.arg)
        succ = R.successor_map()
        if t is Possibly:
            return frozenset(w for w in ev.W if succ[w] & S)
        return frozenset(w for w in ev.W if succ[w] <= S)
    _unsupported(phi, "PDL model")


def eval_pdl(model: PdlModel, phi: Formula) -> frozenset:
    return _Evaluator(model, _pdl_modal)(phi)


# ---------------------------------------------------------------------------
# game logic


def game_effectivity(model: GameModel, game, _ev=None) -> Transformer:
    """The transformer A ↦ P'_g(A) on subsets of worlds."""
    ev = _ev or _Evaluator(model, _game_modal)
    W = model.worlds.as_frozenset()
    t = type(game)
    if t is Atomic:
        try:
            eff = model.games[game.name]
        except KeyError:
            raise ModelError(f"atomic game {game.name!r} is not declared") from None
        return lambda A: frozenset(w for w in W if frozenset(A) in eff[w])
    if t is Union:
        f, g = game_effectivity(model, game.left, ev), game_effectivity(model, game.right, ev)
        return lambda A: f(A) | g(A)
    if t is Seq:
        f, g = game_effectivity(model, game.left, ev), game_effectivity(model, game.right, ev)
        return lambda A: f(g(A))
    if t is Dual:
        f = game_effectivity(model, game.arg, ev)
        return lambda A: W - f(W - frozenset(A))
    if t is Star:
        f = game_effectivity(model, game.arg, ev)
        return lambda A: _iterate_union(f, frozenset(A))
    if t is Cap:
        # g1 ∩ g2 := (g1ᵈ ∪ g2ᵈ)ᵈ
        return game_effectivity(model, Dual(Union(Dual(game.left), Dual(game.right))), ev)
    if t is Cross:
        # g^× := ((gᵈ)*)ᵈ
        return game_effectivity(model, Dual(Star(Dual(game.arg))), ev)
    if t is Test:
        S = ev(game.formula)
        return lambda A: S & frozenset(A)
    raise LogicError(f"{t.__name__} is not a game")


def _iterate_union(f: Transformer, A: frozenset) -> frozenset:
    """⋃_n f^n(A), stopping once an iterate repeats."""
    seen = set()
    acc = frozenset()
    X = A
    while X not in seen:
        seen.add(X)
        acc |= X
        X = f(X)
    return acc


def _game_modal(ev: _Evaluator, phi):
    t = type(phi)
    if t is Possibly:
        return game_effectivity(ev.model, phi.prog, ev)(ev(phi.arg))
    if t is Necessarily:
        return game_effectivity(ev.model, Dual(phi.prog), ev)(ev(phi.arg))
    _unsupported(phi, "game model")


def eval_game(model: GameModel, phi: Formula) -> frozenset:
    return _Evaluator(model, _game_modal)(phi)


def is_monotone(f: Transformer, worlds: FinSet) -> tuple | None:
    """First pair A ⊆ B with f(A) ⊄ f(B), or None."""
    subsets = worlds.subsets()
    images = {A: f(A) for A in subsets}
    for A, B in itertools.product(subsets, repeat=2):
        if A <= B and not images[A] <= images[B]:
            return A, B
    return None
