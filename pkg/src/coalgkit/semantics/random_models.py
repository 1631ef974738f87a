"""Seeded random models for property tests."""

from __future__ import annotations

import random
from typing import Sequence

from ..finset import FinSet
from ..monads.triples import UpperClosedFamily
from .models import GameModel, KripkeModel, NeighborhoodModel, PdlModel, TauModel


def _worlds(n: int, prefix: str = "w") -> list[str]:
    return [f"{prefix}{i}" for i in range(n)]


def _subset(rng: random.Random, xs, p: float = 0.5) -> list:
    return [x for x in xs if rng.random() < p]


def random_valuation(rng, worlds, letters: Sequence[str]) -> dict:
    return {p: _subset(rng, worlds) for p in letters}


def random_kripke(
    rng: random.Random,
    n: int,
    letters: Sequence[str] = ("p", "q"),
    density: float = 0.35,
    prefix: str = "w",
) -> KripkeModel:
    W = _worlds(n, prefix)
    edges = [(a, b) for a in W for b in W if rng.random() < density]
    return KripkeModel(W, edges, random_valuation(rng, W, letters))


def random_family(rng: random.Random, W: FinSet, k: int | None = None) -> UpperClosedFamily:
    subsets = W.subsets()
    k = rng.randint(0, 2) if k is None else k
    gens = [rng.choice(subsets) for _ in range(k)]
    return UpperClosedFamily.generated_by(W, gens)


def random_neighborhood(rng, n: int, letters=("p", "q")) -> NeighborhoodModel:
    W = FinSet(_worlds(n))
    nb = {w: random_family(rng, W) for w in W}
    return NeighborhoodModel(W, nb, random_valuation(rng, list(W), letters))


def random_pdl(rng, n: int, programs=("a", "b"), letters=("p", "q"), density=0.3) -> PdlModel:
    W = _worlds(n)
    progs = {t: [(x, y) for x in W for y in W if rng.random() < density] for t in programs}
    return PdlModel(W, progs, random_valuation(rng, W, letters))


def random_game_model(rng, n: int, games=("a", "b"), letters=("p", "q")) -> GameModel:
    W = FinSet(_worlds(n))
    eff = {g: {w: random_family(rng, W) for w in W} for g in games}
    return GameModel(W, eff, random_valuation(rng, list(W), letters))


def random_tau(rng, n: int, arity: dict, letters=("p", "q"), density=0.3) -> TauModel:
    import itertools

    W = _worlds(n)
    rels = {
        op: [t for t in itertools.product(W, repeat=k + 1) if rng.random() < density]
        for op, k in arity.items()
    }
    return TauModel(W, arity, rels, random_valuation(rng, W, letters))
