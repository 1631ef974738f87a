"""Finite models: Kripke, τ-structures, transition systems, neighborhoods,
PDL and game models, plus lassos (ultimately periodic paths)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..finset import FinRel, FinSet, as_finset, canon_sorted, show, show_set
from ..monads.triples import UpperClosedFamily


class ModelError(ValueError):
    pass


def _valuation(worlds: FinSet, valuation: Mapping | None) -> dict:
    out = {}
    for p, ws in (valuation or {}).items():
        ws = frozenset(ws)
        for w in canon_sorted(ws):
            if w not in worlds:
                raise ModelError(f"valuation of {p} mentions unknown world {show(w)}")
        out[p] = ws
    return out


def _rel(worlds: FinSet, edges, what: str) -> FinRel:
    if isinstance(edges, FinRel):
        if edges.left != worlds or edges.right != worlds:
            raise ModelError(f"{what}: relation is over different worlds")
        return edges
    edges = [tuple(e) for e in edges]
    for a, b in edges:
        for w in (a, b):
            if w not in worlds:
                raise ModelError(f"{what}: edge {show(a)}->{show(b)} mentions unknown world {show(w)}")
    return FinRel(worlds, worlds, edges)


class _Valued:
    worlds: FinSet
    valuation: dict

    @property
    def letters(self) -> tuple:
        return tuple(sorted(self.valuation))

    def val(self, p: str) -> frozenset:
        try:
            return self.valuation[p]
        except KeyError:
            raise ModelError(f"letter {p!r} is not declared in the model") from None

    def labels(self, w) -> frozenset:
        """V1(w): the letters true at w."""
        return frozenset(p for p, ws in self.valuation.items() if w in ws)


@dataclass(frozen=True, eq=False)
class KripkeModel(_Valued):
    worlds: FinSet
    rel: FinRel
    valuation: dict = field(default_factory=dict)

    def __init__(self, worlds, rel=(), valuation=None):
        W = as_finset(worlds)
        object.__setattr__(self, "worlds", W)
        object.__setattr__(self, "rel", _rel(W, rel, "rel"))
        object.__setattr__(self, "valuation", _valuation(W, valuation))
        object.__setattr__(self, "_succ", self.rel.successor_map())

    def succ(self, w) -> frozenset:
        return self._succ[w]

    def __eq__(self, other):
        return (
            isinstance(other, KripkeModel)
            and self.worlds == other.worlds
            and self.rel == other.rel
            and self.valuation == other.valuation
        )

    def __hash__(self):
        return hash((self.worlds, self.rel, frozenset(self.valuation.items())))

    def render(self) -> str:
        lines = [f"worlds {self.worlds.render()}", "rel " + self.rel.render()]
        lines += [f"val {p}: {show_set(ws)}" for p, ws in sorted(self.valuation.items())]
        return "\n".join(lines)


@dataclass(frozen=True, eq=False)
class TauModel(_Valued):
    """Relations R_Δ ⊆ W^(ρ(Δ)+1) for each declared operator Δ."""

    worlds: FinSet
    arity: dict
    relations: dict
    valuation: dict = field(default_factory=dict)

    def __init__(self, worlds, arity: Mapping[str, int], relations: Mapping, valuation=None):
        W = as_finset(worlds)
        rels = {}
        for op, k in arity.items():
            tuples = frozenset(tuple(t) for t in relations.get(op, ()))
            for t in tuples:
                if len(t) != k + 1:
                    raise ModelError(f"operator {op}/{k}: tuple {show(t)} has length {len(t)}")
                for w in t:
                    if w not in W:
                        raise ModelError(f"operator {op}: unknown world {show(w)}")
            rels[op] = tuples
        for op in relations:
            if op not in arity:
                raise ModelError(f"relation for undeclared operator {op}")
        object.__setattr__(self, "worlds", W)
        object.__setattr__(self, "arity", dict(arity))
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "valuation", _valuation(W, valuation))

    def __eq__(self, other):
        return (
            isinstance(other, TauModel)
            and (self.worlds, self.arity, self.relations, self.valuation)
            == (other.worlds, other.arity, other.relations, other.valuation)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class LabeledTS(_Valued):
    worlds: FinSet
    actions: FinSet
    rel: dict
    valuation: dict = field(default_factory=dict)

    def __init__(self, worlds, rel: Mapping[str, Iterable], valuation=None, actions=None):
        W = as_finset(worlds)
        acts = as_finset(actions if actions is not None else rel.keys())
        rels = {}
        for a in acts:
            rels[a] = _rel(W, rel.get(a, ()), f"rel {a}")
        for a in rel:
            if a not in acts:
                raise ModelError(f"transitions for undeclared action {a}")
        object.__setattr__(self, "worlds", W)
        object.__setattr__(self, "actions", acts)
        object.__setattr__(self, "rel", rels)
        object.__setattr__(self, "valuation", _valuation(W, valuation))

    def succ(self, a, w) -> frozenset:
        return self.rel[a].image_of(w)

    def as_tau(self) -> TauModel:
        return TauModel(
            self.worlds,
            {a: 1 for a in self.actions},
            {a: self.rel[a].pairs for a in self.actions},
            self.valuation,
        )

    def __eq__(self, other):
        return (
            isinstance(other, LabeledTS)
            and (self.worlds, self.actions, self.rel, self.valuation)
            == (other.worlds, other.actions, other.rel, other.valuation)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class NeighborhoodModel(_Valued):
    worlds: FinSet
    nbhd: dict
    valuation: dict = field(default_factory=dict)

    def __init__(self, worlds, nbhd: Mapping, valuation=None):
        W = as_finset(worlds)
        fam = {}
        for w in W:
            N = nbhd.get(w)
            if N is None:
                N = UpperClosedFamily(W, ())
            elif not isinstance(N, UpperClosedFamily):
                N = UpperClosedFamily.generated_by(W, N)
            if N.carrier != W:
                raise ModelError(f"neighborhood of {show(w)} is over a different carrier")
            fam[w] = N
        for w in nbhd:
            if w not in W:
                raise ModelError(f"neighborhood for unknown world {show(w)}")
        object.__setattr__(self, "worlds", W)
        object.__setattr__(self, "nbhd", fam)
        object.__setattr__(self, "valuation", _valuation(W, valuation))

    def __eq__(self, other):
        return (
            isinstance(other, NeighborhoodModel)
            and (self.worlds, self.nbhd, self.valuation)
            == (other.worlds, other.nbhd, other.valuation)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PdlModel(_Valued):
    worlds: FinSet
    programs: dict
    valuation: dict = field(default_factory=dict)

    def __init__(self, worlds, programs: Mapping[str, Iterable], valuation=None):
        W = as_finset(worlds)
        rels = {t: _rel(W, r, f"program {t}") for t, r in programs.items()}
        object.__setattr__(self, "worlds", W)
        object.__setattr__(self, "programs", rels)
        object.__setattr__(self, "valuation", _valuation(W, valuation))

    def __eq__(self, other):
        return (
            isinstance(other, PdlModel)
            and (self.worlds, self.programs, self.valuation)
            == (other.worlds, other.programs, other.valuation)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class GameModel(_Valued):
    """Atomic effectivity functions P_γ: W → 𝕍(W)."""

    worlds: FinSet
    games: dict
    valuation: dict = field(default_factory=dict)

    def __init__(self, worlds, games: Mapping[str, Mapping], valuation=None):
        W = as_finset(worlds)
        eff = {g: NeighborhoodModel(W, fam).nbhd for g, fam in games.items()}
        object.__setattr__(self, "worlds", W)
        object.__setattr__(self, "games", eff)
        object.__setattr__(self, "valuation", _valuation(W, valuation))

    def __eq__(self, other):
        return (
            isinstance(other, GameModel)
            and (self.worlds, self.games, self.valuation)
            == (other.worlds, other.games, other.valuation)
        )

    __hash__ = None


@dataclass(frozen=True)
class Lasso:
    """The infinite path prefix · cycle · cycle · ..."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise ModelError("lasso cycle must be nonempty")

    @property
    def states(self) -> tuple:
        return self.prefix + self.cycle

    def successor(self, i: int) -> int:
        return i + 1 if i + 1 < len(self.states) else len(self.prefix)

    def check(self, model: KripkeModel) -> None:
        seq = self.states
        pairs = list(zip(seq, seq[1:])) + [(seq[-1], self.cycle[0])]
        for a, b in pairs:
            if b not in model.succ(a):
                raise ModelError(f"lasso step {show(a)}->{show(b)} is not an edge")

    def render(self) -> str:
        pre = " ".join(show(w) for w in self.prefix)
        cyc = " ".join(show(w) for w in self.cycle)
        return f"{pre} ({cyc})^ω".strip()
