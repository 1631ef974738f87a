"""Coalgebras for a handful of concrete functors, with the functor action.

A :class:`CoalgebraView` is a carrier plus one dynamics value per state.
The value's shape depends on the functor tag:

``powerset``      frozenset of successors
``lts``           frozenset of (action, successor) pairs, i.e. P(A × −)
``neighborhood``  an :class:`UpperClosedFamily` over the carrier
``mealy``         tuple of (input, output, next) triples, one per input

Kripke-derived views also carry ``labels``: the letters true at each state,
the P(Φ) component of the functor. ``letters`` is the declared alphabet Φ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from ..finset import FinFn, FinSet, as_finset, canon_sorted, show
from ..monads import UpperClosedFamily
from ..semantics import KripkeModel, LabeledTS, NeighborhoodModel

TAGS = ("powerset", "lts", "neighborhood", "mealy")


class BisimError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CoalgebraView:
    tag: str
    carrier: FinSet
    dynamics: dict
    labels: dict = field(default_factory=dict)
    letters: tuple = ()

    def __post_init__(self):
        if self.tag not in TAGS:
            raise BisimError(f"unknown functor tag {self.tag!r}")
        X = as_finset(self.carrier)
        object.__setattr__(self, "carrier", X)
        for s in X:
            if s not in self.dynamics:
                raise BisimError(f"dynamics undefined at {show(s)}")
            _check_value(self.tag, X, s, self.dynamics[s])
        labels = {s: frozenset(self.labels.get(s, ())) for s in X}
        object.__setattr__(self, "labels", labels)
        declared = set(self.letters).union(*labels.values())
        object.__setattr__(self, "letters", tuple(sorted(declared)))

    def __call__(self, s):
        return self.dynamics[s]

    def __eq__(self, other):
        return (
            isinstance(other, CoalgebraView)
            and (self.tag, self.carrier, self.dynamics, self.labels)
            == (other.tag, other.carrier, other.dynamics, other.labels)
        )

    __hash__ = None


def _check_value(tag, X, s, v):
    if tag == "powerset":
        bad = [x for x in v if x not in X]
    elif tag == "lts":
        bad = [x for _, x in v if x not in X]
    elif tag == "mealy":
        bad = [x for _, _, x in v if x not in X]
    else:
        if not isinstance(v, UpperClosedFamily) or v.carrier != X:
            raise BisimError(f"neighborhood of {show(s)} is not an upper-closed family over the carrier")
        bad = []
    if bad:
        raise BisimError(f"dynamics of {show(s)} mentions {show(bad[0])} outside the carrier")


def fmap(tag: str, value, f: Callable, codomain: FinSet | None = None):
    """The functor's action on one dynamics value: (T f)(value)."""
    if tag == "powerset":
        return frozenset(f(x) for x in value)
    if tag == "lts":
        return frozenset((a, f(x)) for a, x in value)
    if tag == "mealy":
        return tuple((i, o, f(x)) for i, o, x in value)
    if tag == "neighborhood":
        if codomain is None:
            raise BisimError("the neighborhood functor needs the codomain")
        Y = as_finset(codomain)
        X = value.carrier
        # 𝕍f(N) = {B ⊆ Y | f⁻¹(B) ∈ N}
        keep = [B for B in Y.subsets() if frozenset(x for x in X if f(x) in B) in value.members]
        return UpperClosedFamily(Y, keep)
    raise BisimError(f"unknown functor tag {tag!r}")


# ---------------------------------------------------------------------------
# constructors


def powerset_view(carrier, succ: Mapping, labels: Mapping | None = None) -> CoalgebraView:
    X = as_finset(carrier)
    dyn = {s: frozenset(succ.get(s, ())) for s in X}
    return CoalgebraView("powerset", X, dyn, dict(labels or {}))


def mealy(states, table: Mapping[object, Mapping]) -> CoalgebraView:
    """Mealy automaton: ``table[s][i] = (output, next)``.

    Every state must answer the same set of inputs.
    """
    X = as_finset(states)
    inputs = None
    dyn = {}
    for s in X:
        row = table.get(s)
        if row is None:
            raise BisimError(f"no transitions for state {show(s)}")
        if inputs is None:
            inputs = frozenset(row)
        elif frozenset(row) != inputs:
            raise BisimError(f"state {show(s)} answers inputs {show(frozenset(row))}")
        dyn[s] = tuple((i, row[i][0], row[i][1]) for i in canon_sorted(row))
    return CoalgebraView("mealy", X, dyn)


def as_view(system) -> CoalgebraView:
    """Coalgebra view of a model; views pass through unchanged."""
    if isinstance(system, CoalgebraView):
        return system
    if isinstance(system, KripkeModel):
        W = system.worlds
        return CoalgebraView(
            "powerset", W, {w: system.succ(w) for w in W}, {w: system.labels(w) for w in W},
            system.letters,
        )
    if isinstance(system, LabeledTS):
        W = system.worlds
        dyn = {w: frozenset((a, v) for a in system.actions for v in system.succ(a, w)) for w in W}
        return CoalgebraView("lts", W, dyn, {w: system.labels(w) for w in W}, system.letters)
    if isinstance(system, NeighborhoodModel):
        W = system.worlds
        return CoalgebraView(
            "neighborhood", W, dict(system.nbhd), {w: system.labels(w) for w in W}, system.letters
        )
    raise BisimError(f"cannot view {type(system).__name__} as a coalgebra")


def view_to_model(view: CoalgebraView):
    """Inverse of :func:`as_view` for the Kripke, LTS and neighborhood tags."""
    X = view.carrier
    val = {p: [s for s in X if p in view.labels[s]] for p in view.letters}
    if view.tag == "powerset":
        return KripkeModel(X, [(s, t) for s in X for t in view(s)], val)
    if view.tag == "lts":
        acts = sorted({a for s in X for a, _ in view(s)})
        rel = {a: [(s, t) for s in X for b, t in view(s) if b == a] for a in acts}
        return LabeledTS(X, rel, val)
    if view.tag == "neighborhood":
        return NeighborhoodModel(X, dict(view.dynamics), val)
    raise BisimError(f"no model kind for tag {view.tag!r}")


def same_tag(S: CoalgebraView, T: CoalgebraView) -> None:
    if S.tag != T.tag:
        raise BisimError(f"functor tags differ: {S.tag} vs {T.tag}")


def render_value(tag: str, value) -> str:
    if tag == "powerset":
        return show(value)
    if tag == "lts":
        return "{" + ",".join(f"{a}:{show(x)}" for a, x in canon_sorted(value)) + "}"
    if tag == "mealy":
        return " ".join(f"{i}/{o}->{show(x)}" for i, o, x in value)
    return value.render()


def apply_to_view(f: FinFn, view: CoalgebraView, s):
    """(T f)(γ(s))."""
    return fmap(view.tag, view(s), f, f.codomain)
