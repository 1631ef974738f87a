"""Concrete Kleisli triples on finite carriers.

Each monad is given twice: once as a Kleisli triple (unit + extension) and
once through its own functor action and multiplication. The law checkers and
the Manes round trip compare the two presentations.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Iterable

from ..finset import FinSet, as_finset, canon_key, canon_sorted, show, show_set


class CapExceeded(ValueError):
    """An enumeration would exceed its configured cap."""


class MonadError(ValueError):
    """A value violates the invariants of its monad's carrier."""


# ---------------------------------------------------------------------------
# powerset


def pow_unit(x) -> frozenset:
    return frozenset([x])


def pow_extend(f: Callable, Y: FinSet | None = None) -> Callable[[frozenset], frozenset]:
    def ext(B: frozenset) -> frozenset:
        out: set = set()
        for x in B:
            fx = f(x)
            if not isinstance(fx, frozenset):
                raise MonadError(f"f({show(x)}) is not a subset")
            if Y is not None and not fx <= Y.as_frozenset():
                raise MonadError(f"f({show(x)}) = {show(fx)} is not a subset of {Y.render()}")
            out |= fx
        return frozenset(out)

    return ext


def pow_mu(beta: Iterable[frozenset]) -> frozenset:
    return frozenset().union(*beta)


# ---------------------------------------------------------------------------
# discrete probability distributions


class FinDist:
    """A finitely supported probability distribution with rational weights."""

    __slots__ = ("_weights", "_hash")

    def __init__(self, weights):
        items = dict(weights).items()
        clean = {}
        for x, w in items:
            w = Fraction(w)
            if w < 0:
                raise MonadError(f"negative weight {w} at {show(x)}")
            if w:
                clean[x] = clean.get(x, Fraction(0)) + w
        total = sum(clean.values(), Fraction(0))
        if total != 1:
            raise MonadError(f"weights sum to {total}, not 1")
        self._weights = clean
        self._hash = None

    @classmethod
    def dirac(cls, x) -> "FinDist":
        return cls({x: 1})

    @property
    def support(self) -> frozenset:
        return frozenset(self._weights)

    def __call__(self, x) -> Fraction:
        return self._weights.get(x, Fraction(0))

    def items(self):
        return ((x, self._weights[x]) for x in canon_sorted(self._weights))

    def __eq__(self, other) -> bool:
        return isinstance(other, FinDist) and self._weights == other._weights

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._weights.items()))
        return self._hash

    def sort_key(self):
        return tuple((canon_key(x), w) for x, w in self.items())

    def render(self) -> str:
        return " + ".join(f"{w}·{show(x)}" for x, w in self.items())

    def __repr__(self) -> str:
        return f"FinDist({self.render()})"


def dist_unit(x) -> FinDist:
    return FinDist.dirac(x)


def dist_extend(f: Callable, Y: FinSet | None = None) -> Callable[[FinDist], FinDist]:
    def ext(p: FinDist) -> FinDist:
        acc: dict = {}
        for t, pt in p.items():
            q = f(t)
            if not isinstance(q, FinDist):
                raise MonadError(f"f({show(t)}) is not a distribution")
            for y, qy in q.items():
                acc[y] = acc.get(y, Fraction(0)) + qy * pt
        return FinDist(acc)

    return ext


def dist_mu(M: FinDist) -> FinDist:
    acc: dict = {}
    for q, mq in M.items():
        for s, qs in q.items():
            acc[s] = acc.get(s, Fraction(0)) + mq * qs
    return FinDist(acc)


def random_dist(elements, rng: random.Random, max_den: int = 6) -> FinDist:
    """Random distribution whose weights have denominators at most ``max_den``."""
    elements = list(elements)
    if not elements:
        raise MonadError("no distribution on the empty set")
    den = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, den) for _ in range(len(elements) - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    return FinDist({x: Fraction(k, den) for x, k in zip(elements, parts)})


# ---------------------------------------------------------------------------
# families of subsets: ultrafilters and upper closed families


def _check_family(carrier: FinSet, members) -> frozenset:
    members = frozenset(frozenset(m) for m in members)
    base = carrier.as_frozenset()
    for m in members:
        if not m <= base:
            raise MonadError(f"member {show(m)} is not a subset of {carrier.render()}")
    return members


def _is_upward_closed(carrier: FinSet, members: frozenset) -> bool:
    base = carrier.as_frozenset()
    for m in members:
        for x in base - m:
            if m | {x} not in members:
                return False
    return True


class _Family:
    __slots__ = ("carrier", "members", "_hash")

    def __init__(self, carrier, members):
        self.carrier = as_finset(carrier)
        self.members = _check_family(self.carrier, members)
        self._hash = None

    def __contains__(self, A) -> bool:
        return frozenset(A) in self.members

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.carrier == other.carrier and self.members == other.members

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.carrier, self.members))
        return self._hash

    def minimal_members(self) -> list[frozenset]:
        return canon_sorted(m for m in self.members if not any(o < m for o in self.members))

    def sort_key(self):
        return (len(self.members), tuple(canon_key(m) for m in self.minimal_members()))

    def render(self) -> str:
        return "↑[" + " ".join(show_set(m) for m in self.minimal_members()) + "]"


class UpperClosedFamily(_Family):
    __slots__ = ()

    def __init__(self, carrier, members):
        super().__init__(carrier, members)
        if not _is_upward_closed(self.carrier, self.members):
            raise MonadError("family is not upward closed")

    @classmethod
    def generated_by(cls, carrier, generators) -> "UpperClosedFamily":
        return cls(carrier, upward_closure(carrier, generators))

    def __repr__(self) -> str:
        return f"UpperClosedFamily({self.render()})"


def upward_closure(carrier, generators) -> frozenset:
    carrier = as_finset(carrier)
    gens = [frozenset(g) for g in generators]
    return frozenset(s for s in carrier.subsets() if any(g <= s for g in gens))


class Ultrafilter(_Family):
    __slots__ = ()

    def __init__(self, carrier, members):
        super().__init__(carrier, members)
        problem = ultrafilter_violation(self.carrier, self.members)
        if problem:
            raise MonadError(problem)

    @classmethod
    def principal(cls, carrier, x) -> "Ultrafilter":
        carrier = as_finset(carrier)
        return cls(carrier, (A for A in carrier.subsets() if x in A))

    def generator(self):
        """The point generating this (necessarily principal) ultrafilter."""
        smallest = min(self.members, key=len)
        if len(smallest) != 1:
            raise MonadError("ultrafilter is not principal")
        return next(iter(smallest))

    def __repr__(self) -> str:
        return f"Ultrafilter({self.render()})"


def ultrafilter_violation(carrier: FinSet, members: frozenset) -> str | None:
    """Return a description of the first violated ultrafilter axiom, if any."""
    base = carrier.as_frozenset()
    if frozenset() in members:
        return "the empty set is a member"
    if not _is_upward_closed(carrier, members):
        return "not upward closed"
    for a in members:
        for b in members:
            if a & b not in members:
                return f"not closed under intersection: {show(a)} ∩ {show(b)}"
    for A in carrier.subsets():
        if (A in members) == ((base - A) in members):
            return f"exactly one of {show(A)} and its complement must be a member"
    return None


def all_ultrafilters_bruteforce(X) -> list[Ultrafilter]:
    """Enumerate every family of subsets and keep the ultrafilters."""
    X = as_finset(X)
    subs = X.subsets()
    if len(subs) > 16:
        raise CapExceeded("brute-force ultrafilter enumeration needs |X| ≤ 4")
    out = []
    for mask in range(1 << len(subs)):
        fam = frozenset(s for i, s in enumerate(subs) if mask >> i & 1)
        if ultrafilter_violation(X, fam) is None:
            out.append(Ultrafilter(X, fam))
    return canon_sorted(out)


def _family_unit(cls, x, carrier):
    if carrier is None:
        raise MonadError("unit of a family monad needs the carrier")
    carrier = as_finset(carrier)
    return cls(carrier, (A for A in carrier.subsets() if x in A))


def _family_extend(cls, f: Callable, Y: FinSet) -> Callable:
    Y = as_finset(Y)
    Ysubs = Y.subsets()

    def ext(V):
        if not isinstance(V, _Family):
            raise MonadError("argument is not a family of subsets")
        images = {s: f(s) for s in V.carrier}
        for s, fs in images.items():
            if not isinstance(fs, cls) or fs.carrier != Y:
                raise MonadError(f"f({show(s)}) is not a {cls.__name__} over {Y.render()}")
        return cls(
            Y,
            (B for B in Ysubs if frozenset(s for s in V.carrier if B in images[s]) in V.members),
        )

    return ext


def uf_unit(x, carrier) -> Ultrafilter:
    return _family_unit(Ultrafilter, x, carrier)


def uf_extend(f: Callable, Y) -> Callable[[Ultrafilter], Ultrafilter]:
    return _family_extend(Ultrafilter, f, Y)


def uc_unit(x, carrier) -> UpperClosedFamily:
    return _family_unit(UpperClosedFamily, x, carrier)


def uc_extend(f: Callable, Y) -> Callable[[UpperClosedFamily], UpperClosedFamily]:
    return _family_extend(UpperClosedFamily, f, Y)


def family_mu(cls, F, X):
    """μ_X(𝔙) = {B ⊆ X | {V ∈ T X | B ∈ V} ∈ 𝔙}."""
    X = as_finset(X)
    return cls(X, (B for B in X.subsets() if frozenset(V for V in F.carrier if B in V) in F.members))


def family_fmap(cls, f: Callable, V, Y):
    """(T f)(V) = {B ⊆ Y | f⁻¹(B) ∈ V}."""
    Y = as_finset(Y)
    return cls(Y, (B for B in Y.subsets() if frozenset(s for s in V.carrier if f(s) in B) in V.members))


def upper_closed_families(X) -> list[UpperClosedFamily]:
    """All upper closed families over X (upper sets of the subset lattice)."""
    X = as_finset(X)
    subs = X.subsets()
    if len(X) > 3:
        raise CapExceeded("upper closed families are enumerated only for |X| ≤ 3")
    # upper sets correspond to antichains of generators; build by closure
    found = set()
    out = []
    for mask in range(1 << len(subs)):
        fam = frozenset(s for i, s in enumerate(subs) if mask >> i & 1)
        if _is_upward_closed(X, fam) and fam not in found:
            found.add(fam)
            out.append(UpperClosedFamily(X, fam))
    return canon_sorted(out)


# ---------------------------------------------------------------------------
# sequences (the list monad)


def seq_unit(x) -> tuple:
    return (x,)


def seq_extend(f: Callable, Y=None) -> Callable[[tuple], tuple]:
    def ext(xs: tuple) -> tuple:
        out: list = []
        for x in xs:
            out.extend(f(x))
        return tuple(out)

    return ext


def seq_mu(xss) -> tuple:
    return tuple(x for xs in xss for x in xs)


# ---------------------------------------------------------------------------
# the triple objects used by the generic checkers


class KleisliTriple:
    """Interface shared by the concrete monads.

    ``extend(f, Y)`` takes a Kleisli arrow ``f: X → T Y`` given as a callable
    and returns ``f*: T X → T Y``. ``fmap`` and ``mu`` are the monad's own
    functor action and multiplication, independent of ``extend``.
    """

    name = "abstract"
    # largest |X| for which T X is enumerated in exhaustive law checks
    exhaustive_cap = 0

    def carrier(self, X) -> list:
        raise CapExceeded(f"{self.name}: T X is not enumerable")

    def carrier_size(self, X) -> int | None:
        try:
            return len(self.carrier(X))
        except CapExceeded:
            return None

    def unit(self, x, X):
        raise NotImplementedError

    def extend(self, f: Callable, Y) -> Callable:
        raise NotImplementedError

    def fmap(self, f: Callable, Y) -> Callable:
        raise NotImplementedError

    def mu(self, X) -> Callable:
        raise NotImplementedError

    def sample(self, X, rng: random.Random):
        return rng.choice(self.carrier(X))

    def lift_carrier(self, X) -> FinSet:
        """T X as a FinSet, for building T(T X)."""
        return FinSet(self.carrier(X))

    def __repr__(self) -> str:
        return f"<{self.name} monad>"


class PowersetMonad(KleisliTriple):
    name = "powerset"
    exhaustive_cap = 3

    def carrier(self, X):
        X = as_finset(X)
        if len(X) > 16:
            raise CapExceeded("powerset carrier too large")
        return X.subsets()

    def carrier_size(self, X):
        return 2 ** len(as_finset(X))

    def unit(self, x, X=None):
        return pow_unit(x)

    def extend(self, f, Y=None):
        return pow_extend(f, as_finset(Y) if Y is not None else None)

    def fmap(self, f, Y=None):
        return lambda B: frozenset(f(x) for x in B)

    def mu(self, X=None):
        return pow_mu

    def sample(self, X, rng):
        return frozenset(x for x in as_finset(X) if rng.random() < 0.5)


class DistributionMonad(KleisliTriple):
    name = "distribution"
    exhaustive_cap = -1

    def __init__(self, max_den: int = 6):
        self.max_den = max_den

    def carrier_size(self, X):
        return None

    def unit(self, x, X=None):
        return dist_unit(x)

    def extend(self, f, Y=None):
        return dist_extend(f, Y)

    def fmap(self, f, Y=None):
        def push(p: FinDist) -> FinDist:
            acc: dict = {}
            for x, w in p.items():
                acc[f(x)] = acc.get(f(x), Fraction(0)) + w
            return FinDist(acc)

        return push

    def mu(self, X=None):
        return dist_mu

    def sample(self, X, rng):
        X = as_finset(X)
        k = rng.randint(1, len(X))
        return random_dist(rng.sample(list(X.elements), k), rng, self.max_den)


class UltrafilterMonad(KleisliTriple):
    """Ultrafilters on finite carriers.

    ``carrier`` builds the principal ultrafilters; that these are all of
    them is checked separately against :func:`all_ultrafilters_bruteforce`.
    """

    name = "ultrafilter"
    exhaustive_cap = 4

    def carrier(self, X):
        X = as_finset(X)
        return [Ultrafilter.principal(X, x) for x in X]

    def carrier_size(self, X):
        return len(as_finset(X))

    def unit(self, x, X):
        return uf_unit(x, X)

    def extend(self, f, Y):
        return uf_extend(f, Y)

    def fmap(self, f, Y):
        return lambda U: family_fmap(Ultrafilter, f, U, Y)

    def mu(self, X):
        return lambda F: family_mu(Ultrafilter, F, X)


class UpperClosedMonad(KleisliTriple):
    name = "upper-closed"
    exhaustive_cap = 3

    def carrier(self, X):
        return upper_closed_families(X)

    def carrier_size(self, X):
        n = len(as_finset(X))
        if n > 3:
            return None
        return [2, 3, 6, 20][n]

    def unit(self, x, X):
        return uc_unit(x, X)

    def extend(self, f, Y):
        return uc_extend(f, Y)

    def fmap(self, f, Y):
        return lambda V: family_fmap(UpperClosedFamily, f, V, Y)

    def mu(self, X):
        return lambda F: family_mu(UpperClosedFamily, F, X)

    def sample(self, X, rng):
        X = as_finset(X)
        subs = X.subsets()
        if len(subs) > 64:
            raise CapExceeded("upper closed sampling needs |X| ≤ 6")
        k = rng.randint(0, 3)
        gens = [rng.choice(subs) for _ in range(k)]
        return UpperClosedFamily.generated_by(X, gens)


class SequenceMonad(KleisliTriple):
    """Finite sequences with concatenation; enumeration caps the length."""

    name = "sequence"
    exhaustive_cap = 2

    def __init__(self, max_len: int = 2):
        self.max_len = max_len

    def carrier(self, X):
        X = as_finset(X)
        out = []
        for n in range(self.max_len + 1):
            out.extend(itertools.product(X.elements, repeat=n))
        return out

    def carrier_size(self, X):
        n = len(as_finset(X))
        return sum(n**k for k in range(self.max_len + 1))

    def unit(self, x, X=None):
        return seq_unit(x)

    def extend(self, f, Y=None):
        return seq_extend(f)

    def fmap(self, f, Y=None):
        return lambda xs: tuple(f(x) for x in xs)

    def mu(self, X=None):
        return seq_mu

    def sample(self, X, rng):
        X = as_finset(X)
        if not len(X):
            return ()
        return tuple(rng.choice(X.elements) for _ in range(rng.randint(0, self.max_len + 1)))


POWERSET = PowersetMonad()
DISTRIBUTION = DistributionMonad()
ULTRAFILTER = UltrafilterMonad()
UPPER_CLOSED = UpperClosedMonad()
SEQUENCE = SequenceMonad()

MONADS = {
    "powerset": POWERSET,
    "distribution": DISTRIBUTION,
    "ultrafilter": ULTRAFILTER,
    "upper-closed": UPPER_CLOSED,
    "sequence": SEQUENCE,
}


def get_monad(name: str) -> KleisliTriple:
    aliases = {"pow": "powerset", "dist": "distribution", "uf": "ultrafilter", "uc": "upper-closed",
               "upperclosed": "upper-closed", "seq": "sequence", "list": "sequence"}
    key = aliases.get(name, name)
    if key not in MONADS:
        raise KeyError(f"unknown monad {name!r}; choose from {', '.join(MONADS)}")
    return MONADS[key]


def std_carrier(n: int, prefix: str = "") -> FinSet:
    return FinSet(f"{prefix}{i}" for i in range(n))

