"""Finite sets, total functions, relations and partitions.

Everything here is immutable. Elements are arbitrary hashables (usually
strings); every iteration and rendering follows :func:`canon_key`, so output
is reproducible.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable, Iterator, Mapping


class FinSetError(ValueError):
    """Raised when a construction's precondition does not hold."""


def canon_key(x):
    """Total, deterministic sort key: strings lexicographically first."""
    if isinstance(x, str):
        return (0, x)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(canon_key(e) for e in x))
    if isinstance(x, frozenset):
        return (3, len(x), tuple(sorted(canon_key(e) for e in x)))
    key = getattr(x, "sort_key", None)
    if key is not None:
        return (4, key())
    return (5, repr(x))


def canon_sorted(xs: Iterable) -> list:
    return sorted(xs, key=canon_key)


def show(x) -> str:
    """Render one element: strings bare, tuples as (a,b), sets as {a,b}."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(show(e) for e in x) + ")"
    if isinstance(x, frozenset):
        return "{" + ",".join(show(e) for e in canon_sorted(x)) + "}"
    render = getattr(x, "render", None)
    if render is not None:
        return render()
    return str(x)


def show_set(xs: Iterable, sep: str = ",") -> str:
    return "{" + sep.join(show(e) for e in canon_sorted(xs)) + "}"


class FinSet:
    __slots__ = ("_elems", "_set")

    def __init__(self, elements: Iterable[Hashable] = ()):
        elems = list(elements)
        s = frozenset(elems)
        if len(s) != len(elems):
            seen, dup = set(), None
            for e in elems:
                if e in seen:
                    dup = e
                    break
                seen.add(e)
            raise FinSetError(f"duplicate element {show(dup)}")
        self._elems = tuple(canon_sorted(s))
        self._set = s

    @property
    def elements(self) -> tuple:
        return self._elems

    def as_frozenset(self) -> frozenset:
        return self._set

    def __iter__(self) -> Iterator:
        return iter(self._elems)

    def __len__(self) -> int:
        return len(self._elems)

    def __contains__(self, x) -> bool:
        return x in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSet) and self._set == other._set

    def __hash__(self) -> int:
        return hash(("FinSet", self._set))

    def sort_key(self):
        return tuple(canon_key(e) for e in self._elems)

    def subsets(self) -> list[frozenset]:
        """All subsets, ordered by size and then lexicographically."""
        out = []
        for k in range(len(self._elems) + 1):
            out.extend(frozenset(c) for c in itertools.combinations(self._elems, k))
        return out

    def render(self) -> str:
        return show_set(self._elems, ", ")

    def __repr__(self) -> str:
        return f"FinSet({self.render()})"


def as_finset(xs) -> FinSet:
    return xs if isinstance(xs, FinSet) else FinSet(xs)


class FinFn:
    """A total function between finite sets."""

    __slots__ = ("domain", "codomain", "_table", "_hash")

    def __init__(self, domain, codomain, table: Mapping | Callable):
        domain = as_finset(domain)
        codomain = as_finset(codomain)
        if callable(table) and not isinstance(table, Mapping):
            table = {x: table(x) for x in domain}
        missing = [x for x in domain if x not in table]
        if missing:
            raise FinSetError(f"function undefined on {show(missing[0])}")
        extra = [x for x in table if x not in domain]
        if extra:
            raise FinSetError(f"{show(extra[0])} is not in the domain")
        for x in domain:
            if table[x] not in codomain:
                raise FinSetError(
                    f"image {show(table[x])} of {show(x)} lies outside the codomain"
                )
        self.domain = domain
        self.codomain = codomain
        self._table = {x: table[x] for x in domain}
        self._hash = None

    def __call__(self, x):
        return self._table[x]

    def items(self):
        return ((x, self._table[x]) for x in self.domain)

    def as_dict(self) -> dict:
        return dict(self._table)

    def image(self, xs: Iterable | None = None) -> frozenset:
        xs = self.domain if xs is None else xs
        return frozenset(self._table[x] for x in xs)

    def preimage(self, ys: Iterable) -> frozenset:
        ys = frozenset(ys)
        return frozenset(x for x in self.domain if self._table[x] in ys)

    def is_injective(self) -> bool:
        return len(self.image()) == len(self.domain)

    def is_surjective(self) -> bool:
        return self.image() == self.codomain.as_frozenset()

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def signature(self) -> str:
        return f"{self.domain.render()} -> {self.codomain.render()}"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinFn)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self._table == other._table
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.domain, self.codomain, frozenset(self._table.items())))
        return self._hash

    def sort_key(self):
        return tuple(canon_key(self._table[x]) for x in self.domain)

    def render(self) -> str:
        return "; ".join(f"{show(x)}→{show(y)}" for x, y in self.items())

    def __repr__(self) -> str:
        return f"FinFn({self.render()})"


def identity(X) -> FinFn:
    X = as_finset(X)
    return FinFn(X, X, {x: x for x in X})


def compose(f: FinFn, g: FinFn) -> FinFn:
    """Return ``g ∘ f`` (first ``f``, then ``g``)."""
    if f.codomain != g.domain:
        raise FinSetError(
            f"cannot compose: f has signature {f.signature()}, g has {g.signature()}"
        )
    return FinFn(f.domain, g.codomain, {x: g(f(x)) for x in f.domain})


def all_functions(X, Y) -> Iterator[FinFn]:
    """Every function X→Y, in lexicographic order of assignment tables."""
    X, Y = as_finset(X), as_finset(Y)
    for values in itertools.product(Y.elements, repeat=len(X)):
        yield FinFn(X, Y, dict(zip(X.elements, values)))


class FinRel:
    __slots__ = ("left", "right", "pairs")

    def __init__(self, left, right, pairs: Iterable[tuple] = ()):
        left, right = as_finset(left), as_finset(right)
        pairs = frozenset(tuple(p) for p in pairs)
        for a, b in pairs:
            if a not in left:
                raise FinSetError(f"pair ({show(a)},{show(b)}): {show(a)} not in left set")
            if b not in right:
                raise FinSetError(f"pair ({show(a)},{show(b)}): {show(b)} not in right set")
        self.left = left
        self.right = right
        self.pairs = pairs

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __iter__(self):
        return iter(canon_sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinRel)
            and self.left == other.left
            and self.right == other.right
            and self.pairs == other.pairs
        )

    def __hash__(self) -> int:
        return hash((self.left, self.right, self.pairs))

    def __le__(self, other: "FinRel") -> bool:
        return self.pairs <= other.pairs

    def image_of(self, a) -> frozenset:
        return frozenset(b for x, b in self.pairs if x == a)

    def successor_map(self) -> dict:
        succ = {a: set() for a in self.left}
        for a, b in self.pairs:
            succ[a].add(b)
        return {a: frozenset(bs) for a, bs in succ.items()}

    def inverse(self) -> "FinRel":
        return FinRel(self.right, self.left, ((b, a) for a, b in self.pairs))

    def then(self, other: "FinRel") -> "FinRel":
        """Relational composition in diagrammatic order: self, then other."""
        if self.right != other.left:
            raise FinSetError("relation composition: middle sets differ")
        succ = other.successor_map()
        return FinRel(
            self.left, other.right, ((a, c) for a, b in self.pairs for c in succ[b])
        )

    def union(self, other: "FinRel") -> "FinRel":
        if self.left != other.left or self.right != other.right:
            raise FinSetError("union of relations over different sets")
        return FinRel(self.left, self.right, self.pairs | other.pairs)

    def intersection(self, other: "FinRel") -> "FinRel":
        return FinRel(self.left, self.right, self.pairs & other.pairs)

    def is_reflexive(self) -> bool:
        return all((x, x) in self.pairs for x in self.left)

    def is_symmetric(self) -> bool:
        return all((b, a) in self.pairs for a, b in self.pairs)

    def is_transitive(self) -> bool:
        succ = self.successor_map()
        return all((a, c) in self.pairs for a, b in self.pairs for c in succ.get(b, ()))

    def is_equivalence(self) -> bool:
        return (
            self.left == self.right
            and self.is_reflexive()
            and self.is_symmetric()
            and self.is_transitive()
        )

    def render(self) -> str:
        return " ".join(f"({show(a)},{show(b)})" for a, b in self)

    def __repr__(self) -> str:
        return f"FinRel({self.render()})"


def diagonal(X) -> FinRel:
    X = as_finset(X)
    return FinRel(X, X, ((x, x) for x in X))


def full_relation(X, Y=None) -> FinRel:
    X = as_finset(X)
    Y = X if Y is None else as_finset(Y)
    return FinRel(X, Y, itertools.product(X, Y))


def graph(f: FinFn) -> FinRel:
    return FinRel(f.domain, f.codomain, f.items())


def equivalence_closure(X, pairs: Iterable[tuple]) -> FinRel:
    """Smallest equivalence relation on X containing ``pairs`` (union-find)."""
    X = as_finset(X)
    parent = {x: x for x in X}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    classes: dict = {}
    for x in X:
        classes.setdefault(find(x), []).append(x)
    return FinRel(X, X, ((a, b) for c in classes.values() for a in c for b in c))


class Partition:
    __slots__ = ("carrier", "blocks")

    def __init__(self, carrier, blocks: Iterable[Iterable]):
        carrier = as_finset(carrier)
        blocks = frozenset(frozenset(b) for b in blocks)
        if frozenset() in blocks:
            raise FinSetError("partition has an empty block")
        seen: set = set()
        for b in blocks:
            if seen & b:
                raise FinSetError("partition blocks overlap")
            seen |= b
        if seen != carrier.as_frozenset():
            raise FinSetError("partition blocks do not cover the carrier")
        self.carrier = carrier
        self.blocks = blocks

    @classmethod
    def from_equivalence(cls, rel: FinRel) -> "Partition":
        if not rel.is_equivalence():
            raise FinSetError("relation is not an equivalence")
        succ = rel.successor_map()
        return cls(rel.left, {succ[x] for x in rel.left})

    def sorted_blocks(self) -> list[frozenset]:
        return sorted(self.blocks, key=lambda b: canon_key(canon_sorted(b)[0]))

    def block_of(self, x) -> frozenset:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def class_map(self) -> dict:
        return {x: b for b in self.blocks for x in b}

    def to_relation(self) -> FinRel:
        return FinRel(
            self.carrier, self.carrier, ((a, b) for blk in self.blocks for a in blk for b in blk)
        )

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.carrier == other.carrier and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.carrier, self.blocks))

    def render(self) -> str:
        return " ".join(show_set(b) for b in self.sorted_blocks())

    def __repr__(self) -> str:
        return f"Partition({self.render()})"


def block_name(block: Iterable) -> str:
    """Canonical name of a class, e.g. ``{b1,c1}``."""
    return show_set(block)


# ---------------------------------------------------------------------------
# categorical constructions


def kernel(f: FinFn) -> FinRel:
    d = f.domain
    return FinRel(d, d, ((a, b) for a in d for b in d if f(a) == f(b)))


def epi_mono_factorize(f: FinFn) -> tuple[FinFn, FinFn]:
    """Factor ``f = m ∘ e`` through the kernel classes of ``f``.

    The middle object is the set of class names (see :func:`block_name`).
    """
    part = Partition.from_equivalence(kernel(f))
    names = {b: block_name(b) for b in part.blocks}
    middle = FinSet(names.values())
    e = FinFn(f.domain, middle, {x: names[b] for b in part.blocks for x in b})
    m = FinFn(middle, f.codomain, {names[b]: f(next(iter(b))) for b in part.blocks})
    return e, m


def find_factorization_iso(e1: FinFn, m1: FinFn, e2: FinFn, m2: FinFn) -> FinFn | None:
    """Search a bijection φ with φ∘e1 = e2 and m2∘φ = m1."""
    M1, M2 = e1.codomain, e2.codomain
    if len(M1) != len(M2):
        return None
    for perm in itertools.permutations(M2.elements):
        phi = FinFn(M1, M2, dict(zip(M1.elements, perm)))
        if compose(e1, phi) == e2 and compose(phi, m2) == m1:
            return phi
    return None


def product(X, Y) -> tuple[FinSet, FinFn, FinFn]:
    X, Y = as_finset(X), as_finset(Y)
    P = FinSet(itertools.product(X, Y))
    return P, FinFn(P, X, {p: p[0] for p in P}), FinFn(P, Y, {p: p[1] for p in P})


def coproduct(family: Iterable) -> tuple[FinSet, list[FinFn]]:
    """Tagged disjoint union; elements are ``(element, index)`` pairs."""
    family = [as_finset(s) for s in family]
    if not family:
        raise FinSetError("coproduct of an empty family")
    S = FinSet((s, k) for k, X in enumerate(family) for s in X)
    injections = [FinFn(X, S, {s: (s, k) for s in X}) for k, X in enumerate(family)]
    return S, injections


def pullback(f: FinFn, g: FinFn) -> tuple[FinSet, FinFn, FinFn]:
    if f.codomain != g.codomain:
        raise FinSetError(
            f"pullback needs a common codomain: {f.signature()} vs {g.signature()}"
        )
    P = FinSet((x, y) for x in f.domain for y in g.domain if f(x) == g(y))
    return P, FinFn(P, f.domain, {p: p[0] for p in P}), FinFn(P, g.domain, {p: p[1] for p in P})


def pullback_mediator(f: FinFn, g: FinFn, a: FinFn, b: FinFn) -> FinFn:
    """The unique map from the cone ``(a, b)`` into the canonical pullback."""
    if a.domain != b.domain:
        raise FinSetError("cone legs have different apexes")
    if compose(a, f) != compose(b, g):
        raise FinSetError("cone does not commute")
    P, _, _ = pullback(f, g)
    return FinFn(a.domain, P, {c: (a(c), b(c)) for c in a.domain})


def pushout(f: FinFn, g: FinFn) -> tuple[Partition, FinFn, FinFn]:
    """Glue B and C along A.

    Returns the partition of the tagged union B+C by the generated
    equivalence and the two maps into its class names.
    """
    if f.domain != g.domain:
        raise FinSetError(f"pushout needs a common domain: {f.signature()} vs {g.signature()}")
    S, (iB, iC) = coproduct([f.codomain, g.codomain])
    R = equivalence_closure(S, ((iB(f(a)), iC(g(a))) for a in f.domain))
    D = Partition.from_equivalence(R)
    names = {b: block_name(x for x, _ in b) for b in D.blocks}
    if len(set(names.values())) != len(names):
        # same element name in both summands: fall back to tagged names
        names = {b: show_set(b) for b in D.blocks}
    classes = FinSet(names.values())
    cls = D.class_map()
    pB = FinFn(f.codomain, classes, {y: names[cls[iB(y)]] for y in f.codomain})
    pC = FinFn(g.codomain, classes, {z: names[cls[iC(z)]] for z in g.codomain})
    return D, pB, pC


def pushout_mediator(f: FinFn, g: FinFn, u: FinFn, v: FinFn) -> FinFn:
    """The unique map out of the pushout induced by the cocone ``(u, v)``."""
    if u.codomain != v.codomain:
        raise FinSetError("cocone legs have different targets")
    if compose(f, u) != compose(g, v):
        raise FinSetError("cocone does not commute")
    _, pB, pC = pushout(f, g)
    table: dict = {}
    for leg, p in ((u, pB), (v, pC)):
        for y in leg.domain:
            c = p(y)
            if c in table and table[c] != leg(y):
                raise FinSetError("cocone does not factor")
            table[c] = leg(y)
    return FinFn(pB.codomain, u.codomain, table)


def exponential(E, A) -> FinSet:
    """The set A^E of all functions E→A."""
    return FinSet(all_functions(E, A))


def curry(k: FinFn, X, E) -> FinFn:
    """Turn ``k: X×E → A`` into ``X → A^E``."""
    X, E = as_finset(X), as_finset(E)
    P, _, _ = product(X, E)
    if k.domain != P:
        raise FinSetError("curry: domain is not the product X×E")
    A = k.codomain
    return FinFn(X, exponential(E, A), {x: FinFn(E, A, {e: k((x, e)) for e in E}) for x in X})


def uncurry(c: FinFn, E) -> FinFn:
    E = as_finset(E)
    X = c.domain
    fns = [c(x) for x in X]
    if any(h.domain != E for h in fns):
        raise FinSetError("uncurry: values are not functions on E")
    A = next(iter(c.codomain)).codomain if len(c.codomain) else FinSet()
    P, _, _ = product(X, E)
    return FinFn(P, A, {(x, e): c(x)(e) for x, e in P})


def currying_unit(X, E) -> FinFn:
    """x ↦ (e ↦ ⟨x, e⟩), a map X → (X×E)^E."""
    X, E = as_finset(X), as_finset(E)
    P, _, _ = product(X, E)
    return FinFn(X, exponential(E, P), {x: FinFn(E, P, {e: (x, e) for e in E}) for x in X})


def evaluation(E, A) -> FinFn:
    """The counit ⟨g, e⟩ ↦ g(e) on A^E × E."""
    E, A = as_finset(E), as_finset(A)
    P, _, _ = product(exponential(E, A), E)
    return FinFn(P, A, {(g, e): g(e) for g, e in P})


def check_currying_triangles(X, E, A) -> bool:
    """Both triangle identities of the currying adjunction on this instance."""
    X, E, A = as_finset(X), as_finset(E), as_finset(A)
    unit = currying_unit(X, E)
    # ev_{X×E} ∘ (η_X × id_E) = id_{X×E}
    XE, _, _ = product(X, E)
    ev = evaluation(E, XE)
    first = all(ev((unit(x), e)) == (x, e) for x, e in XE)
    # (ev_A)^E ∘ η_{A^E} = id_{A^E}
    AE = exponential(E, A)
    ev_a = evaluation(E, A)
    unit_ae = currying_unit(AE, E)
    second = all(
        FinFn(E, A, {e: ev_a(unit_ae(g)(e)) for e in E}) == g for g in AE
    )
    return first and second


def is_weak_pullback(f: FinFn, g: FinFn, p1: FinFn, p2: FinFn) -> bool:
    """Decide whether the square ``f∘p1 = g∘p2`` is a weak pullback.

    It is one iff every point of the canonical pullback is hit by ⟨p1, p2⟩.
    """
    if p1.domain != p2.domain:
        raise FinSetError("square legs have different apexes")
    if compose(p1, f) != compose(p2, g):
        raise FinSetError("square does not commute")
    P, _, _ = pullback(f, g)
    hit = {(p1(c), p2(c)) for c in p1.domain}
    return P.as_frozenset() <= hit


def is_pullback(f: FinFn, g: FinFn, p1: FinFn, p2: FinFn) -> bool:
    if not is_weak_pullback(f, g, p1, p2):
        return False
    return len({(p1(c), p2(c)) for c in p1.domain}) == len(p1.domain)


def powerset_of(X) -> FinSet:
    return FinSet(as_finset(X).subsets())


def powerset_map(f: FinFn) -> FinFn:
    """Direct image ``P f``."""
    return FinFn(
        powerset_of(f.domain), powerset_of(f.codomain), {A: f.image(A) for A in f.domain.subsets()}
    )
