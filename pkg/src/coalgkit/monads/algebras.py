"""Eilenberg–Moore algebras: sup-semilattices and positive convex structures."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ..finset import FinRel, FinSet, as_finset, show
from .laws import ENUM_CAP, DEFAULT_SEED, LawReport, _Recorder
from .triples import (
    DISTRIBUTION,
    POWERSET,
    FinDist,
    KleisliTriple,
    MonadError,
    random_dist,
)


class OrderError(ValueError):
    pass


@dataclass(frozen=True)
class EMAlgebra:
    triple: KleisliTriple
    carrier: FinSet
    structure: Callable

    def __call__(self, t):
        return self.structure(t)


def free_algebra(triple: KleisliTriple, X) -> EMAlgebra:
    """(T X, μ_X), an algebra for every monad."""
    X = as_finset(X)
    return EMAlgebra(triple, FinSet(triple.carrier(X)), triple.mu(X))


def check_em_algebra(
    alg: EMAlgebra, samples: int = 200, seed: int = DEFAULT_SEED, max_den: int = 6
) -> LawReport:
    """Verify h∘η = id and h∘μ = h∘T(h).

    T(T X) is enumerated when it fits under the cap; otherwise (always for
    distributions) the multiplication law is checked on seeded samples.
    """
    triple, X, h = alg.triple, alg.carrier, alg.structure
    rec = _Recorder(["unit", "mult"])
    for x in X:
        got = h(triple.unit(x, X))
        if got == x:
            rec.ok("unit")
        else:
            rec.fail("unit", f"h(η({show(x)})) = {show(got)}")

    TX = None
    size = triple.carrier_size(X)
    if size is not None and size <= ENUM_CAP:
        TX = FinSet(triple.carrier(X))
    elements = None
    if TX is not None:
        size2 = triple.carrier_size(TX)
        if size2 is not None and size2 <= ENUM_CAP:
            elements = triple.carrier(TX)
    if elements is None:
        rng = random.Random(seed)
        elements = [_sample_tt(triple, X, rng, max_den) for _ in range(samples)]
    mu = triple.mu(X)
    Th = triple.fmap(h, X)
    for m in elements:
        a, b = h(mu(m)), h(Th(m))
        if a == b:
            rec.ok("mult")
        else:
            rec.fail("mult", f"at {show(m)}: h(μ) = {show(a)}, h(T h) = {show(b)}")
    return LawReport("Eilenberg-Moore algebra laws", rec.results())


def _sample_tt(triple, X, rng, max_den):
    if triple is DISTRIBUTION or isinstance(triple, type(DISTRIBUTION)):
        k = rng.randint(1, 3)
        inner = list({triple.sample(X, rng) for _ in range(k)})
        return random_dist(inner, rng, max_den)
    inner = FinSet({triple.sample(X, rng) for _ in range(4)})
    return triple.sample(inner, rng)


# ---------------------------------------------------------------------------
# powerset algebras = complete sup-semilattices


def _as_leq(X: FinSet, leq) -> Callable:
    if callable(leq):
        return leq
    pairs = frozenset(tuple(p) for p in leq)
    return lambda a, b: (a, b) in pairs


def supremum(X: FinSet, leq: Callable, A) -> object:
    upper = [u for u in X if all(leq(a, u) for a in A)]
    least = [u for u in upper if all(leq(u, v) for v in upper)]
    if len(least) != 1:
        raise OrderError(f"no supremum for {show(frozenset(A))}")
    return least[0]


def semilattice_to_algebra(elements, leq) -> EMAlgebra:
    """h(A) := sup A; every subset (including ∅) needs a supremum."""
    X = as_finset(elements)
    leq = _as_leq(X, leq)
    for a in X:
        for b in X:
            if leq(a, b) and leq(b, a) and a != b:
                raise OrderError(f"not antisymmetric at {show(a)}, {show(b)}")
    table = {A: supremum(X, leq, A) for A in X.subsets()}
    return EMAlgebra(POWERSET, X, lambda A: table[frozenset(A)])


def algebra_to_order(alg: EMAlgebra) -> FinRel:
    """x ≤ x' iff h({x, x'}) = x'; checked to be a partial order."""
    X, h = alg.carrier, alg.structure
    rel = FinRel(X, X, ((a, b) for a in X for b in X if h(frozenset([a, b])) == b))
    if not (rel.is_reflexive() and rel.is_transitive()):
        raise OrderError("induced relation is not a preorder")
    if any((b, a) in rel and a != b for a, b in rel.pairs):
        raise OrderError("induced relation is not antisymmetric")
    return rel


# ---------------------------------------------------------------------------
# positive convex structures


Combine = Callable[[Sequence[Fraction], Sequence], object]


def random_coefficients(n: int, rng: random.Random, max_den: int = 6) -> tuple[Fraction, ...]:
    den = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, den) for _ in range(n - 1))
    return tuple(Fraction(b - a, den) for a, b in zip([0] + cuts, cuts + [den]))


def _delta(n: int, k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == k)) for i in range(n))


def _fmt_coeffs(c) -> str:
    return "(" + ",".join(str(x) for x in c) + ")"


def composition_holds(combine: Combine, alpha, betas, points) -> tuple[object, object]:
    """Both sides of Σα_i(Σβ_ik x_k) = Σ_k(Σ_i α_i β_ik) x_k."""
    inner = [combine(b, points) for b in betas]
    lhs = combine(alpha, inner)
    m = len(points)
    mixed = tuple(sum((a * b[k] for a, b in zip(alpha, betas)), Fraction(0)) for k in range(m))
    rhs = combine(mixed, points)
    return lhs, rhs


def induced_algebra(carrier, combine: Combine) -> EMAlgebra:
    """h(Σ α_i δ_{x_i}) := Σ α_i x_i for the distribution monad."""
    X = as_finset(carrier)

    def h(p: FinDist):
        pts = [x for x, _ in p.items()]
        return combine(tuple(w for _, w in p.items()), pts)

    return EMAlgebra(DISTRIBUTION, X, h)


def check_convex_structure(
    carrier,
    combine: Combine,
    samples: int = 500,
    max_den: int = 6,
    max_len: int = 3,
    seed: int = DEFAULT_SEED,
) -> LawReport:
    """Check the projection and composition axioms of a convex structure.

    A fixed probe set of small coefficient tuples is tried before the seeded
    random samples, so the first reported witness is stable.
    """
    X = as_finset(carrier)
    if not len(X):
        raise MonadError("convex structure on the empty set")
    pts = list(X)
    rng = random.Random(seed)
    rec = _Recorder(["projection", "composition", "algebra-unit", "algebra-mult"])

    for n in range(1, max_len + 1):
        for xs in itertools.product(pts, repeat=n):
            for k in range(n):
                got = combine(_delta(n, k), xs)
                if got == xs[k]:
                    rec.ok("projection")
                else:
                    rec.fail("projection", f"δ_{k + 1} on {show(xs)} gives {show(got)}")

    half = Fraction(1, 2)
    probes = [((half, half), [_delta(2, 1), _delta(2, 0)])]
    probes += [((Fraction(1),), [_delta(2, 0)]), ((half, half), [_delta(2, 0), _delta(2, 1)])]
    cases = [(a, b, xs) for a, b in probes for xs in itertools.product(pts, repeat=2)]
    for _ in range(samples):
        n, m = rng.randint(1, max_len), rng.randint(1, max_len)
        alpha = random_coefficients(n, rng, max_den)
        betas = [random_coefficients(m, rng, max_den) for _ in range(n)]
        cases.append((alpha, betas, tuple(rng.choice(pts) for _ in range(m))))
    for alpha, betas, xs in cases:
        lhs, rhs = composition_holds(combine, alpha, betas, xs)
        if lhs == rhs:
            rec.ok("composition")
        else:
            rec.fail(
                "composition",
                f"α={_fmt_coeffs(alpha)}, "
                + ", ".join(f"β{i + 1}={_fmt_coeffs(b)}" for i, b in enumerate(betas))
                + f", x={show(tuple(xs))}: {show(lhs)} ≠ {show(rhs)}",
            )

    alg = induced_algebra(X, combine)
    em = check_em_algebra(alg, samples=samples, seed=seed, max_den=max_den)
    for name, target in (("unit", "algebra-unit"), ("mult", "algebra-mult")):
        r = em[name]
        if r.passed:
            rec.ok(target, r.checked)
        else:
            rec.fail(target, r.witness)
    return LawReport("positive convex structure", rec.results())


def sup_of_support(order=None) -> Combine:
    """Combination = supremum of the points carrying positive weight."""
    key = order or (lambda x: x)

    def combine(coeffs, points):
        support = [x for a, x in zip(coeffs, points) if a > 0]
        return max(support, key=key)

    return combine


def first_nonzero_projection(coeffs, points):
    """Pseudo-structure: pick the first point with nonzero weight."""
    for a, x in zip(coeffs, points):
        if a > 0:
            return x
    raise MonadError("all coefficients are zero")


__all__ = [
    "EMAlgebra",
    "OrderError",
    "algebra_to_order",
    "check_convex_structure",
    "check_em_algebra",
    "composition_holds",
    "first_nonzero_projection",
    "free_algebra",
    "induced_algebra",
    "random_coefficients",
    "semilattice_to_algebra",
    "sup_of_support",
    "supremum",
]
