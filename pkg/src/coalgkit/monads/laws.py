"""Law checking for Kleisli triples and the Manes correspondence."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..finset import FinFn, FinSet, as_finset, show
from .triples import CapExceeded, KleisliTriple, MonadError, std_carrier

# Largest number of elements a single enumerated carrier may have.
ENUM_CAP = 1 << 16

DEFAULT_SEED = 0


@dataclass
class LawResult:
    name: str
    passed: bool
    checked: int = 0
    witness: str | None = None

    def render(self) -> str:
        if self.passed:
            return f"{self.name} PASS"
        return f"{self.name} FAIL: {self.witness}"


@dataclass
class LawReport:
    title: str
    results: list[LawResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> LawResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def render(self) -> str:
        return "\n".join(r.render() for r in self.results)


def _fmt_arrow(X: FinSet, values) -> str:
    return "{" + ", ".join(f"{show(x)}↦{show(v)}" for x, v in zip(X, values)) + "}"


class _Recorder:
    """Accumulates pass/fail per law, keeping the first witness."""

    def __init__(self, names):
        self.order = list(names)
        self.counts = {n: 0 for n in names}
        self.witness: dict[str, str] = {}

    def ok(self, name, n=1):
        self.counts[name] += n

    def fail(self, name, witness):
        self.counts[name] += 1
        self.witness.setdefault(name, witness)

    def results(self):
        return [
            LawResult(n, n not in self.witness, self.counts[n], self.witness.get(n))
            for n in self.order
        ]


# ---------------------------------------------------------------------------
# derived structure (triple → monad)


def derive_functor_action(triple: KleisliTriple, f, Y) -> Callable:
    """``T f := (η ∘ f)*``."""
    Y = as_finset(Y)
    return triple.extend(lambda x: triple.unit(f(x), Y), Y)


def derive_mu(triple: KleisliTriple, X, tabulate: bool = False):
    """``μ_X := (id_{T X})*``; with ``tabulate`` returns a FinFn on T(T X)."""
    X = as_finset(X)
    mu = triple.extend(lambda t: t, X)
    if not tabulate:
        return mu
    TX = _carrier(triple, X)
    TTX = _carrier(triple, FinSet(TX))
    return FinFn(FinSet(TTX), FinSet(TX), {m: mu(m) for m in TTX})


def _carrier(triple: KleisliTriple, X) -> list:
    size = triple.carrier_size(X)
    if size is None or size > ENUM_CAP:
        raise CapExceeded(f"{triple.name}: T X has too many elements to enumerate (|X|={len(X)})")
    return triple.carrier(X)


def _enumerable(triple: KleisliTriple, X) -> bool:
    size = triple.carrier_size(X)
    return size is not None and size <= ENUM_CAP


# ---------------------------------------------------------------------------
# Kleisli laws


class _ArrowTables:
    """Extension tables for all Kleisli arrows between standard carriers."""

    def __init__(self, triple: KleisliTriple):
        self.triple = triple
        self._carriers: dict[int, tuple] = {}
        self._tables: dict[tuple[int, int], tuple] = {}

    def carrier(self, n):
        if n not in self._carriers:
            X = std_carrier(n)
            TX = _carrier(self.triple, X)
            self._carriers[n] = (X, TX, {t: i for i, t in enumerate(TX)})
        return self._carriers[n]

    def arrows(self, nx, ny):
        """(values, ext) where values[k] lists f's images and ext[k] tabulates f*."""
        key = (nx, ny)
        if key not in self._tables:
            X, TX, _ = self.carrier(nx)
            Y, TY, idx_y = self.carrier(ny)
            vals, ext = [], []
            for combo in itertools.product(range(len(TY)), repeat=nx):
                images = {x: TY[i] for x, i in zip(X, combo)}
                fstar = self.triple.extend(images.__getitem__, Y)
                vals.append(combo)
                ext.append([idx_y[fstar(t)] for t in TX])
            self._tables[key] = (
                np.array(vals, dtype=np.int64).reshape(len(vals), nx),
                np.array(ext, dtype=np.int64).reshape(len(ext), len(TX)),
            )
        return self._tables[key]


def check_kleisli_laws(
    triple: KleisliTriple,
    max_size: int = 2,
    mode: str = "exhaustive",
    samples: int = 200,
    seed: int = DEFAULT_SEED,
) -> LawReport:
    """Check η* = id, f*∘η = f and g*∘f* = (g*∘f)*.

    Exhaustive mode enumerates every carrier size up to ``max_size`` and every
    pair of Kleisli arrows; sampled mode draws random arrows and elements.
    """
    if mode == "exhaustive":
        if max_size > triple.exhaustive_cap:
            raise CapExceeded(
                f"{triple.name}: exhaustive law check allows carriers of size ≤ "
                f"{triple.exhaustive_cap}, got {max_size}"
            )
        return _laws_exhaustive(triple, max_size)
    if mode == "sampled":
        return _laws_sampled(triple, max_size, samples, seed)
    raise ValueError(f"unknown mode {mode!r}")


def _laws_exhaustive(triple: KleisliTriple, max_size: int) -> LawReport:
    rec = _Recorder(["law1", "law2", "law3"])
    tables = _ArrowTables(triple)
    sizes = range(max_size + 1)
    for n in sizes:
        X, TX, idx = tables.carrier(n)
        unit_star = triple.extend(lambda x: triple.unit(x, X), X)
        for t in TX:
            got = unit_star(t)
            if got == t:
                rec.ok("law1")
            else:
                rec.fail("law1", f"η*({show(t)}) = {show(got)} on |X|={n}")
    for nx in sizes:
        X, TX, idx_x = tables.carrier(nx)
        for ny in sizes:
            Y, TY, _ = tables.carrier(ny)
            vals, ext = tables.arrows(nx, ny)
            units = [idx_x[triple.unit(x, X)] for x in X]
            for k in range(len(vals)):
                for j, x in enumerate(X):
                    if ext[k, units[j]] == vals[k, j]:
                        rec.ok("law2")
                    else:
                        f_desc = _fmt_arrow(X, (TY[i] for i in vals[k]))
                        rec.fail(
                            "law2",
                            f"f={f_desc}: f*(η({show(x)})) = {show(TY[ext[k, units[j]]])}",
                        )
    for nx in sizes:
        X, TX, _ = tables.carrier(nx)
        for ny in sizes:
            Y, TY, _ = tables.carrier(ny)
            fvals, fext = tables.arrows(nx, ny)
            for nz in sizes:
                Z, TZ, _ = tables.carrier(nz)
                gvals, gext = tables.arrows(ny, nz)
                _, hext = tables.arrows(nx, nz)
                if not len(fvals) or not len(gvals):
                    continue
                radix = np.array([len(TZ) ** (nx - 1 - j) for j in range(nx)], dtype=np.int64)
                for k in range(len(fvals)):
                    lhs = gext[:, fext[k]]
                    composed = gext[:, fvals[k]]
                    rhs = hext[composed @ radix] if nx else np.broadcast_to(hext[0], lhs.shape)
                    bad = np.nonzero((lhs != rhs).any(axis=1))[0]
                    rec.ok("law3", len(gvals) - len(bad))
                    if len(bad):
                        g = bad[0]
                        col = int(np.nonzero(lhs[g] != rhs[g])[0][0])
                        rec.fail(
                            "law3",
                            f"f={_fmt_arrow(X, (TY[i] for i in fvals[k]))}, "
                            f"g={_fmt_arrow(Y, (TZ[i] for i in gvals[g]))}, "
                            f"t={show(TX[col])}",
                        )
                        rec.counts["law3"] += len(bad) - 1
    return LawReport(f"{triple.name} Kleisli laws (exhaustive, |X|,|Y|,|Z| ≤ {max_size})", rec.results())


def _laws_sampled(triple: KleisliTriple, max_size: int, samples: int, seed: int) -> LawReport:
    rng = random.Random(seed)
    rec = _Recorder(["law1", "law2", "law3"])
    lo = 1
    for _ in range(samples):
        nx, ny, nz = (rng.randint(lo, max(lo, max_size)) for _ in range(3))
        X, Y, Z = std_carrier(nx), std_carrier(ny), std_carrier(nz)
        fmap = {x: triple.sample(Y, rng) for x in X}
        gmap = {y: triple.sample(Z, rng) for y in Y}
        t = triple.sample(X, rng)
        f, g = fmap.__getitem__, gmap.__getitem__
        got = triple.extend(lambda x: triple.unit(x, X), X)(t)
        if got == t:
            rec.ok("law1")
        else:
            rec.fail("law1", f"η*({show(t)}) = {show(got)}")
        fstar = triple.extend(f, Y)
        for x in X:
            got = fstar(triple.unit(x, X))
            if got == fmap[x]:
                rec.ok("law2")
            else:
                rec.fail("law2", f"f={_fmt_arrow(X, fmap.values())}: f*(η({show(x)})) = {show(got)}")
        gstar = triple.extend(g, Z)
        lhs = gstar(fstar(t))
        rhs = triple.extend(lambda x: gstar(f(x)), Z)(t)
        if lhs == rhs:
            rec.ok("law3")
        else:
            rec.fail(
                "law3",
                f"f={_fmt_arrow(X, fmap.values())}, g={_fmt_arrow(Y, gmap.values())}, t={show(t)}",
            )
    return LawReport(f"{triple.name} Kleisli laws ({samples} samples, seed {seed})", rec.results())


# ---------------------------------------------------------------------------
# Manes round trip and monad diagrams


def manes_roundtrip(
    triple: KleisliTriple,
    max_size: int = 2,
    mode: str = "exhaustive",
    samples: int = 200,
    seed: int = DEFAULT_SEED,
) -> LawReport:
    """Compare the triple with the monad it determines, in both directions.

    * ``f+ = f*`` where ``f+ := μ ∘ T f`` uses the monad's own T and μ;
    * ``T0 f = T f`` where ``T0 f := (η ∘ f)*``;
    * ``mu0 = mu`` where ``μ0 := (id)*``.
    """
    rec = _Recorder(["f+ = f*", "T0 f = T f", "mu0 = mu"])
    rng = random.Random(seed)

    def cases():
        if mode == "exhaustive":
            for nx in range(max_size + 1):
                for ny in range(max_size + 1):
                    X, Y = std_carrier(nx), std_carrier(ny)
                    if not (_enumerable(triple, X) and _enumerable(triple, Y)):
                        raise CapExceeded(f"{triple.name}: carrier too large for exhaustive mode")
                    TY = triple.carrier(Y)
                    # T f on T Y walks the subsets of T Y for the family monads
                    if not _subset_lattice_ok(triple, FinSet(TY)):
                        raise CapExceeded(
                            f"{triple.name}: T f on T Y is out of reach at |Y|={ny}; use sampled mode"
                        )
                    for combo in itertools.product(TY, repeat=nx):
                        yield X, Y, dict(zip(X, combo)), None, triple.carrier(X)
                    for plain in itertools.product(Y.elements, repeat=nx):
                        yield X, Y, None, dict(zip(X, plain)), triple.carrier(X)
        else:
            for _ in range(samples):
                nx, ny = rng.randint(1, max_size), rng.randint(1, max_size)
                X, Y = std_carrier(nx), std_carrier(ny)
                kl = {x: triple.sample(Y, rng) for x in X}
                plain = {x: rng.choice(Y.elements) for x in X}
                ts = [triple.sample(X, rng) for _ in range(3)]
                yield X, Y, kl, None, ts
                yield X, Y, None, plain, ts

    for X, Y, kl, plain, ts in cases():
        if kl is not None:
            TY = FinSet(triple.carrier(Y)) if _enumerable(triple, Y) else None
            fstar = triple.extend(kl.__getitem__, Y)
            fplus_map = triple.fmap(kl.__getitem__, TY)
            mu_y = triple.mu(Y)
            for t in ts:
                a, b = mu_y(fplus_map(t)), fstar(t)
                if a == b:
                    rec.ok("f+ = f*")
                else:
                    rec.fail("f+ = f*", f"f={_fmt_arrow(X, kl.values())}, t={show(t)}: {show(a)} ≠ {show(b)}")
        else:
            t0 = derive_functor_action(triple, plain.__getitem__, Y)
            tf = triple.fmap(plain.__getitem__, Y)
            for t in ts:
                a, b = t0(t), tf(t)
                if a == b:
                    rec.ok("T0 f = T f")
                else:
                    rec.fail("T0 f = T f", f"f={_fmt_arrow(X, plain.values())}, t={show(t)}")
    # μ0 = μ on T(T X)
    for n in range(max_size + 1):
        X = std_carrier(n)
        elems = _ttx_elements(triple, X, rng, samples if mode != "exhaustive" else None)
        if elems is None:
            continue
        mu0, mu = derive_mu(triple, X), triple.mu(X)
        for m in elems:
            if mu0(m) == mu(m):
                rec.ok("mu0 = mu")
            else:
                rec.fail("mu0 = mu", f"at {show(m)}")
    return LawReport(f"{triple.name} Manes round trip", rec.results())


def _ttx_elements(triple, X, rng, samples):
    """Elements of T(T X): all of them when enumerable, else a sample."""
    if _enumerable(triple, X):
        TX = FinSet(triple.carrier(X))
        if _enumerable(triple, TX):
            return triple.carrier(TX)
    if samples is None:
        return None
    try:
        inner = _sample_carrier(triple, X, rng)
        return [triple.sample(inner, rng) for _ in range(samples)]
    except (CapExceeded, MonadError):
        return None


def _sample_carrier(triple, X, rng, k=4) -> FinSet:
    if not len(X):
        raise MonadError("cannot sample over the empty carrier")
    if _enumerable(triple, X):
        return FinSet(triple.carrier(X))
    return FinSet({triple.sample(X, rng) for _ in range(k)})


def check_monad_diagrams(
    triple: KleisliTriple,
    max_size: int = 2,
    samples: int = 200,
    seed: int = DEFAULT_SEED,
) -> LawReport:
    """Associativity and unit squares of the monad derived from the triple.

    For each |X| ≤ max_size the squares are checked on every element when the
    relevant carrier is enumerable, and on seeded samples otherwise.
    """
    rng = random.Random(seed)
    rec = _Recorder(["assoc", "left-unit", "right-unit"])
    notes = []
    for n in range(max_size + 1):
        X = std_carrier(n)
        try:
            TX = _carrier(triple, X)
            TXs = FinSet(TX)
            exhaustive_tx = True
        except CapExceeded:
            TXs = _sample_carrier(triple, X, rng) if n else None
            if TXs is None:
                continue
            TX = list(TXs)
            exhaustive_tx = False
        mu_x = derive_mu(triple, X)
        # μ ∘ η_{TX} = id and μ ∘ T(η) = id
        if _subset_lattice_ok(triple, TXs):
            T_eta = derive_functor_action(triple, lambda x: triple.unit(x, X), TXs)
            for t in TX:
                a = mu_x(triple.unit(t, TXs))
                b = mu_x(T_eta(t))
                if a == t:
                    rec.ok("left-unit")
                else:
                    rec.fail("left-unit", f"μ(η({show(t)})) = {show(a)}")
                if b == t:
                    rec.ok("right-unit")
                else:
                    rec.fail("right-unit", f"μ(Tη({show(t)})) = {show(b)}")
        else:
            notes.append(f"unit squares skipped at |X|={n}: T(T X) too large")
        # μ ∘ Tμ = μ ∘ μT on T(T(T X))
        elems = None
        TTXs = None
        if exhaustive_tx and _enumerable(triple, TXs):
            TTXs = FinSet(triple.carrier(TXs))
            if _enumerable(triple, TTXs):
                elems = triple.carrier(TTXs)
        if elems is None:
            try:
                TTXs = TTXs or _sample_carrier(triple, TXs, rng)
                if not _subset_lattice_ok(triple, TTXs):
                    TTXs = FinSet(rng.sample(list(TTXs), 4))
                elems = [triple.sample(TTXs, rng) for _ in range(samples)]
                notes.append(f"associativity sampled at |X|={n}")
            except CapExceeded:
                notes.append(f"associativity skipped at |X|={n}: not enumerable")
                continue
        mu_tx = derive_mu(triple, TXs)
        T_mu = derive_functor_action(triple, mu_x, TXs)
        for m in elems:
            a = mu_x(T_mu(m))
            b = mu_x(mu_tx(m))
            if a == b:
                rec.ok("assoc")
            else:
                rec.fail("assoc", f"at {show(m)}: {show(a)} ≠ {show(b)}")
    return LawReport(f"{triple.name} monad diagrams", rec.results(), notes)


def _subset_lattice_ok(triple, S: FinSet) -> bool:
    """Family monads enumerate all subsets of the carrier when extending."""
    if triple.name in ("ultrafilter", "upper-closed"):
        return 2 ** len(S) <= ENUM_CAP
    return True
