"""Derived operators, substitution, modal depth and random formulas."""

from __future__ import annotations

import random
from typing import Mapping, Sequence

from .syntax import (
    TEMPORAL,
    And,
    Atomic,
    Bottom,
    Box,
    Cap,
    Cross,
    Diamond,
    Dual,
    Exists,
    Forall,
    Formula,
    Future,
    Globally,
    Implies,
    Letter,
    Lift,
    LogicError,
    Modal,
    Nabla,
    Necessarily,
    Next,
    Not,
    Or,
    Possibly,
    Program,
    Seq,
    Star,
    Test,
    Top,
    Union,
    Until,
)

DIAMOND = "<>"


def _map_formula(phi, f, fp):
    """Rebuild ``phi`` with ``f`` applied to subformulas and ``fp`` to programs."""
    t = type(phi)
    if t in (Bottom, Top, Letter):
        return phi
    if t in (Not, Diamond, Box, Exists, Forall, Next, Future, Globally):
        return t(f(phi.children()[0]))
    if t in (And, Or, Implies, Until):
        return t(f(phi.left), f(phi.right))
    if t in (Modal, Nabla):
        return t(phi.op, tuple(f(a) for a in phi.args))
    if t is Lift:
        return Lift(phi.name, f(phi.arg))
    if t in (Possibly, Necessarily):
        return t(fp(phi.prog), f(phi.arg))
    raise LogicError(f"unknown formula node {phi!r}")


def _map_program(p, f, fp):
    t = type(p)
    if t is Atomic:
        return p
    if t in (Union, Seq, Cap):
        return t(fp(p.left), fp(p.right))
    if t in (Star, Dual, Cross):
        return t(fp(p.arg))
    if t is Test:
        return Test(f(p.formula))
    raise LogicError(f"unknown program node {p!r}")


# ---------------------------------------------------------------------------
# desugaring


def desugar(phi: Formula) -> Formula:
    """Rewrite into primitives: ⊥, letters, ∧, ¬, ◇, Δ, ⟨π⟩, E-forms, [λ].

    Games lose their demonic forms: g1 ∩ g2 = (g1ᵈ ∪ g2ᵈ)ᵈ, g^× = ((gᵈ)*)ᵈ.
    CTL is brought into existential normal form (EX, EU, EG).
    """
    t = type(phi)
    d = desugar
    if t is Top:
        return Not(Bottom())
    if t is Or:
        return Not(And(Not(d(phi.left)), Not(d(phi.right))))
    if t is Implies:
        return Not(And(d(phi.left), Not(d(phi.right))))
    if t is Box:
        return Not(Diamond(Not(d(phi.arg))))
    if t is Nabla:
        return Not(Modal(phi.op, tuple(Not(d(a)) for a in phi.args)))
    if t is Necessarily:
        return Not(Possibly(desugar_program(phi.prog), Not(d(phi.arg))))
    if t is Exists:
        return _desugar_exists(phi.path)
    if t is Forall:
        return _desugar_forall(phi.path)
    if t in TEMPORAL:
        raise LogicError("path operator outside a path quantifier")
    return _map_formula(phi, d, desugar_program)


def _desugar_exists(path):
    t = type(path)
    if t is Next:
        return Exists(Next(desugar(path.arg)))
    if t is Future:
        return Exists(Until(Not(Bottom()), desugar(path.arg)))
    if t is Globally:
        return Exists(Globally(desugar(path.arg)))
    if t is Until:
        return Exists(Until(desugar(path.left), desugar(path.right)))
    raise LogicError(f"E applied to {type(path).__name__} is outside the CTL fragment")


def _desugar_forall(path):
    t = type(path)
    if t is Next:
        return Not(Exists(Next(Not(desugar(path.arg)))))
    if t is Future:
        return Not(Exists(Globally(Not(desugar(path.arg)))))
    if t is Globally:
        return Not(Exists(Until(Not(Bottom()), Not(desugar(path.arg)))))
    if t is Until:
        a, b = desugar(path.left), desugar(path.right)
        # A(a U b) = ¬(E(¬b U (¬a ∧ ¬b)) ∨ EG ¬b)
        nb = Not(b)
        bad = Exists(Until(nb, And(Not(a), nb)))
        return And(Not(bad), Not(Exists(Globally(nb))))
    raise LogicError(f"A applied to {type(path).__name__} is outside the CTL fragment")


def desugar_program(p: Program) -> Program:
    t = type(p)
    if t is Cap:
        return Dual(Union(Dual(desugar_program(p.left)), Dual(desugar_program(p.right))))
    if t is Cross:
        return Dual(Star(Dual(desugar_program(p.arg))))
    return _map_program(p, desugar, desugar_program)


def nabla(op: str, args: Sequence[Formula], arity: int | None = None) -> Formula:
    """¬Δ(¬φ1, ..., ¬φk); ``op='<>'`` means the basic diamond."""
    args = tuple(args)
    if op == DIAMOND:
        if len(args) != 1:
            raise LogicError(f"◇ takes 1 argument, got {len(args)}")
        return Not(Diamond(Not(args[0])))
    if arity is not None and arity != len(args):
        raise LogicError(f"operator {op} has arity {arity}, got {len(args)} arguments")
    return Not(Modal(op, tuple(Not(a) for a in args)))


# ---------------------------------------------------------------------------
# substitution and depth


def substitute(phi: Formula, sigma: Mapping[str, Formula]) -> Formula:
    """Replace letters by formulas; letters missing from ``sigma`` stay."""

    def f(x):
        if type(x) is Letter:
            return sigma.get(x.name, x)
        return _map_formula(x, f, fp)

    def fp(p):
        return _map_program(p, f, fp)

    return f(phi)


def _program_depth(p) -> int:
    t = type(p)
    if t is Atomic:
        return 0
    if t is Test:
        return modal_depth(p.formula)
    if t in (Union, Seq, Cap):
        return max(_program_depth(p.left), _program_depth(p.right))
    return _program_depth(p.arg)


def modal_depth(phi: Formula) -> int:
    """Maximal nesting of modal operators; temporal operators count, E/A do not."""
    t = type(phi)
    sub = max((modal_depth(c) for c in phi.children()), default=0)
    if t in (Diamond, Box, Modal, Nabla, Lift) or t in TEMPORAL:
        return sub + 1
    if t in (Possibly, Necessarily):
        return max(sub, _program_depth(phi.prog)) + 1
    return sub


def is_ctl(phi: Formula) -> bool:
    try:
        check_ctl(phi)
    except LogicError:
        return False
    return True


def check_ctl(phi: Formula) -> None:
    """Every path operator must sit directly under E or A."""
    t = type(phi)
    if t in (Exists, Forall):
        path = phi.path
        if type(path) not in TEMPORAL:
            raise LogicError(f"{'E' if t is Exists else 'A'} must be followed by X, F, G or U")
        for c in path.children():
            check_ctl(c)
        return
    if t in TEMPORAL:
        raise LogicError("path operator outside a path quantifier")
    if t in (Bottom, Top, Letter):
        return
    if t in (Not, And, Or, Implies):
        for c in phi.children():
            check_ctl(c)
        return
    raise LogicError(f"{t.__name__} is not a CTL connective")


# ---------------------------------------------------------------------------
# random formulas


class FormulaGenerator:
    """Seeded random ASTs for each language."""

    def __init__(
        self,
        language: str = "basic",
        letters: Sequence[str] = ("p", "q"),
        ops: Mapping[str, int] | None = None,
        programs: Sequence[str] = ("a", "b"),
        liftings: Sequence[str] = ("box",),
        derived: bool = True,
    ):
        self.language = language
        self.letters = tuple(letters)
        self.ops = dict(ops or {})
        self.programs = tuple(programs)
        self.liftings = tuple(liftings)
        self.derived = derived

    def formula(self, rng: random.Random, depth: int) -> Formula:
        if depth <= 0 or rng.random() < 0.2:
            return self._leaf(rng)
        kinds = ["not", "and", "modal"]
        if self.derived:
            kinds += ["or", "implies"]
        k = rng.choice(kinds)
        sub = lambda: self.formula(rng, depth - 1)  # noqa: E731
        if k == "not":
            return Not(sub())
        if k == "and":
            return And(sub(), sub())
        if k == "or":
            return Or(sub(), sub())
        if k == "implies":
            return Implies(sub(), sub())
        return self._modal(rng, depth)

    def rooted(self, rng: random.Random, depth: int) -> Formula:
        """Like :meth:`formula` but with a modal operator at the root."""
        return self._modal(rng, max(depth, 1))

    def _leaf(self, rng):
        r = rng.random()
        if r < 0.1:
            return Bottom()
        if r < 0.15 and self.derived:
            return Top()
        if not self.letters:
            return Bottom()
        return Letter(rng.choice(self.letters))

    def _modal(self, rng, depth):
        sub = lambda: self.formula(rng, depth - 1)  # noqa: E731
        lang = self.language
        boxes = self.derived
        if lang == "basic":
            return Box(sub()) if boxes and rng.random() < 0.5 else Diamond(sub())
        if lang == "tau":
            if not self.ops:
                return Diamond(sub())
            op = rng.choice(sorted(self.ops))
            args = tuple(sub() for _ in range(self.ops[op]))
            return Nabla(op, args) if boxes and rng.random() < 0.3 else Modal(op, args)
        if lang in ("pdl", "game"):
            prog = self.program(rng, min(depth - 1, 3))
            body = sub()
            return Necessarily(prog, body) if boxes and rng.random() < 0.3 else Possibly(prog, body)
        if lang == "ctl":
            return self._ctl(rng, depth)
        if lang == "coalg":
            return Lift(rng.choice(self.liftings), sub())
        raise LogicError(f"unknown language {lang!r}")

    def _ctl(self, rng, depth):
        sub = lambda: self.formula(rng, depth - 1)  # noqa: E731
        quant = rng.choice([Exists, Forall])
        k = rng.choice(["X", "F", "G", "U"])
        if k == "U":
            return quant(Until(sub(), sub()))
        return quant({"X": Next, "F": Future, "G": Globally}[k](sub()))

    def program(self, rng: random.Random, depth: int) -> Program:
        if depth <= 0 or rng.random() < 0.3:
            return Atomic(rng.choice(self.programs))
        kinds = ["union", "seq", "star", "test"]
        if self.language == "game":
            kinds += ["dual", "cap", "cross"]
        k = rng.choice(kinds)
        sub = lambda: self.program(rng, depth - 1)  # noqa: E731
        if k == "union":
            return Union(sub(), sub())
        if k == "seq":
            return Seq(sub(), sub())
        if k == "star":
            return Star(sub())
        if k == "dual":
            return Dual(sub())
        if k == "cap":
            return Cap(sub(), sub())
        if k == "cross":
            return Cross(sub())
        return Test(self.formula(rng, min(depth - 1, 1)))


def random_formula(
    rng: random.Random, depth: int, language: str = "basic", **kwargs
) -> Formula:
    return FormulaGenerator(language, **kwargs).formula(rng, depth)
