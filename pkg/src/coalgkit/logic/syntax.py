"""Formula and program ASTs for the modal languages, plus the renderer.

One node family serves every language; :func:`check_language` says which
nodes a language admits. Rendering is canonical and minimally parenthesized,
so ``parse(render(phi)) == phi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union as _U

LANGUAGES = ("basic", "tau", "pdl", "game", "ctl", "coalg")


class LogicError(ValueError):
    pass


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)

    def children(self) -> tuple:
        return ()


class Program:
    __slots__ = ()

    def __str__(self) -> str:
        return render_program(self)


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Letter(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Diamond(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Box(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Modal(Formula):
    """Δ(φ1, ..., φk) for a declared operator Δ of arity k."""

    op: str
    args: tuple = ()

    def children(self):
        return self.args


@dataclass(frozen=True)
class Nabla(Formula):
    """The dual ∇(φ1, ..., φk) = ¬Δ(¬φ1, ..., ¬φk), kept as a node."""

    op: str
    args: tuple = ()

    def children(self):
        return self.args


@dataclass(frozen=True)
class Possibly(Formula):
    """⟨π⟩φ for a PDL program or a game."""

    prog: Program
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Necessarily(Formula):
    """[π]φ."""

    prog: Program
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Exists(Formula):
    """E ψ for a path formula ψ."""

    path: Formula

    def children(self):
        return (self.path,)


@dataclass(frozen=True)
class Forall(Formula):
    """A ψ."""

    path: Formula

    def children(self):
        return (self.path,)


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Future(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Globally(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Lift(Formula):
    """[λ]φ for a registered predicate lifting λ."""

    name: str
    arg: Formula

    def children(self):
        return (self.arg,)


# ---------------------------------------------------------------------------
# programs and games


@dataclass(frozen=True)
class Atomic(Program):
    name: str


@dataclass(frozen=True)
class Union(Program):
    left: Program
    right: Program


@dataclass(frozen=True)
class Seq(Program):
    left: Program
    right: Program


@dataclass(frozen=True)
class Star(Program):
    arg: Program


@dataclass(frozen=True)
class Test(Program):
    __test__ = False  # not a pytest class

    formula: Formula


@dataclass(frozen=True)
class Dual(Program):
    arg: Program


@dataclass(frozen=True)
class Cap(Program):
    """Demonic choice g1 ∩ g2."""

    left: Program
    right: Program


@dataclass(frozen=True)
class Cross(Program):
    """Demonic iteration g^×."""

    arg: Program


AngelicChoice = Union
DemonicChoice = Cap
AngelicIter = Star
DemonicIter = Cross

Node = _U[Formula, Program]

TEMPORAL = (Next, Future, Globally, Until)


def walk(node) -> Iterator:
    """Pre-order traversal through formulas, programs and tests."""
    yield node
    if isinstance(node, Formula):
        if isinstance(node, (Possibly, Necessarily)):
            yield from walk(node.prog)
        for c in node.children():
            yield from walk(c)
    elif isinstance(node, (Union, Seq, Cap)):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, (Star, Dual, Cross)):
        yield from walk(node.arg)
    elif isinstance(node, Test):
        yield from walk(node.formula)


def letters(phi) -> frozenset:
    return frozenset(n.name for n in walk(phi) if isinstance(n, Letter))


def atomic_programs(phi) -> frozenset:
    return frozenset(n.name for n in walk(phi) if isinstance(n, Atomic))


_BASE = (Bottom, Top, Letter, Not, And, Or, Implies)
_ALLOWED = {
    "basic": _BASE + (Diamond, Box),
    "tau": _BASE + (Diamond, Box, Modal, Nabla),
    "pdl": _BASE + (Diamond, Box, Possibly, Necessarily, Atomic, Union, Seq, Star, Test),
    "game": _BASE
    + (Diamond, Box, Possibly, Necessarily, Atomic, Union, Seq, Star, Test, Dual, Cap, Cross),
    "ctl": _BASE + (Exists, Forall) + TEMPORAL,
    "coalg": _BASE + (Lift,),
}


def check_language(phi, language: str) -> None:
    if language not in _ALLOWED:
        raise LogicError(f"unknown language {language!r}; expected one of {', '.join(LANGUAGES)}")
    allowed = _ALLOWED[language]
    for n in walk(phi):
        if not isinstance(n, allowed):
            raise LogicError(f"{type(n).__name__} is not part of the {language} language")


# ---------------------------------------------------------------------------
# rendering

IMPL, OR, AND, UNTIL, UNARY, ATOM = range(1, 7)
P_CHOICE, P_SEQ, P_POST, P_ATOM = range(1, 5)

_WORD_PREFIX = {Next: "X", Future: "F", Globally: "G"}


def render(phi: Formula) -> str:
    return _r(phi, 0)


def _paren(s: str, own: int, ctx: int) -> str:
    return f"({s})" if own < ctx else s


def _args(args) -> str:
    return "(" + ", ".join(_r(a, 0) for a in args) + ")"


def _r(phi, ctx: int) -> str:
    t = type(phi)
    if t is Bottom:
        return "false"
    if t is Top:
        return "true"
    if t is Letter:
        return phi.name
    if t is And:
        return _paren(f"{_r(phi.left, AND)} & {_r(phi.right, AND + 1)}", AND, ctx)
    if t is Or:
        return _paren(f"{_r(phi.left, OR)} | {_r(phi.right, OR + 1)}", OR, ctx)
    if t is Implies:
        return _paren(f"{_r(phi.left, IMPL + 1)} -> {_r(phi.right, IMPL)}", IMPL, ctx)
    if t is Until:
        return _paren(f"{_r(phi.left, UNTIL + 1)} U {_r(phi.right, UNTIL)}", UNTIL, ctx)
    if t is Not:
        return "~" + _r(phi.arg, UNARY)
    if t is Diamond:
        return "<>" + _r(phi.arg, UNARY)
    if t is Box:
        return "[]" + _r(phi.arg, UNARY)
    if t is Modal:
        if len(phi.args) == 1:
            return f"<{phi.op}>" + _r(phi.args[0], UNARY)
        return phi.op + _args(phi.args)
    if t is Nabla:
        if len(phi.args) == 1:
            return f"[{phi.op}]" + _r(phi.args[0], UNARY)
        return f"[{phi.op}]" + _args(phi.args)
    if t is Lift:
        return f"[{phi.name}]" + _r(phi.arg, UNARY)
    if t is Possibly:
        return f"<{render_program(phi.prog)}>" + _r(phi.arg, UNARY)
    if t is Necessarily:
        return f"[{render_program(phi.prog)}]" + _r(phi.arg, UNARY)
    if t in _WORD_PREFIX:
        return _WORD_PREFIX[t] + " " + _r(phi.arg, UNARY)
    if t in (Exists, Forall):
        q = "E" if t is Exists else "A"
        inner = type(phi.path)
        if inner in _WORD_PREFIX:
            return q + _WORD_PREFIX[inner] + " " + _r(phi.path.arg, UNARY)
        return f"{q}({_r(phi.path, 0)})"
    raise LogicError(f"cannot render {phi!r}")


def render_program(p: Program) -> str:
    return _rp(p, 0)


def _rp(p, ctx: int) -> str:
    t = type(p)
    if t is Atomic:
        return p.name
    if t is Union:
        return _paren(f"{_rp(p.left, P_CHOICE)} u {_rp(p.right, P_CHOICE + 1)}", P_CHOICE, ctx)
    if t is Cap:
        return _paren(f"{_rp(p.left, P_CHOICE)} cap {_rp(p.right, P_CHOICE + 1)}", P_CHOICE, ctx)
    if t is Seq:
        return _paren(f"{_rp(p.left, P_SEQ)} ; {_rp(p.right, P_SEQ + 1)}", P_SEQ, ctx)
    if t is Star:
        return _rp(p.arg, P_POST) + "*"
    if t is Dual:
        return _rp(p.arg, P_POST) + "^d"
    if t is Cross:
        return _rp(p.arg, P_POST) + "^x"
    if t is Test:
        return _r(p.formula, UNARY) + "?"
    raise LogicError(f"cannot render program {p!r}")
