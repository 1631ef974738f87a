"""Recursive-descent parser for the formula grammar.

Formulas::

    impl   := disj ['->' impl]
    disj   := conj {'|' conj}
    conj   := until {'&' until}
    until  := unary ['U' until]                      (ctl only)
    unary  := '~' unary | '<>' unary | '[]' unary
            | '<' prog '>' unary | '[' prog ']' unary  (pdl, game)
            | '<' op '>' unary | '[' op ']' unary      (tau; also op(args))
            | '[' lifting ']' unary                    (coalg)
            | ('E'|'A'|'X'|'F'|'G') unary | 'EX' unary | ...  (ctl)
            | atom
    atom   := 'false' | 'true' | ident | ident '(' [impl {',' impl}] ')' | '(' impl ')'

Programs and games::

    prog   := seq {('u' | 'cap') seq}
    seq    := post {';' post}
    post   := patom {'*' | '^d' | '^x' | 'd' | 'x'}
    patom  := impl '?' | ident | '(' prog ')'

A test ``φ?`` is tried first at every program atom and abandoned if no
``?`` follows; results are memoized per position.
"""

from __future__ import annotations

import re

from .syntax import (
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
    Seq,
    Star,
    Test,
    Top,
    Union,
    Until,
    check_language,
)


class ParseError(LogicError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_ALIASES = {
    "¬": "~",
    "!": "~",
    "∧": "&",
    "∨": "|",
    "→": "->",
    "◇": "<>",
    "□": "[]",
    "⊥": "false",
    "⊤": "true",
    "∪": "u",
    "∩": "cap",
}

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>->|<>|\[\]|[<>\[\]()~&|;*?,^]|[¬!∧∨→◇□⊥⊤∪∩]))"
)

_CTL_WORDS = {"E", "A", "X", "F", "G", "U", "EX", "EF", "EG", "AX", "AF", "AG"}
_PATH = {"X": Next, "F": Future, "G": Globally}


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """List of (kind, value, position); kind is 'id' or 'sym'."""
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start("ident") if m.group("ident") else m.start("sym")
        if m.group("ident"):
            out.append(("id", m.group("ident"), start))
        else:
            sym = _ALIASES.get(m.group("sym"), m.group("sym"))
            kind = "id" if sym in ("false", "true", "u", "cap") else "sym"
            out.append((kind, sym, start))
        pos = m.end()
    out.append(("eof", "", n))
    return out


class _Parser:
    def __init__(self, text: str, language: str):
        self.text = text
        self.lang = language
        self.toks = tokenize(text)
        self.i = 0
        self._tests: dict[int, tuple | None] = {}

    # -- token helpers
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, value: str, k: int = 0) -> bool:
        kind, v, _ = self.peek(k)
        return kind != "eof" and v == value

    def take(self, value: str | None = None):
        kind, v, pos = self.peek()
        if value is not None and (v != value or kind == "eof"):
            found = "end of input" if kind == "eof" else repr(v)
            raise ParseError(f"expected {value!r}, found {found}", pos, self.text)
        self.i += 1
        return v

    def error(self, msg: str):
        raise ParseError(msg, self.peek()[2], self.text)

    def ident(self) -> str:
        kind, v, _ = self.peek()
        if kind != "id":
            self.error(f"expected identifier, found {v!r}" if v else "unexpected end of input")
        self.i += 1
        return v

    # -- formulas
    def formula(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.take()
            return Implies(left, self.formula())
        return left

    def disj(self):
        left = self.conj()
        while self.at("|"):
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.until()
        while self.at("&"):
            self.take()
            left = And(left, self.until())
        return left

    def until(self):
        left = self.unary()
        if self.lang == "ctl" and self.at("U") and self.peek()[0] == "id":
            self.take()
            return Until(left, self.until())
        return left

    def unary(self):
        kind, v, pos = self.peek()
        if kind == "sym":
            if v == "~":
                self.take()
                return Not(self.unary())
            if v == "<>":
                self.take()
                return Diamond(self.unary())
            if v == "[]":
                self.take()
                return Box(self.unary())
            if v in ("<", "["):
                return self.bracketed(v)
        if kind == "id" and self.lang == "ctl" and v in _CTL_WORDS and v != "U":
            self.take()
            if v in _PATH:
                return _PATH[v](self.unary())
            quant = Exists if v[0] == "E" else Forall
            if len(v) == 2:
                return quant(_PATH[v[1]](self.unary()))
            return quant(self.unary())
        return self.atom()

    def bracketed(self, opener: str):
        closer = ">" if opener == "<" else "]"
        self.take(opener)
        if self.lang in ("pdl", "game"):
            prog = self.program()
            self.take(closer)
            body = self.unary()
            return Possibly(prog, body) if opener == "<" else Necessarily(prog, body)
        if self.lang == "tau":
            op = self.ident()
            self.take(closer)
            args = self.arglist() if self.at("(") else (self.unary(),)
            return Modal(op, args) if opener == "<" else Nabla(op, args)
        if self.lang == "coalg" and opener == "[":
            name = self.ident()
            self.take("]")
            return Lift(name, self.unary())
        self.error(f"{opener!r} modality is not part of the {self.lang} language")

    def arglist(self) -> tuple:
        self.take("(")
        args = []
        if not self.at(")"):
            args.append(self.formula())
            while self.at(","):
                self.take()
                args.append(self.formula())
        self.take(")")
        return tuple(args)

    def atom(self):
        kind, v, pos = self.peek()
        if kind == "eof":
            self.error("unexpected end of input")
        if kind == "id":
            self.take()
            if v == "false":
                return Bottom()
            if v == "true":
                return Top()
            if self.at("("):
                if self.lang != "tau":
                    self.error(f"operator application {v}(...) needs the tau language")
                return Modal(v, self.arglist())
            return Letter(v)
        if v == "(":
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        self.error(f"unexpected {v!r}")

    # -- programs
    def program(self):
        left = self.pseq()
        while self.peek()[0] == "id" and self.peek()[1] in ("u", "cap"):
            op = self.take()
            right = self.pseq()
            if op == "cap":
                if self.lang != "game":
                    self.error("'cap' is only available for games")
                left = Cap(left, right)
            else:
                left = Union(left, right)
        return left

    def pseq(self):
        left = self.ppost()
        while self.at(";"):
            self.take()
            left = Seq(left, self.ppost())
        return left

    def ppost(self):
        p = self.patom()
        while True:
            kind, v, _ = self.peek()
            if v == "*" and kind == "sym":
                self.take()
                p = Star(p)
            elif v == "^" and kind == "sym":
                self.take()
                which = self.ident()
                p = self._game_postfix(which, p)
            elif kind == "id" and v in ("d", "x") and self.lang == "game":
                self.take()
                p = self._game_postfix(v, p)
            else:
                return p

    def _game_postfix(self, which: str, p):
        if self.lang != "game":
            self.error("dual and demonic iteration are only available for games")
        if which == "d":
            return Dual(p)
        if which == "x":
            return Cross(p)
        self.error(f"unknown game postfix ^{which}")

    def patom(self):
        test = self.try_test()
        if test is not None:
            return test
        kind, v, _ = self.peek()
        if kind == "id" and v not in ("u", "cap"):
            self.take()
            return Atomic(v)
        if v == "(" and kind == "sym":
            self.take()
            inner = self.program()
            self.take(")")
            return inner
        self.error(f"expected a program, found {v!r}" if v else "unexpected end of input")

    def try_test(self):
        start = self.i
        if start in self._tests:
            hit = self._tests[start]
            if hit is None:
                return None
            self.i = hit[1]
            return hit[0]
        result = None
        try:
            phi = self.formula()
            if self.at("?"):
                self.take()
                result = (Test(phi), self.i)
        except ParseError:
            pass
        self._tests[start] = result
        if result is None:
            self.i = start
            return None
        self.i = result[1]
        return result[0]


def parse(text: str, language: str = "basic") -> Formula:
    """Parse ``text`` as a formula of ``language`` (see module docstring)."""
    p = _Parser(text, language)
    phi = p.formula()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {v!r} after formula", pos, text)
    try:
        check_language(phi, language)
    except LogicError as exc:
        raise ParseError(str(exc), 0, text) from None
    return phi


def parse_program(text: str, language: str = "pdl"):
    p = _Parser(text, language)
    prog = p.program()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {v!r} after program", pos, text)
    return prog
