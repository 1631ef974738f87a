"""The line-oriented model file format.

::

    # comments run to the end of the line
    kind: kripke            # kripke | lts | tau | nbhd | pdl | game
    states: w1 w2 w3
    rel: w1->w2 w2->w3      # kripke edges
    rel a: w1->w2           # lts action / pdl atomic program
    rel Op/2: (w1,w2,w3)    # tau operator of arity 2
    nbhd w1: {w2,w3} {}     # generators, closed upwards on load
    eff g w1: {w2} {w3}     # game g: effectivity generators at w1
    val p: w1 w3

Directives may repeat; later ``rel``/``nbhd``/``eff``/``val`` lines add to
earlier ones. A directive with an empty right-hand side still declares its
action, operator, game or letter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from ..finset import canon_sorted
from ..monads import UpperClosedFamily
from ..semantics import (
    GameModel,
    KripkeModel,
    LabeledTS,
    ModelError,
    NeighborhoodModel,
    PdlModel,
    TauModel,
)

KINDS = ("kripke", "lts", "tau", "nbhd", "pdl", "game")
LANGUAGE_OF = {
    "kripke": "basic", "lts": "tau", "tau": "tau", "nbhd": "basic", "pdl": "pdl", "game": "game",
}
_NAME = re.compile(r"[^\s,{}()#:>]+")
_SET = re.compile(r"\{([^{}]*)\}")
_TUPLE = re.compile(r"\(([^()]*)\)")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str = "<model>"):
        self.line = line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + msg)


def kind_of(model) -> str:
    for kind, cls in (
        ("kripke", KripkeModel), ("lts", LabeledTS), ("tau", TauModel),
        ("nbhd", NeighborhoodModel), ("pdl", PdlModel), ("game", GameModel),
    ):
        if isinstance(model, cls):
            return kind
    raise ModelError(f"no file kind for {type(model).__name__}")


@dataclass
class _Draft:
    source: str
    kind: str | None = None
    states: list | None = None
    edges: list = field(default_factory=list)
    labeled: dict = field(default_factory=dict)
    arity: dict = field(default_factory=dict)
    tuples: dict = field(default_factory=dict)
    nbhd: dict = field(default_factory=dict)
    eff: dict = field(default_factory=dict)
    val: dict = field(default_factory=dict)
    used: set = field(default_factory=set)

    def fail(self, msg, line):
        raise ParseError(msg, line, self.source)

    def world(self, tok, line, what):
        if self.states is None:
            self.fail("'states:' must come before any use of a world", line)
        if tok not in self._known:
            self.fail(f"{what}: unknown world {tok}", line)
        return tok

    def set_states(self, toks, line):
        if self.states is not None:
            self.fail("'states:' given twice", line)
        for t in toks:
            if not _NAME.fullmatch(t) or "->" in t:
                self.fail(f"bad world name {t!r}", line)
        dup = {t for t in toks if toks.count(t) > 1}
        if dup:
            self.fail(f"world {sorted(dup)[0]} listed twice", line)
        self.states = list(toks)
        self._known = set(toks)

    def edges_from(self, rhs, line, what):
        out = []
        for tok in rhs.split():
            a, arrow, b = tok.partition("->")
            if not arrow or not a or not b:
                self.fail(f"{what}: expected an edge a->b, got {tok!r}", line)
            out.append((self.world(a, line, what), self.world(b, line, what)))
        return out

    def sets_from(self, rhs, line, what):
        rest = _SET.sub("", rhs).strip()
        if rest:
            self.fail(f"{what}: expected sets like {{a,b}}, got {rest!r}", line)
        out = []
        for body in _SET.findall(rhs):
            names = [t.strip() for t in body.split(",") if t.strip()]
            out.append(frozenset(self.world(t, line, what) for t in names))
        return out


def _declare(draft: _Draft, kind: str, line: int):
    if draft.kind is None:
        draft.kind = kind
    elif draft.kind != kind:
        draft.fail(f"a {kind} directive in a {draft.kind} file", line)


def parse_model(text: str, source: str = "<model>"):
    """Parse the text of a model file; the kind comes from the ``kind:`` header,
    or from the directives used when the header is missing."""
    d = _Draft(source)
    explicit = False
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head, colon, rhs = body.partition(":")
        if not colon:
            d.fail(f"expected 'directive: ...', got {body!r}", n)
        words = head.split()
        if not words:
            d.fail("missing directive name", n)
        key, args = words[0], words[1:]
        if key == "kind":
            k = rhs.strip()
            if k not in KINDS:
                d.fail(f"unknown kind {k!r}; expected one of {', '.join(KINDS)}", n)
            if explicit or (d.kind is not None and d.kind != k):
                d.fail("'kind:' must come first and only once", n)
            d.kind, explicit = k, True
        elif key == "states":
            d.set_states(rhs.split(), n)
        elif key == "val":
            if len(args) != 1:
                d.fail("expected 'val p: w1 w2'", n)
            ws = [d.world(t, n, f"val {args[0]}") for t in rhs.split()]
            d.val.setdefault(args[0], set()).update(ws)
        elif key == "rel":
            if not args:
                _declare(d, "kripke", n)
                d.edges += d.edges_from(rhs, n, "rel")
            elif len(args) == 1 and "/" in args[0]:
                op, _, k = args[0].partition("/")
                if not op or not k.isdigit():
                    d.fail(f"expected 'rel Op/k:', got {args[0]!r}", n)
                _declare(d, "tau", n)
                if d.arity.setdefault(op, int(k)) != int(k):
                    d.fail(f"operator {op} declared with two arities", n)
                rest = _TUPLE.sub("", rhs).strip()
                if rest:
                    d.fail(f"rel {op}: expected tuples like (w,w1), got {rest!r}", n)
                bucket = d.tuples.setdefault(op, set())
                for tup in _TUPLE.findall(rhs):
                    ws = tuple(d.world(t.strip(), n, f"rel {op}") for t in tup.split(","))
                    if len(ws) != int(k) + 1:
                        d.fail(f"rel {op}/{k}: tuple ({tup}) needs {int(k) + 1} worlds", n)
                    bucket.add(ws)
            elif len(args) == 1:
                if d.kind not in ("lts", "pdl"):
                    _declare(d, "lts", n)
                d.labeled.setdefault(args[0], []).extend(d.edges_from(rhs, n, f"rel {args[0]}"))
            else:
                d.fail(f"cannot read 'rel {' '.join(args)}:'", n)
        elif key == "nbhd":
            if len(args) != 1:
                d.fail("expected 'nbhd w: {a,b} ...'", n)
            _declare(d, "nbhd", n)
            w = d.world(args[0], n, "nbhd")
            d.nbhd.setdefault(w, []).extend(d.sets_from(rhs, n, f"nbhd {w}"))
        elif key == "eff":
            if len(args) != 2:
                d.fail("expected 'eff g w: {a,b} ...'", n)
            _declare(d, "game", n)
            g, w = args[0], d.world(args[1], n, "eff")
            d.eff.setdefault(g, {}).setdefault(w, []).extend(d.sets_from(rhs, n, f"eff {g} {w}"))
        else:
            d.fail(f"unknown directive {key!r}", n)
    if d.states is None:
        d.fail("no 'states:' line", None)
    return _build(d)


def _build(d: _Draft):
    kind = d.kind or "kripke"
    W = d.states
    val = {p: sorted(ws) for p, ws in d.val.items()}
    extra = {
        "kripke": d.labeled or d.arity or d.nbhd or d.eff,
        "lts": d.edges or d.arity or d.nbhd or d.eff,
        "pdl": d.edges or d.arity or d.nbhd or d.eff,
        "tau": d.edges or d.labeled or d.nbhd or d.eff,
        "nbhd": d.edges or d.labeled or d.arity or d.eff,
        "game": d.edges or d.labeled or d.arity or d.nbhd,
    }[kind]
    if extra:
        d.fail(f"directives of another kind in a {kind} file", None)
    try:
        if kind == "kripke":
            return KripkeModel(W, d.edges, val)
        if kind == "lts":
            return LabeledTS(W, d.labeled, val)
        if kind == "pdl":
            return PdlModel(W, d.labeled, val)
        if kind == "tau":
            return TauModel(W, d.arity, d.tuples, val)
        if kind == "nbhd":
            return NeighborhoodModel(W, d.nbhd, val)
        return GameModel(W, d.eff, val)
    except ModelError as e:
        raise ParseError(str(e), None, d.source) from e


def load_model(path):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file ({e.strerror})", None, str(path)) from e
    return parse_model(text, str(path))


# ---------------------------------------------------------------------------
# writing


def _name(w) -> str:
    s = str(w)
    if not _NAME.fullmatch(s) or "->" in s:
        raise ModelError(f"world {s!r} cannot be written in the file format")
    return s


def _sets(family: UpperClosedFamily) -> str:
    gens = canon_sorted(family.minimal_members())
    return " ".join("{" + ",".join(_name(w) for w in canon_sorted(B)) + "}" for B in gens)


def _edges(rel) -> str:
    return " ".join(f"{_name(a)}->{_name(b)}" for a, b in rel)


def format_model(model) -> str:
    """Canonical text of a model; ``parse_model(format_model(m)) == m``."""
    kind = kind_of(model)
    W = model.worlds
    lines = [f"kind: {kind}", "states: " + " ".join(_name(w) for w in W)]
    if kind == "kripke":
        lines.append(("rel: " + _edges(model.rel)).rstrip())
    elif kind in ("lts", "pdl"):
        table = model.rel if kind == "lts" else model.programs
        for a in canon_sorted(table):
            lines.append((f"rel {a}: " + _edges(table[a])).rstrip())
    elif kind == "tau":
        for op in canon_sorted(model.arity):
            tups = " ".join(
                "(" + ",".join(_name(w) for w in t) + ")" for t in canon_sorted(model.relations[op])
            )
            lines.append(f"rel {op}/{model.arity[op]}: {tups}".rstrip())
    elif kind == "nbhd":
        for w in W:
            if model.nbhd[w].members:
                lines.append(f"nbhd {_name(w)}: {_sets(model.nbhd[w])}")
    else:
        for g in canon_sorted(model.games):
            for w in W:
                lines.append(f"eff {g} {_name(w)}: {_sets(model.games[g][w])}".rstrip())
    for p in sorted(model.valuation):
        lines.append(f"val {p}: " + " ".join(_name(w) for w in W if w in model.valuation[p]))
        lines[-1] = lines[-1].rstrip()
    return "\n".join(lines) + "\n"


def save_model(model, path) -> None:
    Path(path).write_text(format_model(model), encoding="utf-8")


@dataclass
class Workspace:
    """Models loaded by name (the file stem) over a shared alphabet."""

    models: dict = field(default_factory=dict)

    @property
    def letters(self) -> tuple:
        return tuple(sorted({p for m in self.models.values() for p in m.valuation}))

    def load(self, path, name: str | None = None):
        name = name or Path(path).stem
        if name in self.models:
            raise ParseError(f"a model named {name!r} is already loaded", None, str(path))
        self.models[name] = model = load_model(path)
        return model

    def __getitem__(self, name):
        if name not in self.models:
            raise KeyError(f"no model named {name!r}")
        return self.models[name]
