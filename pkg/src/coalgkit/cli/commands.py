"""Argument parsing and subcommand dispatch.

Exit codes: 0 success, 1 a checked property fails, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from pathlib import Path

from ..bisim import (
    BisimError,
    check_coalg_bisimulation,
    check_kripke_bisimulation,
    check_coalgebra_morphism,
    check_congruence,
    largest_bisimulation,
    minimize,
    modal_equivalence_partition,
    quotient,
)
from ..coalglogic import (
    CoalgLogicError,
    FunctorInstance,
    eval_coalg,
    model_to_coalgebra,
    random_lifting_suite,
    registry,
)
from ..finset import FinFn, FinRel, canon_sorted, show, show_set
from ..logic import LogicError, parse, parse_program, render
from ..monads import (
    CapExceeded,
    MonadError,
    OrderError,
    check_convex_structure,
    check_em_algebra,
    check_kleisli_laws,
    check_monad_diagrams,
    first_nonzero_projection,
    get_monad,
    manes_roundtrip,
    semilattice_to_algebra,
    sup_of_support,
)
from ..semantics import (
    GameModel,
    KripkeModel,
    ModelError,
    NeighborhoodModel,
    PdlModel,
    ctl_eval,
    eval_neighborhood,
    evaluator_for,
    find_model_bounded,
    game_effectivity,
    kripke_to_neighborhood,
    lasso_oracle,
    pdl_relation,
)
from .fileformat import LANGUAGE_OF, ParseError, format_model, kind_of, load_model

OK, FAILED, USAGE = 0, 1, 2
INPUT_ERRORS = (
    ParseError, ModelError, LogicError, BisimError, CapExceeded, CoalgLogicError,
    MonadError, OrderError, KeyError,
)


class Failure(Exception):
    """A checked property does not hold; the message goes to stdout."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _want(model, cls, what):
    if not isinstance(model, cls):
        raise ModelError(f"{what} needs a {cls.__name__}, got a {kind_of(model)} model")
    return model


def _table(model, phi, valid) -> list[str]:
    lines = [show_set(valid)]
    width = max([len("world")] + [len(show(w)) for w in model.worlds])
    lines.append(f"{'world'.ljust(width)}  {render(phi)}")
    for w in model.worlds:
        lines.append(f"{show(w).ljust(width)}  {'true' if w in valid else 'false'}")
    return lines


def _from_args(parts) -> str:
    """Join argument words; a single existing path is read as a file instead."""
    if len(parts) == 1 and Path(parts[0]).is_file():
        text = Path(parts[0]).read_text(encoding="utf-8")
        return " ".join(line.split("#", 1)[0] for line in text.splitlines())
    return " ".join(parts)


def _pairs_arg(parts, left, right, what: str) -> FinRel:
    """Pairs written ``s,t`` separated by spaces, or a file of them."""
    text = _from_args(parts)
    pairs = []
    for tok in text.replace("(", " ").replace(")", " ").split():
        a, comma, b = tok.partition(",")
        if not comma or not a or not b:
            raise ParseError(f"{what}: expected pairs like s,t, got {tok!r}", None, "arguments")
        pairs.append((a, b))
    try:
        return FinRel(left, right, pairs)
    except ValueError as e:
        raise ParseError(f"{what}: {e}", None, "arguments") from e


def _map_arg(parts, X, Y) -> FinFn:
    text = _from_args(parts)
    table = {}
    for tok in text.split():
        a, arrow, b = tok.partition("->")
        if not arrow:
            raise ParseError(f"map: expected entries like s->t, got {tok!r}", None, "arguments")
        table[a] = b
    try:
        return FinFn(X, Y, table)
    except ValueError as e:
        raise ParseError(f"map: {e}", None, "arguments") from e


# ---------------------------------------------------------------------------
# model checking


def cmd_eval(a):
    M = load_model(a.model)
    phi = parse(a.formula, LANGUAGE_OF[kind_of(M)])
    return _table(M, phi, evaluator_for(M)(phi))


def cmd_pdl(a):
    M = _want(load_model(a.model), PdlModel, "pdl")
    if a.program:
        R = pdl_relation(M, parse_program(a.expr, "pdl"))
        return [R.render()]
    phi = parse(a.expr, "pdl")
    return _table(M, phi, evaluator_for(M)(phi))


def cmd_game(a):
    M = _want(load_model(a.model), GameModel, "game")
    if a.effectivity is not None:
        f = game_effectivity(M, parse_program(a.expr, "game"))
        A = frozenset(a.effectivity.split())
        bad = [w for w in A if w not in M.worlds]
        if bad:
            raise ModelError(f"unknown world {bad[0]}")
        return [show_set(f(A))]
    phi = parse(a.expr, "game")
    return _table(M, phi, evaluator_for(M)(phi))


def cmd_ctl(a):
    M = _want(load_model(a.model), KripkeModel, "ctl")
    phi = parse(a.formula, "ctl")
    valid = ctl_eval(M, phi)
    lines = _table(M, phi, valid)
    if a.oracle:
        other = lasso_oracle(M, phi)
        if other != valid:
            raise Failure("\n".join(lines + [f"lasso oracle disagrees: {show_set(other)}"]))
        lines.append("lasso oracle agrees")
    return lines


def cmd_nbhd(a):
    M = load_model(a.model)
    if isinstance(M, KripkeModel):
        M = kripke_to_neighborhood(M)
    M = _want(M, NeighborhoodModel, "nbhd")
    phi = parse(a.formula, "basic")
    return _table(M, phi, eval_neighborhood(M, phi))


# ---------------------------------------------------------------------------
# bisimulation


def _plain_names(Q, f):
    """Rename quotient states from ``{a,b}`` to ``a+b`` so they can be saved."""
    new = {q: "+".join(show(s) for s in f.domain if f(s) == q) for q in Q.worlds}
    r = new.__getitem__
    val = {p: [r(w) for w in ws] for p, ws in Q.valuation.items()}
    W = [r(w) for w in Q.worlds]
    if isinstance(Q, KripkeModel):
        Q2 = KripkeModel(W, [(r(a), r(b)) for a, b in Q.rel], val)
    elif isinstance(Q, NeighborhoodModel):
        nb = {r(w): [frozenset(map(r, B)) for B in Q.nbhd[w].minimal_members()] for w in Q.worlds}
        Q2 = NeighborhoodModel(W, nb, val)
    else:
        rel = {act: [(r(x), r(y)) for x, y in Q.rel[act]] for act in Q.actions}
        Q2 = type(Q)(W, rel, val, actions=Q.actions)
    return Q2, FinFn(f.domain, Q2.worlds, {s: r(f(s)) for s in f.domain})


def cmd_bisim(a):
    M = load_model(a.m)
    if a.action == "check":
        N = load_model(a.n)
        B = _pairs_arg(a.relation, M.worlds, N.worlds, "relation")
        both_kripke = isinstance(M, KripkeModel) and isinstance(N, KripkeModel)
        v = (check_kripke_bisimulation if both_kripke else check_coalg_bisimulation)(M, N, B)
        if not v:
            raise Failure(f"not a bisimulation: {v.render()}")
        return ["bisimulation"]
    if a.action == "largest":
        N = load_model(a.n)
        L = largest_bisimulation(M, N)
        lines = [f"({show(s)},{show(t)})" for s, t in L]
        if a.hm:
            _want(M, KripkeModel, "--hm")
            _want(N, KripkeModel, "--hm")
            E = modal_equivalence_partition(M, N, a.depth)
            same = "equals" if E == L else "differs from"
            lines.append(f"depth-{a.depth} modal equivalence {same} the largest bisimulation")
        return lines
    if a.action == "quotient":
        if not a.relation:
            Q, f = minimize(M)
        else:
            alpha = _pairs_arg(a.relation, M.worlds, M.worlds, "relation")
            try:
                Q, f = quotient(M, alpha)
            except BisimError as e:
                if "not a bisimulation" in str(e) or "not a congruence" in str(e) or "split" in str(e):
                    raise Failure(f"no quotient: {e}") from e
                raise
        Q, f = _plain_names(Q, f)
        lines = format_model(Q).rstrip("\n").split("\n")
        lines.append("# class map: " + " ".join(f"{show(s)}->{show(f(s))}" for s in f.domain))
        return lines
    if a.action == "congruence":
        alpha = _pairs_arg(a.relation, M.worlds, M.worlds, "relation")
        v = check_congruence(M, alpha)
        if not v:
            raise Failure(f"not a congruence: {v.render()}")
        return ["congruence"]
    # morphism
    N = load_model(a.n)
    f = _map_arg(a.map, M.worlds, N.worlds)
    v = check_coalgebra_morphism(f, M, N)
    if not v:
        raise Failure(f"not a morphism: {v.render()}")
    return ["morphism"]


# ---------------------------------------------------------------------------
# monads


def _exhaustive(triple, n) -> bool:
    return 0 <= n <= triple.exhaustive_cap


def cmd_monad(a):
    if a.action == "algebra":
        return _algebra(a)
    T = get_monad(a.monad)
    mode = "exhaustive" if _exhaustive(T, a.max) and not a.sampled else "sampled"
    kw = dict(mode=mode, samples=a.samples, seed=a.seed)
    if a.action == "laws":
        reports = [check_kleisli_laws(T, a.max, **kw)]
    else:
        reports = [manes_roundtrip(T, a.max, **kw),
                   check_monad_diagrams(T, a.max, samples=a.samples, seed=a.seed)]
    lines = [f"# {T.name}, carriers up to {a.max}, {mode}"]
    for r in reports:
        lines += r.render().split("\n") + [f"# {n}" for n in r.notes]
    if not all(r.passed for r in reports):
        raise Failure("\n".join(lines))
    return lines


_CHAIN2 = (["0", "1"], {("0", "0"), ("0", "1"), ("1", "1")})
_DIAMOND = (
    ["bot", "l", "r", "top"],
    {(x, x) for x in ("bot", "l", "r", "top")}
    | {("bot", x) for x in ("l", "r", "top")} | {("l", "top"), ("r", "top")},
)


def _algebra(a):
    name = a.monad
    if name in ("chain2", "diamond"):
        X, leq = _CHAIN2 if name == "chain2" else _DIAMOND
        r = check_em_algebra(semilattice_to_algebra(X, leq), samples=a.samples, seed=a.seed)
    elif name == "sup-convex":
        r = check_convex_structure(["0", "1", "2"], sup_of_support(), samples=a.samples, seed=a.seed)
    elif name == "first-nonzero":
        r = check_convex_structure(["a", "b"], first_nonzero_projection, samples=a.samples, seed=a.seed)
    else:
        raise KeyError(f"unknown algebra {name!r}; choose chain2, diamond, sup-convex, first-nonzero")
    lines = [f"# {r.title}: {name}"] + r.render().split("\n")
    if not r.passed:
        raise Failure("\n".join(lines))
    return lines


# ---------------------------------------------------------------------------
# coalgebraic logic and satisfiability


def cmd_lift(a):
    if a.action == "check":
        if a.target not in ("pk", "nb"):
            raise KeyError(f"unknown functor {a.target!r}; choose pk or nb")
        F = FunctorInstance(a.target, tuple(a.letters.split(",")) if a.letters else ("p",))
        lines, ok = [], True
        for name, lam in sorted(registry(F).items()):
            nat, mono = random_lifting_suite(lam, samples=a.samples, seed=a.seed, max_size=a.max)
            ok &= bool(nat) and bool(mono)
            lines.append(
                f"{name}: natural {'PASS' if nat else 'FAIL'} monotone {'PASS' if mono else 'FAIL'}"
            )
            lines += [f"  {c.detail}" for c in (nat, mono) if not c]
        if not ok:
            raise Failure("\n".join(lines))
        return lines
    M = load_model(a.target)
    g = model_to_coalgebra(M)
    phi = parse(a.formula, "coalg")
    return _table(M, phi, eval_coalg(g, phi))


def cmd_sat(a):
    phi = parse(a.formula, "basic")
    hit = find_model_bounded(phi, a.max)
    if hit is None:
        raise Failure(f"no model with at most {a.max} worlds")
    M, w = hit
    return [f"satisfiable at {show(w)}"] + format_model(M).rstrip("\n").split("\n")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--depth", type=int, default=4, help="modal depth bound (default 4)")
    common.add_argument("--max", type=int, default=3, help="carrier / state bound (default 3)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--samples", type=int, default=200, help="random samples (default 200)")

    p = _Parser(prog="coalgkit", description="Finite-state coalgebra and modal logic workbench.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help):
        q = sub.add_parser(name, parents=[common], help=help)
        q.set_defaults(fn=fn)
        return q

    q = add("eval", cmd_eval, "validity set of a formula in a model")
    q.add_argument("model")
    q.add_argument("formula")

    q = add("pdl", cmd_pdl, "PDL formula, or program relation with --program")
    q.add_argument("model")
    q.add_argument("expr")
    q.add_argument("--program", action="store_true", help="print the relation of EXPR")

    q = add("game", cmd_game, "game-logic formula, or effectivity with --effectivity")
    q.add_argument("model")
    q.add_argument("expr")
    q.add_argument("--effectivity", metavar="WORLDS",
                   help="treat EXPR as a game and print P'(WORLDS)")

    q = add("ctl", cmd_ctl, "CTL state formula by fixpoints")
    q.add_argument("model")
    q.add_argument("formula")
    q.add_argument("--oracle", action="store_true", help="cross-check against the lasso oracle")

    q = add("nbhd", cmd_nbhd, "neighborhood semantics (Kripke models are converted)")
    q.add_argument("model")
    q.add_argument("formula")

    q = add("bisim", cmd_bisim, "bisimulations, quotients, congruences and morphisms")
    bs = q.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    bs.required = True
    r = bs.add_parser("check", parents=[common], help="is RELATION a bisimulation?")
    r.add_argument("m"), r.add_argument("n"), r.add_argument("relation", nargs="+")
    r = bs.add_parser("largest", parents=[common], help="largest bisimulation")
    r.add_argument("m"), r.add_argument("n")
    r.add_argument("--hm", action="store_true", help="compare with modal equivalence at --depth")
    r = bs.add_parser("quotient", parents=[common], help="quotient (default: minimize)")
    r.add_argument("m"), r.add_argument("relation", nargs="*")
    r = bs.add_parser("congruence", parents=[common], help="is RELATION a congruence?")
    r.add_argument("m"), r.add_argument("relation", nargs="+")
    r = bs.add_parser("morphism", parents=[common], help="is MAP a coalgebra morphism?")
    r.add_argument("m"), r.add_argument("n"), r.add_argument("map", nargs="+")

    q = add("monad", cmd_monad, "monad laws, Manes round trip, Eilenberg-Moore algebras")
    ms = q.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    ms.required = True
    for name, help in (("laws", "Kleisli laws"), ("manes", "round trip and monad diagrams"),
                       ("algebra", "chain2 | diamond | sup-convex | first-nonzero")):
        r = ms.add_parser(name, parents=[common], help=help)
        r.add_argument("monad")
        r.add_argument("--sampled", action="store_true", help="force sampled mode")

    q = add("lift", cmd_lift, "predicate liftings")
    ls = q.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    ls.required = True
    r = ls.add_parser("check", parents=[common], help="naturality and monotonicity (pk | nb)")
    r.add_argument("target", metavar="functor")
    r.add_argument("--letters", default="p", help="comma-separated letters (default p)")
    r.set_defaults(formula=None)
    r = ls.add_parser("eval", parents=[common], help="evaluate a formula with [box] [dia] [const_p]")
    r.add_argument("target", metavar="model")
    r.add_argument("formula")

    q = add("sat", cmd_sat, "bounded satisfiability search")
    q.add_argument("formula")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except _UsageError as e:
        print(e, file=err)
        return USAGE
    except SystemExit as e:  # --help
        return OK if e.code in (0, None) else USAGE
    try:
        lines = args.fn(args)
    except Failure as e:
        print(e, file=out)
        return FAILED
    except INPUT_ERRORS as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"error: {msg}", file=err)
        return USAGE
    print("\n".join(lines), file=out)
    return OK


def run_capture(argv) -> tuple[int, str, str]:
    """Convenience for tests: (exit code, stdout, stderr)."""
    o, e = io.StringIO(), io.StringIO()
    code = run(argv, o, e)
    return code, o.getvalue(), e.getvalue()


def main() -> None:
    sys.exit(run())
