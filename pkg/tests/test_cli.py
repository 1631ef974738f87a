import random
import subprocess
import sys
from pathlib import Path

import pytest
from fixtures import BISIM_B, BISIM_M, BISIM_N, CHAIN

from coalgkit.cli import ParseError, Workspace, format_model, load_model, parse_model, run_capture, save_model
from coalgkit.logic import parse
from coalgkit.semantics import (
    GameModel,
    KripkeModel,
    LabeledTS,
    NeighborhoodModel,
    PdlModel,
    TauModel,
    eval_basic,
    random_game_model,
    random_kripke,
    random_neighborhood,
    random_pdl,
    random_tau,
)

MODELS = Path(__file__).resolve().parent.parent / "models"


def cli(*argv):
    return run_capture([str(a) for a in argv])


# ---------------------------------------------------------------------------
# file format


def test_chain_file_loads():
    M = load_model(MODELS / "chain.km")
    assert isinstance(M, KripkeModel) and len(M.worlds) == 5
    assert M == CHAIN


def test_bundled_models_have_expected_kinds():
    kinds = {
        "chain": KripkeModel, "m": KripkeModel, "n": KripkeModel, "lts": LabeledTS,
        "nbhd": NeighborhoodModel, "pdl": PdlModel, "game": GameModel, "tau": TauModel,
    }
    for stem, cls in kinds.items():
        assert isinstance(load_model(MODELS / f"{stem}.km"), cls), stem
    assert load_model(MODELS / "m.km") == BISIM_M


def test_lts_with_two_actions():
    M = parse_model("kind: lts\nstates: x y\nrel a: x->y\nrel b: y->x y->y\n")
    assert isinstance(M, LabeledTS) and list(M.actions) == ["a", "b"]
    assert M.succ("b", "y") == {"x", "y"}


def test_unknown_world_in_valuation_is_named():
    with pytest.raises(ParseError) as e:
        parse_model("states: 1 2\n# note\nval p: 9\n", "bad.km")
    assert e.value.line == 3
    assert "bad.km:3:" in str(e.value) and "9" in str(e.value)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("kind: kripke\nrel: 1->2\n", "'states:' must come before"),
        ("kind: kripke\nstates: 1 2\nrel: 1-2\n", "expected an edge"),
        ("kind: kripke\nstates: 1 2\nfrob: 1\n", "unknown directive"),
        ("kind: nope\n", "unknown kind"),
        ("states: 1\nstates: 2\n", "given twice"),
        ("states: 1 1\n", "listed twice"),
        ("kind: tau\nstates: 1\nrel Op/2: (1,1)\n", "needs 3 worlds"),
        ("kind: kripke\nstates: 1\nnbhd 1: {1}\n", "nbhd directive in a kripke file"),
        ("kind: nbhd\nstates: 1\nnbhd 1: 1\n", "expected sets"),
        ("val p: 1\n", "'states:' must come before"),
        ("# empty\n", "no 'states:' line"),
        ("kind: kripke\nstates: 1\njust words\n", "expected 'directive: ...'"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as e:
        parse_model(text)
    assert fragment in str(e.value)


def test_neighborhoods_are_closed_upwards():
    M = parse_model("kind: nbhd\nstates: a b c\nnbhd a: {b}\n")
    assert M.nbhd["a"].members == {frozenset("b"), frozenset("ab"), frozenset("bc"), frozenset("abc")}
    assert not M.nbhd["b"].members


def test_kind_inferred_without_header():
    assert isinstance(parse_model("states: a\nnbhd a: {a}\n"), NeighborhoodModel)
    assert isinstance(parse_model("states: a b\nrel: a->b\n"), KripkeModel)


def _random_models(rng):
    yield random_kripke(rng, rng.randint(1, 5))
    yield random_neighborhood(rng, rng.randint(1, 3))
    yield random_pdl(rng, rng.randint(1, 4))
    yield random_game_model(rng, rng.randint(1, 3))
    yield random_tau(rng, rng.randint(1, 3), {"Op": 2, "U": 1})
    P = random_pdl(rng, rng.randint(1, 4), programs=("a", "b", "idle"))
    yield LabeledTS(P.worlds, {k: r.pairs for k, r in P.programs.items()}, P.valuation)


def test_save_load_round_trip(tmp_path):
    rng = random.Random(0)
    for i in range(20):
        for M in _random_models(rng):
            assert parse_model(format_model(M)) == M
    path = tmp_path / "x.km"
    for f in sorted(MODELS.glob("*.km")):
        M = load_model(f)
        save_model(M, path)
        assert load_model(path) == M
        assert format_model(load_model(path)) == format_model(M)


def test_workspace():
    ws = Workspace()
    ws.load(MODELS / "m.km")
    ws.load(MODELS / "pdl.km")
    assert ws["m"] == BISIM_M and ws.letters == ("p", "q")
    with pytest.raises(ParseError):
        ws.load(MODELS / "m.km")
    with pytest.raises(KeyError):
        ws["zzz"]


# ---------------------------------------------------------------------------
# commands


def test_eval_prints_set_and_table():
    code, out, _ = cli("eval", MODELS / "chain.km", "<>[]p")
    assert code == 0
    assert out.splitlines() == [
        "{1,4}",
        "world  <>[]p",
        "1      true",
        "2      false",
        "3      false",
        "4      true",
        "5      false",
    ]


def test_monad_laws_command():
    code, out, _ = cli("monad", "laws", "powerset", "--max", 3)
    assert code == 0
    assert [l for l in out.splitlines() if not l.startswith("#")] == ["law1 PASS", "law2 PASS", "law3 PASS"]
    code, out, _ = cli("monad", "laws", "distribution", "--samples", 50)
    assert code == 0 and "sampled" in out


def test_monad_algebra_and_manes():
    assert cli("monad", "algebra", "diamond")[0] == 0
    code, out, _ = cli("monad", "algebra", "first-nonzero")
    assert code == 1 and "composition FAIL: α=(1/2,1/2), β1=(0,1), β2=(1,0)" in out
    code, out, _ = cli("monad", "manes", "powerset", "--max", 2)
    assert code == 0 and "f+ = f* PASS" in out and "assoc PASS" in out
    assert cli("monad", "laws", "nope")[0] == 2


def test_bisim_commands():
    m, n = MODELS / "m.km", MODELS / "n.km"
    code, out, _ = cli("bisim", "largest", m, n)
    assert code == 0
    assert out.split() == [f"({s},{t})" for s, t in BISIM_B]
    pairs = [f"{s},{t}" for s, t in BISIM_B]
    assert cli("bisim", "check", m, n, *pairs) == (0, "bisimulation\n", "")
    code, out, _ = cli("bisim", "check", m, n, "1,a")
    assert code == 1 and out.startswith("not a bisimulation: violation at (1,a): forth")
    code, out, _ = cli("bisim", "morphism", m, m, *[f"{w}->{w}" for w in "12345"])
    assert code == 0
    code, out, _ = cli("bisim", "morphism", m, n, "1->a", "2->b", "3->d", "4->e", "5->e")
    assert code == 1 and "square" in out
    diag = [f"{w},{w}" for w in "12345"]
    assert cli("bisim", "congruence", m, *diag, "4,5", "5,4")[0] == 0
    assert cli("bisim", "quotient", m, *diag, "1,3", "3,1")[0] == 1
    assert cli("bisim", "check", m, n, "1,zz")[0] == 2


def test_relation_from_file(tmp_path):
    f = tmp_path / "b.rel"
    f.write_text("# the relation\n" + "\n".join(f"{s},{t}" for s, t in BISIM_B) + "\n")
    assert cli("bisim", "check", MODELS / "m.km", MODELS / "n.km", f)[0] == 0


def test_quotient_output_reloads(tmp_path):
    code, out, _ = cli("bisim", "quotient", MODELS / "m.km")
    assert code == 0
    Q = parse_model(out)
    assert len(Q.worlds) == 4 and "4+5" in Q.worlds
    code, out, _ = cli("bisim", "largest", MODELS / "m.km", MODELS / "n.km", "--hm", "--depth", 10)
    assert "depth-10 modal equivalence equals the largest bisimulation" in out


def test_other_engines():
    code, out, _ = cli("pdl", MODELS / "pdl.km", "<a*>p")
    assert code == 0 and out.startswith("{u,v,w}\n")
    assert cli("pdl", MODELS / "pdl.km", "(a;b)*", "--program")[1] == "(u,u) (v,u) (v,v) (w,w)\n"
    assert cli("game", MODELS / "game.km", "<g>p")[1].startswith("{u}\n")
    assert cli("game", MODELS / "game.km", "g^d", "--effectivity", "v")[1] == "{v,w}\n"
    assert cli("nbhd", MODELS / "nbhd.km", "[]p")[1].startswith("{x,y}\n")
    # Kripke models are read through their neighborhood translation
    assert cli("nbhd", MODELS / "chain.km", "<>[]p")[1].startswith("{1,4}\n")
    assert cli("lift", "eval", MODELS / "nbhd.km", "[box]p")[1].startswith("{x,y}\n")
    assert cli("eval", MODELS / "tau.km", "<Op>(p0,p1)")[1].startswith("{u}\n")
    code, out, _ = cli("ctl", MODELS / "chain.km", "EG true", "--oracle")
    assert code == 0 and out.startswith("{}\n") and "lasso oracle agrees" in out


def test_lift_check_is_deterministic():
    a = cli("lift", "check", "nb", "--letters", "p,q", "--samples", 40, "--seed", 3)
    assert a[0] == 0 and "dia: natural PASS monotone PASS" in a[1]
    assert cli("lift", "check", "nb", "--letters", "p,q", "--samples", 40, "--seed", 3) == a


def test_sat_command():
    code, out, _ = cli("sat", "<>p & <>~p")
    assert code == 0
    head, _, body = out.partition("\n")
    M = parse_model(body)
    w = head.split()[-1]
    assert w in eval_basic(M, parse("<>p & <>~p"))
    code, out, _ = cli("sat", "<>p & []~p")
    assert code == 1 and "no model" in out


def test_usage_errors():
    code, out, err = cli("frob")
    assert code == 2 and "usage:" in err and out == ""
    assert cli()[0] == 2
    code, _, err = cli("eval", MODELS / "chain.km", "<>(")
    assert code == 2 and err.startswith("error:")
    code, _, err = cli("eval", MODELS / "missing.km", "p")
    assert code == 2 and "cannot read" in err
    code, _, err = cli("pdl", MODELS / "chain.km", "p")
    assert code == 2 and "PdlModel" in err
    code, _, err = cli("eval", MODELS / "chain.km", "zz")
    assert code == 2


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "coalgkit", "eval", str(MODELS / "m.km"), "[]q"],
        capture_output=True, text=True, timeout=60,
    )
    assert r.returncode == 0 and r.stdout.startswith("{1,3,4,5}\n")
