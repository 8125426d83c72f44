import pytest
from fractions import Fraction

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from algebra.patterns import Certificate
from algebra.symbolic_set import SymbolicSet
from catalog.registry import instantiate
from engine.elimination import is_maximal, removable_sets, run, step, validate_sequence, validate_step
from engine.modes import Budget, Mode, Stage
from engine.policies import RandomSubset, RemoveAll, RemoveOne, Scripted, load_script, make_policy
from engine.trace import EliminationTrace
from games.finite import build_finite_game, load_finite_game
from games.game import Reduction
from utils.errors import BudgetExhaustedError, ConfigError, IllegalStepError
from utils.json_helper import write_json

HALF = Fraction(1, 2)


@pytest.fixture
def pd_game():
    return load_finite_game({
        "name": "pd",
        "players": ["row", "col"],
        "strategies": {"row": ["C", "D"], "col": ["C", "D"]},
        "payoffs": {"row": [[3, 0], [5, 1]], "col": [[3, 5], [0, 1]]},
    })


@pytest.fixture
def staircase():
    """b beats a for the row player; y only beats x for the column player once a is gone."""
    def payoff(player, profile):
        if player == "row":
            return {"a": 0, "b": 1}[profile["row"]]
        first_row = profile["row"] == "a"
        return (1 if first_row else 0) if profile["col"] == "x" else (0 if first_row else 1)

    return build_finite_game("staircase", ["row", "col"], {"row": ["a", "b"], "col": ["x", "y"]}, payoff)


@pytest.fixture
def intro():
    return instantiate("intro")


def test_stage_ordinals():
    """Stages are ordered as ordinals and print in ω notation."""
    assert Stage(0, 5) < Stage(1, 0) < Stage(1, 1) < Stage(2, 0)
    assert str(Stage(0, 3)) == "3"
    assert str(Stage(1, 0)) == "ω"
    assert str(Stage(2, 3)) == "ω·2+3"
    assert Stage(1, 0).is_limit and not Stage(0, 0).is_limit
    assert Stage.from_dict(Stage(1, 2).to_dict()) == Stage(1, 2)


def test_remove_all_on_prisoners_dilemma(pd_game):
    """Both players drop C at once and the run stops at {D} × {D}."""
    trace = run(pd_game, Mode.NESTED, RemoveAll(), Budget())
    assert str(trace.final) == "{D} × {D}"
    assert trace.final_stage == Stage(0, 1)
    assert trace.length == Stage(0, 2)
    assert trace.terminal_maximal
    witnesses = {(w.player, w.removed, w.dominator) for w in trace.justifications[1].witnesses}
    assert witnesses == {("row", "C", "D"), ("col", "C", "D")}


def test_remove_one_goes_player_by_player(pd_game):
    """The first player with something removable moves first."""
    trace = run(pd_game, Mode.NESTED, RemoveOne(), Budget())
    assert [str(R) for R in trace.reductions()] == ["{C, D} × {C, D}", "{D} × {C, D}", "{D} × {D}"]


@pytest.mark.parametrize("mode", list(Mode))
def test_iterated_elimination_in_every_mode(staircase, mode):
    """Removing a exposes the dominance of y over x."""
    trace = run(staircase, mode, RemoveAll(), Budget())
    assert str(trace.final) == "{b} × {y}"
    assert trace.final_stage == Stage(0, 2)
    assert validate_sequence(staircase, trace).holds


def test_removable_sets_depend_on_mode(intro):
    """On (0, 1) every strategy is dominated, whatever the scope."""
    g = intro.game()
    A = g.full_reduction()
    assert removable_sets(g, A, Mode.NESTED)["1"] == g.space("1")
    assert removable_sets(g, A, Mode.UNIVERSAL)["2"].is_empty
    assert is_maximal(g, Reduction(g.players, [SymbolicSet.empty(), SymbolicSet.of("idle")]), Mode.NESTED)


def test_validate_step_reports_clause(pd_game):
    """Removing an undominated strategy names the player and strategy."""
    A = pd_game.full_reduction()
    verdict = validate_step(pd_game, A, A.minus({"row": SymbolicSet.of("D")}), Mode.NESTED)
    assert not verdict.holds
    assert verdict.player == "row"
    assert verdict.strategy == {"atom": "D"}
    grown = validate_step(pd_game, A.minus({"row": SymbolicSet.of("C")}), A, Mode.NESTED)
    assert grown.clause == "successor is contained in its predecessor"


def test_scripted_illegal_removal_raises(pd_game):
    """A script may not remove an undominated strategy."""
    with pytest.raises(IllegalStepError) as excinfo:
        run(pd_game, Mode.NESTED, Scripted([{"row": SymbolicSet.of("D")}]), Budget())
    assert excinfo.value.player == "row"
    assert excinfo.value.mode == "nested"
    assert excinfo.value.exit_code == 2


def test_scripted_then_continues(pd_game):
    """Once the script runs out the follow-up policy finishes the run."""
    policy = Scripted([{"row": SymbolicSet.of("C")}], then=RemoveAll())
    trace = run(pd_game, Mode.NESTED, policy, Budget())
    assert trace.final_stage == Stage(0, 2)
    assert policy.describe() == {"policy": "scripted", "stages": 1, "then": {"policy": "remove-all"}}


def test_random_subset_is_reproducible(staircase):
    """The same seed replays the same removals."""
    first = run(staircase, Mode.NESTED, RandomSubset(7), Budget())
    second = run(staircase, Mode.NESTED, RandomSubset(7), Budget())
    assert first.reductions() == second.reductions()
    assert RandomSubset(7).describe() == {"policy": "random-subset", "seed": 7}


def test_step_on_empty_reduction(pd_game):
    """Nothing happens at the empty reduction."""
    empty = Reduction(pd_game.players, [SymbolicSet.empty(), SymbolicSet.empty()])
    S, just = step(pd_game, empty, Mode.NESTED, RemoveAll())
    assert S.is_empty and just.removed == {}


def test_make_policy():
    """Policies are built by name; scripted needs a script."""
    assert isinstance(make_policy("remove-one"), RemoveOne)
    assert make_policy("random-subset").seed == 0
    assert isinstance(make_policy("scripted", script=[], then="remove-all").then, RemoveAll)
    with pytest.raises(ConfigError):
        make_policy("scripted")
    with pytest.raises(ConfigError):
        make_policy("greedy")


def test_script_file_reaches_singleton(tmp_path, intro):
    """A two-stage script cuts (0, 1) down to {1/2}."""
    path = tmp_path / "half.json"
    write_json(path, {"stages": [{"1": "(1/2, 1)"}, {"1": "(0, 1/2)"}]})
    g = intro.game()
    trace = run(g, Mode.NESTED, Scripted(load_script(str(path), g)), Budget(max_successor_steps=2, max_limits=0))
    assert trace.final == intro.single(HALF)
    assert trace.terminal_maximal


@pytest.mark.parametrize("doc", [{"steps": []}, {"stages": ["(0, 1)"]}, {"stages": [{"3": "(0, 1)"}]}])
def test_bad_script_files(tmp_path, intro, doc):
    """Scripts must list per-player removals for known players."""
    path = tmp_path / "bad.json"
    write_json(path, doc)
    with pytest.raises(ConfigError):
        load_script(str(path), intro.game())


def test_universal_removes_open_interval_at_once(intro):
    """Universal elimination on (0, 1) is empty after one step."""
    trace = run(intro.game(), Mode.UNIVERSAL, RemoveAll(), Budget())
    assert trace.final.is_empty
    assert trace.summary()["final"] == "∅"
    assert trace.summary()["final_stage"] == "1"


def test_gkz_needs_a_limit_stage():
    """GKZ elimination on (0, 1) is empty only at ω, with an inductive certificate."""
    g = instantiate("gkz").game()
    trace = run(g, Mode.GKZ, RemoveAll(), Budget(strict=True))
    assert trace.final.is_empty
    assert trace.final_stage == Stage(1, 0)
    assert not trace.heuristic
    (pattern,) = trace.certificates.values()
    assert pattern.certificate is Certificate.INDUCTIVE
    assert trace.stages[1][1]["1"] == SymbolicSet.interval(HALF, 1, False, False)
    assert validate_sequence(g, trace).holds


def test_trace_json_lines_reload(tmp_path):
    """A reloaded trace validates like the original."""
    g = instantiate("gkz").game()
    trace = run(g, Mode.GKZ, RemoveAll(), Budget())
    rows = trace.to_json_lines()
    assert rows[0]["trace"]["mode"] == "gkz"
    assert len(rows) == len(trace.stages) + 1
    again = EliminationTrace.from_json_lines(rows, g)
    assert again.reductions() == trace.reductions()
    assert validate_sequence(g, again).holds


def test_budget_exhaustion_keeps_partial_trace():
    """Without limit stages the GKZ run stops after the successor budget."""
    g = instantiate("gkz").game()
    with pytest.raises(BudgetExhaustedError) as excinfo:
        run(g, Mode.GKZ, RemoveAll(), Budget(max_successor_steps=3, max_limits=0))
    partial = excinfo.value.partial_trace
    assert len(partial.stages) == 4
    assert partial.final["1"] == SymbolicSet.interval(Fraction(3, 4), 1, False, False)
    assert excinfo.value.exit_code == 3


def test_uncertified_pattern(mocker):
    """Without an inductive argument the limit is refused, or taken as heuristic when allowed."""
    g = instantiate("gkz").game()
    mocker.patch.object(g.oracle, "certify_pattern", return_value=False)
    with pytest.raises(BudgetExhaustedError):
        run(g, Mode.GKZ, RemoveAll(), Budget(strict=True))
    trace = run(g, Mode.GKZ, RemoveAll(), Budget(strict=False))
    assert trace.heuristic and trace.final.is_empty
    assert validate_sequence(g, trace, strict=False).holds
    verdict = validate_sequence(g, trace, strict=True)
    assert verdict.clause == "limit certificates are inductive"
    assert verdict.stage == "ω"


def test_validate_sequence_rejects_bad_traces(pd_game):
    """Wrong start, illegal step and non-maximal end are each caught."""
    A = pd_game.full_reduction()
    illegal = EliminationTrace("pd", Mode.NESTED, [(Stage(0, 0), A), (Stage(0, 1), A.minus({"row": SymbolicSet.of("D")}))])
    verdict = validate_sequence(pd_game, illegal)
    assert not verdict.holds and verdict.stage == "1"

    short = EliminationTrace("pd", Mode.NESTED, [(Stage(0, 0), A)])
    assert validate_sequence(pd_game, short).clause == "the sequence ends at a maximal reduction"

    late = EliminationTrace("pd", Mode.NESTED, [(Stage(0, 0), A.minus({"row": SymbolicSet.of("C")}))])
    assert validate_sequence(pd_game, late).clause == "the sequence starts at the full strategy space"
    assert not validate_sequence(pd_game, EliminationTrace("pd", Mode.NESTED)).holds


@pytest.mark.parametrize("labels, bad_stage", [
    ([Stage(0, 0), Stage(0, 2)], "2"),
    ([Stage(0, 0), Stage(1, 1)], "ω+1"),
    ([Stage(0, 0), Stage(2, 0)], "ω·2"),
    ([Stage(0, 1), Stage(0, 2)], "1"),
])
def test_validate_sequence_checks_stage_labels(pd_game, labels, bad_stage):
    """Successors advance by one and a limit follows as omega*(k+1); other labels are rejected."""
    A = pd_game.full_reduction()
    DD = A.minus({"row": SymbolicSet.of("C"), "col": SymbolicSet.of("C")})
    trace = EliminationTrace("pd", Mode.NESTED, list(zip(labels, [A, DD])))
    verdict = validate_sequence(pd_game, trace)
    assert not verdict.holds
    assert verdict.clause == "stage labels follow ordinal order"
    assert verdict.stage == bad_stage

    relabelled = EliminationTrace("pd", Mode.NESTED, [(Stage(0, 0), A), (Stage(0, 1), DD)])
    assert validate_sequence(pd_game, relabelled).holds
