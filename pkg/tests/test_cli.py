import pytest
import json

from typer.testing import CliRunner

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from catalog.base import CatalogReport, FixtureResult
from main import app
from utils.json_helper import write_json


PRISONERS_DILEMMA = {
    "name": "pd",
    "players": ["row", "col"],
    "strategies": {"row": ["C", "D"], "col": ["C", "D"]},
    "payoffs": {"row": [[3, 0], [5, 1]], "col": [[3, 5], [0, 1]]},
}


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def env(tmp_path):
    return {"DOMLAB_OUTPUT_DIR": str(tmp_path / "artifacts")}


@pytest.fixture
def pd_file(tmp_path):
    path = tmp_path / "pd.json"
    write_json(path, PRISONERS_DILEMMA)
    return path


def _invoke(runner, env, *args):
    return runner.invoke(app, list(args) + ["--format", "json"], env=env)


def test_run_universal_on_open_interval(runner, env, tmp_path):
    """Universal elimination empties (0, 1) in one step and reports it on stderr."""
    result = _invoke(runner, env, "run", "--catalog", "intro", "--mode", "universal")
    assert result.exit_code == 0, result.stderr
    assert "maximal: ∅ at 1" in result.stderr
    payload = json.loads(result.stdout)
    assert payload["final"] == "∅"
    assert payload["maximal"] == "maximal: ∅ at 1"
    assert (tmp_path / "artifacts" / "intro-universal.trace.jsonl").exists()


def test_run_then_validate(runner, env, tmp_path):
    """A trace written by run validates against the same game."""
    assert _invoke(runner, env, "run", "--catalog", "gkz", "--mode", "gkz", "--output", "omega").exit_code == 0
    trace = tmp_path / "artifacts" / "omega.trace.jsonl"
    result = _invoke(runner, env, "validate", "--trace", str(trace), "--catalog", "gkz")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["verdict"]["holds"] is True
    assert payload["trace"]["final_stage"] == "ω"


def test_validate_other_mode_and_truncated_trace(runner, env, tmp_path, pd_file):
    """A nested trace also holds as a GKZ trace; cutting off its last stage breaks it."""
    assert _invoke(runner, env, "run", "--game", str(pd_file), "--output", "pd").exit_code == 0
    trace = tmp_path / "artifacts" / "pd.trace.jsonl"
    ok = _invoke(runner, env, "validate", "--trace", str(trace), "--game", str(pd_file), "--mode", "gkz")
    assert ok.exit_code == 0

    rows = [json.loads(line) for line in trace.read_text(encoding="utf-8").splitlines()]
    tampered = tmp_path / "tampered.trace.jsonl"
    tampered.write_text("\n".join(json.dumps(r) for r in rows[:2]) + "\n", encoding="utf-8")
    result = _invoke(runner, env, "validate", "--trace", str(tampered), "--game", str(pd_file))
    assert result.exit_code == 1
    assert json.loads(result.stdout)["verdict"]["clause"] == "the sequence ends at a maximal reduction"


def test_analyze_reports_witness(runner, env):
    """[0, 1] × {Left} of the label game is not completely bounded."""
    result = _invoke(
        runner, env, "analyze", "--catalog", "ex3", "--reduction", "[0, 1] × {Left}", "--check", "complete-boundedness"
    )
    assert result.exit_code == 1
    (verdict,) = json.loads(result.stdout)["verdicts"]
    assert verdict["holds"] is False
    assert verdict["witness"]["rendered"] == "0"


def test_enumerate_finite_game(runner, env, pd_file):
    """Enumeration summarizes the sequence class."""
    result = _invoke(runner, env, "enumerate", "--game", str(pd_file), "--mode", "nested")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["sequences"] == 3
    assert payload["maximal"] == ["{D} × {D}"]
    assert payload["order_independent"] is True


def test_enumerate_over_cap(runner, env, pd_file):
    """Too many strategies for the cap exits with the budget code."""
    result = _invoke(runner, env, "enumerate", "--game", str(pd_file), "--max-strategies", "3")
    assert result.exit_code == 3


def test_check_theorems_random(runner, env, tmp_path):
    """Random games pass every assertion and the report is stored."""
    result = _invoke(runner, env, "check-theorems", "--random", "2", "--seed", "3")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["passed"] is True
    assert len(payload["games"]) == 2
    assert (tmp_path / "artifacts" / "theorems-random-2-3.json").exists()


def test_check_theorems_needs_one_source(runner, env, pd_file):
    """Exactly one game source is accepted."""
    result = _invoke(runner, env, "check-theorems", "--game", str(pd_file), "--random", "2")
    assert result.exit_code == 2


def test_catalog_list(runner, env):
    """Every catalog entry is listed."""
    result = _invoke(runner, env, "catalog", "list")
    assert result.exit_code == 0
    assert len(json.loads(result.stdout)["entries"]) == 8


def test_catalog_verify_entry(runner, env):
    """Verifying one entry passes and names the entry."""
    result = _invoke(runner, env, "catalog", "verify", "closed_unit")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["passed"] is True
    assert payload["reports"][0]["entry"] == "closed_unit_identity"


def test_catalog_verify_failure_exits_one(runner, env, mocker):
    """A failing fixture turns into exit code 1."""
    failing = CatalogReport(
        entry="ex1_unbounded_at_limit",
        fixtures=[FixtureResult(entry="ex1_unbounded_at_limit", name="limit", claim="reaches {1}", passed=False)],
    )
    mocker.patch("main.verify_catalog", return_value=[failing])
    result = _invoke(runner, env, "catalog", "verify", "ex1")
    assert result.exit_code == 1
    assert json.loads(result.stdout)["passed"] is False


def test_catalog_probe(runner, env):
    """A shallow probe of one entry finds no mismatch."""
    result = _invoke(runner, env, "catalog", "probe", "closed_unit", "--depth", "3")
    assert result.exit_code == 0, result.stderr
    assert json.loads(result.stdout)["reports"][0]["depth"] == 3


@pytest.mark.parametrize("args", [
    ["run", "--catalog", "ex9"],
    ["run", "--catalog", "intro", "--game", "pd.json"],
    ["run", "--catalog", "intro", "--policy", "random-subset"],
    ["run", "--catalog", "intro", "--policy", "scripted"],
])
def test_illegal_configuration(runner, env, args):
    """Unknown entries and inconsistent options exit with the configuration code."""
    result = _invoke(runner, env, *args)
    assert result.exit_code == 2


def test_invalid_environment(runner, env):
    """A window below three is rejected before any command runs."""
    result = _invoke(runner, {**env, "DOMLAB_WINDOW": "2"}, "catalog", "list")
    assert result.exit_code == 2
    assert "ConfigError" in result.stderr


def test_budget_exhaustion_saves_partial_trace(runner, env, tmp_path):
    """Without limit stages the GKZ run stops after three steps."""
    result = _invoke(
        runner, env, "run", "--catalog", "gkz", "--mode", "gkz", "--max-steps", "3", "--max-limits", "0"
    )
    assert result.exit_code == 3
    partial = tmp_path / "artifacts" / "gkz-gkz.trace.jsonl"
    assert len(partial.read_text().splitlines()) == 5


def test_interpolation_on_infinite_game(runner, env):
    """GKZ interpolation is only offered for finite games."""
    result = _invoke(
        runner, env, "interpolate-gkz", "--catalog", "closed_unit", "--from", "[0, 1] × {idle}", "--to", "{1} × {idle}"
    )
    assert result.exit_code == 4


def test_interpolation_on_finite_game(runner, env, pd_file):
    """The simultaneous prisoners' dilemma step is a single GKZ link."""
    result = _invoke(
        runner, env, "interpolate-gkz", "--game", str(pd_file), "--from", "{C, D} × {C, D}", "--to", "{D} × {D}"
    )
    assert result.exit_code == 0, result.stderr
    assert json.loads(result.stdout) == {"chain": ["{C, D} × {C, D}", "{D} × {D}"], "links": 1}
