import pytest
from fractions import Fraction

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from analyzers import boundedness
from analyzers.boundedness import (
    class_boundedness,
    closed_under_dominance_star,
    dominance_star_at,
    is_completely_bounded,
    is_forgetfulness_proof,
    is_locally_bounded,
    maximal_has_no_undominated_dominators,
    property_c_at,
    satisfies_property_c,
)
from analyzers.check_router import CheckRouter
from catalog.registry import instantiate
from engine.modes import Mode
from enumeration.theorems import product_subsets
from games.finite import load_finite_game
from utils.errors import ConfigError, UnsupportedQueryError


@pytest.fixture(scope="module")
def pd_game():
    return load_finite_game({
        "name": "pd",
        "players": ["row", "col"],
        "strategies": {"row": ["C", "D"], "col": ["C", "D"]},
        "payoffs": {"row": [[3, 0], [5, 1]], "col": [[3, 5], [0, 1]]},
    })


@pytest.fixture(scope="module")
def closed_unit():
    return instantiate("closed_unit")


def test_half_open_interval_bounded_but_not_local(closed_unit):
    """[0, 1) is covered by the undominated 1 in A, but has no undominated member of its own."""
    g = closed_unit.game()
    R = closed_unit.reduction("[0, 1) × {idle}")
    assert is_completely_bounded(g, R).holds
    local = is_locally_bounded(g, R)
    assert not local.holds
    assert local.witness.player == "1"
    assert local.witness.rendered == "0"
    assert local.witness.dominating_set == "(0, 1]"


def test_not_all_bounded_witness():
    """[0, 1] x {Left} of the label game fails complete boundedness at 0."""
    entry = instantiate("ex3")
    g = entry.game()
    verdict = is_completely_bounded(g, entry.reduction("[0, 1] × {Left}"))
    assert not verdict.holds
    assert verdict.witness.player == "1"
    assert verdict.witness.strategy == {"num": "0", "den": "1"}
    assert verdict.witness.reduction == "[0, 1] × {Left}"
    assert is_completely_bounded(g, g.full_reduction()).holds


def test_witness_without_dominating_set(mocker):
    """A witness is still reported when the game cannot name a dominating set; other errors propagate."""
    entry = instantiate("ex3")
    g = entry.game()
    R = entry.reduction("[0, 1] × {Left}")
    mocker.patch.object(boundedness.dominance, "dominating_set", side_effect=UnsupportedQueryError("no dominating set"))
    witness = boundedness._witness(g, "1", Fraction(0), R, R)
    assert witness.dominating_set is None
    assert witness.rendered == "0"

    mocker.patch.object(boundedness.dominance, "dominating_set", side_effect=ZeroDivisionError)
    with pytest.raises(ZeroDivisionError):
        boundedness._witness(g, "1", Fraction(0), R, R)


def test_empty_reduction_is_vacuous(closed_unit):
    """Every check holds at the empty reduction."""
    g = closed_unit.game()
    empty = g.parse_reduction("∅")
    for check in (is_completely_bounded, is_locally_bounded, property_c_at, maximal_has_no_undominated_dominators):
        verdict = check(g, empty)
        assert verdict.holds and "vacuous" in verdict.scope_note
    assert dominance_star_at(g, g.full_reduction(), empty).holds


def test_finite_reductions_are_bounded(pd_game):
    """Every product subset of a finite game is completely and locally bounded."""
    for R in product_subsets(pd_game):
        assert is_completely_bounded(pd_game, R).holds
        assert is_locally_bounded(pd_game, R).holds
        assert property_c_at(pd_game, R).holds


def test_lemma_one_at_maximal(pd_game, closed_unit):
    """Maximal reductions have no dominated member with an undominated dominator."""
    assert maximal_has_no_undominated_dominators(pd_game, pd_game.parse_reduction("{D} × {D}")).holds
    g = closed_unit.game()
    verdict = maximal_has_no_undominated_dominators(g, closed_unit.reduction("[0, 1/2] × {idle}"))
    assert not verdict.holds
    assert verdict.witness.rendered == "0"


def test_dominance_star_pairs(pd_game):
    """dominance* holds along the finite nested sequence."""
    A = pd_game.full_reduction()
    S = pd_game.parse_reduction("{D} × {D}")
    assert dominance_star_at(pd_game, A, S).holds
    assert closed_under_dominance_star(pd_game).holds
    supplied = closed_under_dominance_star(pd_game, pairs=[(A, A), (A, S), (S, S)])
    assert supplied.holds and supplied.checked == 3


def test_class_level_checks(pd_game):
    """Class checks enumerate the range, or use the supplied reductions."""
    verdict = class_boundedness(pd_game, Mode.NESTED, "complete")
    assert verdict.holds
    assert verdict.check == "nested-complete-boundedness"
    assert verdict.checked == 4
    assert class_boundedness(pd_game, Mode.UNIVERSAL, "local", reductions=[pd_game.full_reduction()]).checked == 1
    assert satisfies_property_c(pd_game).holds
    assert is_forgetfulness_proof(pd_game).holds


def test_class_check_reports_first_failure(closed_unit):
    """The first failing reduction is reported along with how many were checked."""
    g = closed_unit.game()
    reductions = [closed_unit.reduction("{1} × {idle}"), closed_unit.reduction("[0, 1) × {idle}")]
    verdict = class_boundedness(g, Mode.NESTED, "local", reductions=reductions)
    assert not verdict.holds
    assert verdict.check == "nested-local-boundedness"
    assert verdict.checked == 1
    assert verdict.witness.reduction == "[0, 1) × {idle}"


def test_router_runs_every_check(closed_unit):
    """Every routed check holds at the top strategy {1}."""
    router = CheckRouter(closed_unit.game())
    verdicts = router.route_all(closed_unit.single(1))
    assert [v.check for v in verdicts] == [
        "complete-boundedness",
        "local-boundedness",
        "maximal-nested",
        "maximal-universal",
        "maximal-gkz",
        "lemma-1",
        "property-c",
    ]
    assert all(v.holds for v in verdicts)


def test_router_selected_checks(closed_unit):
    """A subset of checks can be named; [0, 1] is not maximal."""
    router = CheckRouter(closed_unit.game())
    (verdict,) = router.route_all(closed_unit.game().full_reduction(), ["maximal-universal"])
    assert not verdict.holds
    with pytest.raises(ConfigError):
        router.route("weak-dominance", closed_unit.single(Fraction(1)))
    assert len(CheckRouter.names()) == 7
