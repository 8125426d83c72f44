import logging
from typing import Callable, Dict, List, Optional

import os
import sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from analyzers.boundedness import (
    BoundednessVerdict,
    is_completely_bounded,
    is_locally_bounded,
    maximal_has_no_undominated_dominators,
    property_c_at,
)
from engine.elimination import is_maximal
from engine.modes import Mode
from games.game import Game, Reduction
from utils.errors import ConfigError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


def _maximal(mode: Mode) -> Callable[[Game, Reduction], BoundednessVerdict]:
    def check(g: Game, R: Reduction) -> BoundednessVerdict:
        return BoundednessVerdict(
            check=f"maximal-{mode.value}",
            holds=is_maximal(g, R, mode),
            scope_note=f"no {mode.value} step leaves R",
        )

    return check


class CheckRouter:
    """Routes a named structural check to the analyzer that decides it for one reduction."""

    ROUTES: Dict[str, Callable[[Game, Reduction], BoundednessVerdict]] = {
        "complete-boundedness": is_completely_bounded,
        "local-boundedness": is_locally_bounded,
        "maximal-nested": _maximal(Mode.NESTED),
        "maximal-universal": _maximal(Mode.UNIVERSAL),
        "maximal-gkz": _maximal(Mode.GKZ),
        "lemma-1": maximal_has_no_undominated_dominators,
        "property-c": property_c_at,
    }

    def __init__(self, game: Game) -> None:
        self.game = game
        logger.info(f"[{self.__class__.__name__}] Initialized for game '{game.name}'.")

    @classmethod
    def names(cls) -> List[str]:
        return list(cls.ROUTES)

    def route(self, name: str, R: Reduction) -> BoundednessVerdict:
        handler = self.ROUTES.get(name)
        if handler is None:
            logger.warning(f"[{self.__class__.__name__}] Unrecognized check '{name}'.")
            raise ConfigError(f"unknown check '{name}'; expected one of {', '.join(self.ROUTES)}")
        verdict = handler(self.game, R)
        logger.info(f"[{self.__class__.__name__}] {name} at {R}: {'holds' if verdict.holds else 'fails'}")
        return verdict

    def route_all(self, R: Reduction, names: Optional[List[str]] = None) -> List[BoundednessVerdict]:
        return [self.route(name, R) for name in names or self.names()]


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    from catalog.registry import instantiate

    entry = instantiate("ex2")
    router = CheckRouter(entry.game())
    for verdict in router.route_all(entry.reduction("{1} × {1}")):
        logger.info(f"{verdict.check}: {verdict.holds} ({verdict.scope_note})")
