import logging
import random
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from games.finite import build_finite_game
from games.game import Game

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

DEFAULT_PAYOFFS = tuple(range(5))
TIES_PAYOFFS = (0, 1)


def random_finite_game(
    seed: int,
    players: int = 2,
    max_strategies: int = 3,
    payoffs: Optional[Sequence[int]] = None,
    ties: bool = False,
) -> Game:
    """A reproducible random game: strategy counts in 1..max_strategies, payoffs drawn uniformly."""
    rng = random.Random(seed)
    values = list(payoffs or (TIES_PAYOFFS if ties else DEFAULT_PAYOFFS))
    names = [str(i + 1) for i in range(players)]
    strategies = {p: [f"s{p}_{k}" for k in range(rng.randint(1, max_strategies))] for p in names}
    table = {}

    def payoff(player: str, profile: dict) -> Fraction:
        key = (player,) + tuple(profile[p] for p in names)
        if key not in table:
            table[key] = Fraction(rng.choice(values))
        return table[key]

    return build_finite_game(f"random-{seed}{'-ties' if ties else ''}", names, strategies, payoff)


def random_games(
    count: int,
    seed: int = 0,
    players: int = 2,
    max_strategies: int = 3,
    ties: bool = False,
) -> Iterator[Game]:
    for offset in range(count):
        yield random_finite_game(seed + offset, players, max_strategies, ties=ties)
