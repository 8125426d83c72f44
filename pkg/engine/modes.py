from dataclasses import dataclass
from enum import Enum
from typing import Optional

from config import settings


class Mode(str, Enum):
    NESTED = "nested"
    UNIVERSAL = "universal"
    GKZ = "gkz"


@dataclass(frozen=True, order=True)
class Stage:
    """Ordinal omega*k + n."""

    k: int = 0
    n: int = 0

    @property
    def is_limit(self) -> bool:
        return self.k > 0 and self.n == 0

    def successor(self) -> "Stage":
        return Stage(self.k, self.n + 1)

    def __str__(self) -> str:
        if self.k == 0:
            return str(self.n)
        head = "ω" if self.k == 1 else f"ω·{self.k}"
        return head if self.n == 0 else f"{head}+{self.n}"

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n}

    @classmethod
    def from_dict(cls, obj: dict) -> "Stage":
        return cls(int(obj["k"]), int(obj["n"]))


@dataclass(frozen=True)
class Budget:
    max_successor_steps: int = 24
    max_limits: int = 3
    window: int = 5
    max_period: int = 4
    strict: bool = True

    @classmethod
    def from_settings(
        cls,
        max_successor_steps: Optional[int] = None,
        max_limits: Optional[int] = None,
        window: Optional[int] = None,
        strict: Optional[bool] = None,
    ) -> "Budget":
        return cls(
            max_successor_steps=max_successor_steps or settings.MAX_SUCCESSOR_STEPS,
            max_limits=settings.MAX_LIMITS if max_limits is None else max_limits,
            window=window or settings.WINDOW,
            max_period=settings.MAX_PERIOD,
            strict=settings.STRICT_CERTIFICATES if strict is None else strict,
        )
