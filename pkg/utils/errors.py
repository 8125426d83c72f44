from typing import Any, Optional


class DomLabError(Exception):
    """Base error. `exit_code` is what the CLI returns when this escapes a command."""

    exit_code: int = 1

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        return {"error": self.__class__.__name__, "message": self.message, **{k: str(v) for k, v in self.details.items()}}


class ConfigError(DomLabError):
    exit_code = 2


class MalformedSetError(DomLabError):
    exit_code = 2


class UnsupportedCombinationError(DomLabError):
    """Raised instead of approximating a set operation that is not decidable here."""

    exit_code = 4


class UnsupportedQueryError(DomLabError):
    exit_code = 4

    def __init__(self, message: str, entry: Optional[str] = None, **details: Any) -> None:
        super().__init__(message if entry is None else f"{entry}: {message}", entry=entry, **details)
        self.entry = entry


class UndefinedRelationError(DomLabError):
    exit_code = 2


class GameFormatError(DomLabError):
    exit_code = 2

    def __init__(self, message: str, path: str = "$") -> None:
        super().__init__(f"{path}: {message}", path=path)
        self.path = path


class IllegalStepError(DomLabError):
    exit_code = 2

    def __init__(self, message: str, player: str, strategy: Any, mode: str) -> None:
        super().__init__(message, player=player, strategy=strategy, mode=mode)
        self.player = player
        self.strategy = strategy
        self.mode = mode


class NotANestedStepError(DomLabError):
    exit_code = 2


class BudgetExhaustedError(DomLabError):
    exit_code = 3

    def __init__(self, message: str, partial_trace: Any = None) -> None:
        super().__init__(message)
        self.partial_trace = partial_trace


class EnumerationTooLargeError(DomLabError):
    exit_code = 3

    def __init__(self, message: str, count: int) -> None:
        super().__init__(message, count=count)
        self.count = count


class UnknownCatalogEntryError(DomLabError):
    exit_code = 2
