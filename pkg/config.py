from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from pathlib import Path

env_path = Path(__file__).resolve().parent / ".env"


class EnumerationCaps(BaseModel):
    max_strategies_total: int = Field(default=8, ge=1)
    max_sequences: int = Field(default=200_000, ge=1)


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=str(env_path), env_prefix="DOMLAB_", extra='ignore')

    # limit-stage detection
    WINDOW: int = 5
    MAX_SUCCESSOR_STEPS: int = 24
    MAX_LIMITS: int = 3
    MAX_PERIOD: int = 4
    STRICT_CERTIFICATES: bool = True

    # DOMLAB_CAPS='{"max_strategies_total": 12}'
    CAPS: EnumerationCaps = EnumerationCaps()

    PROBE_DEPTH: int = 12
    OUTPUT_DIR: str = "artifacts"
    LOG_LEVEL: str = "INFO"
    REPORT_TIMING: bool = False

    @field_validator("WINDOW")
    @classmethod
    def _window_at_least_three(cls, value: int) -> int:
        if value < 3:
            raise ValueError("WINDOW must be at least 3")
        return value

    @field_validator("MAX_SUCCESSOR_STEPS", "MAX_LIMITS", "MAX_PERIOD", "PROBE_DEPTH")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be positive")
        return value


settings = Settings()

if __name__ == "__main__":
    print(f"Window: {settings.WINDOW}")
    print(f"Caps: {settings.CAPS.model_dump()}")
    print(f"Output dir: {settings.OUTPUT_DIR}")
