import functools
import logging
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import typer
from pydantic import BaseModel, ValidationError, model_validator
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from analyzers.check_router import CheckRouter
from catalog.probe import cross_validate_catalog
from catalog.registry import instantiate, list_entries, verify_catalog
from config import EnumerationCaps, Settings
from engine.elimination import run, validate_sequence
from engine.gkz import gkz_interpolate
from engine.modes import Budget, Mode
from engine.policies import load_script, make_policy
from engine.trace import EliminationTrace
from enumeration.enumerator import enumerate_sequences
from enumeration.random_games import random_games
from enumeration.theorems import check_theorems
from games.finite import load_game_file
from games.game import Game
from memory.artifact_store import ArtifactStore
from utils.errors import BudgetExhaustedError, ConfigError, DomLabError
from utils.json_helper import dumps, read_json_lines

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

app = typer.Typer(help="Iterated elimination of strictly dominated strategies: nested, universal and GKZ.")
catalog_app = typer.Typer(help="Catalogued infinite games and their fixtures.")
app.add_typer(catalog_app, name="catalog")

stdout = Console()


class OutputFormat(str, Enum):
    AUTO = "auto"
    JSON = "json"
    TABLE = "table"


class RunConfig(BaseModel):
    game: Optional[Path] = None
    catalog: Optional[str] = None
    mode: Mode = Mode.NESTED
    policy: str = "remove-all"
    seed: Optional[int] = None
    script: Optional[Path] = None
    then: Optional[str] = None
    max_steps: Optional[int] = None
    max_limits: Optional[int] = None
    window: Optional[int] = None
    allow_heuristic: bool = False
    output: Optional[str] = None

    @model_validator(mode="after")
    def _check(self) -> "RunConfig":
        if (self.game is None) == (self.catalog is None):
            raise ValueError("give exactly one of --game and --catalog")
        if (self.policy == "random-subset") != (self.seed is not None):
            raise ValueError("--seed is required with, and only with, --policy random-subset")
        if (self.policy == "scripted") != (self.script is not None):
            raise ValueError("--script is required with, and only with, --policy scripted")
        return self

    @property
    def artifact_name(self) -> str:
        return self.output or f"{self.catalog or self.game.stem}-{self.mode.value}"


class Orchestrator:
    def __init__(self, settings: Settings, store: Optional[ArtifactStore] = None) -> None:
        self.settings = settings
        self.store = store or ArtifactStore(settings.OUTPUT_DIR)
        logger.info(f"[{self.__class__.__name__}] Ready (window {settings.WINDOW}, caps {settings.CAPS.model_dump()}).")

    def load_game(self, game: Optional[Path], catalog: Optional[str]) -> Game:
        if (game is None) == (catalog is None):
            raise ConfigError("give exactly one of --game and --catalog")
        if catalog is not None:
            return instantiate(catalog).game()
        return load_game_file(game)

    def budget(self, cfg: RunConfig) -> Budget:
        s = self.settings
        return Budget(
            max_successor_steps=cfg.max_steps or s.MAX_SUCCESSOR_STEPS,
            max_limits=s.MAX_LIMITS if cfg.max_limits is None else cfg.max_limits,
            window=cfg.window or s.WINDOW,
            max_period=s.MAX_PERIOD,
            strict=s.STRICT_CERTIFICATES and not cfg.allow_heuristic,
        )

    def run(self, cfg: RunConfig) -> EliminationTrace:
        g = self.load_game(cfg.game, cfg.catalog)
        script = load_script(str(cfg.script), g) if cfg.script is not None else None
        policy = make_policy(cfg.policy, cfg.seed, script, cfg.then)
        logger.info(f"[{self.__class__.__name__}] {cfg.mode.value} run of '{g.name}' with {cfg.policy}")
        try:
            trace = run(g, cfg.mode, policy, self.budget(cfg))
        except BudgetExhaustedError as e:
            if e.partial_trace is not None:
                self.store.save_trace(cfg.artifact_name, e.partial_trace)
                logger.warning(f"[{self.__class__.__name__}] Partial trace written as '{cfg.artifact_name}'.")
            raise
        self.store.save_trace(cfg.artifact_name, trace)
        return trace

    def validate(self, g: Game, trace_path: Path, mode: Optional[Mode], strict: bool):
        trace = EliminationTrace.from_json_lines(read_json_lines(trace_path), g)
        return trace, validate_sequence(g, trace, mode, strict)

    def caps(self, max_strategies: Optional[int]) -> EnumerationCaps:
        if max_strategies is None:
            return self.settings.CAPS
        return self.settings.CAPS.model_copy(update={"max_strategies_total": max_strategies})


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _orchestrator(ctx: typer.Context) -> Orchestrator:
    return ctx.obj


def _guarded(command: Callable) -> Callable:
    """Turn library errors into documented exit codes."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except DomLabError as e:
            logger.error(f"{e.__class__.__name__}: {e.message}")
            typer.echo(dumps(e.to_dict()).decode(), err=True)
            raise typer.Exit(e.exit_code)
        except ValidationError as e:
            logger.error(f"Invalid options: {e.errors()[0]['msg']}")
            typer.echo(dumps({"error": "ConfigError", "message": e.errors()[0]["msg"]}).decode(), err=True)
            raise typer.Exit(ConfigError.exit_code)

    return wrapper


def _emit(payload: Any, fmt: OutputFormat, table: Optional[Callable[[], Table]] = None) -> None:
    as_table = fmt is OutputFormat.TABLE or (fmt is OutputFormat.AUTO and sys.stdout.isatty())
    if as_table and table is not None:
        stdout.print(table())
    else:
        typer.echo(dumps(payload, pretty=True).decode())


def _rows_table(title: str, columns: List[str], rows: List[List[Any]]) -> Table:
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*[str(cell) for cell in row])
    return table


@app.callback()
def main(ctx: typer.Context) -> None:
    try:
        settings = Settings()
    except ValidationError as e:
        typer.echo(dumps({"error": "ConfigError", "message": str(e)}).decode(), err=True)
        raise typer.Exit(ConfigError.exit_code)
    _configure_logging(settings.LOG_LEVEL)
    ctx.obj = Orchestrator(settings)


@app.command("run")
@_guarded
def cmd_run(
    ctx: typer.Context,
    game: Optional[Path] = typer.Option(None, "--game", help="finite game JSON file"),
    catalog: Optional[str] = typer.Option(None, "--catalog", help="catalog entry id or alias"),
    mode: Mode = typer.Option(Mode.NESTED, "--mode"),
    policy: str = typer.Option("remove-all", "--policy", help="remove-all | remove-one | random-subset | scripted"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    script: Optional[Path] = typer.Option(None, "--script"),
    then: Optional[str] = typer.Option(None, "--then", help="policy used after the script runs out"),
    max_steps: Optional[int] = typer.Option(None, "--max-steps"),
    max_limits: Optional[int] = typer.Option(None, "--max-limits"),
    window: Optional[int] = typer.Option(None, "--window"),
    allow_heuristic: bool = typer.Option(False, "--allow-heuristic"),
    output: Optional[str] = typer.Option(None, "--output", help="artifact name for the trace"),
    fmt: OutputFormat = typer.Option(OutputFormat.AUTO, "--format"),
) -> None:
    cfg = RunConfig(
        game=game, catalog=catalog, mode=mode, policy=policy, seed=seed, script=script, then=then,
        max_steps=max_steps, max_limits=max_limits, window=window, allow_heuristic=allow_heuristic, output=output,
    )
    trace = _orchestrator(ctx).run(cfg)
    summary = trace.summary()
    summary["maximal"] = f"maximal: {trace.final} at {trace.final_stage}"
    _emit(summary, fmt, lambda: _rows_table(
        f"{trace.game} ({trace.mode.value})",
        ["stage", "reduction"],
        [[str(stage), str(R)] for stage, R in trace.stages],
    ))
    typer.echo(summary["maximal"], err=True)
    if not trace.terminal_maximal:
        raise typer.Exit(1)


@app.command("validate")
@_guarded
def cmd_validate(
    ctx: typer.Context,
    trace: Path = typer.Option(..., "--trace", help="JSON-lines trace file"),
    game: Optional[Path] = typer.Option(None, "--game"),
    catalog: Optional[str] = typer.Option(None, "--catalog"),
    mode: Optional[Mode] = typer.Option(None, "--mode", help="re-check under another mode"),
    allow_heuristic: bool = typer.Option(False, "--allow-heuristic"),
    fmt: OutputFormat = typer.Option(OutputFormat.AUTO, "--format"),
) -> None:
    orchestrator = _orchestrator(ctx)
    g = orchestrator.load_game(game, catalog)
    loaded, verdict = orchestrator.validate(g, trace, mode, strict=not allow_heuristic)
    payload = {"trace": loaded.summary(), "verdict": verdict.model_dump(exclude_none=True)}
    _emit(payload, fmt, lambda: _rows_table(
        "validation",
        ["holds", "clause", "stage", "detail"],
        [[verdict.holds, verdict.clause or "-", verdict.stage or "-", verdict.detail or "-"]],
    ))
    if not verdict.holds:
        raise typer.Exit(1)


@app.command("analyze")
@_guarded
def cmd_analyze(
    ctx: typer.Context,
    reduction: str = typer.Option(..., "--reduction", help='e.g. "[0,1] × {Left}"'),
    game: Optional[Path] = typer.Option(None, "--game"),
    catalog: Optional[str] = typer.Option(None, "--catalog"),
    check: Optional[List[str]] = typer.Option(None, "--check", help=f"any of {', '.join(CheckRouter.names())}"),
    fmt: OutputFormat = typer.Option(OutputFormat.AUTO, "--format"),
) -> None:
    g = _orchestrator(ctx).load_game(game, catalog)
    R = g.parse_reduction(reduction)
    verdicts = CheckRouter(g).route_all(R, check)
    payload = {"reduction": str(R), "verdicts": [v.to_dict() for v in verdicts]}
    _emit(payload, fmt, lambda: _rows_table(
        str(R),
        ["check", "holds", "witness", "note"],
        [[v.check, v.holds, v.witness.rendered if v.witness else "-", v.scope_note] for v in verdicts],
    ))
    if not all(v.holds for v in verdicts):
        raise typer.Exit(1)


@app.command("enumerate")
@_guarded
def cmd_enumerate(
    ctx: typer.Context,
    game: Path = typer.Option(..., "--game"),
    mode: Mode = typer.Option(Mode.NESTED, "--mode"),
    max_strategies: Optional[int] = typer.Option(None, "--max-strategies"),
    fmt: OutputFormat = typer.Option(OutputFormat.AUTO, "--format"),
) -> None:
    orchestrator = _orchestrator(ctx)
    cls = enumerate_sequences(load_game_file(game), mode, orchestrator.caps(max_strategies))
    summary = cls.summary()
    summary["order_independent"] = cls.order_independent
    _emit(summary, fmt, lambda: _rows_table(
        f"{mode.value} sequences",
        ["sequences", "range", "maximal"],
        [[summary["sequences"], summary["range"], ", ".join(summary["maximal"])]],
    ))


@app.command("check-theorems")
@_guarded
def cmd_check_theorems(
    ctx: typer.Context,
    game: Optional[Path] = typer.Option(None, "--game"),
    random: Optional[int] = typer.Option(None, "--random", help="number of random finite games"),
    seed: int = typer.Option(0, "--seed"),
    players: int = typer.Option(2, "--players"),
    max_strats: int = typer.Option(3, "--max-strats"),
    ties: bool = typer.Option(False, "--ties", help="draw payoffs from {0, 1}"),
    catalog: Optional[str] = typer.Option(None, "--catalog", help="catalog entry id or 'all'"),
    max_strategies: Optional[int] = typer.Option(None, "--max-strategies"),
    fmt: OutputFormat = typer.Option(OutputFormat.AUTO, "--format"),
) -> None:
    orchestrator = _orchestrator(ctx)
    if sum(x is not None for x in (game, random, catalog)) != 1:
        raise ConfigError("give exactly one of --game, --random and --catalog")

    if catalog is not None:
        reports = verify_catalog(catalog)
        payload: Dict[str, Any] = {"catalog": [r.to_dict() for r in reports]}
        rows = [[f.entry, f.name, f.passed, f.detail] for r in reports for f in r.fixtures]
        passed = all(r.passed for r in reports)
        name = f"catalog-{catalog}"
    else:
        caps = orchestrator.caps(max_strategies)
        games = [load_game_file(game)] if game is not None else random_games(random, seed, players, max_strats, ties)
        reports = [check_theorems(g, caps) for g in games]
        payload = {"games": [r.to_dict() for r in reports]}
        rows = [[r.game, a.name, a.passed, a.detail] for r in reports for a in r.assertions if not a.passed]
        if not rows:
            rows = [[r.game, "all assertions", True, str(r.counts)] for r in reports]
        passed = all(r.passed for r in reports)
        name = f"theorems-{game.stem}" if game is not None else f"theorems-random-{random}-{seed}"

    payload["passed"] = passed
    orchestrator.store.save_report(name, payload)
    _emit(payload, fmt, lambda: _rows_table("theorem checks", ["game", "check", "passed", "detail"], rows))
    if not passed:
        raise typer.Exit(1)


@app.command("interpolate-gkz")
@_guarded
def cmd_interpolate_gkz(
    ctx: typer.Context,
    source: str = typer.Option(..., "--from", help="reduction R"),
    target: str = typer.Option(..., "--to", help="nested successor S of R"),
    game: Optional[Path] = typer.Option(None, "--game"),
    catalog: Optional[str] = typer.Option(None, "--catalog"),
    fmt: OutputFormat = typer.Option(OutputFormat.AUTO, "--format"),
) -> None:
    g = _orchestrator(ctx).load_game(game, catalog)
    chain = gkz_interpolate(g, g.parse_reduction(source), g.parse_reduction(target))
    payload = {"chain": [str(R) for R in chain], "links": len(chain) - 1}
    _emit(payload, fmt, lambda: _rows_table("GKZ chain", ["#", "reduction"], [[k, R] for k, R in enumerate(chain)]))


@catalog_app.command("list")
@_guarded
def cmd_catalog_list(fmt: OutputFormat = typer.Option(OutputFormat.AUTO, "--format")) -> None:
    entries = list_entries()
    _emit({"entries": entries}, fmt, lambda: _rows_table(
        "catalog",
        ["id", "aliases", "title"],
        [[e["id"], ", ".join(e["aliases"]), e["title"]] for e in entries],
    ))


@catalog_app.command("verify")
@_guarded
def cmd_catalog_verify(
    ctx: typer.Context,
    entry: str = typer.Argument("all"),
    fmt: OutputFormat = typer.Option(OutputFormat.AUTO, "--format"),
) -> None:
    reports = verify_catalog(entry)
    payload = {"reports": [r.to_dict() for r in reports], "passed": all(r.passed for r in reports)}
    _orchestrator(ctx).store.save_report(f"catalog-{entry}", payload)
    _emit(payload, fmt, lambda: _rows_table(
        "catalog fixtures",
        ["entry", "fixture", "passed", "truncation", "detail"],
        [
            [f.entry, f.name, f.passed, "-" if f.truncation_stable is None else ("stable" if f.truncation_stable else "infinite only"), f.detail]
            for r in reports for f in r.fixtures
        ],
    ))
    if not payload["passed"]:
        raise typer.Exit(1)


@catalog_app.command("probe")
@_guarded
def cmd_catalog_probe(
    ctx: typer.Context,
    entry: str = typer.Argument("all"),
    depth: Optional[int] = typer.Option(None, "--depth"),
    fmt: OutputFormat = typer.Option(OutputFormat.AUTO, "--format"),
) -> None:
    reports = cross_validate_catalog(entry, depth or _orchestrator(ctx).settings.PROBE_DEPTH)
    payload = {"reports": [r.to_dict() for r in reports], "passed": all(r.passed for r in reports)}
    _emit(payload, fmt, lambda: _rows_table(
        "oracle probe",
        ["entry", "depth", "queries", "mismatches"],
        [[r.entry, r.depth, r.queries, len(r.mismatches)] for r in reports],
    ))
    if not payload["passed"]:
        raise typer.Exit(1)


if __name__ == "__main__":
    app()
