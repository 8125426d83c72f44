import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import os
import sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from config import settings
from engine.trace import EliminationTrace
from games.game import Game
from utils.json_helper import read_json, read_json_lines, write_json, write_json_lines

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


class ArtifactStore:
    """Traces as JSON lines and reports as JSON documents under one output directory."""

    def __init__(self, base_dir: Optional[Union[str, Path]] = None) -> None:
        self.base_dir = Path(base_dir or settings.OUTPUT_DIR)
        self.base_dir.mkdir(parents=True, exist_ok=True)
        logger.info(f"[{self.__class__.__name__}] Writing artifacts to {self.base_dir}")

    def _path(self, name: str, suffix: str) -> Path:
        return self.base_dir / f"{name}{suffix}"

    def save_trace(self, name: str, trace: EliminationTrace) -> Path:
        path = self._path(name, ".trace.jsonl")
        write_json_lines(path, trace.to_json_lines())
        logger.info(f"[{self.__class__.__name__}] Trace '{name}' saved ({len(trace.stages)} stages).")
        return path

    def load_trace(self, name: str, game: Game) -> EliminationTrace:
        path = self._path(name, ".trace.jsonl")
        trace = EliminationTrace.from_json_lines(read_json_lines(path), game)
        logger.info(f"[{self.__class__.__name__}] Trace '{name}' loaded from {path}.")
        return trace

    def save_report(self, name: str, report: Dict[str, Any]) -> Path:
        path = self._path(name, ".json")
        write_json(path, report)
        logger.info(f"[{self.__class__.__name__}] Report '{name}' saved.")
        return path

    def load_report(self, name: str) -> Dict[str, Any]:
        path = self._path(name, ".json")
        if not path.exists():
            logger.warning(f"[{self.__class__.__name__}] No report named '{name}' in {self.base_dir}.")
            return {}
        return read_json(path)
