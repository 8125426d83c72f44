import logging
from typing import Dict, List, Type

from catalog.base import CatalogEntry, CatalogReport
from catalog.identity_games import ClosedUnitEntry, GkzOmegaEntry, OpenIntervalEntry
from catalog.interval_games import NotAllBoundedEntry, UnboundedAtLimitEntry
from catalog.min_games import ClosureStarEntry, OrderIndependentEntry, PropertyCEntry
from utils.errors import UnknownCatalogEntryError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

CATALOG: Dict[str, Type[CatalogEntry]] = {
    cls.id: cls
    for cls in (
        OpenIntervalEntry,
        UnboundedAtLimitEntry,
        OrderIndependentEntry,
        NotAllBoundedEntry,
        PropertyCEntry,
        ClosureStarEntry,
        GkzOmegaEntry,
        ClosedUnitEntry,
    )
}

ALIASES: Dict[str, str] = {alias: cls.id for cls in CATALOG.values() for alias in cls.aliases}


def resolve(name: str) -> str:
    entry_id = ALIASES.get(name, name)
    if entry_id not in CATALOG:
        logger.error(f"Unknown catalog entry '{name}'")
        raise UnknownCatalogEntryError(
            f"unknown catalog entry '{name}'; known: {', '.join(sorted(CATALOG))}", entry=name
        )
    return entry_id


def instantiate(name: str) -> CatalogEntry:
    return CATALOG[resolve(name)]()


def list_entries() -> List[dict]:
    return [cls().describe() for cls in CATALOG.values()]


def verify_catalog(name: str = "all") -> List[CatalogReport]:
    """Run the fixtures of one entry, or of every entry for "all"."""
    names = list(CATALOG) if name == "all" else [resolve(name)]
    reports = [instantiate(n).verify() for n in names]
    failed = [r.entry for r in reports if not r.passed]
    if failed:
        logger.warning(f"Catalog fixtures failed for: {', '.join(failed)}")
    else:
        logger.info(f"All fixtures passed for {len(reports)} catalog entries")
    return reports
