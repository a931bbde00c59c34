"""Configuration management for prmforge."""

import logging
import os
from dataclasses import dataclass

import psutil
from dotenv import find_dotenv, load_dotenv

SCHEMA_VERSION = 1


@dataclass
class SearchConfig:
    """Caps and parallelism for enumerations and subspace searches."""
    point_cap: int
    subspace_cap: int
    batch_elements: int
    threads: int


@dataclass
class CacheConfig:
    """Result cache configuration."""
    directory: str
    schema_version: int


@dataclass
class AppConfig:
    """Application configuration."""
    log_level: str
    log_dir: str
    default_theme: str
    search: SearchConfig
    cache: CacheConfig


def _default_threads() -> int:
    return psutil.cpu_count(logical=False) or os.cpu_count() or 1


def default_search_config() -> SearchConfig:
    """Library defaults, independent of the environment; single-threaded."""
    return SearchConfig(point_cap=10 ** 7, subspace_cap=10 ** 10, batch_elements=1 << 22, threads=1)


def load_config() -> AppConfig:
    """Load configuration from the environment (and a .env file if present)."""
    load_dotenv(find_dotenv(usecwd=True))

    # Search configuration
    search_config = SearchConfig(
        point_cap=int(os.getenv("PRMFORGE_POINT_CAP", "10000000")),
        subspace_cap=int(float(os.getenv("PRMFORGE_SUBSPACE_CAP", "1e10"))),
        batch_elements=int(os.getenv("PRMFORGE_BATCH_ELEMENTS", str(1 << 22))),
        threads=int(os.getenv("PRMFORGE_THREADS", str(_default_threads()))),
    )

    # Cache configuration
    cache_config = CacheConfig(
        directory=os.getenv("PRMFORGE_CACHE", ""),
        schema_version=SCHEMA_VERSION,
    )

    return AppConfig(
        log_level=os.getenv("LOG_LEVEL", "WARNING").upper(),
        log_dir=os.getenv("PRMFORGE_LOG_DIR", ""),
        default_theme=os.getenv("DEFAULT_THEME", "dark"),
        search=search_config,
        cache=cache_config,
    )


def validate_config(config: AppConfig) -> list[str]:
    """Validate configuration and return list of errors."""
    errors = []

    if config.search.point_cap < 1:
        errors.append("PRMFORGE_POINT_CAP must be at least 1")
    if config.search.subspace_cap < 1:
        errors.append("PRMFORGE_SUBSPACE_CAP must be at least 1")
    if config.search.batch_elements < 1024:
        errors.append("PRMFORGE_BATCH_ELEMENTS must be at least 1024")
    if config.search.threads < 1:
        errors.append("PRMFORGE_THREADS must be at least 1")

    if config.default_theme not in ("dark", "light"):
        errors.append("DEFAULT_THEME must be 'dark' or 'light'")
    if not isinstance(logging.getLevelName(config.log_level), int):
        errors.append(f"LOG_LEVEL '{config.log_level}' is not a logging level")

    return errors


def effective_batch_elements(config: SearchConfig) -> int:
    """Batch size for vectorised mask work, shrunk when memory is tight.

    A batch element is one 64-bit mask word; keep a batch under a quarter of
    the currently available memory.
    """
    available = psutil.virtual_memory().available
    return max(1024, min(config.batch_elements, available // 32))
