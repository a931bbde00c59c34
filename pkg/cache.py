"""JSON-lines result cache for prmforge runs."""

import json
import logging
import os
import re
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from config import SCHEMA_VERSION
from errors import CacheCorrupt

logger = logging.getLogger(__name__)

CACHE_FILENAME = "runs.jsonl"
KEY_FIELDS = ("command", "q", "d", "m", "r", "mode", "seed")


@dataclass
class RunRecord:
    """One cached command result."""
    command: str
    parameters: dict[str, Any]
    payload: dict[str, Any]
    elapsed_sec: float
    seed: Optional[int] = None
    schema_version: int = SCHEMA_VERSION
    created: float = field(default_factory=time.time)

    @property
    def key(self) -> tuple:
        return cache_key(self.command, self.parameters, self.seed, self.schema_version)


def cache_key(command: str, parameters: dict[str, Any], seed: Optional[int] = None,
              schema_version: int = SCHEMA_VERSION) -> tuple:
    """Canonical (subcommand, q, d, m, r, mode, seed, schema_version) tuple."""
    values = {"command": command, "seed": seed, **parameters}
    return tuple(values.get(name) for name in KEY_FIELDS) + (schema_version,)


def _decode(line: str) -> RunRecord:
    try:
        data = json.loads(line)
        return RunRecord(**data)
    except (json.JSONDecodeError, TypeError) as exc:
        raise CacheCorrupt(f"undecodable cache line: {exc}") from exc


class ResultCache:
    """Append-only store; the last record written for a key wins on read."""

    def __init__(self, directory: str, schema_version: int = SCHEMA_VERSION):
        self.directory = directory
        self.schema_version = schema_version
        self.path = os.path.join(directory, CACHE_FILENAME)
        self.skipped_lines = 0

    def _records(self):
        if not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                if not line.strip():
                    continue
                try:
                    yield _decode(line)
                except CacheCorrupt as exc:
                    self.skipped_lines += 1
                    logger.warning(f"{self.path}:{lineno}: {exc}; skipped")

    def get(self, command: str, parameters: dict[str, Any], seed: Optional[int] = None) -> Optional[RunRecord]:
        key = cache_key(command, parameters, seed, self.schema_version)
        found = None
        for record in self._records():
            if record.schema_version != self.schema_version:
                continue
            if record.key == key:
                found = record
        if found:
            logger.debug(f"cache hit for {key}")
        return found

    def best_for(self, command: str, parameters: dict[str, Any], field_name: str = "er",
                 mode_pattern: Optional[str] = None) -> Optional[RunRecord]:
        """Record with the largest payload[field_name] over all seeds.

        With ``mode_pattern`` the mode must fully match that regex, so randomized
        runs of any trial count compete.
        """
        ignored = {KEY_FIELDS.index("seed")}
        if mode_pattern is not None:
            ignored.add(KEY_FIELDS.index("mode"))
        key = cache_key(command, parameters, None, self.schema_version)
        best = None
        for record in self._records():
            if record.schema_version != self.schema_version or field_name not in record.payload:
                continue
            other = record.key
            if any(a != b for i, (a, b) in enumerate(zip(other, key)) if i not in ignored):
                continue
            if mode_pattern is not None and not re.fullmatch(mode_pattern, str(record.parameters.get("mode", ""))):
                continue
            if best is None or record.payload[field_name] > best.payload[field_name]:
                best = record
        return best

    def put(self, record: RunRecord) -> RunRecord:
        record.schema_version = self.schema_version
        os.makedirs(self.directory, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as f:
            f.write(json.dumps(asdict(record), sort_keys=True) + "\n")
        logger.debug(f"cached {record.key}")
        return record


def cache_get(directory: str, command: str, parameters: dict[str, Any], seed: Optional[int] = None,
              schema_version: int = SCHEMA_VERSION) -> Optional[RunRecord]:
    return ResultCache(directory, schema_version).get(command, parameters, seed)


def cache_put(directory: str, record: RunRecord, schema_version: int = SCHEMA_VERSION) -> RunRecord:
    return ResultCache(directory, schema_version).put(record)
