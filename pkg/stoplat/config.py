from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import ConfigError
from .poset import MAX_ELEMENTS

DEFAULT_SEED = 20090601
THREADS_ENV = "STOPLAT_THREADS"


@dataclass(frozen=True)
class Limits:
    max_ground_set: int = MAX_ELEMENTS
    npo_count_limit: int = 10
    npo_stream_limit: int = 6
    structure_limit: int = 5
    bps_table_limit: int = 12
    bps_exponent_limit: int = 60
    computed_count_limit: int = 7
    theorem5_limit: int = 12


@dataclass(frozen=True)
class EngineConfig:
    threads: int = 0
    seed: int = DEFAULT_SEED
    limits: Limits = field(default_factory=Limits)


def threads_from_env(environ: Optional[Mapping[str, str]] = None) -> int:
    env = os.environ if environ is None else environ
    raw = env.get(THREADS_ENV, "").strip()
    if not raw:
        return 0
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ConfigError(f"{THREADS_ENV} must be >= 0, got {value}")
    return value


def resolve_workers(threads: int, tasks: int) -> int:
    # 0 means one worker per CPU.
    if tasks <= 1:
        return 1
    if threads <= 0:
        return max(1, min(tasks, os.cpu_count() or 1))
    return max(1, min(tasks, threads))
