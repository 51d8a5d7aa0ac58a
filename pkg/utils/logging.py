from __future__ import annotations

import enum
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, TextIO

import structlog


def _json_default(value: Any) -> Any:
    """Exact scalars, paths and enums as strings; anything else via ``repr``."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    return repr(value)


def setup_logging(level: str = "WARNING", stream: TextIO | None = None) -> None:
    """Configure structlog to emit one sorted JSON object per event.

    Events go to standard error unless ``stream`` is given; standard output
    is reserved for the CLI report.
    """
    numeric = getattr(logging, level.upper(), logging.WARNING)
    logging.basicConfig(
        format="%(message)s",
        stream=stream or sys.stderr,
        level=numeric,
        force=True,
    )

    processors: list[structlog.types.Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.EventRenamer("message"),
        structlog.processors.JSONRenderer(sort_keys=True, default=_json_default),
    ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )
