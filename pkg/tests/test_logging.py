from __future__ import annotations

import io
import json
from fractions import Fraction

import structlog

from liekit.algebra import Kind
from utils.logging import setup_logging


def test_events_are_sorted_json_with_exact_values():
    buffer = io.StringIO()
    setup_logging("INFO", stream=buffer)
    try:
        structlog.get_logger("liekit.test").info("search.finished", ratio=Fraction(2, 6), kind=Kind.SECOND)
        record = json.loads(buffer.getvalue().splitlines()[-1])
    finally:
        setup_logging()
    assert record["message"] == "search.finished"
    assert record["level"] == "info"
    assert record["ratio"] == "1/3"
    assert record["kind"] == "second"


def test_level_filters_events():
    buffer = io.StringIO()
    setup_logging("WARNING", stream=buffer)
    try:
        structlog.get_logger("liekit.test").info("search.chunk_completed", start=0)
    finally:
        setup_logging()
    assert buffer.getvalue() == ""
