from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import Generator

import pytest

ROOT_DIR = Path(__file__).resolve().parents[1]
if str(ROOT_DIR) not in sys.path:
    sys.path.insert(0, str(ROOT_DIR))

CORPUS_DIR = ROOT_DIR / "corpus"


@pytest.fixture(scope="session", autouse=True)
def configure_env() -> Generator[None, None, None]:
    os.environ.setdefault("LIEKIT_THREADS", "1")
    os.environ.setdefault("LIEKIT_STRUCTLOG_LEVEL", "WARNING")
    os.environ.setdefault("LIEKIT_SEARCH_CHUNK_SIZE", "16")

    from liekit.config import get_settings

    get_settings.cache_clear()
    get_settings()

    yield

    get_settings.cache_clear()


@pytest.fixture
def q():
    from liekit.field import FieldSpec

    return FieldSpec.rationals()


@pytest.fixture
def f2():
    from liekit.field import FieldSpec

    return FieldSpec.prime(2)


@pytest.fixture
def f3():
    from liekit.field import FieldSpec

    return FieldSpec.prime(3)


@pytest.fixture
def f5():
    from liekit.field import FieldSpec

    return FieldSpec.prime(5)


@pytest.fixture
def h3(q):
    """Heisenberg algebra over Q, scaled by phi = {h: 1, k: 2}."""
    from liekit.algebra import Kind
    from liekit.constructions import heisenberg_base, trivial_from_base

    return trivial_from_base(heisenberg_base(q), {"h": 1, "k": 2}, Kind.FIRST, q)


@pytest.fixture
def h3_f5(f5):
    from liekit.algebra import Kind
    from liekit.constructions import heisenberg_base, trivial_from_base

    return trivial_from_base(heisenberg_base(f5), {"h": 1, "k": 2}, Kind.FIRST, f5)


@pytest.fixture
def sl2_f5(f5):
    from liekit.algebra import Kind
    from liekit.constructions import sl2_base, trivial_from_base

    return trivial_from_base(sl2_base(f5), {"h": 1, "k": 2}, Kind.FIRST, f5)


@pytest.fixture
def leibniz(q):
    from liekit.algebra import Kind
    from liekit.constructions import leibniz2_base, trivial_from_base

    return trivial_from_base(leibniz2_base(q), {"h": 1, "k": 2}, Kind.SECOND, q)


@pytest.fixture
def leibniz_f5(f5):
    from liekit.algebra import Kind
    from liekit.constructions import leibniz2_base, trivial_from_base

    return trivial_from_base(leibniz2_base(f5), {"h": 1, "k": 2}, Kind.SECOND, f5)


@pytest.fixture
def super11(q):
    from liekit.algebra import Kind
    from liekit.constructions import SUPER11_GRADING, super11_base, trivial_from_base

    return trivial_from_base(super11_base(q), {"h": 1, "k": 2}, Kind.SUPER_FIRST, q, SUPER11_GRADING)


@pytest.fixture
def sl2_third(f5):
    from liekit.algebra import EndoSets, Kind
    from liekit.constructions import sl2_base, trivial_from_base
    from liekit.linear import identity

    i3 = identity(3, f5)
    endos = EndoSets((i3,), (i3,), (i3,))
    return trivial_from_base(sl2_base(f5), {"h": 1}, Kind.THIRD, f5, endos=endos)


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR
