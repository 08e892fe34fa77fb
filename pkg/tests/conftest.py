# tests/conftest.py
import json
from pathlib import Path

import numpy as np
import pytest

from src.models.schemas import GeneratorKind, GeneratorSpec
from src.services.graph_core import generate, parse_generator_spec
from src.utils.config import reset_settings

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def test_settings(monkeypatch, tmp_path):
    """Every test runs on the 'test' settings section from inside tmp_path"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("SYNCLAB_ENV", "test")
    for name in ("SYNCLAB_TOL", "SYNCLAB_SOLVER", "SYNCLAB_WORKERS", "SYNCLAB_LOG_LEVEL", "SYNCLAB_LOG_DIR"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def graph():
    """Build a graph from a generator string, e.g. graph('cycle:6')"""
    return lambda text: generate(parse_generator_spec(text))


@pytest.fixture
def cycle():
    return lambda n: generate(GeneratorSpec(kind=GeneratorKind.CYCLE, n=n))


@pytest.fixture
def petersen():
    return generate(GeneratorSpec(kind=GeneratorKind.PETERSEN))


@pytest.fixture
def rng():
    """Seeded generator for random graph factories"""
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def reference_values():
    """Published eigenratios and eigenvalues of the named graphs"""
    with open(FIXTURES_DIR / "reference_values.json") as f:
        return json.load(f)
