# tests/unit/test_debug_utils.py
import json
import time
from pathlib import Path

import pytest

pytestmark = pytest.mark.unit


def test_timer_decorator():
    """Test the timer decorator functionality"""
    from src.utils.debug import timer

    @timer
    def test_function():
        time.sleep(0.01)
        return "success"

    assert test_function() == "success"


def test_timer_decorator_with_exception():
    """Test timer decorator handles exceptions properly"""
    from src.utils.debug import timer

    @timer
    def failing_function():
        raise ValueError("Test error")

    with pytest.raises(ValueError, match="Test error"):
        failing_function()


def test_debug_dump():
    """Test debug data dumping functionality"""
    from src.utils.debug import debug_dump

    test_data = {"claim_id": "L1", "instance": "n=5 m=5 edge=0-2", "witness": {"max_drop": 0.0}}

    path = debug_dump(test_data, "test_dump")

    assert path.parent == Path("debug_output")
    assert path.name.startswith("test_dump_")
    with open(path) as f:
        assert json.load(f) == test_data


def test_debug_dump_custom_dir_and_numpy_values(tmp_path):
    """Values json cannot encode natively are written as strings"""
    import numpy as np

    from src.utils.debug import debug_dump

    path = debug_dump({"values": np.array([0.0, 2.0])}, "spectrum", str(tmp_path / "dumps"))

    assert path.parent == tmp_path / "dumps"
    assert json.loads(path.read_text())["values"] == "[0. 2.]"


def test_debug_context_success():
    """Test DebugContext for successful operations"""
    from src.utils.debug import DebugContext

    with DebugContext("test_operation") as ctx:
        time.sleep(0.01)
        result = "completed"

    assert result == "completed"
    assert ctx.start_time is not None
    assert not Path("debug_output").exists()


def test_debug_context_with_exception():
    """Test DebugContext handles exceptions and creates debug files"""
    from src.utils.debug import DebugContext

    with pytest.raises(ValueError), DebugContext("failing_operation"):
        raise ValueError("Test failure")

    error_files = list(Path("debug_output").glob("error_failing_operation_*.json"))
    assert len(error_files) == 1

    with open(error_files[0]) as f:
        error_data = json.load(f)

    assert error_data["operation"] == "failing_operation"
    assert "Test failure" in error_data["error"]
    assert "traceback" in error_data


def test_failed_claim_dumped_when_enabled(monkeypatch):
    """A FAIL report is written to the debug directory when dump_failures is on"""
    from src.services.verify import sample_ratio_bound
    from src.utils.config import Settings, get_settings

    settings = get_settings().model_copy(
        update={"debug": get_settings().debug.model_copy(update={"dump_failures": True, "output_dir": "dumps"})}
    )
    assert isinstance(settings, Settings)
    monkeypatch.setattr("src.services.verify.get_settings", lambda: settings)

    report = sample_ratio_bound(5, 6, 500, seed=3, bound=0.3)

    assert report.status.value == "FAIL"
    dumps = list(Path("dumps").glob("claim_T2_SAMPLE_*.json"))
    assert len(dumps) == 1
    assert json.loads(dumps[0].read_text())["claim_id"] == "T2_SAMPLE"
