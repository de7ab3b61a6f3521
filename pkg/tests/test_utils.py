from unittest.mock import patch

import numba
import pytest

from utils.config import config, config_path, default_config, load_config
from utils.misc import split_tokens, thread_count

def test_test_config_is_used():
    assert config_path().endswith("test_config.yaml")
    assert config["generator"]["chunk_rows"] == 7

def test_missing_keys_use_defaults(tmp_path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv("MBMOD_THREADS", raising=False)
    path = tmp_path / "config.yaml"
    path.write_text("debug: true\ngenerator:\n  max_retries: 3\n")
    loaded = load_config(str(path))
    assert loaded["debug"] is True
    assert loaded["generator"]["max_retries"] == 3
    assert loaded["generator"]["chunk_rows"] == default_config["generator"]["chunk_rows"]
    assert loaded["oracle"] == default_config["oracle"]

def test_missing_file(tmp_path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv("MBMOD_THREADS", raising=False)
    assert load_config(str(tmp_path / "absent.yaml")) == default_config

def test_thread_override(tmp_path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("MBMOD_THREADS", "3")
    assert load_config(str(tmp_path / "absent.yaml"))["threads"] == 3

def test_thread_count():
    available = numba.config.NUMBA_NUM_THREADS
    with patch.dict(config, {"threads": 0}):
        assert thread_count() == available
    with patch.dict(config, {"threads": available + 5}):
        assert thread_count() == available
    with patch.dict(config, {"threads": 1}):
        assert thread_count() == 1

def test_split_tokens():
    assert split_tokens(" v0, ,v2,") == ["v0", "v2"]
    assert split_tokens("") == []
