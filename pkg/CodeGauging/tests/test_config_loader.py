"""Unit tests for config_loader.py"""

from __future__ import annotations

import json

import pytest

from utils.config_loader import ENV_OVERRIDES, ConfigLoader


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    for suffix in ENV_OVERRIDES:
        monkeypatch.delenv(f"CODEGAUGING_{suffix}", raising=False)


@pytest.fixture
def config_dir(tmp_path):
    defaults = {"system": {"threads": 1, "seed": 0}, "search": {"cap": 1024, "locality_bound": 8}}
    (tmp_path / "default_config.json").write_text(json.dumps(defaults))
    (tmp_path / "search_config.json").write_text(json.dumps({"cap": 64}))
    return tmp_path


def test_bundled_defaults() -> None:
    loader = ConfigLoader()
    assert loader.get_search_config()["cap"] == 1 << 28
    assert loader.get_system_config()["threads"] == 1
    assert set(loader.all_sections()) == {"system", "search", "gauging", "barriers", "output"}


def test_section_files_overlay_defaults(config_dir) -> None:
    loader = ConfigLoader(str(config_dir))
    search = loader.load_config("search")
    assert search == {"cap": 64, "locality_bound": 8}
    assert loader.load_config("missing") == {}


def test_environment_overrides(config_dir, monkeypatch: pytest.MonkeyPatch) -> None:
    """CODEGAUGING_* variables win over files; unparseable values are ignored."""
    monkeypatch.setenv("CODEGAUGING_THREADS", "4")
    monkeypatch.setenv("CODEGAUGING_CAP", "lots")
    loader = ConfigLoader(str(config_dir))
    assert loader.get_system_config()["threads"] == 4
    assert loader.get_search_config()["cap"] == 64
    assert loader.get_env_override("threads", int) == 4
    assert loader.get_env_override("seed", int) is None


def test_broken_files_fall_back(tmp_path) -> None:
    (tmp_path / "default_config.json").write_text("{not json")
    assert ConfigLoader(str(tmp_path)).default_config == {}

    (tmp_path / "default_config.json").write_text(json.dumps({"search": {"cap": 8}}))
    (tmp_path / "search_config.json").write_text("[")
    assert ConfigLoader(str(tmp_path)).load_config("search") == {"cap": 8}

    assert ConfigLoader(str(tmp_path / "nowhere")).default_config == {}
