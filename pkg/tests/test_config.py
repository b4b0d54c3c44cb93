# Tests for config module

"""Tests for the configuration module."""

import importlib

from aglmobius import config


class TestConfigLoading:
    """Tests for configuration loading."""

    def test_size_caps_are_positive(self):
        for name in ("FIELD_SIZE_CAP", "CATALOG_MAX_Q", "CONTAINMENT_MATRIX_MAX_Q", "ORACLE_MAX_SUBGROUPS",
                     "CROSSCUT_MAX_SIZE", "CLOSURE_MAX_Q", "EULERIAN_BRUTE_MAX_Q", "SUBSPACE_CHECK_MAX_Q"):
            value = getattr(config, name)
            assert isinstance(value, int)
            assert value > 0

    def test_caps_cover_acceptance_fields(self):
        assert config.CATALOG_MAX_Q >= 27
        assert config.CLOSURE_MAX_Q >= 9
        assert config.EULERIAN_BRUTE_MAX_Q >= 7
        assert config.SUBSPACE_CHECK_MAX_Q >= 27
        assert config.CROSSCUT_MAX_SIZE >= 25

    def test_containment_matrix_default(self, monkeypatch):
        monkeypatch.delenv("AGL_CONTAINMENT_MATRIX_MAX_Q", raising=False)
        try:
            assert importlib.reload(config).CONTAINMENT_MATRIX_MAX_Q == 128
        finally:
            monkeypatch.undo()
            importlib.reload(config)

    def test_cache_settings(self):
        assert config.CACHE_DIR is None or isinstance(config.CACHE_DIR, str)
        assert isinstance(config.CACHE_SCHEMA_VERSION, int)
        assert config.CACHE_SCHEMA_VERSION >= 1

    def test_jobs_default(self):
        assert isinstance(config.JOBS, int)
        assert config.JOBS >= 1

    def test_log_level_default(self):
        """Test that LOG_LEVEL has a default value."""
        assert isinstance(config.LOG_LEVEL, str)
        assert config.LOG_LEVEL.upper() in ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']

    def test_log_to_file_is_bool(self):
        assert isinstance(config.LOG_TO_FILE, bool)

    def test_app_name_default(self):
        """Test that APP_NAME has a default value."""
        assert isinstance(config.APP_NAME, str)
        assert len(config.APP_NAME) > 0

    def test_app_version_default(self):
        """Test that APP_VERSION has a default value."""
        assert isinstance(config.APP_VERSION, str)
        assert len(config.APP_VERSION) > 0

    def test_env_bool(self, monkeypatch):
        monkeypatch.setenv("AGL_TEST_FLAG", "Yes")
        assert config._env_bool("AGL_TEST_FLAG", "false") is True
        monkeypatch.setenv("AGL_TEST_FLAG", "0")
        assert config._env_bool("AGL_TEST_FLAG", "true") is False
