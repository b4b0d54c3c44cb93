# Tests for cache module

"""Tests for CacheEnvelope persistence of catalogs and tables."""

import json

import pytest

from aglmobius import config
from aglmobius.cache import (
    cache_path, get_catalog, get_table, load_catalog, load_table, save_catalog, save_table,
)
from aglmobius.errors import CacheIOError


class TestCatalogCache:
    """Tests for catalog round trips."""

    def test_round_trip(self, catalog4, tmp_path):
        path = save_catalog(catalog4, tmp_path)
        assert path == cache_path(tmp_path, catalog4.spec, "catalog")
        assert path.name == "agl_q4_p2_catalog.json"
        loaded = load_catalog(catalog4.spec, tmp_path)
        assert loaded is not None
        assert loaded.subgroups == catalog4.subgroups

    def test_missing_file(self, f4, tmp_path):
        assert load_catalog(f4, tmp_path) is None

    def test_malformed_file_is_ignored(self, catalog4, tmp_path):
        path = cache_path(tmp_path, catalog4.spec, "catalog")
        path.write_text("{not json", encoding="utf-8")
        assert load_catalog(catalog4.spec, tmp_path) is None

    def test_schema_version_mismatch(self, catalog4, tmp_path):
        path = save_catalog(catalog4, tmp_path)
        data = json.loads(path.read_text(encoding="utf-8"))
        data["schema_version"] = config.CACHE_SCHEMA_VERSION + 1
        path.write_text(json.dumps(data), encoding="utf-8")
        assert load_catalog(catalog4.spec, tmp_path) is None

    def test_fingerprint_mismatch(self, catalog4, tmp_path):
        path = save_catalog(catalog4, tmp_path)
        data = json.loads(path.read_text(encoding="utf-8"))
        data["fingerprint"]["gamma"] = [1, 1]
        path.write_text(json.dumps(data), encoding="utf-8")
        assert load_catalog(catalog4.spec, tmp_path) is None

    def test_get_catalog_writes_once(self, f4, tmp_path):
        first = get_catalog(f4, tmp_path, use_cache=True)
        path = cache_path(tmp_path, f4, "catalog")
        assert path.exists()
        stamp = path.stat().st_mtime_ns
        second = get_catalog(f4, tmp_path, use_cache=True)
        assert second.subgroups == first.subgroups
        assert path.stat().st_mtime_ns == stamp

    def test_bad_subgroup_entry_is_rebuilt(self, catalog4, tmp_path):
        path = save_catalog(catalog4, tmp_path)
        data = json.loads(path.read_text(encoding="utf-8"))
        data["payload"]["subgroups"][1]["b"] = "not-an-element"
        path.write_text(json.dumps(data), encoding="utf-8")
        assert load_catalog(catalog4.spec, tmp_path) is None
        assert get_catalog(catalog4.spec, tmp_path, use_cache=True).subgroups == catalog4.subgroups
        assert load_catalog(catalog4.spec, tmp_path) is not None

    def test_get_catalog_without_cache(self, f4, tmp_path):
        get_catalog(f4, tmp_path, use_cache=False)
        assert not any(tmp_path.iterdir())


class TestTableCache:
    """Tests for table round trips."""

    def test_round_trip(self, catalog4, table4, tmp_path):
        save_table(table4, tmp_path)
        assert load_table(catalog4, tmp_path) == table4

    def test_get_table(self, catalog4, table4, tmp_path):
        assert get_table(catalog4, tmp_path, use_cache=True) == table4
        assert cache_path(tmp_path, catalog4.spec, "table").exists()
        assert get_table(catalog4, tmp_path, use_cache=True) == table4

    @pytest.mark.parametrize("bad", [[0, 1], [0, "x", 1], None])
    def test_malformed_triple_is_rebuilt(self, catalog4, table4, tmp_path, bad):
        path = save_table(table4, tmp_path)
        data = json.loads(path.read_text(encoding="utf-8"))
        data["payload"]["mu"][0] = bad
        path.write_text(json.dumps(data), encoding="utf-8")
        assert load_table(catalog4, tmp_path) is None
        assert get_table(catalog4, tmp_path, use_cache=True) == table4
        assert load_table(catalog4, tmp_path) == table4

    def test_missing_pair_is_ignored(self, catalog4, table4, tmp_path):
        path = save_table(table4, tmp_path)
        data = json.loads(path.read_text(encoding="utf-8"))
        data["payload"]["mu"].pop()
        path.write_text(json.dumps(data), encoding="utf-8")
        assert load_table(catalog4, tmp_path) is None

    def test_write_failure(self, table4, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x", encoding="utf-8")
        with pytest.raises(CacheIOError):
            save_table(table4, blocker / "sub")
