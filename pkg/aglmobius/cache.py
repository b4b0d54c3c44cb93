"""On-disk cache for catalogs and Moebius tables.

Each file is a versioned JSON CacheEnvelope. The envelope carries the
field fingerprint (p, n, modulus, gamma); a file whose fingerprint or
schema version differs from the current build is ignored and rebuilt.
"""

import logging
import os
import tempfile
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from . import config
from .agl_mobius import AglMuTable, mu_table_closed
from .errors import CacheIOError
from .gf import FieldSpec
from .schemas import (
    CacheEnvelope, SubgroupRecord, catalog_records, field_fingerprint, subgroup_from_record,
)
from .subgroups import GroupCatalog, enumerate_all

logger = logging.getLogger("aglmobius.cache")

PathLike = Union[str, Path]


def cache_path(cache_dir: PathLike, spec: FieldSpec, kind: str) -> Path:
    return Path(cache_dir) / f"agl_q{spec.q}_p{spec.p}_{kind}.json"


def _write(path: Path, envelope: CacheEnvelope) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(envelope.model_dump_json())
        os.replace(tmp, path)
    except OSError as e:
        raise CacheIOError(f"cannot write cache file {path}: {e}") from e
    logger.info("cache written: %s", path)


def _read(path: Path, spec: FieldSpec, kind: str) -> Optional[CacheEnvelope]:
    """Load an envelope, or None when it is missing, stale or unreadable as a cache."""
    if not path.exists():
        return None
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise CacheIOError(f"cannot read cache file {path}: {e}") from e
    try:
        envelope = CacheEnvelope.model_validate_json(text)
    except ValidationError as e:
        logger.warning("ignoring malformed cache file %s: %s", path, e.errors()[0].get("msg", e))
        return None
    if envelope.schema_version != config.CACHE_SCHEMA_VERSION:
        logger.warning("ignoring cache file %s: schema version %d != %d",
                       path, envelope.schema_version, config.CACHE_SCHEMA_VERSION)
        return None
    if envelope.fingerprint != field_fingerprint(spec) or envelope.kind != kind:
        logger.warning("ignoring cache file %s: fingerprint mismatch", path)
        return None
    return envelope


def save_catalog(catalog: GroupCatalog, cache_dir: PathLike) -> Path:
    path = cache_path(cache_dir, catalog.spec, "catalog")
    envelope = CacheEnvelope(
        schema_version=config.CACHE_SCHEMA_VERSION,
        fingerprint=field_fingerprint(catalog.spec),
        kind="catalog",
        payload={"subgroups": [r.model_dump() for r in catalog_records(catalog)]},
    )
    _write(path, envelope)
    return path


def load_catalog(spec: FieldSpec, cache_dir: PathLike) -> Optional[GroupCatalog]:
    envelope = _read(cache_path(cache_dir, spec, "catalog"), spec, "catalog")
    if envelope is None:
        return None
    try:
        records = [SubgroupRecord.model_validate(r) for r in envelope.payload["subgroups"]]
        catalog = GroupCatalog(spec, [subgroup_from_record(spec, r) for r in records])
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        logger.warning("ignoring catalog cache for q=%d: %s", spec.q, e)
        return None
    logger.info("catalog for q=%d loaded from cache (%d subgroups)", spec.q, len(records))
    return catalog


def save_table(table: AglMuTable, cache_dir: PathLike) -> Path:
    spec = table.catalog.spec
    path = cache_path(cache_dir, spec, "table")
    envelope = CacheEnvelope(
        schema_version=config.CACHE_SCHEMA_VERSION,
        fingerprint=field_fingerprint(spec),
        kind="table",
        payload={"subgroup_count": len(table.catalog), "mu": [list(e) for e in table.entries()]},
    )
    _write(path, envelope)
    return path


def load_table(catalog: GroupCatalog, cache_dir: PathLike) -> Optional[AglMuTable]:
    spec = catalog.spec
    envelope = _read(cache_path(cache_dir, spec, "table"), spec, "table")
    if envelope is None:
        return None
    payload = envelope.payload
    if payload.get("subgroup_count") != len(catalog):
        logger.warning("ignoring table cache for q=%d: catalog size changed", spec.q)
        return None
    try:
        mu = {(int(i), int(j)): int(v) for i, j, v in payload["mu"]}
    except (KeyError, TypeError, ValueError) as e:
        logger.warning("ignoring table cache for q=%d: %s", spec.q, e)
        return None
    if set(mu) != {(i, j) for i in range(len(catalog)) for j in catalog.up_set(i)}:
        logger.warning("ignoring table cache for q=%d: pairs do not match the catalog", spec.q)
        return None
    logger.info("table for q=%d loaded from cache (%d pairs)", spec.q, len(mu))
    return AglMuTable(catalog, mu, source="closed")


def get_catalog(spec: FieldSpec, cache_dir: Optional[PathLike] = None, use_cache: bool = False) -> GroupCatalog:
    """Catalog from the cache when enabled and valid, otherwise built (and stored)."""
    if use_cache:
        directory = cache_dir or config.CACHE_DIR
        catalog = load_catalog(spec, directory)
        if catalog is None:
            catalog = enumerate_all(spec)
            save_catalog(catalog, directory)
        return catalog
    return enumerate_all(spec)


def get_table(catalog: GroupCatalog, cache_dir: Optional[PathLike] = None, use_cache: bool = False,
              jobs: Optional[int] = None) -> AglMuTable:
    if use_cache:
        directory = cache_dir or config.CACHE_DIR
        table = load_table(catalog, directory)
        if table is None:
            table = mu_table_closed(catalog, jobs=jobs)
            save_table(table, directory)
        return table
    return mu_table_closed(catalog, jobs=jobs)
