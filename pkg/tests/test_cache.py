import json
import multiprocessing
import os
import signal
import sys
import time

import pytest

from src.core.errors import CacheError, CacheIntegrityError, CacheSchemaError
from src.core.models import CacheEntry, Variant
from src.oracle.cache import GENERATOR_VERSION, SCHEMA_VERSION, OracleCache, canonical_payload, render_entry
from src.oracle.tables import run_oracle


@pytest.fixture
def cache(tmp_path):
    return OracleCache(tmp_path / "cache", lock_timeout=0.2)


def test_store_then_load(cache):
    entry = run_oracle(4, workers=1)
    path = cache.store(entry)
    assert path.name == "all-n4.json"
    loaded = cache.load(Variant.ALL, 4)
    assert loaded.q == entry.q and loaded.counts == entry.counts
    assert canonical_payload(loaded) == canonical_payload(entry)
    assert cache.load(Variant.ALL, 5) is None
    # 临时文件和锁文件都不应残留
    assert sorted(p.name for p in path.parent.iterdir()) == ["all-n4.json"]


def test_run_oracle_fills_and_reuses_cache(cache):
    first = run_oracle(3, Variant.WEAKLY_DECREASING, cache=cache)
    assert cache.path_for(Variant.WEAKLY_DECREASING, 3).exists()
    second = run_oracle(3, Variant.WEAKLY_DECREASING, cache=cache)
    assert second == cache.load(Variant.WEAKLY_DECREASING, 3)
    assert canonical_payload(first) == canonical_payload(second)


def test_rendered_layout_is_stable():
    entry = run_oracle(2, workers=1)
    text = render_entry(entry)
    assert text.startswith('{\n  "schema_version": 1,\n  "variant": "all",\n  "n": 2,\n')
    assert '  "q": [\n    [2, 1],\n    [1, 1]\n  ]\n}\n' in text
    assert json.loads(text)["counts"] == [1, 2]


def test_canonical_payload_ignores_wall_time():
    entry = run_oracle(3, workers=1)
    slower = entry.model_copy(update={"wall_time_seconds": entry.wall_time_seconds + 5})
    assert canonical_payload(entry) == canonical_payload(slower)
    assert render_entry(entry) != render_entry(slower)


def test_corrupt_file_names_the_file(cache):
    path = cache.path_for(Variant.ALL, 3)
    path.parent.mkdir(parents=True)
    path.write_text("{ not json", encoding="utf-8")
    with pytest.raises(CacheIntegrityError) as excinfo:
        cache.load(Variant.ALL, 3)
    assert excinfo.value.path == path
    assert "all-n3.json" in str(excinfo.value)


def test_inconsistent_counts_are_rejected(cache):
    entry = run_oracle(3, workers=1)
    cache.store(entry.model_copy(update={"leaves": entry.leaves + 1}))
    with pytest.raises(CacheIntegrityError):
        cache.load(Variant.ALL, 3)


def test_schema_mismatch(cache):
    path = cache.store(run_oracle(3, workers=1))
    raw = json.loads(path.read_text(encoding="utf-8"))
    raw["schema_version"] = SCHEMA_VERSION + 1
    path.write_text(json.dumps(raw), encoding="utf-8")
    with pytest.raises(CacheSchemaError):
        cache.load(Variant.ALL, 3)


def test_stale_generator_is_ignored(cache):
    entry = run_oracle(3, workers=1)
    cache.store(entry.model_copy(update={"generator_version": GENERATOR_VERSION + "-old"}))
    assert cache.load(Variant.ALL, 3) is None


def test_lock_held_by_live_writer_times_out(cache):
    """持有者还活着时只能等到超时"""
    path = cache.path_for(Variant.ALL, 2)
    path.parent.mkdir(parents=True)
    path.with_name(path.name + ".lock").write_text(str(os.getpid()), encoding="ascii")
    with pytest.raises(CacheError):
        cache.store(run_oracle(2, workers=1))
    assert not path.exists()


@pytest.mark.skipif(sys.platform == "win32", reason="needs fork and SIGKILL")
def test_lock_of_killed_writer_is_broken(cache):
    """写者在持锁期间被 SIGKILL，之后的写入仍能成功"""
    path = cache.path_for(Variant.ALL, 3)
    path.parent.mkdir(parents=True)
    lock = path.with_name(path.name + ".lock")
    mp = multiprocessing.get_context("fork")
    held = mp.Event()

    def hold_forever():
        with cache._locked(path):
            held.set()
            time.sleep(60)

    child = mp.Process(target=hold_forever)
    child.start()
    assert held.wait(10)
    os.kill(child.pid, signal.SIGKILL)
    child.join()
    assert lock.read_text(encoding="ascii") == str(child.pid)

    cache.store(run_oracle(3, workers=1))
    assert cache.load(Variant.ALL, 3).leaves == 16
    assert not lock.exists()


def test_old_lock_without_owner_is_broken(cache):
    path = cache.path_for(Variant.ALL, 2)
    path.parent.mkdir(parents=True)
    lock = path.with_name(path.name + ".lock")
    lock.write_text("", encoding="ascii")
    past = time.time() - 3600
    os.utime(lock, (past, past))
    cache.store(run_oracle(2, workers=1))
    assert path.exists()
    assert not lock.exists()


def test_foreign_schema_is_not_written(cache):
    entry = CacheEntry(schema_version=99, variant=Variant.ALL, n=1, generator_version=GENERATOR_VERSION,
                       q=[[1]], counts=[1], leaves=1, wall_time_seconds=0.0)
    with pytest.raises(CacheSchemaError):
        cache.store(entry)
