import json
import os
import threading

from dgcyclic.cache import ENV_VAR, DiskCache, cache_dir


def test_env_var_sets_directory(cache_dir):
    assert cache_dir == cache_dir.__class__(os.environ[ENV_VAR])
    c = DiskCache(version="t")
    c.put("h", "kind", {"w": [0, 1]}, {"v": 1})
    assert c.get("h", "kind", {"w": [0, 1]}) == {"v": 1}
    assert list(cache_dir.rglob("*.json"))


def test_keys_separate_inputs_and_windows(cache_dir):
    c = DiskCache()
    c.put("h1", "k", {"w": 1}, 1)
    assert c.get("h2", "k", {"w": 1}) is None
    assert c.get("h1", "k", {"w": 2}) is None
    assert c.get("h1", "other", {"w": 1}) is None


def test_memo_computes_once(cache_dir):
    calls = []
    c = DiskCache()

    def compute():
        calls.append(1)
        return [1, 2]

    assert c.memo("h", "k", {}, compute) == [1, 2]
    assert c.memo("h", "k", {}, compute) == [1, 2]
    assert len(calls) == 1


def test_disabled_cache_writes_nothing(cache_dir):
    c = DiskCache(enabled=False)
    c.put("h", "k", {}, 1)
    assert c.get("h", "k", {}) is None
    assert not cache_dir.exists()


def test_no_partial_files_after_concurrent_writes(cache_dir):
    c = DiskCache()
    payload = {"rows": list(range(2000))}

    def write():
        for _ in range(20):
            c.put("h", "k", {}, payload)

    threads = [threading.Thread(target=write) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    files = list(cache_dir.rglob("*"))
    assert not [f for f in files if f.suffix == ".tmp"]
    for f in files:
        if f.is_file():
            assert json.loads(f.read_text()) == payload


def test_corrupt_entry_is_a_miss(cache_dir):
    c = DiskCache()
    c.put("h", "k", {}, 1)
    path = next(cache_dir.rglob("*.json"))
    path.write_text("{not json")
    assert c.get("h", "k", {}) is None


def test_default_location(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert cache_dir().name == "dgcyclic"
