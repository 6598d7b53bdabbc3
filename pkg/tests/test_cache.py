import json

from torsionlab import specfun
from torsionlab.cache import FORMAT_VERSION, ZeroCache


def test_roundtrip_and_transparency(tmp_path):
    path = tmp_path / "z.json"
    cold = ZeroCache(path)
    a = cold.zeros_upto("JZero", 2.5, 40.0)
    assert a == specfun.zeros("JZero", 2.5, upto=40.0)
    cold.save()
    data = json.loads(path.read_text())
    assert data["format_version"] == FORMAT_VERSION
    assert data["zeros"]["JZero:2.5:1"] == a[0]
    warm = ZeroCache(path)
    assert warm.zeros_upto("JZero", 2.5, 40.0) == a
    assert warm.zeros_upto("JZero", 2.5, 20.0) == [z for z in a if z <= 20.0]
    assert warm.zeros_upto("JZero", 2.5, 60.0) == specfun.zeros("JZero", 2.5, upto=60.0)


def test_corrupt_cache_is_ignored(tmp_path):
    path = tmp_path / "z.json"
    path.write_text("{not json")
    c = ZeroCache(path)
    assert c.zeros_upto("JPrimeZero", 1.0, 10.0) == specfun.zeros("JPrimeZero", 1.0, upto=10.0)
    c.save()
    assert json.loads(path.read_text())["format_version"] == FORMAT_VERSION
    path.write_text(json.dumps({"format_version": 99, "zeros": {"JZero:1.0:1": 1.0}, "complete": {"JZero:1.0": 100}}))
    c = ZeroCache(path)
    assert c.zeros_upto("JZero", 1.0, 10.0)[0] != 1.0


def test_env_var_and_no_path(tmp_path, monkeypatch):
    monkeypatch.setenv("TORSIONLAB_CACHE", str(tmp_path / "env.json"))
    c = ZeroCache.from_env()
    c.zeros_upto("GPlusZero", 1.5, 10.0)
    c.save()
    assert (tmp_path / "env.json").exists()
    mem = ZeroCache(None)
    mem.zeros_upto("GPlusZero", 1.5, 10.0)
    mem.save()
