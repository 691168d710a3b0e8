import pytest

from symarw import cache, characters, partitions, symfunc


@pytest.fixture(autouse=True)
def _no_ambient_cache(monkeypatch):
    monkeypatch.delenv(cache.ENV_VAR, raising=False)
    cache.set_cache_dir(None)
    cap = partitions.get_degree_cap()
    yield
    cache.set_cache_dir(None)
    partitions.set_degree_cap(cap)


@pytest.fixture
def cache_dir(tmp_path):
    """A fresh on-disk cache with in-memory tables forgotten."""
    cache.set_cache_dir(tmp_path)
    characters.clear_memo()
    symfunc.clear_coefficient_memo()
    cache.STATS.clear()
    yield tmp_path
    cache.set_cache_dir(None)
    characters.clear_memo()
    symfunc.clear_coefficient_memo()
