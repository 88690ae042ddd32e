import os
import stat

import pytest

from zslab.abelian import make_group
from zslab.cache import Cache, CacheIOError, CacheKey, default_cache_dir
from zslab.lengths import LengthEngine
from zslab.zerosum import Sequence, enumerate_atoms


@pytest.fixture
def cache(tmp_path):
    return Cache(tmp_path / "cache")


def test_key_canonicalization():
    G = make_group([3, 3])
    a, b = G.element([1, 0]), G.element([0, 1])
    k1 = CacheKey.for_subset(G, (a, b), "atoms")
    k2 = CacheKey.for_subset(G, (b, a), "atoms")
    assert k1 == k2 and k1.token() == k2.token()
    k3 = CacheKey.for_subset(G, (a, b), "lengths-memo")
    assert k3.token() != k1.token()
    with pytest.raises(ValueError):
        CacheKey.for_subset(G, (a,), "nonsense")


def test_missing_key_is_none(cache):
    G = make_group([3])
    assert cache.load_atoms(G, tuple(G.elements())) is None


def test_atoms_round_trip(cache):
    G = make_group([2, 4])
    atoms = enumerate_atoms(G)
    cache.store_atoms(atoms, "test")
    loaded = cache.load_atoms(G, atoms.subset)
    assert loaded is not None
    assert loaded == atoms
    assert loaded.davenport == atoms.davenport


def test_corrupt_entry_discarded(cache):
    G = make_group([3])
    atoms = enumerate_atoms(G)
    cache.store_atoms(atoms)
    key = CacheKey.for_subset(G, atoms.subset, "atoms")
    path = cache._path(key)
    blob = bytearray(path.read_bytes())
    blob[-1] ^= 0xFF  # flip a checksum byte
    path.write_bytes(bytes(blob))
    assert cache.load_atoms(G, atoms.subset) is None
    path.write_bytes(b"garbage")
    assert cache.load_atoms(G, atoms.subset) is None


def test_store_then_load_is_identity(cache):
    G = make_group([5])
    key = CacheKey.for_subset(G, tuple(G.elements()), "lengths-memo")
    payload = b"\x01\x02\x03payload"
    cache.store(key, payload, "v")
    entry = cache.load(key)
    assert entry is not None and entry.payload == payload
    cache.store(key, payload, "v")  # idempotent overwrite
    assert cache.load(key).payload == payload


def test_memo_round_trip(cache):
    G = make_group([4])
    atoms = enumerate_atoms(G)
    eng = LengthEngine(atoms)
    g = G.element([1])
    B = Sequence.from_pairs(G, [(g, 4), (-g, 4)])
    eng.length_set(B)
    cache.store_memo(G, atoms.subset, eng.export_memo())
    loaded = cache.load_memo(G, atoms.subset)
    assert loaded == eng.export_memo()


def test_cache_transparency(cache):
    G = make_group([4])
    fresh = enumerate_atoms(G)
    cache.store_atoms(fresh)
    cached = cache.load_atoms(G, fresh.subset)
    eng_fresh, eng_cached = LengthEngine(fresh), LengthEngine(cached)
    g = G.element([1])
    B = Sequence.from_pairs(G, [(g, 4), (-g, 4), (g.scale(2), 2)])
    assert eng_fresh.length_set(B) == eng_cached.length_set(B)


def test_index_file_is_text(cache):
    G = make_group([3])
    cache.store_atoms(enumerate_atoms(G))
    index = (cache.root / "index.txt").read_text()
    assert "atoms" in index and "C3" in index


def test_purge(cache):
    G = make_group([3])
    cache.store_atoms(enumerate_atoms(G))
    assert cache.purge() >= 1
    assert cache.load_atoms(G, tuple(G.elements())) is None
    assert Cache(cache.root / "never-created").purge() == 0


def test_read_only_dir_surfaces_io_error(tmp_path):
    root = tmp_path / "ro"
    root.mkdir()
    os.chmod(root, stat.S_IRUSR | stat.S_IXUSR)
    cache = Cache(root)
    G = make_group([3])
    if os.geteuid() == 0:
        pytest.skip("running as root: directory permissions are not enforced")
    with pytest.raises(CacheIOError):
        cache.store_atoms(enumerate_atoms(G))


def test_default_cache_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv("ZSLAB_CACHE", str(tmp_path / "envcache"))
    assert default_cache_dir() == tmp_path / "envcache"
