"""Persistent cache for atom sets and length memos.

Strictly an optimization layer: every error degrades to recomputation.
On-disk entries are versioned, little-endian, length-prefixed binary
records with a sha256 payload checksum; a text index file makes the
directory human-inspectable.  Writes go through temp-file + rename.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import struct
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .abelian import FiniteAbelianGroup, GroupElement
from .zerosum import AtomSet, Sequence

log = logging.getLogger("zslab.cache")

MAGIC = b"ZSLB"
FORMAT_VERSION = 2
ENDIAN = b"<"  # all integers little-endian
KINDS = ("atoms", "lengths-memo")

ENV_VAR = "ZSLAB_CACHE"


class CacheIOError(OSError):
    """An I/O problem distinct from a plain cache miss."""


@dataclass(frozen=True)
class CacheKey:
    version: int
    invariant_factors: tuple[int, ...]
    subset_coords: tuple[tuple[int, ...], ...]
    kind: str

    @classmethod
    def for_subset(
        cls, group: FiniteAbelianGroup, subset: tuple[GroupElement, ...], kind: str
    ) -> "CacheKey":
        if kind not in KINDS:
            raise ValueError(f"unknown artifact kind {kind!r}")
        coords = tuple(sorted(g.coords for g in subset))
        return cls(FORMAT_VERSION, group.invariant_factors, coords, kind)

    def token(self) -> str:
        blob = json.dumps(
            [self.version, list(self.invariant_factors),
             [list(c) for c in self.subset_coords], self.kind],
            separators=(",", ":"),
        ).encode()
        return hashlib.sha256(blob).hexdigest()[:32]


@dataclass(frozen=True)
class CacheEntry:
    key: CacheKey
    payload: bytes
    checksum: str
    tool_version: str


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "zslab"


class Cache:
    def __init__(self, root: Path | str):
        self.root = Path(root)

    def _path(self, key: CacheKey) -> Path:
        return self.root / f"{key.token()}.zsc"

    # -- binary framing ------------------------------------------------

    @staticmethod
    def _frame(key: CacheKey, payload: bytes, tool_version: str) -> bytes:
        keyblob = json.dumps(
            [key.version, list(key.invariant_factors),
             [list(c) for c in key.subset_coords], key.kind, tool_version],
            separators=(",", ":"),
        ).encode()
        digest = hashlib.sha256(payload).digest()
        head = MAGIC + ENDIAN + struct.pack("<HI", FORMAT_VERSION, len(keyblob))
        return head + keyblob + struct.pack("<Q", len(payload)) + payload + digest

    @staticmethod
    def _unframe(blob: bytes, key: CacheKey) -> Optional[CacheEntry]:
        try:
            if blob[:4] != MAGIC or blob[4:5] != ENDIAN:
                return None
            ver, keylen = struct.unpack_from("<HI", blob, 5)
            if ver != FORMAT_VERSION:
                return None
            off = 11
            keyblob = blob[off : off + keylen]
            off += keylen
            version, factors, coords, kind, tool_version = json.loads(keyblob)
            stored = CacheKey(
                version, tuple(factors), tuple(tuple(c) for c in coords), kind
            )
            if stored != key:
                return None
            (paylen,) = struct.unpack_from("<Q", blob, off)
            off += 8
            payload = blob[off : off + paylen]
            off += paylen
            digest = blob[off : off + 32]
            if len(payload) != paylen or len(digest) != 32:
                return None
            if hashlib.sha256(payload).digest() != digest:
                return None
            return CacheEntry(stored, payload, digest.hex(), tool_version)
        except (ValueError, struct.error, json.JSONDecodeError):
            return None

    # -- public API ----------------------------------------------------

    def load(self, key: CacheKey) -> Optional[CacheEntry]:
        path = self._path(key)
        try:
            blob = path.read_bytes()
        except FileNotFoundError:
            return None
        except OSError as exc:
            raise CacheIOError(f"cannot read cache entry {path}: {exc}") from exc
        entry = self._unframe(blob, key)
        if entry is None:
            log.warning("discarding corrupt cache entry %s", path)
            return None
        return entry

    def store(self, key: CacheKey, payload: bytes, tool_version: str = "") -> None:
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            blob = self._frame(key, payload, tool_version)
            fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".zsc")
            try:
                with os.fdopen(fd, "wb") as fh:
                    fh.write(blob)
                os.replace(tmp, self._path(key))
            finally:
                if os.path.exists(tmp):
                    os.unlink(tmp)
            self._update_index(key)
        except OSError as exc:
            raise CacheIOError(f"cannot store cache entry: {exc}") from exc

    def _update_index(self, key: CacheKey) -> None:
        lines = {}
        index = self.root / "index.txt"
        if index.exists():
            for line in index.read_text().splitlines():
                parts = line.split("\t")
                if parts:
                    lines[parts[0]] = line
        group = "x".join(f"C{n}" for n in key.invariant_factors) or "C1"
        lines[key.token()] = "\t".join(
            [key.token(), key.kind, group, f"subset:{len(key.subset_coords)}",
             f"{key.token()}.zsc"]
        )
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".txt")
        with os.fdopen(fd, "w") as fh:
            fh.write("\n".join(lines[k] for k in sorted(lines)) + "\n")
        os.replace(tmp, index)

    def purge(self) -> int:
        if not self.root.exists():
            return 0
        removed = 0
        for path in self.root.iterdir():
            if path.suffix in (".zsc", ".txt") or path.name.startswith(".tmp-"):
                try:
                    path.unlink()
                    removed += 1
                except OSError:
                    pass
        return removed

    # -- artifact codecs -----------------------------------------------

    def load_atoms(
        self, group: FiniteAbelianGroup, subset: tuple[GroupElement, ...]
    ) -> Optional[AtomSet]:
        key = CacheKey.for_subset(group, subset, "atoms")
        entry = self.load(key)
        if entry is None:
            return None
        try:
            return _decode_atoms(group, subset, entry.payload)
        except (ValueError, struct.error):
            log.warning("discarding undecodable atoms payload for %s", group)
            return None

    def store_atoms(self, atoms: AtomSet, tool_version: str = "") -> None:
        key = CacheKey.for_subset(atoms.group, atoms.subset, "atoms")
        self.store(key, _encode_atoms(atoms), tool_version)

    def load_memo(
        self, group: FiniteAbelianGroup, subset: tuple[GroupElement, ...]
    ) -> Optional[dict[tuple[int, ...], int]]:
        key = CacheKey.for_subset(group, subset, "lengths-memo")
        entry = self.load(key)
        if entry is None:
            return None
        try:
            return _decode_memo(entry.payload)
        except (ValueError, struct.error):
            log.warning("discarding undecodable memo payload for %s", group)
            return None

    def store_memo(
        self,
        group: FiniteAbelianGroup,
        subset: tuple[GroupElement, ...],
        memo: dict[tuple[int, ...], int],
        tool_version: str = "",
        max_entries: int = 200_000,
    ) -> None:
        if len(memo) > max_entries:
            return
        key = CacheKey.for_subset(group, subset, "lengths-memo")
        self.store(key, _encode_memo(memo), tool_version)


def _encode_atoms(atoms: AtomSet) -> bytes:
    rank = atoms.group.rank
    m = len(atoms.subset)
    out = [struct.pack("<HH", rank, m)]
    for g in atoms.subset:
        out.append(struct.pack(f"<{rank}I", *g.coords) if rank else b"")
    out.append(struct.pack("<I", len(atoms.atoms)))
    mat = atoms.matrix
    for row in mat:
        out.append(struct.pack(f"<{m}H", *(int(x) for x in row)))
    return b"".join(out)


def _decode_atoms(
    group: FiniteAbelianGroup, subset: tuple[GroupElement, ...], payload: bytes
) -> AtomSet:
    rank, m = struct.unpack_from("<HH", payload, 0)
    if rank != group.rank or m != len(subset):
        raise ValueError("cache payload shape mismatch")
    off = 4
    coords = []
    for _ in range(m):
        c = struct.unpack_from(f"<{rank}I", payload, off) if rank else ()
        coords.append(tuple(c))
        off += 4 * rank
    if tuple(coords) != tuple(g.coords for g in subset):
        raise ValueError("cache payload subset mismatch")
    (natoms,) = struct.unpack_from("<I", payload, off)
    off += 4
    seqs = []
    for _ in range(natoms):
        row = struct.unpack_from(f"<{m}H", payload, off)
        off += 2 * m
        pairs = [(subset[i], int(v)) for i, v in enumerate(row) if v]
        seqs.append(Sequence.from_pairs(group, pairs))
    return AtomSet(group, subset, tuple(seqs))


def _encode_memo(memo: dict[tuple[int, ...], int]) -> bytes:
    out = [struct.pack("<I", len(memo))]
    for vec in sorted(memo):
        mask = memo[vec]
        mb = mask.to_bytes((mask.bit_length() + 7) // 8 or 1, "little")
        out.append(struct.pack("<H", len(vec)))
        out.append(struct.pack(f"<{len(vec)}H", *vec) if vec else b"")
        out.append(struct.pack("<H", len(mb)))
        out.append(mb)
    return b"".join(out)


def _decode_memo(payload: bytes) -> dict[tuple[int, ...], int]:
    (count,) = struct.unpack_from("<I", payload, 0)
    off = 4
    memo = {}
    for _ in range(count):
        (m,) = struct.unpack_from("<H", payload, off)
        off += 2
        vec = struct.unpack_from(f"<{m}H", payload, off) if m else ()
        off += 2 * m
        (blen,) = struct.unpack_from("<H", payload, off)
        off += 2
        mask = int.from_bytes(payload[off : off + blen], "little")
        off += blen
        memo[tuple(int(x) for x in vec)] = mask
    if off != len(payload):
        raise ValueError("trailing bytes in memo payload")
    return memo
