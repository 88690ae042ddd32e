"""Sets of lengths, distance sets, and scans over zero-sum sequences.

The central object is ``L(B)``: the set of numbers of atoms in the
factorizations of a zero-sum sequence B.  ``LengthEngine`` computes it by
memoized recursion ``L(B) = union over atoms A | B of 1 + L(B/A)``; the
batch helpers push whole families of sequences through the compiled
kernels at once.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .abelian import FiniteAbelianGroup, GroupElement
from .zerosum import AtomSet, Sequence, enumerate_atoms


@dataclass(frozen=True)
class LengthSet:
    """A finite set of factorization lengths, kept sorted."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(sorted(set(self.values)))
        if vals != self.values:
            object.__setattr__(self, "values", vals)
        if any(v < 0 for v in vals):
            raise ValueError("lengths are non-negative")
        if 0 in vals and vals != (0,):
            raise ValueError("a set of lengths containing 0 is {0}")
        if 1 in vals and vals != (1,):
            raise ValueError("a set of lengths containing 1 is {1}")

    @classmethod
    def of(cls, *values: int) -> "LengthSet":
        return cls(tuple(values))

    @classmethod
    def from_mask(cls, mask: int) -> "LengthSet":
        vals = []
        i = 0
        while mask:
            if mask & 1:
                vals.append(i)
            mask >>= 1
            i += 1
        return cls(tuple(vals))

    def mask(self) -> int:
        out = 0
        for v in self.values:
            out |= 1 << v
        return out

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, x: int) -> bool:
        return x in self.values

    @property
    def min(self) -> int:
        if not self.values:
            raise ValueError("empty length set")
        return self.values[0]

    @property
    def max(self) -> int:
        if not self.values:
            raise ValueError("empty length set")
        return self.values[-1]

    @property
    def is_interval(self) -> bool:
        return bool(self.values) and self.max - self.min + 1 == len(self.values)

    def delta(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))

    def __add__(self, other: "LengthSet") -> "LengthSet":
        return sumset(self, other)

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.values) + "}"


def delta_of(lengths: LengthSet) -> tuple[int, ...]:
    """The set of distances between consecutive elements, sorted."""
    if not lengths.values:
        raise ValueError("delta of an empty length set")
    return tuple(sorted(set(lengths.delta())))


def sumset(a: LengthSet, b: LengthSet) -> LengthSet:
    return LengthSet(tuple(x + y for x in a.values for y in b.values))


def interval(lo: int, hi: int) -> LengthSet:
    return LengthSet(tuple(range(lo, hi + 1)))


class LengthEngine:
    """Memoized sets-of-lengths over a fixed atom set.

    The memo is keyed by the canonical multiplicity vector over the atom
    set's subset and is shared by every query made through this engine.
    """

    def __init__(self, atom_set: AtomSet):
        self.atom_set = atom_set
        self._memo: dict[tuple[int, ...], int] = {(0,) * len(atom_set.subset): 1}
        self._atom_rows = [tuple(int(x) for x in row) for row in atom_set.matrix]

    def _vector(self, seq: Sequence) -> tuple[int, ...]:
        if seq.group != self.atom_set.group:
            raise ValueError("sequence belongs to a different group")
        if not self.atom_set.contains_sequence_support(seq):
            raise ValueError("sequence support escapes the atom set's subset")
        if not seq.is_zero_sum:
            raise ValueError("set of lengths is defined for zero-sum sequences")
        vec = seq.vector(self.atom_set.positions, len(self.atom_set.subset))
        return tuple(int(x) for x in vec)

    def _mask(self, vec: tuple[int, ...]) -> int:
        memo = self._memo
        hit = memo.get(vec)
        if hit is not None:
            return hit
        # restrict to atoms inside the support once per top-level call
        atoms = [a for a in self._atom_rows if all(x <= y for x, y in zip(a, vec))]
        return self._mask_rec(vec, atoms)

    def _mask_rec(self, vec: tuple[int, ...], atoms: list[tuple[int, ...]]) -> int:
        memo = self._memo
        hit = memo.get(vec)
        if hit is not None:
            return hit
        mask = 0
        for a in atoms:
            child = tuple(x - y for x, y in zip(vec, a))
            if min(child) < 0:
                continue
            mask |= self._mask_rec(child, atoms) << 1
        memo[vec] = mask
        return mask

    def length_set(self, seq: Sequence) -> LengthSet:
        vec = self._vector(seq)
        limit = sys.getrecursionlimit()
        if limit < 10_000:
            sys.setrecursionlimit(10_000)
        return LengthSet.from_mask(self._mask(vec))

    def export_memo(self) -> dict[tuple[int, ...], int]:
        """Snapshot of the memo table, e.g. for the persistent cache."""
        return dict(self._memo)

    def preload_memo(self, memo: dict[tuple[int, ...], int]) -> None:
        """Merge a previously exported memo table (idempotent writes)."""
        self._memo.update(memo)

    def lengths_of_vector(self, vec) -> LengthSet:
        return LengthSet.from_mask(self._mask(tuple(int(x) for x in vec)))

    def factorization(self, seq: Sequence, length: int) -> Optional[list[Sequence]]:
        """An explicit factorization of ``seq`` into ``length`` atoms, if any."""
        vec = self._vector(seq)
        if not (self._mask(vec) >> length) & 1:
            return None
        out: list[Sequence] = []
        cur = vec
        remaining = length
        while remaining:
            for i, a in enumerate(self._atom_rows):
                child = tuple(x - y for x, y in zip(cur, a))
                if min(child) < 0:
                    continue
                if (self._mask(child) >> (remaining - 1)) & 1:
                    out.append(self.atom_set.atoms[i])
                    cur = child
                    remaining -= 1
                    break
            else:
                raise RuntimeError("factorization extraction lost its path")
        return out


def length_set(seq: Sequence, atoms: AtomSet) -> LengthSet:
    """Exact L(B) for a single zero-sum sequence over the atom set's subset."""
    return LengthEngine(atoms).length_set(seq)


# ---------------------------------------------------------------------------
# batch machinery


def subset_indices(atom_set: AtomSet) -> np.ndarray:
    g = atom_set.group
    return np.array([g.index_of(e) for e in atom_set.subset], dtype=np.int32)


def position_perms(atom_set: AtomSet) -> np.ndarray:
    """Automorphism-induced position permutations stabilizing the subset."""
    tables = _kernels.tables_for(atom_set.group)
    return tables.subset_position_perms(subset_indices(atom_set))


def canonicalize_rows(rows: np.ndarray, perms: np.ndarray) -> np.ndarray:
    """Lexicographic minimum over the permutation orbit, rowwise."""
    if len(perms) <= 1 or len(rows) == 0:
        return rows
    best = rows.copy()
    idx = np.arange(len(rows))
    for p in perms[1:]:
        w = rows[:, p]
        diff = w != best
        any_diff = diff.any(axis=1)
        first = np.argmax(diff, axis=1)
        smaller = any_diff & (w[idx, first] < best[idx, first])
        best[smaller] = w[smaller]
    return best


def zero_sum_length_table(
    atom_set: AtomSet, bound: int
) -> tuple[np.ndarray, list[int]]:
    """All zero-sum vectors with |B| <= bound over the subset, with L-masks."""
    tables = _kernels.tables_for(atom_set.group)
    sub = subset_indices(atom_set)
    vecs = _kernels.zero_sum_vectors(tables.add, tables.zero, sub, bound)
    masks = _kernels.masks_for_closed(vecs, atom_set.matrix)
    return vecs, masks


def product_set(
    atom_set: AtomSet, k: int, perms: Optional[np.ndarray] = None
) -> np.ndarray:
    """Distinct products of exactly k atoms, canonicalized under ``perms``.

    Built level by level with deduplication; sound because the atom set is
    closed under every automorphism of the group.
    """
    m = len(atom_set.subset)
    if perms is None:
        perms = position_perms(atom_set)
    if k == 0:
        return np.zeros((1, m), dtype=np.int16)
    mat = atom_set.matrix
    if len(mat) == 0:
        return np.zeros((0, m), dtype=np.int16)
    level = np.unique(canonicalize_rows(mat.copy(), perms), axis=0)
    for _ in range(k - 1):
        cand = (level[:, None, :].astype(np.int16) + mat[None, :, :]).reshape(-1, m)
        level = np.unique(canonicalize_rows(cand, perms), axis=0)
    return level


def target_length_masks(
    atom_set: AtomSet,
    targets: np.ndarray,
    perms: Optional[np.ndarray] = None,
) -> list[int]:
    """L-masks for arbitrary zero-sum target vectors over the subset."""
    if perms is None:
        perms = position_perms(atom_set)
    kernel_perms = perms if len(perms) <= 16 else None
    if kernel_perms is None:
        targets = canonicalize_rows(targets, perms)
    return _kernels.target_masks(targets, atom_set.matrix, kernel_perms)


# ---------------------------------------------------------------------------
# scans


def iter_zero_sum(
    group: FiniteAbelianGroup,
    subset: tuple[GroupElement, ...],
    size_bound: int,
):
    """Zero-sum sequences over the subset by increasing |B|, each once."""
    tables = _kernels.tables_for(group)
    sub_idx = [group.index_of(g) for g in subset]
    m = len(subset)
    v = [0] * m
    vecs: list[tuple[int, ...]] = []

    def rec(i: int, sig: int, budget: int) -> None:
        if i == m:
            if sig == tables.zero:
                vecs.append(tuple(v))
            return
        g = sub_idx[i]
        s = sig
        for c in range(budget + 1):
            v[i] = c
            rec(i + 1, s, budget - c)
            s = int(tables.add[s, g])
        v[i] = 0

    if m:
        rec(0, tables.zero, size_bound)
    else:
        vecs.append(())
    vecs.sort(key=lambda t: (sum(t), t))
    for vec in vecs:
        yield Sequence.from_pairs(
            group, [(subset[i], vec[i]) for i in range(m) if vec[i]]
        )


def half_factorial_scan(
    group: FiniteAbelianGroup,
    subset: Optional[Iterable[GroupElement]] = None,
    size_bound: int = 8,
    atom_set: Optional[AtomSet] = None,
) -> tuple[bool, Optional[Sequence]]:
    """Check |L(B)| = 1 for every zero-sum B with |B| <= size_bound.

    Returns (True, None) or (False, witness) with a witness of minimal
    length among those within the bound.
    """
    atoms = atom_set if atom_set is not None else enumerate_atoms(group, subset)
    engine = LengthEngine(atoms)
    for seq in iter_zero_sum(group, atoms.subset, size_bound):
        if len(engine.length_set(seq)) > 1:
            return False, seq
    return True, None
