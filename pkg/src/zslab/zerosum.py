"""Sequences over a subset of a finite abelian group, atoms, Davenport constant.

A sequence is a finite multiset of group elements; the zero-sum ones form
the monoid whose irreducibles (minimal zero-sum sequences) everything else
in this package is built on.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .abelian import FiniteAbelianGroup, GroupElement


@dataclass(frozen=True)
class Sequence:
    """A multiset over a finite abelian group, in canonical element order."""

    group: FiniteAbelianGroup
    items: tuple[tuple[tuple[int, ...], int], ...]  # (coords, multiplicity)

    @classmethod
    def from_pairs(
        cls, group: FiniteAbelianGroup, pairs: Iterable[tuple[GroupElement, int]]
    ) -> "Sequence":
        acc: dict[tuple[int, ...], int] = {}
        for g, mult in pairs:
            if isinstance(g, GroupElement):
                if g.group != group:
                    raise ValueError("element belongs to a different group")
                coords = g.coords
            else:
                coords = group.element(g).coords
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                acc[coords] = acc.get(coords, 0) + mult
        ordered = sorted(acc, key=lambda c: group.index_of(GroupElement(group, c)))
        return cls(group, tuple((c, acc[c]) for c in ordered))

    @classmethod
    def from_elements(
        cls, group: FiniteAbelianGroup, elems: Iterable[GroupElement]
    ) -> "Sequence":
        return cls.from_pairs(group, [(g, 1) for g in elems])

    @classmethod
    def empty(cls, group: FiniteAbelianGroup) -> "Sequence":
        return cls(group, ())

    def __len__(self) -> int:
        return sum(m for _, m in self.items)

    @property
    def support(self) -> tuple[GroupElement, ...]:
        return tuple(GroupElement(self.group, c) for c, _ in self.items)

    def mult_of(self, g: GroupElement) -> int:
        for c, m in self.items:
            if c == g.coords:
                return m
        return 0

    def sigma(self) -> GroupElement:
        total = self.group.zero
        for c, m in self.items:
            total = total + GroupElement(self.group, c).scale(m)
        return total

    @property
    def is_zero_sum(self) -> bool:
        return self.sigma().is_zero

    def __mul__(self, other: "Sequence") -> "Sequence":
        if self.group != other.group:
            raise ValueError("sequences over different groups")
        acc = dict(self.items)
        for c, m in other.items:
            acc[c] = acc.get(c, 0) + m
        g = self.group
        ordered = sorted(acc, key=lambda c: g.index_of(GroupElement(g, c)))
        return Sequence(g, tuple((c, acc[c]) for c in ordered))

    def pow(self, k: int) -> "Sequence":
        if k < 0:
            raise ValueError("negative power")
        return Sequence(self.group, tuple((c, m * k) for c, m in self.items) if k else ())

    def divides(self, other: "Sequence") -> bool:
        """True iff every multiplicity of self is <= the one in other."""
        other_mult = dict(other.items)
        return all(other_mult.get(c, 0) >= m for c, m in self.items)

    def div(self, other: "Sequence") -> "Sequence":
        """Multiset difference self / other; other must divide self."""
        if not other.divides(self):
            raise ValueError("division by a non-divisor")
        acc = dict(self.items)
        for c, m in other.items:
            acc[c] -= m
        g = self.group
        kept = {c: m for c, m in acc.items() if m}
        ordered = sorted(kept, key=lambda c: g.index_of(GroupElement(g, c)))
        return Sequence(g, tuple((c, kept[c]) for c in ordered))

    def negate(self) -> "Sequence":
        g = self.group
        pairs = [(-GroupElement(g, c), m) for c, m in self.items]
        return Sequence.from_pairs(g, pairs)

    def vector(self, positions: dict[tuple[int, ...], int], size: int) -> np.ndarray:
        """Multiplicity vector over a fixed subset position map."""
        v = np.zeros(size, dtype=np.int16)
        for c, m in self.items:
            if c not in positions:
                raise ValueError(f"element {c} outside the subset")
            v[positions[c]] = m
        return v

    def to_text(self) -> str:
        body = ",".join(
            "(" + ",".join(str(x) for x in c) + ")*" + str(m) for c, m in self.items
        )
        return "[" + body + "]"

    @classmethod
    def from_text(cls, group: FiniteAbelianGroup, text: str) -> "Sequence":
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"bad sequence text {text!r}")
        body = re.sub(r"\s+", "", s[1:-1])
        if not body:
            return cls.empty(group)
        token = re.compile(r"\((-?\d+(?:,-?\d+)*)?\)\*(\d+)")
        pairs = []
        pos = 0
        while pos < len(body):
            m = token.match(body, pos)
            if not m:
                raise ValueError(f"bad sequence text {text!r} (at {body[pos:]!r})")
            inner = m.group(1) or ""
            coords = tuple(int(x) for x in inner.split(",")) if inner else ()
            pairs.append((group.element(coords), int(m.group(2))))
            pos = m.end()
            if pos < len(body):
                if body[pos] != ",":
                    raise ValueError(f"bad sequence text {text!r} (at {body[pos:]!r})")
                pos += 1
        return cls.from_pairs(group, pairs)

    def __str__(self) -> str:
        return self.to_text()


def sigma(seq: Sequence) -> GroupElement:
    return seq.sigma()


def mul(a: Sequence, b: Sequence) -> Sequence:
    return a * b


def div(a: Sequence, b: Sequence) -> Sequence:
    return a.div(b)


def divides(a: Sequence, b: Sequence) -> bool:
    return a.divides(b)


def negate(a: Sequence) -> Sequence:
    return a.negate()


def is_atom(seq: Sequence) -> bool:
    """True iff seq is a minimal zero-sum sequence.

    Dynamic programming over the multiset: for every reachable subsequence
    sum keep the bitmask of achievable subsequence lengths, then reject if
    sum zero is reachable at any length strictly between 0 and |seq|.
    """
    total = len(seq)
    if total == 0:
        return False
    table: dict[tuple[int, ...], int] = {seq.group.zero.coords: 1}
    for c, m in seq.items:
        g = GroupElement(seq.group, c)
        nxt: dict[tuple[int, ...], int] = {}
        for s, mask in table.items():
            base = GroupElement(seq.group, s)
            cur = base
            nxt[s] = nxt.get(s, 0) | mask
            for k in range(1, m + 1):
                cur = cur + g
                nxt[cur.coords] = nxt.get(cur.coords, 0) | (mask << k)
        table = nxt
    zero_mask = table.get(seq.group.zero.coords, 0)
    return zero_mask == (1 | (1 << total))


@dataclass(frozen=True)
class AtomSet:
    """The complete set of atoms over a subset G0, plus the Davenport constant."""

    group: FiniteAbelianGroup
    subset: tuple[GroupElement, ...]
    atoms: tuple[Sequence, ...]

    @property
    def davenport(self) -> int:
        return max((len(a) for a in self.atoms), default=0)

    @cached_property
    def positions(self) -> dict[tuple[int, ...], int]:
        return {g.coords: i for i, g in enumerate(self.subset)}

    @cached_property
    def matrix(self) -> np.ndarray:
        """Atoms as multiplicity vectors over the subset positions."""
        m = len(self.subset)
        if not self.atoms:
            return np.zeros((0, m), dtype=np.int16)
        return np.stack([a.vector(self.positions, m) for a in self.atoms], axis=0)

    def sequence_from_vector(self, vec) -> Sequence:
        pairs = [
            (self.subset[i], int(v)) for i, v in enumerate(vec) if int(v) > 0
        ]
        return Sequence.from_pairs(self.group, pairs)

    def contains_sequence_support(self, seq: Sequence) -> bool:
        return all(c in self.positions for c, _ in seq.items)


def _normalize_subset(
    group: FiniteAbelianGroup, subset: Optional[Iterable[GroupElement]]
) -> tuple[GroupElement, ...]:
    if subset is None:
        return tuple(group.elements())
    elems = []
    for g in subset:
        if g.group != group:
            raise ValueError(f"element {g} does not belong to {group}")
        elems.append(g)
    uniq = {group.index_of(g): g for g in elems}
    return tuple(uniq[i] for i in sorted(uniq))


def enumerate_atoms(
    group: FiniteAbelianGroup, subset: Optional[Iterable[GroupElement]] = None
) -> AtomSet:
    """Exhaustively enumerate the minimal zero-sum sequences over G0.

    Depth-first over multiplicity vectors in nondecreasing element order,
    pruning as soon as a proper non-empty zero-sum subsequence appears;
    complete because zero-sum-free sequences over G are shorter than |G|.
    """
    sub = _normalize_subset(group, subset)
    tables = _kernels.tables_for(group)
    sub_idx = np.array([group.index_of(g) for g in sub], dtype=np.int32)
    mat = _kernels.enumerate_atoms(tables.add, tables.zero, sub_idx)
    seqs = []
    for row in mat:
        pairs = [(sub[i], int(v)) for i, v in enumerate(row) if v]
        seqs.append(Sequence.from_pairs(group, pairs))
    seqs.sort(key=lambda a: (len(a), a.items))
    return AtomSet(group, sub, tuple(seqs))


def davenport(
    group: FiniteAbelianGroup, subset: Optional[Iterable[GroupElement]] = None
) -> int:
    """D(G0): the maximal length of a minimal zero-sum sequence over G0."""
    return enumerate_atoms(group, subset).davenport
