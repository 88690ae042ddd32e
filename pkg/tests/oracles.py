"""Independent brute-force oracles used to validate the fast paths.

Everything here is deliberately naive: direct subset enumeration, direct
factorization search, and a literal transcription of the AAMP definition.
None of it shares code with the implementations under test.
"""
from __future__ import annotations

import itertools

from zslab.abelian import FiniteAbelianGroup
from zslab.zerosum import Sequence


def expand(seq: Sequence) -> list:
    out = []
    for coords, mult in seq.items:
        out.extend([seq.group.element(coords)] * mult)
    return out


def brute_is_atom(seq: Sequence) -> bool:
    """Atom test by enumerating every subset of the expanded sequence."""
    elems = expand(seq)
    n = len(elems)
    if n == 0:
        return False
    total = seq.group.zero
    for e in elems:
        total = total + e
    if not total.is_zero:
        return False
    for r in range(1, n):
        for combo in itertools.combinations(range(n), r):
            s = seq.group.zero
            for i in combo:
                s = s + elems[i]
            if s.is_zero:
                return False
    return True


def brute_atoms(group: FiniteAbelianGroup, subset, max_len: int) -> set:
    """All atoms over the subset with |A| <= max_len, by raw enumeration."""
    out = set()
    for r in range(1, max_len + 1):
        for combo in itertools.combinations_with_replacement(subset, r):
            seq = Sequence.from_elements(group, combo)
            if brute_is_atom(seq):
                out.add(seq)
    return out


def brute_length_set(B: Sequence, atoms) -> tuple[int, ...]:
    """L(B) by exhaustive factorization search (atom index nondecreasing)."""
    atom_list = list(atoms.atoms)
    found = set()

    def rec(cur: Sequence, start: int, count: int) -> None:
        if len(cur) == 0:
            found.add(count)
            return
        for i in range(start, len(atom_list)):
            if atom_list[i].divides(cur):
                rec(cur.div(atom_list[i]), i, count + 1)

    rec(B, 0, 0)
    return tuple(sorted(found))


def brute_is_aamp(values: tuple[int, ...], d: int, M: int) -> bool:
    """Literal check of the AAMP definition over all shifts and periods."""
    for y in values:
        shifted = sorted(v - y for v in values)
        if any(v < -M for v in shifted):
            continue
        middle = range(1, d)
        for extra in itertools.chain.from_iterable(
            itertools.combinations(middle, r) for r in range(d)
        ):
            period = set(extra) | {0, d}
            residues = {p % d for p in period}
            if any(v % d not in residues for v in shifted):
                continue
            nonneg = [v for v in shifted if v >= 0]
            for t_val in nonneg:
                progression = [x for x in range(t_val + 1) if x % d in residues]
                central = [v for v in nonneg if v <= t_val]
                if central != progression:
                    continue
                tail = [v for v in nonneg if v > t_val]
                if all(t_val + 1 <= v <= t_val + M for v in tail):
                    return True
    return False
