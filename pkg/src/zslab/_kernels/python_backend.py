"""Pure Python/numpy implementations of the hot kernels.

Same contracts as :mod:`zslab._kernels.numba_backend`; slower, but with no
compilation step and no 64-bit limit on factorization lengths.  Selected by
``ZSLAB_BACKEND=python``.
"""
from __future__ import annotations

import numpy as np

NAME = "python"


def enumerate_atoms(add: np.ndarray, zero: int, sub: np.ndarray) -> np.ndarray:
    """All minimal zero-sum multiset vectors over the subset ``sub``.

    DFS over multiplicity vectors in nondecreasing position order.  Each
    node carries the set of sums of proper non-empty subsequences as a
    boolean array; a branch dies as soon as that set hits zero.
    """
    n = add.shape[0]
    m = len(sub)
    out: list[np.ndarray] = []
    v = np.zeros(m, dtype=np.int16)
    empty = np.zeros(n, dtype=bool)

    def rec(jmin: int, sigma: int, nset: np.ndarray, depth: int) -> None:
        for j in range(jmin, m):
            g = int(sub[j])
            new_sigma = int(add[sigma, g])
            if depth == 0:
                new_nset = empty
            else:
                new_nset = nset.copy()
                new_nset[sigma] = True
                new_nset[g] = True
                new_nset[add[np.nonzero(nset)[0], g]] = True
            if new_nset[zero]:
                continue  # a proper zero-sum subsequence; no extension survives
            if new_sigma == zero:
                atom = v.copy()
                atom[j] += 1
                out.append(atom)
                continue  # extensions would contain this zero-sum properly
            v[j] += 1
            rec(j, new_sigma, new_nset, depth + 1)
            v[j] -= 1

    if m:
        rec(0, zero, empty, 0)
    if not out:
        return np.zeros((0, m), dtype=np.int16)
    return np.stack(out, axis=0)


def zero_sum_vectors(
    add: np.ndarray, zero: int, sub: np.ndarray, bound: int
) -> np.ndarray:
    """All zero-sum multiset vectors of total size <= bound (incl. empty)."""
    m = len(sub)
    if m == 0:
        return np.zeros((1, 0), dtype=np.int16)
    out: list[tuple[int, ...]] = []
    v = [0] * m

    def rec(i: int, sigma: int, total: int) -> None:
        if i == m:
            if sigma == zero:
                out.append(tuple(v))
            return
        g = int(sub[i])
        s = sigma
        for c in range(bound - total + 1):
            v[i] = c
            rec(i + 1, s, total + c)
            s = int(add[s, g])
        v[i] = 0

    rec(0, zero, 0)
    return np.array(out, dtype=np.int16)


def _canonical(vec: tuple[int, ...], perms: np.ndarray | None) -> tuple[int, ...]:
    if perms is None or len(perms) <= 1:
        return vec
    arr = np.asarray(vec, dtype=np.int16)
    best = vec
    for p in perms[1:]:
        cand = tuple(int(x) for x in arr[p])
        if cand < best:
            best = cand
    return best


def masks_for_closed(rows: np.ndarray, atoms: np.ndarray) -> list[int]:
    """Factorization-length bitmasks for a subtraction-closed vector set.

    ``rows`` must contain, for every row B and every atom A dividing B,
    the row B - A (the all-zero-sum scan output is closed by construction).
    Masks are arbitrary-precision ints: bit l set iff l is a length of B.
    """
    order = np.argsort(rows.sum(axis=1), kind="stable")
    memo: dict[tuple[int, ...], int] = {}
    atoms_t = [tuple(int(x) for x in a) for a in atoms]
    for i in order:
        key = tuple(int(x) for x in rows[i])
        if sum(key) == 0:
            memo[key] = 1
            continue
        mask = 0
        for a in atoms_t:
            child = tuple(x - y for x, y in zip(key, a))
            if min(child, default=0) < 0:
                continue
            mask |= memo[child] << 1
        memo[key] = mask
    return [memo[tuple(int(x) for x in rows[i])] for i in range(len(rows))]


def target_masks(
    targets: np.ndarray, atoms: np.ndarray, perms: np.ndarray | None
) -> list[int]:
    """Length bitmasks for arbitrary zero-sum targets (memoized recursion).

    ``perms`` (optional) are subset-position permutations induced by group
    automorphisms; vectors are canonicalized under them purely as a
    deduplication device.
    """
    atoms_t = [tuple(int(x) for x in a) for a in atoms]
    memo: dict[tuple[int, ...], int] = {}

    def lengths(vec: tuple[int, ...]) -> int:
        vec = _canonical(vec, perms)
        hit = memo.get(vec)
        if hit is not None:
            return hit
        if sum(vec) == 0:
            memo[vec] = 1
            return 1
        mask = 0
        for a in atoms_t:
            child = tuple(x - y for x, y in zip(vec, a))
            if min(child) < 0:
                continue
            mask |= lengths(child) << 1
        memo[vec] = mask
        return mask

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10_000))
    try:
        return [lengths(tuple(int(x) for x in t)) for t in targets]
    finally:
        sys.setrecursionlimit(old)
