"""Numba-compiled hot kernels.

Three workloads dominate runtime: minimal zero-sum enumeration, bulk
zero-sum scans, and factorization-length tables over large product sets.
All state lives in flat arrays: multiset vectors are int16 rows, the
length sets are uint64 bitmasks (bit l = "some factorization has length
l"), and deduplication goes through an open-addressing hash of rows.
"""
from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"

_FNV_OFFSET = np.uint64(0xCBF29CE484222325)
_FNV_PRIME = np.uint64(0x100000001B3)


@njit(cache=True)
def _fnv(v):
    h = _FNV_OFFSET
    for j in range(v.shape[0]):
        h = (h ^ np.uint64(v[j])) * _FNV_PRIME
    return h


@njit(cache=True)
def _atoms_kernel(add, zero, sub):
    n = add.shape[0]
    m = sub.shape[0]
    maxd = n + 2
    sums = np.zeros((maxd, n), np.bool_)
    sigma = np.zeros(maxd, np.int32)
    tryj = np.zeros(maxd, np.int32)
    choice = np.zeros(maxd, np.int32)
    v = np.zeros(m, np.int16)

    cap = 256
    out = np.zeros((cap, m), np.int16)
    count = 0

    d = 0
    sigma[0] = zero
    tryj[0] = 0
    while d >= 0:
        j = tryj[d]
        if j >= m:
            d -= 1
            if d >= 0:
                v[choice[d + 1]] -= 1
            continue
        tryj[d] = j + 1
        g = sub[j]
        ns = add[sigma[d], g]
        # sums of proper non-empty subsequences after appending g
        row = d + 1
        if d == 0:
            for x in range(n):
                sums[row, x] = False
        else:
            for x in range(n):
                sums[row, x] = sums[d, x]
            sums[row, sigma[d]] = True
            sums[row, g] = True
            for x in range(n):
                if sums[d, x]:
                    sums[row, add[x, g]] = True
        if sums[row, zero]:
            continue  # branch contains a proper zero-sum subsequence
        if ns == zero:
            if count == cap:
                cap2 = cap * 2
                out2 = np.zeros((cap2, m), np.int16)
                out2[:count] = out[:count]
                out = out2
                cap = cap2
            for x in range(m):
                out[count, x] = v[x]
            out[count, j] += 1
            count += 1
            continue  # extensions would contain this atom properly
        if d + 1 >= maxd - 1:
            continue  # unreachable: zero-sum-free prefixes are shorter than |G|
        v[j] += 1
        choice[d + 1] = j
        sigma[d + 1] = ns
        tryj[d + 1] = j
        d += 1
    return out[:count].copy()


@njit(cache=True)
def _zero_sum_kernel(add, zero, sub, bound):
    m = sub.shape[0]
    v = np.zeros(m, np.int16)
    sig = np.zeros(m + 1, np.int32)
    tot = np.zeros(m + 1, np.int64)
    sig[0] = zero

    cap = 1024
    out = np.zeros((cap, m), np.int16)
    count = 0

    i = 0
    descend = True
    while i >= 0:
        if i == m:
            if sig[m] == zero:
                if count == cap:
                    cap2 = cap * 2
                    out2 = np.zeros((cap2, m), np.int16)
                    out2[:count] = out[:count]
                    out = out2
                    cap = cap2
                for x in range(m):
                    out[count, x] = v[x]
                count += 1
            i -= 1
            descend = False
            continue
        if descend:
            v[i] = 0
            sig[i + 1] = sig[i]
            tot[i + 1] = tot[i]
            i += 1
            continue
        # back at position i: bump its multiplicity if the budget allows
        if tot[i] + v[i] + 1 > bound:
            i -= 1
            continue
        v[i] += 1
        sig[i + 1] = add[sig[i + 1], sub[i]]
        tot[i + 1] = tot[i] + v[i]
        i += 1
        descend = True
    return out[:count].copy()


@njit(cache=True)
def _canon_into(v, perms, out):
    m = v.shape[0]
    for j in range(m):
        out[j] = v[j]
    for p in range(1, perms.shape[0]):
        cmp = 0
        for j in range(m):
            x = v[perms[p, j]]
            if x < out[j]:
                cmp = -1
                break
            elif x > out[j]:
                cmp = 1
                break
        if cmp == -1:
            for j in range(m):
                out[j] = v[perms[p, j]]


@njit(cache=True)
def _lookup(rows, table, can):
    """Probe slot for ``can``: returns (row index or -1, free slot)."""
    tcap = table.shape[0]
    m = can.shape[0]
    pos = np.int64(_fnv(can) & np.uint64(tcap - 1))
    while True:
        r = table[pos]
        if r < 0:
            return np.int64(-1), pos
        same = True
        for j in range(m):
            if rows[r, j] != can[j]:
                same = False
                break
        if same:
            return np.int64(r), pos
        pos += 1
        if pos == tcap:
            pos = 0


@njit(cache=True)
def _rehash(rows, count, tcap2):
    table2 = np.full(tcap2, -1, np.int32)
    for rix in range(count):
        pp = np.int64(_fnv(rows[rix]) & np.uint64(tcap2 - 1))
        while table2[pp] >= 0:
            pp += 1
            if pp == tcap2:
                pp = 0
        table2[pp] = rix
    return table2


@njit(cache=True)
def _masks_kernel(seeds, atoms, perms):
    """Length bitmasks for each seed row.

    Expands the seeds downward (seed minus any dividing atom, repeatedly,
    with canonicalization under ``perms``), then runs the length DP
    bottom-up by total multiset size.  Returns masks aligned with seeds.
    """
    T, m = seeds.shape
    na = atoms.shape[0]

    rcap = 1024
    while rcap < 2 * T + 2:
        rcap *= 2
    rows = np.zeros((rcap, m), np.int16)
    tcap = rcap * 4
    table = np.full(tcap, -1, np.int32)
    count = 0

    work = np.zeros(m, np.int16)
    can = np.zeros(m, np.int16)
    tmap = np.zeros(T, np.int64)

    # --- seed insertion ---
    for t in range(T):
        for j in range(m):
            work[j] = seeds[t, j]
        _canon_into(work, perms, can)
        found, slot = _lookup(rows, table, can)
        if found >= 0:
            tmap[t] = found
        else:
            for j in range(m):
                rows[count, j] = can[j]
            table[slot] = count
            tmap[t] = count
            count += 1
            if count == rcap:
                rcap *= 2
                rows2 = np.zeros((rcap, m), np.int16)
                rows2[:count] = rows[:count]
                rows = rows2
            if count * 2 > tcap:
                tcap *= 2
                table = _rehash(rows, count, tcap)

    # --- BFS expansion (rows doubles as the worklist) ---
    head = 0
    while head < count:
        for a in range(na):
            ok = True
            for j in range(m):
                c = rows[head, j] - atoms[a, j]
                if c < 0:
                    ok = False
                    break
                work[j] = c
            if not ok:
                continue
            _canon_into(work, perms, can)
            found, slot = _lookup(rows, table, can)
            if found < 0:
                for j in range(m):
                    rows[count, j] = can[j]
                table[slot] = count
                count += 1
                if count == rcap:
                    rcap *= 2
                    rows2 = np.zeros((rcap, m), np.int16)
                    rows2[:count] = rows[:count]
                    rows = rows2
                if count * 2 > tcap:
                    tcap *= 2
                    table = _rehash(rows, count, tcap)
        head += 1

    # --- DP by ascending total size ---
    w = np.zeros(count, np.int64)
    for i in range(count):
        s = 0
        for j in range(m):
            s += rows[i, j]
        w[i] = s
    order = np.argsort(w)
    masks = np.zeros(count, np.uint64)
    err = 0
    for oi in range(count):
        i = order[oi]
        if w[i] == 0:
            masks[i] = np.uint64(1)
            continue
        acc = np.uint64(0)
        for a in range(na):
            ok = True
            for j in range(m):
                c = rows[i, j] - atoms[a, j]
                if c < 0:
                    ok = False
                    break
                work[j] = c
            if not ok:
                continue
            _canon_into(work, perms, can)
            found, _slot = _lookup(rows, table, can)
            if found < 0:
                err = 1
            else:
                acc |= masks[found] << np.uint64(1)
        masks[i] = acc
    out = np.zeros(T, np.uint64)
    for t in range(T):
        out[t] = masks[tmap[t]]
    return out, err


def enumerate_atoms(add: np.ndarray, zero: int, sub: np.ndarray) -> np.ndarray:
    if len(sub) == 0:
        return np.zeros((0, 0), dtype=np.int16)
    return _atoms_kernel(
        np.ascontiguousarray(add, np.int32),
        np.int32(zero),
        np.ascontiguousarray(sub, np.int32),
    )


def zero_sum_vectors(
    add: np.ndarray, zero: int, sub: np.ndarray, bound: int
) -> np.ndarray:
    if len(sub) == 0:
        return np.zeros((1, 0), dtype=np.int16)
    return _zero_sum_kernel(
        np.ascontiguousarray(add, np.int32),
        np.int32(zero),
        np.ascontiguousarray(sub, np.int32),
        np.int64(bound),
    )


def _identity_perms(m: int) -> np.ndarray:
    return np.arange(m, dtype=np.int32)[None, :]


def _run_masks(seeds: np.ndarray, atoms: np.ndarray, perms: np.ndarray) -> list[int]:
    if len(seeds) == 0:
        return []
    m = seeds.shape[1]
    if m == 0:
        return [1] * len(seeds)
    masks, err = _masks_kernel(
        np.ascontiguousarray(seeds, np.int16),
        np.ascontiguousarray(atoms, np.int16),
        np.ascontiguousarray(perms, np.int32),
    )
    if err:
        raise RuntimeError("length DP hit a missing child row (non-closed input?)")
    return [int(x) for x in masks]


def masks_for_closed(rows: np.ndarray, atoms: np.ndarray) -> list[int]:
    return _run_masks(rows, atoms, _identity_perms(rows.shape[1]))


def target_masks(
    targets: np.ndarray, atoms: np.ndarray, perms: np.ndarray | None
) -> list[int]:
    if perms is None:
        perms = _identity_perms(targets.shape[1] if targets.ndim == 2 else 0)
    return _run_masks(targets, atoms, perms)
