"""Dense lookup tables for a finite abelian group, shared by both backends.

Element indices follow the lexicographic coordinate order of
``FiniteAbelianGroup.elements`` (zero is index 0).  Multiset vectors over a
subset G0 are int16 arrays indexed by the subset's position order.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ..abelian import FiniteAbelianGroup

# full automorphism search is skipped past these limits; canonicalization
# then degrades to the identity, which is always sound
_AUT_CANDIDATE_LIMIT = 300_000
_AUT_COUNT_LIMIT = 4096

_MAX_TABLE_ORDER = 4096


class GroupTables:
    def __init__(self, group: FiniteAbelianGroup):
        if group.order > _MAX_TABLE_ORDER:
            raise ValueError(
                f"group of order {group.order} exceeds the desk-scale table limit"
            )
        self.group = group
        n = group.order
        factors = np.array(group.invariant_factors, dtype=np.int64)
        r = len(factors)
        if r == 0:
            coords = np.zeros((1, 0), dtype=np.int64)
        else:
            grids = np.meshgrid(*(np.arange(f) for f in factors), indexing="ij")
            coords = np.stack([g.ravel() for g in grids], axis=1)
        self.n = n
        self.coords = coords
        radix = np.ones(r, dtype=np.int64)
        for i in range(r - 2, -1, -1):
            radix[i] = radix[i + 1] * factors[i + 1]
        self._radix = radix
        self._factors = factors
        # addition table, negation, element orders
        sums = (coords[:, None, :] + coords[None, :, :]) % factors if r else np.zeros(
            (1, 1, 0), dtype=np.int64
        )
        self.add = (sums @ radix).astype(np.int32) if r else np.zeros((1, 1), np.int32)
        self.neg = (((-coords) % factors) @ radix).astype(np.int32) if r else np.zeros(
            1, np.int32
        )
        orders = np.ones(n, dtype=np.int64)
        for i in range(n):
            o = 1
            for c, f in zip(coords[i], factors):
                o = math.lcm(o, f // math.gcd(int(c), int(f)))
            orders[i] = o
        self.orders = orders.astype(np.int32)
        self.zero = 0
        self._aut_perms: np.ndarray | None = None

    def index_of_coords(self, coord_tuple) -> int:
        return int(np.dot(np.asarray(coord_tuple, dtype=np.int64), self._radix))

    def automorphism_perms(self) -> np.ndarray:
        """All automorphisms as element-index permutations, identity first.

        Falls back to the identity alone when the search space is too large;
        callers only use these for deduplication, so that is always sound.
        """
        if self._aut_perms is not None:
            return self._aut_perms
        n, r = self.n, len(self._factors)
        identity = np.arange(n, dtype=np.int32)[None, :]
        if r == 0:
            self._aut_perms = identity
            return self._aut_perms
        candidates = []
        total = 1
        for f in self._factors:
            cand = np.nonzero(f % self.orders == 0)[0]  # elements of order dividing f
            candidates.append(cand)
            total *= len(cand)
        if total > _AUT_CANDIDATE_LIMIT:
            self._aut_perms = identity
            return self._aut_perms
        perms = [identity[0]]
        coords = self.coords
        factors = self._factors
        for choice in np.ndindex(*(len(c) for c in candidates)):
            gens = np.stack(
                [coords[candidates[i][choice[i]]] for i in range(r)], axis=0
            )  # (r, r) images of the basis
            img_coords = (coords @ gens) % factors
            perm = (img_coords @ self._radix).astype(np.int32)
            if perm[0] != 0:
                continue
            seen = np.zeros(n, dtype=bool)
            seen[perm] = True
            if seen.all() and not np.array_equal(perm, perms[0]):
                perms.append(perm)
                if len(perms) > _AUT_COUNT_LIMIT:
                    self._aut_perms = identity
                    return self._aut_perms
        self._aut_perms = np.stack(perms, axis=0)
        return self._aut_perms

    def subset_position_perms(self, sub_idx: np.ndarray) -> np.ndarray:
        """Automorphism action as position permutations of the subset.

        Only automorphisms stabilizing the subset setwise survive.  Returned
        rows p satisfy: the image of a multiset vector v is v[p].
        """
        perms = self.automorphism_perms()
        m = len(sub_idx)
        pos_of = {int(e): i for i, e in enumerate(sub_idx)}
        rows = []
        for q in perms:
            image = [int(q[e]) for e in sub_idx]
            if set(image) != set(pos_of):
                continue
            # w[pos_of[image[i]]] = v[i]  =>  w = v[p] with p[pos_of[image[i]]] = i
            p = np.empty(m, dtype=np.int32)
            for i, img in enumerate(image):
                p[pos_of[img]] = i
            rows.append(p)
        out = np.stack(rows, axis=0)
        return np.unique(out, axis=0) if len(rows) > 1 else out


@lru_cache(maxsize=64)
def tables_for(group: FiniteAbelianGroup) -> GroupTables:
    return GroupTables(group)
