"""Arithmetic invariants: U_k, U_M, rho_k, lambda_k, elasticity, daleth, observed distances.

Everything here is exact except ``delta_observed``, which is a bounded
scan and says so (``exact=False``).  Unions over "products of k atoms"
are complete because k in L(B) means precisely that B is such a product.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .abelian import FiniteAbelianGroup, GroupElement
from .lengths import (
    LengthSet,
    canonicalize_rows,
    position_perms,
    product_set,
    target_length_masks,
    zero_sum_length_table,
)
from .zerosum import AtomSet, Sequence, enumerate_atoms


@dataclass(frozen=True)
class InvariantReport:
    group: FiniteAbelianGroup
    subset: tuple[GroupElement, ...]
    kind: str
    parameter: object
    value: object
    witnesses: tuple[Sequence, ...]
    exact: bool


def _atoms(group, subset, atom_set) -> AtomSet:
    if atom_set is not None:
        return atom_set
    return enumerate_atoms(group, subset)


def _mask_min(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _mask_max(mask: int) -> int:
    return mask.bit_length() - 1


def u_k(
    group: FiniteAbelianGroup,
    k: int,
    subset: Optional[Iterable[GroupElement]] = None,
    atom_set: Optional[AtomSet] = None,
) -> InvariantReport:
    """Exact U_k(G0): the union of all L(B) over products B of k atoms."""
    if k < 0:
        raise ValueError("k must be non-negative")
    atoms = _atoms(group, subset, atom_set)
    if k == 0:
        return InvariantReport(
            group, atoms.subset, "U_k", 0, LengthSet.of(0),
            (Sequence.empty(group),), True,
        )
    perms = position_perms(atoms)
    targets = product_set(atoms, k, perms)
    masks = target_length_masks(atoms, targets, perms)
    union = 0
    best_hi = best_lo = -1
    hi = -1
    lo = None
    for i, mask in enumerate(masks):
        union |= mask
        if _mask_max(mask) > hi:
            hi, best_hi = _mask_max(mask), i
        if lo is None or _mask_min(mask) < lo:
            lo, best_lo = _mask_min(mask), i
    witnesses = tuple(
        atoms.sequence_from_vector(targets[i]) for i in dict.fromkeys([best_hi, best_lo])
        if i >= 0
    )
    return InvariantReport(
        group, atoms.subset, "U_k", k, LengthSet.from_mask(union), witnesses, True
    )


def rho_k(group, k, subset=None, atom_set=None) -> int:
    return u_k(group, k, subset, atom_set).value.max


def lambda_k(group, k, subset=None, atom_set=None) -> int:
    return u_k(group, k, subset, atom_set).value.min


def _symmetric_pair_filter(
    prods: np.ndarray, atoms: AtomSet
) -> np.ndarray:
    """Rows factorable entirely into g(-g) pairs: v_g = v_{-g}, 2-torsion even."""
    from . import _kernels

    tables = _kernels.tables_for(atoms.group)
    sub_idx = np.array([atoms.group.index_of(g) for g in atoms.subset], dtype=np.int64)
    pos_of = {int(e): i for i, e in enumerate(sub_idx)}
    negp = np.array([pos_of[int(tables.neg[e])] for e in sub_idx])
    sym = (prods == prods[:, negp]).all(axis=1)
    two_tor = np.nonzero(negp == np.arange(len(sub_idx)))[0]
    if len(two_tor):
        sym &= (prods[:, two_tor] % 2 == 0).all(axis=1)
    return sym


def u_M(
    group: FiniteAbelianGroup,
    M: Iterable[int],
    subset: Optional[Iterable[GroupElement]] = None,
    atom_set: Optional[AtomSet] = None,
) -> InvariantReport:
    """Exact U_M(G0): union of the L(B) containing the whole set M.

    Complete because min(M) in L(B) forces B to be a product of min(M)
    atoms; those products are enumerated with deduplication.
    """
    Mset = sorted(set(int(x) for x in M))
    if not Mset:
        raise ValueError("M must be non-empty")
    atoms = _atoms(group, subset, atom_set)
    k, mx = Mset[0], Mset[-1]
    mreq = 0
    for v in Mset:
        mreq |= 1 << v
    if k == 0:
        value = LengthSet.of(0) if Mset == [0] else LengthSet(())
        return InvariantReport(group, atoms.subset, "U_M", tuple(Mset), value,
                               (Sequence.empty(group),) if Mset == [0] else (), True)
    if k == 1:
        hit = Mset == [1] and len(atoms.atoms) > 0
        value = LengthSet.of(1) if hit else LengthSet(())
        wit = (atoms.atoms[0],) if hit else ()
        return InvariantReport(group, atoms.subset, "U_M", tuple(Mset), value, wit, True)

    perms = position_perms(atoms)
    if k == 2 and mx >= 3:
        # bucket atoms by length; a pair can reach max(M) only when
        # |u| + |v| >= 2 max(M), and at equality only via g(-g) pairs
        mat = atoms.matrix
        lens = mat.sum(axis=1)
        chunks = []
        lengths_present = sorted(set(int(x) for x in lens))
        for i, l1 in enumerate(lengths_present):
            for l2 in lengths_present[i:]:
                if l1 + l2 < 2 * mx or l1 < 2:
                    continue
                a_rows = mat[lens == l1]
                b_rows = mat[lens == l2]
                prods = (a_rows[:, None, :].astype(np.int16) + b_rows[None, :, :]).reshape(
                    -1, mat.shape[1]
                )
                if l1 + l2 == 2 * mx:
                    prods = prods[_symmetric_pair_filter(prods, atoms)]
                if len(prods):
                    chunks.append(np.unique(canonicalize_rows(prods, perms), axis=0))
        if chunks:
            targets = np.unique(np.concatenate(chunks, axis=0), axis=0)
        else:
            targets = np.zeros((0, mat.shape[1]), dtype=np.int16)
    else:
        targets = product_set(atoms, k, perms)

    masks = target_length_masks(atoms, targets, perms)
    union = 0
    witness_idx = -1
    for i, mask in enumerate(masks):
        if mask & mreq == mreq:
            union |= mask
            if witness_idx < 0:
                witness_idx = i
    witnesses = (
        (atoms.sequence_from_vector(targets[witness_idx]),) if witness_idx >= 0 else ()
    )
    return InvariantReport(
        group, atoms.subset, "U_M", tuple(Mset), LengthSet.from_mask(union),
        witnesses, True,
    )


def daleth(
    group: FiniteAbelianGroup,
    subset: Optional[Iterable[GroupElement]] = None,
    atom_set: Optional[AtomSet] = None,
) -> InvariantReport:
    """daleth(G0) = sup over atom pairs of min(L(uv) \\ {2}), with min {} = 0."""
    atoms = _atoms(group, subset, atom_set)
    mat = atoms.matrix
    if len(mat) == 0:
        return InvariantReport(group, atoms.subset, "daleth", None, 0, (), True)
    perms = position_perms(atoms)
    iu, ju = np.triu_indices(len(mat))
    prods = (mat[iu].astype(np.int16) + mat[ju])
    targets = np.unique(canonicalize_rows(prods, perms), axis=0)
    masks = target_length_masks(atoms, targets, perms)
    best = 0
    best_i = -1
    for i, mask in enumerate(masks):
        rest = mask & ~(1 << 2)
        val = _mask_min(rest) if rest else 0
        if val > best:
            best, best_i = val, i
    witnesses = (atoms.sequence_from_vector(targets[best_i]),) if best_i >= 0 else ()
    return InvariantReport(group, atoms.subset, "daleth", None, best, witnesses, True)


def delta_observed(
    group: FiniteAbelianGroup,
    subset: Optional[Iterable[GroupElement]] = None,
    size_bound: int = 12,
    atom_set: Optional[AtomSet] = None,
) -> InvariantReport:
    """Union of Delta(L(B)) over zero-sum B with |B| <= size_bound.

    A subset of the true Delta(G0); grows monotonically with the bound,
    hence the ``exact=False`` flag.
    """
    atoms = _atoms(group, subset, atom_set)
    vecs, masks = zero_sum_length_table(atoms, size_bound)
    seen: dict[int, int] = {}
    for i, mask in enumerate(masks):
        if mask == 0 or mask == (mask & -mask):
            continue  # empty or singleton length set
        prev = -1
        m = mask
        while m:
            b = (m & -m).bit_length() - 1
            if prev >= 0:
                d = b - prev
                if d not in seen:
                    seen[d] = i
            prev = b
            m &= m - 1
    value = tuple(sorted(seen))
    witnesses = tuple(
        atoms.sequence_from_vector(vecs[seen[d]]) for d in sorted(seen)
    )
    return InvariantReport(
        group, atoms.subset, "delta_observed", size_bound, value, witnesses, False
    )


def elasticity_up_to(
    group: FiniteAbelianGroup,
    k_max: int,
    subset: Optional[Iterable[GroupElement]] = None,
    atom_set: Optional[AtomSet] = None,
) -> Fraction:
    """max over k <= k_max of rho_k / k (rational, not floored)."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    atoms = _atoms(group, subset, atom_set)
    best = Fraction(0)
    for k in range(1, k_max + 1):
        rep = u_k(group, k, atom_set=atoms)
        if len(rep.value):
            best = max(best, Fraction(rep.value.max, k))
    return best


@dataclass(frozen=True)
class LambdaCheckResult:
    group: FiniteAbelianGroup
    k_max: int
    davenport: int
    entries: tuple[tuple[int, int, int], ...]  # (m, computed, formula)
    mismatches: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def lambda_formula_check(
    group: FiniteAbelianGroup,
    k_max: int,
    atom_set: Optional[AtomSet] = None,
) -> LambdaCheckResult:
    """Compare computed lambda_m (= min U_m) against the three-case formula.

    The formula distinguishes m = kD + j by j = 0, j in [1, rho_{2k+1} - kD]
    and the remaining j in [.., D-1], using the computed odd rho values.
    """
    atoms = _atoms(group, None, atom_set)
    D = atoms.davenport
    if D < 2:
        raise ValueError("lambda formula check needs a non-half-factorial-trivial group")
    rho_odd = {0: 1}
    for k in range(1, k_max):
        rho_odd[k] = u_k(group, 2 * k + 1, atom_set=atoms).value.max
    entries = []
    mismatches = []
    for m in range(1, k_max * D + 1):
        k, j = divmod(m, D)
        computed = u_k(group, m, atom_set=atoms).value.min
        if j == 0:
            formula = 2 * k
        elif j <= rho_odd[k] - k * D:
            formula = 2 * k + 1
        else:
            formula = 2 * k + 2
        entries.append((m, computed, formula))
        if computed != formula:
            mismatches.append((m, computed, formula))
    return LambdaCheckResult(group, k_max, D, tuple(entries), tuple(mismatches))
