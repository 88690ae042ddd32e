"""Shape machinery for sets of lengths: AAMP classification, continued
fractions for two-element cyclic subsets, observed Delta*, and the
closed-form catalogs for the small groups.

An AAMP with shift y, difference d, period D ({0,d} <= D <= [0,d]) and
bound M decomposes L = y + (L' u L* u L'') where L* is the maximal initial
D-periodic run from 0, L' sits in [-M,-1] and L'' in max L* + [1,M].
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .abelian import FiniteAbelianGroup, GroupElement
from .lengths import LengthSet, zero_sum_length_table
from .zerosum import enumerate_atoms


@dataclass(frozen=True)
class AampDescriptor:
    """Witness decomposition certifying that a set is an AAMP."""

    y: int
    d: int
    period: tuple[int, ...]
    bound: int
    l_prime: tuple[int, ...]
    l_star: tuple[int, ...]
    l_dprime: tuple[int, ...]

    def reconstruct(self) -> LengthSet:
        vals = [self.y + v for v in (*self.l_prime, *self.l_star, *self.l_dprime)]
        return LengthSet(tuple(vals))

    @property
    def is_ap(self) -> bool:
        return self.bound == 0 and self.period == (0, self.d)

    @property
    def is_amp(self) -> bool:
        return self.bound == 0

    @property
    def is_aap(self) -> bool:
        return self.period == (0, self.d)


def _progression_prefix(period: tuple[int, ...], d: int, upto: int) -> list[int]:
    """Elements of (period + d*Z) inside [0, upto], ascending."""
    residues = sorted({p % d for p in period})
    out = []
    base = 0
    while base <= upto:
        for r in residues:
            v = base + r
            if v <= upto:
                out.append(v)
        base += d
    return sorted(set(out))


def classify_aamp(L: LengthSet, d: int, M: int) -> Optional[AampDescriptor]:
    """A witness descriptor iff L is an AAMP with difference d and bound M.

    Candidate shifts run over y in L with y <= min L + M (0 in L* forces
    y in L; L' <= [-M,-1] caps the shift).  The period is the minimal one:
    the residues of L - y mod d, plus d.  The central part is the longest
    initial period-complete run; what is left must fit in the M-fringes.
    """
    if not L.values:
        raise ValueError("cannot classify an empty set")
    if d < 1:
        raise ValueError("difference must be >= 1")
    if M < 0:
        raise ValueError("bound must be >= 0")
    lo = L.min
    for y in L.values:
        if y > lo + M:
            break
        shifted = [v - y for v in L.values]
        period = tuple(sorted({v % d for v in shifted} | {0, d}))
        run = _progression_prefix(period, d, max(shifted))
        nonneg = [v for v in shifted if v >= 0]
        # longest prefix of the progression realized exactly by the set
        t = -1
        for i, v in enumerate(run):
            if i < len(nonneg) and nonneg[i] == v:
                t = i
            else:
                break
        if t < 0:
            continue  # 0 not in the shifted set: cannot happen since y in L
        t_val = nonneg[t]
        l_star = tuple(nonneg[: t + 1])
        l_dprime = tuple(v for v in nonneg if v > t_val)
        l_prime = tuple(v for v in shifted if v < 0)
        if any(v < -M for v in l_prime):
            continue
        if any(not (t_val + 1 <= v <= t_val + M) for v in l_dprime):
            continue
        return AampDescriptor(y, d, period, M, l_prime, l_star, l_dprime)
    return None


def min_bound(L: LengthSet, d: int) -> int:
    """Smallest M with classify_aamp(L, d, M) successful.

    Capped by max L - min L, which always suffices (take L* = {0} and
    push everything else into the end part).
    """
    if not L.values:
        raise ValueError("cannot classify an empty set")
    for M in range(L.max - L.min + 1):
        if classify_aamp(L, d, M) is not None:
            return M
    raise AssertionError("unreachable: max-min always admits a descriptor")


@dataclass(frozen=True)
class CfExpansion:
    """Odd-length continued fraction expansion of n/a (last term may be 1)."""

    n: int
    a: int
    terms: tuple[int, ...]

    def value(self) -> Fraction:
        acc = Fraction(self.terms[-1])
        for t in reversed(self.terms[:-1]):
            acc = t + 1 / acc
        return acc


def cf_odd(n: int, a: int) -> CfExpansion:
    """Continued fraction of n/a with an odd number of terms.

    Standard Euclidean expansion; when its term count is even the tail
    identity [..., t] = [..., t-1, 1] restores odd length.
    """
    if not (2 <= a < n):
        raise ValueError("need n > a >= 2")
    if math.gcd(a, n) != 1:
        raise ValueError(f"need gcd(a, n) = 1, got gcd({a}, {n}) = {math.gcd(a, n)}")
    terms = []
    num, den = n, a
    while den:
        q, r = divmod(num, den)
        terms.append(q)
        num, den = den, r
    if len(terms) % 2 == 0:
        terms[-1] -= 1
        terms.append(1)
    return CfExpansion(n, a, tuple(terms))


def min_delta_two_element(n: int, a: int) -> int:
    """min Delta({e, ae}) over a cyclic group of order n with generator e:
    the gcd of the odd-indexed terms of the odd-length expansion of n/a."""
    exp = cf_odd(n, a)
    return math.gcd(*exp.terms[1::2])


def d_a_criterion(n: int, c1: int, c2: int) -> Optional[tuple[int, int]]:
    """The pair (a, d_a) with a = (n - c1)/c2, d_a = (n - c1 - c2)/(c1 c2),
    when both come out positive integers; None otherwise."""
    if c1 < 1 or c2 < 1:
        raise ValueError("c1, c2 must be positive")
    if (n - c1) % c2 != 0:
        return None
    a = (n - c1) // c2
    if a <= 0:
        return None
    if (n - c1 - c2) % (c1 * c2) != 0:
        return None
    d_a = (n - c1 - c2) // (c1 * c2)
    if d_a <= 0:
        return None
    return a, d_a


# ---------------------------------------------------------------------------
# observed Delta*


@dataclass(frozen=True)
class DeltaStarEntry:
    subset: tuple[GroupElement, ...]
    minimum: Optional[int]
    method: str  # "cf-exact" or "scan"
    observed: tuple[int, ...]


@dataclass(frozen=True)
class DeltaStarReport:
    group: FiniteAbelianGroup
    per_subset_bound: int
    observed: tuple[int, ...]
    entries: tuple[DeltaStarEntry, ...]


_DELTA_STAR_MAX_ORDER = 12


def _cf_exact_min(group: FiniteAbelianGroup, pair: tuple[GroupElement, GroupElement]) -> Optional[int]:
    """Exact min Delta for a two-element generating subset of a cyclic group."""
    if group.rank != 1 or group.exponent <= 3:
        return None
    n = group.order
    x, y = (g.coords[0] for g in pair)
    for e, other in ((x, y), (y, x)):
        if math.gcd(e, n) != 1:
            continue
        a = (other * pow(e, -1, n)) % n
        if 2 <= a <= n - 1 and math.gcd(a, n) == 1:
            return min_delta_two_element(n, a)
    return None


def delta_star_observed(
    group: FiniteAbelianGroup, per_subset_bound: int = 16
) -> DeltaStarReport:
    """Observed Delta*(G): the union over subsets G0 of G \\ {0} of the
    minima of their observed distance sets.

    One scan over the punctured group feeds every subset via its support
    (L(B) only depends on supp(B)); two-element generating subsets of
    cyclic groups get the exact continued-fraction value instead of the
    bounded observation.  Subsets whose observed distance set is empty are
    reported as such, never silently absorbed.
    """
    if group.order > _DELTA_STAR_MAX_ORDER:
        raise ValueError(
            f"full subset iteration is limited to |G| <= {_DELTA_STAR_MAX_ORDER}"
        )
    nonzero = tuple(g for g in group.elements() if not g.is_zero)
    m = len(nonzero)
    atoms = enumerate_atoms(group, nonzero)
    vecs, masks = zero_sum_length_table(atoms, per_subset_bound)

    # distance bitmask per support mask, then a subset-closure DP
    by_support = np.zeros(1 << m, dtype=object)
    by_support[:] = 0
    for vec, mask in zip(vecs, masks):
        if mask == 0 or mask == (mask & -mask):
            continue
        support = 0
        for i in range(m):
            if vec[i]:
                support |= 1 << i
        dmask = 0
        prev = -1
        mm = mask
        while mm:
            b = (mm & -mm).bit_length() - 1
            if prev >= 0:
                dmask |= 1 << (b - prev)
            prev = b
            mm &= mm - 1
        by_support[support] |= dmask
    for j in range(m):
        bit = 1 << j
        for s in range(1 << m):
            if s & bit:
                by_support[s] |= by_support[s ^ bit]

    entries = []
    union: set[int] = set()
    for s in range(1, 1 << m):
        subset = tuple(nonzero[i] for i in range(m) if (s >> i) & 1)
        dmask = int(by_support[s])
        observed = []
        mm = dmask
        while mm:
            b = (mm & -mm).bit_length() - 1
            observed.append(b)
            mm &= mm - 1
        method = "scan"
        minimum = observed[0] if observed else None
        if len(subset) == 2:
            exact = _cf_exact_min(group, (subset[0], subset[1]))
            if exact is not None:
                if minimum is not None and minimum < exact:
                    raise AssertionError(
                        f"scan found a distance below the exact minimum for {subset}"
                    )
                minimum = exact
                method = "cf-exact"
        if minimum is not None:
            union.add(minimum)
        entries.append(DeltaStarEntry(subset, minimum, method, tuple(observed)))
    return DeltaStarReport(group, per_subset_bound, tuple(sorted(union)), tuple(entries))


# ---------------------------------------------------------------------------
# closed-form catalogs (complete descriptions of the small systems)


def _as_interval(L: LengthSet) -> Optional[tuple[int, int]]:
    if L.values and L.is_interval:
        return L.min, L.max
    return None


def _as_ap2(L: LengthSet) -> Optional[tuple[int, int]]:
    """(min, count-1) when L is an AP with difference 2 (singletons included)."""
    vals = L.values
    if not vals:
        return None
    if all(b - a == 2 for a, b in zip(vals, vals[1:])):
        return vals[0], len(vals) - 1
    return None


def closed_form_membership(
    group: FiniteAbelianGroup, L: LengthSet
) -> tuple[bool, Optional[str], Optional[dict]]:
    """Match L against the cataloged parametric families for this group.

    Returns (matched, family tag, parameters).  Raises for groups without
    a cataloged complete description.
    """
    f = group.invariant_factors
    if f in ((), (2,)):
        if len(L) == 1:
            return True, "singleton", {"m": L.min}
        return False, None, None
    if f in ((3,), (2, 2)):
        iv = _as_interval(L)
        if iv is not None:
            a, b = iv
            k = b - a
            if a >= 2 * k:
                return True, "y+2k+[0,k]", {"y": a - 2 * k, "k": k}
        return False, None, None
    if f == (4,):
        iv = _as_interval(L)
        if iv is not None:
            a, b = iv
            k = b - a
            if a >= k + 1:
                return True, "y+k+1+[0,k]", {"y": a - k - 1, "k": k}
        ap = _as_ap2(L)
        if ap is not None:
            a, k = ap
            if a >= 2 * k:
                return True, "y+2k+2[0,k]", {"y": a - 2 * k, "k": k}
        return False, None, None
    if f == (2, 2, 2):
        iv = _as_interval(L)
        if iv is not None:
            a, b = iv
            k = b - a
            if k <= 2 and a >= k + 1:
                return True, "y+k+1+[0,k]", {"y": a - k - 1, "k": k}
            if k >= 3 and a >= k:
                return True, "y+k+[0,k]", {"y": a - k, "k": k}
        ap = _as_ap2(L)
        if ap is not None:
            a, k = ap
            if a >= 2 * k:
                return True, "y+2k+2[0,k]", {"y": a - 2 * k, "k": k}
        return False, None, None
    if f == (3, 3):
        if L.values == (1,):
            return True, "{1}", {}
        iv = _as_interval(L)
        if iv is not None:
            a, b = iv
            if a % 2 == 0:
                k = a // 2
                if a <= b <= 5 * k:
                    return True, "[2k,l]", {"k": k, "l": b}
            else:
                k = (a - 1) // 2
                if k >= 1 and a <= b <= 5 * k + 2:
                    return True, "[2k+1,l]", {"k": k, "l": b}
        return False, None, None
    raise ValueError(f"no closed-form catalog for {group}")


_C5_SHAPES = (
    ("AP-diff-1", 1, (0, 1)),
    ("AP-diff-3", 3, (0, 3)),
    ("AMP-period-{0,2,3}", 3, (0, 2, 3)),
    ("AMP-period-{0,1,3}", 3, (0, 1, 3)),
)


def c5_shape(L: LengthSet) -> Optional[str]:
    """The C5 shape class of L, or None when none of the four fits."""
    for tag, d, period in _C5_SHAPES:
        desc = classify_aamp(L, d, 0)
        if desc is not None and desc.period == period:
            return tag
    return None
