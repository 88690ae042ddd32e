"""Exact arithmetic in finite abelian groups given by invariant factors.

A group is described by its invariant factors ``n_1 | n_2 | ... | n_r``
(the empty tuple is the trivial group).  Elements are exponent vectors,
one coordinate per factor, reduced modulo the factor.  Everything here is
immutable and cheap; groups at play are tiny.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence as Seq


class GroupParseError(ValueError):
    """Raised when a group or subset spec string cannot be parsed."""


def _prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group in invariant-factor normal form."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        for f in self.invariant_factors:
            if f < 2:
                raise ValueError(f"invariant factor {f} < 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ValueError(
                    f"invariant factors {self.invariant_factors} do not form a divisibility chain"
                )

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def element(self, coords: Iterable[int]) -> "GroupElement":
        """Make an element, reducing each coordinate modulo its factor."""
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise ValueError(
                f"expected {self.rank} coordinates for {self}, got {len(coords)}"
            )
        reduced = tuple(c % n for c, n in zip(coords, self.invariant_factors))
        return GroupElement(self, reduced)

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def elements(self) -> Iterator["GroupElement"]:
        """All elements in lexicographic coordinate order (zero first)."""
        for coords in itertools.product(*(range(n) for n in self.invariant_factors)):
            yield GroupElement(self, coords)

    def index_of(self, a: "GroupElement") -> int:
        """Position of ``a`` in the :meth:`elements` order (mixed radix)."""
        if a.group != self:
            raise ValueError("element does not belong to this group")
        idx = 0
        for c, n in zip(a.coords, self.invariant_factors):
            idx = idx * n + c
        return idx

    def element_by_index(self, idx: int) -> "GroupElement":
        coords = []
        for n in reversed(self.invariant_factors):
            idx, c = divmod(idx, n)
            coords.append(c)
        return GroupElement(self, tuple(reversed(coords)))

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "C1"
        return "x".join(f"C{n}" for n in self.invariant_factors)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = self.group.invariant_factors
        if len(self.coords) != len(factors):
            raise ValueError(
                f"element has {len(self.coords)} coordinates, group rank is {len(factors)}"
            )
        if any(not 0 <= c < n for c, n in zip(self.coords, factors)):
            raise ValueError(f"coordinates {self.coords} not reduced for {self.group}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise ValueError("elements belong to different groups")
        return GroupElement(
            self.group,
            tuple(
                (a + b) % n
                for a, b, n in zip(self.coords, other.coords, self.group.invariant_factors)
            ),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            self.group,
            tuple((-a) % n for a, n in zip(self.coords, self.group.invariant_factors)),
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, k: int) -> "GroupElement":
        return GroupElement(
            self.group,
            tuple((k * a) % n for a, n in zip(self.coords, self.group.invariant_factors)),
        )

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def make_group(cyclic_orders: Iterable[int]) -> FiniteAbelianGroup:
    """Invariant-factor normal form of a direct sum of cyclic groups.

    Prime powers of all the given orders are regrouped into a divisibility
    chain, so e.g. orders (4, 6) become factors (2, 12).
    """
    orders = list(cyclic_orders)
    for n in orders:
        if n < 2:
            raise ValueError(f"cyclic order {n} must be at least 2")
    # bucket prime powers per prime, largest first
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        for p, e in _prime_factorization(n).items():
            by_prime.setdefault(p, []).append(p**e)
    for p in by_prime:
        by_prime[p].sort(reverse=True)
    depth = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for i in range(depth):
        f = math.prod(v[i] for v in by_prime.values() if len(v) > i)
        factors.append(f)
    factors.reverse()  # ascending divisibility chain
    return FiniteAbelianGroup(tuple(factors))


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def neg(a: GroupElement) -> GroupElement:
    return -a


def zero(group: FiniteAbelianGroup) -> GroupElement:
    return group.zero


def order_of(a: GroupElement) -> int:
    """Smallest k >= 1 with k*a = 0."""
    k = 1
    for c, n in zip(a.coords, a.group.invariant_factors):
        k = math.lcm(k, n // math.gcd(c, n))
    return k


def elements(group: FiniteAbelianGroup) -> Iterator[GroupElement]:
    return group.elements()


def d_star(group: FiniteAbelianGroup) -> int:
    """The classical lower bound 1 + sum(n_i - 1) for the Davenport constant."""
    return 1 + sum(n - 1 for n in group.invariant_factors)


def is_independent(elems: Seq[GroupElement]) -> bool:
    """True iff the subgroup generated by the list has order prod(ord(e_i)).

    For finite groups this is equivalent to: sum m_i e_i = 0 forces every
    m_i e_i = 0.  Rejects zero elements.
    """
    if not elems:
        return True
    group = elems[0].group
    for e in elems:
        if e.group != group:
            raise ValueError("elements belong to different groups")
        if e.is_zero:
            raise ValueError("independence is defined for non-zero elements only")
    expected = math.prod(order_of(e) for e in elems)
    # breadth-first closure of the generated subgroup
    seen = {group.zero.coords}
    frontier = [group.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for e in elems:
                y = x + e
                if y.coords not in seen:
                    seen.add(y.coords)
                    nxt.append(y)
        frontier = nxt
        if len(seen) > expected:
            return False
    return len(seen) == expected


_CYCLIC_TOKEN = re.compile(r"^[Cc](\d+)(?:\^(\d+))?$")


def parse_group(spec: str) -> FiniteAbelianGroup:
    """Parse a group spec like ``C6``, ``C2^2xC12`` or ``2,2,12``."""
    s = spec.strip()
    if not s:
        raise GroupParseError("empty group spec")
    orders: list[int] = []
    if s[0] in "Cc":
        for token in s.replace("×", "x").split("x"):
            token = token.strip()
            m = _CYCLIC_TOKEN.match(token)
            if not m:
                raise GroupParseError(f"bad group token {token!r} in {spec!r}")
            n, power = int(m.group(1)), int(m.group(2) or 1)
            if n < 2:
                raise GroupParseError(f"bad group token {token!r}: order must be >= 2")
            orders.extend([n] * power)
    else:
        for token in s.split(","):
            token = token.strip()
            if not token.isdigit():
                raise GroupParseError(f"bad group token {token!r} in {spec!r}")
            n = int(token)
            if n < 2:
                raise GroupParseError(f"bad group token {token!r}: order must be >= 2")
            orders.append(n)
    return make_group(orders)


def parse_subset(group: FiniteAbelianGroup, spec: str) -> tuple[GroupElement, ...]:
    """Parse a subset spec: elements separated by ``;``.

    Each element is either a bare integer (rank-1 groups) or a coordinate
    tuple like ``(1,0)``.  Elements are validated against the group and
    returned sorted in the canonical element order, duplicates removed.
    """
    out = []
    for token in spec.split(";"):
        token = token.strip()
        if not token:
            continue
        if token.startswith("("):
            if not token.endswith(")"):
                raise GroupParseError(f"bad element token {token!r} in {spec!r}")
            inner = token[1:-1]
            parts = [p.strip() for p in inner.split(",") if p.strip()]
            if not all(re.fullmatch(r"-?\d+", p) for p in parts):
                raise GroupParseError(f"bad element token {token!r} in {spec!r}")
            coords = [int(p) for p in parts]
        else:
            if not re.fullmatch(r"-?\d+", token):
                raise GroupParseError(f"bad element token {token!r} in {spec!r}")
            coords = [int(token)]
        if len(coords) != group.rank:
            raise GroupParseError(
                f"element {token!r} has {len(coords)} coordinates, group {group} has rank {group.rank}"
            )
        out.append(group.element(coords))
    uniq = {group.index_of(e): e for e in out}
    return tuple(uniq[i] for i in sorted(uniq))
