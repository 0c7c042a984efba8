"""Exact arithmetic and structure theory for finite abelian groups.

Groups are kept in primary decomposition: an ordered list of prime-power
cyclic factor orders.  Canonical order (ascending prime, then ascending
exponent) makes isomorphism a plain multiset comparison; non-canonical
orders are permitted so that direct sums built by the union constructions
keep their coordinates where the construction put them.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import DomainError, FormatError, GroupMismatchError, NotInvertible

__all__ = [
    "AbelianGroup",
    "GroupElement",
    "Embedding",
    "CayleyTable",
    "refine",
    "involutions",
    "group_sum",
    "solve_scalar",
    "enumerate_groups",
    "embeds",
    "even_odd_split",
    "parse_group",
    "format_group",
    "parse_element",
    "format_element",
]

_MAX_TABLE_ORDER = 4096


def _prime_power_base(q: int) -> int | None:
    """Return p if q = p^a for a prime p and a >= 1, else None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q
    while q % p == 0:
        q //= p
    return p if q == 1 else None


def _factorize(n: int) -> dict[int, int]:
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
class AbelianGroup:
    """A finite abelian group as an ordered direct sum of prime-power cyclic factors.

    The empty factor tuple is the trivial group of order 1.
    """

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        for q in self.factors:
            if _prime_power_base(q) is None:
                raise DomainError(f"factor {q} is not a prime power >= 2")

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def factor_primes(self) -> tuple[int, ...]:
        return tuple(_prime_power_base(q) for q in self.factors)  # type: ignore[misc]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    @property
    def is_canonical(self) -> bool:
        return self.factors == self.canonical().factors

    def canonical(self) -> "AbelianGroup":
        key = sorted(zip(self.factor_primes, self.factors))
        return AbelianGroup(tuple(q for _, q in key))

    def isomorphic(self, other: "AbelianGroup") -> bool:
        return sorted(self.factors) == sorted(other.factors)

    @staticmethod
    def direct_sum(*parts: "AbelianGroup") -> "AbelianGroup":
        factors: tuple[int, ...] = ()
        for g in parts:
            factors += g.factors
        return AbelianGroup(factors)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        if len(coords) != self.rank:
            raise DomainError(
                f"expected {self.rank} coordinates, got {len(coords)}"
            )
        reduced = tuple(int(c) % q for c, q in zip(coords, self.factors))
        return GroupElement(self, reduced)

    def elements(self) -> Iterator["GroupElement"]:
        """All elements in lexicographic coordinate order."""
        for coords in itertools.product(*(range(q) for q in self.factors)):
            yield GroupElement(self, coords)

    def __repr__(self) -> str:
        return f"AbelianGroup({format_group(self)})"


@dataclass(frozen=True)
class GroupElement:
    """An element of an AbelianGroup as a reduced residue vector."""

    group: AbelianGroup
    coords: tuple[int, ...]

    def _check(self, other: "GroupElement") -> None:
        if self.group != other.group:
            raise GroupMismatchError(
                f"elements of {format_group(self.group)} and "
                f"{format_group(other.group)} cannot be combined"
            )

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        coords = tuple(
            (a + b) % q
            for a, b, q in zip(self.coords, other.coords, self.group.factors)
        )
        return GroupElement(self.group, coords)

    def __neg__(self) -> "GroupElement":
        coords = tuple((-a) % q for a, q in zip(self.coords, self.group.factors))
        return GroupElement(self.group, coords)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupElement":
        coords = tuple((k * a) % q for a, q in zip(self.coords, self.group.factors))
        return GroupElement(self.group, coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_involution(self) -> bool:
        return not self.is_zero and (2 * self).is_zero

    def __repr__(self) -> str:
        return f"GroupElement({format_element(self)})"


def refine(factors: Sequence[int]) -> AbelianGroup:
    """CRT-split arbitrary cyclic factor orders into canonical prime-power form."""
    split: list[tuple[int, int]] = []
    for k in factors:
        if k < 2:
            raise DomainError(f"cyclic factor order {k} must be >= 2")
        for p, e in _factorize(k).items():
            split.append((p, p**e))
    split.sort()
    return AbelianGroup(tuple(q for _, q in split))


def involutions(group: AbelianGroup) -> list[GroupElement]:
    """The order-2 elements, in lexicographic coordinate order.

    There are exactly 2^p - 1 of them, where p counts even-order factors.
    """
    options = [(0, q // 2) if q % 2 == 0 else (0,) for q in group.factors]
    out = []
    for coords in itertools.product(*options):
        if any(coords):
            out.append(GroupElement(group, coords))
    return out


def group_sum(group: AbelianGroup) -> GroupElement:
    """Sum of all group elements: the unique involution if there is exactly one, else zero."""
    invs = involutions(group)
    if len(invs) == 1:
        return invs[0]
    return group.zero()


def solve_scalar(r: int, mu: GroupElement) -> GroupElement:
    """The unique g with r*g = mu, defined when gcd(r, |group|) = 1."""
    group = mu.group
    if math.gcd(r, group.order) != 1:
        raise NotInvertible(f"gcd({r}, {group.order}) != 1")
    coords = tuple(
        (pow(r % q, -1, q) * c) % q if q > 1 else 0
        for c, q in zip(mu.coords, group.factors)
    )
    return GroupElement(group, coords)


def _partitions(e: int) -> list[tuple[int, ...]]:
    """All partitions of e as descending tuples."""
    if e == 0:
        return [()]
    out = []

    def rec(remaining: int, cap: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, cap), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(e, e, [])
    return out


def enumerate_groups(n: int) -> list[AbelianGroup]:
    """One representative per isomorphism class of abelian groups of order n."""
    if n < 1:
        raise DomainError(f"order {n} must be >= 1")
    if n == 1:
        return [AbelianGroup(())]
    per_prime: list[list[tuple[int, ...]]] = []
    for p, e in sorted(_factorize(n).items()):
        choices = []
        for part in _partitions(e):
            # ascending exponents within the prime, i.e. canonical order
            choices.append(tuple(p**a for a in sorted(part)))
        per_prime.append(choices)
    groups = []
    for combo in itertools.product(*per_prime):
        factors: tuple[int, ...] = ()
        for piece in combo:
            factors += piece
        groups.append(AbelianGroup(factors))
    groups.sort(key=lambda g: g.factors)
    return groups


@dataclass(frozen=True)
class Embedding:
    """An injective homomorphism determined by a factor-to-factor matching.

    Source factor i of order q^b maps into target factor factor_map[i] of
    order q^a (same prime, b <= a) by c -> c * q^(a-b).
    """

    source: AbelianGroup
    target: AbelianGroup
    factor_map: tuple[int, ...]

    def apply(self, element: GroupElement) -> GroupElement:
        if element.group != self.source:
            raise GroupMismatchError("element does not belong to the embedding source")
        coords = [0] * self.target.rank
        for i, c in enumerate(element.coords):
            j = self.factor_map[i]
            shift = self.target.factors[j] // self.source.factors[i]
            coords[j] = (c * shift) % self.target.factors[j]
        return GroupElement(self.target, tuple(coords))


def embeds(sub: AbelianGroup, big: AbelianGroup) -> Embedding | None:
    """An embedding of `sub` as a subgroup of `big`, or None.

    For each prime, both exponent sequences are sorted descending and matched
    positionally; the embedding exists iff every matched pair satisfies
    beta <= alpha.
    """
    by_prime_big: dict[int, list[int]] = {}
    for j, (p, q) in enumerate(zip(big.factor_primes, big.factors)):
        by_prime_big.setdefault(p, []).append(j)
    by_prime_sub: dict[int, list[int]] = {}
    for i, p in enumerate(sub.factor_primes):
        by_prime_sub.setdefault(p, []).append(i)

    factor_map = [-1] * sub.rank
    for p, sub_idx in by_prime_sub.items():
        big_idx = by_prime_big.get(p, [])
        if len(sub_idx) > len(big_idx):
            return None
        sub_sorted = sorted(sub_idx, key=lambda i: (-sub.factors[i], i))
        big_sorted = sorted(big_idx, key=lambda j: (-big.factors[j], j))
        for i, j in zip(sub_sorted, big_sorted):
            if sub.factors[i] > big.factors[j]:
                return None
            factor_map[i] = j
    return Embedding(sub, big, tuple(factor_map))


def even_odd_split(group: AbelianGroup) -> tuple[AbelianGroup, AbelianGroup]:
    """Split into (2-power part, odd part), preserving relative factor order."""
    even = tuple(q for q in group.factors if q % 2 == 0)
    odd = tuple(q for q in group.factors if q % 2 == 1)
    return AbelianGroup(even), AbelianGroup(odd)


_ATOM_RE = re.compile(r"^Z(\d+)(?:\^(\d+))?$")


def parse_group(spec: str) -> AbelianGroup:
    """Parse a group spec such as ``Z2^2+Z3`` or ``Z12`` into canonical form."""
    text = spec.replace(" ", "")
    if not text:
        raise FormatError("empty group spec")
    orders: list[int] = []
    for atom in text.split("+"):
        m = _ATOM_RE.match(atom)
        if m is None:
            raise FormatError(f"bad group atom {atom!r} in {spec!r}")
        k = int(m.group(1))
        rep = int(m.group(2)) if m.group(2) else 1
        if k < 1 or rep < 1:
            raise FormatError(f"bad group atom {atom!r} in {spec!r}")
        if k == 1:
            continue
        orders.extend([k] * rep)
    if not orders:
        return AbelianGroup(())
    return refine(orders)


def format_group(group: AbelianGroup) -> str:
    """Render with ^-compression of adjacent equal factors; trivial group is Z1."""
    if group.is_trivial:
        return "Z1"
    parts = []
    for q, run in itertools.groupby(group.factors):
        count = len(list(run))
        parts.append(f"Z{q}" if count == 1 else f"Z{q}^{count}")
    return "+".join(parts)


def format_element(element: GroupElement) -> str:
    return "(" + ",".join(str(c) for c in element.coords) + ")"


def parse_element(text: str, group: AbelianGroup) -> GroupElement:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise FormatError(f"element {text!r} must be parenthesized")
    body = s[1:-1].strip()
    if not body:
        coords: list[int] = []
    else:
        try:
            coords = [int(tok) for tok in body.split(",")]
        except ValueError as exc:
            raise FormatError(f"bad element {text!r}") from exc
    if len(coords) != group.rank:
        raise FormatError(
            f"element {text!r} has {len(coords)} coordinates, "
            f"group {format_group(group)} needs {group.rank}"
        )
    return group.element(coords)


class CayleyTable:
    """Dense index-based addition tables for fast inner search loops.

    Elements are indexed 0..order-1 in lexicographic coordinate order, so
    index 0 is always the zero element.
    """

    __slots__ = ("group", "order", "elements", "index", "add", "neg")

    def __init__(self, group: AbelianGroup) -> None:
        if group.order > _MAX_TABLE_ORDER:
            raise DomainError(
                f"group order {group.order} exceeds table limit {_MAX_TABLE_ORDER}"
            )
        self.group = group
        self.order = group.order
        self.elements = list(group.elements())
        self.index = {e.coords: i for i, e in enumerate(self.elements)}
        factors = group.factors
        n = self.order
        coords = [e.coords for e in self.elements]
        add: list[list[int]] = []
        for a in coords:
            row = [0] * n
            for j, b in enumerate(coords):
                s = tuple((x + y) % q for x, y, q in zip(a, b, factors))
                row[j] = self.index[s]
            add.append(row)
        self.add = add
        self.neg = [
            self.index[tuple((-x) % q for x, q in zip(a, factors))] for a in coords
        ]

    def sub(self, i: int, j: int) -> int:
        return self.add[i][self.neg[j]]

    def encode(self, element: GroupElement) -> int:
        return self.index[element.coords]

    def decode(self, i: int) -> GroupElement:
        return self.elements[i]
