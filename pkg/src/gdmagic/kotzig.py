"""Construction and verification of Kotzig arrays, over the integers 1..k
and over finite abelian groups."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, NotExists
from .groups import AbelianGroup, GroupElement


@dataclass(frozen=True)
class KotzigArray:
    """p x k grid: each row a permutation of {1..k}, every column summing to
    p(k+1)/2."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def column_sum(self) -> int:
        return self.rows * (self.cols + 1) // 2


@dataclass(frozen=True)
class GroupKotzigArray:
    """p x |group| grid: each row a permutation of the group, all column sums
    equal (zero when normalized)."""

    group: AbelianGroup
    entries: tuple[tuple[GroupElement, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def column_sums(self) -> list[GroupElement]:
        out = []
        for j in range(self.cols):
            acc = self.group.zero()
            for row in self.entries:
                acc = acc + row[j]
            out.append(acc)
        return out


def _three_row_base(k: int) -> tuple[tuple[int, ...], ...]:
    """A 3 x k block (k odd) with constant column sums, found by backtracking.

    Row 1 is 1..k; row 2 is searched; row 3 is forced column-wise.
    """
    target = 3 * (k + 1) // 2
    row1 = list(range(1, k + 1))
    row2 = [0] * k
    row3 = [0] * k
    used2 = [False] * (k + 1)
    used3 = [False] * (k + 1)

    def rec(j: int) -> bool:
        if j == k:
            return True
        for cand in range(1, k + 1):
            if used2[cand]:
                continue
            forced = target - row1[j] - cand
            if forced < 1 or forced > k or used3[forced]:
                continue
            row2[j], row3[j] = cand, forced
            used2[cand] = used3[forced] = True
            if rec(j + 1):
                return True
            used2[cand] = used3[forced] = False
        return False

    if not rec(0):  # cannot happen for odd k, kept as a hard guard
        raise RuntimeError(f"no 3x{k} base block found")
    return (tuple(row1), tuple(row2), tuple(row3))


def build_integer(p: int, k: int) -> KotzigArray:
    """A p x k array; exists iff p > 1 and p(k-1) is even.

    Even p stacks identity/reversed row pairs; odd p (forcing k odd) uses a
    backtracked 3-row base plus reversed pairs.
    """
    if p <= 1:
        raise NotExists("p must exceed 1")
    if (p * (k - 1)) % 2 != 0:
        raise NotExists("p(k-1) odd")
    forward = tuple(range(1, k + 1))
    backward = tuple(range(k, 0, -1))
    rows: list[tuple[int, ...]] = []
    if p % 2 == 1:
        rows.extend(_three_row_base(k))
    while len(rows) < p:
        rows.append(forward)
        rows.append(backward)
    array = KotzigArray(tuple(rows))
    if not verify_array(array):
        raise RuntimeError("integer array construction failed verification")
    return array


def build_group(p: int, group: AbelianGroup) -> GroupKotzigArray:
    """A normalized p x |group| array; exists iff p > 1 and either p is even
    or the group does not have exactly one involution.

    Even p stacks (row, negated row) pairs; odd p takes the triple
    (e, theta(e), -e-theta(e)) from a complete mapping theta, plus pairs.
    """
    from .groups import involutions  # local to keep module import light
    from .search import find_complete_mapping

    if p <= 1:
        raise NotExists("p must exceed 1")
    if p % 2 == 1 and len(involutions(group)) == 1:
        raise NotExists("p odd and |I| = 1")
    elems = tuple(group.elements())
    forward = elems
    negated = tuple(-e for e in elems)
    rows: list[tuple[GroupElement, ...]] = []
    if p % 2 == 1:
        theta = find_complete_mapping(group)
        if theta is None:  # guaranteed to exist under the predicate above
            raise RuntimeError("complete mapping search failed unexpectedly")
        second = tuple(theta[i] for i in range(len(elems)))
        third = tuple(-(e + t) for e, t in zip(elems, second))
        rows.extend((forward, second, third))
    while len(rows) < p:
        rows.append(forward)
        rows.append(negated)
    array = GroupKotzigArray(group, tuple(rows))
    if not verify_array(array) or any(not s.is_zero for s in array.column_sums()):
        raise RuntimeError("group array construction failed verification")
    return array


def normalize(array: GroupKotzigArray) -> GroupKotzigArray:
    """Translate the first row by minus the common column sum, making all
    column sums zero."""
    sums = array.column_sums()
    if any(s != sums[0] for s in sums):
        raise DomainError("column sums are not constant")
    s = sums[0]
    if s.is_zero:
        return array
    first = tuple(e - s for e in array.entries[0])
    return GroupKotzigArray(array.group, (first,) + array.entries[1:])


def verify_array(array: KotzigArray | GroupKotzigArray) -> bool:
    """Direct scan of the row-permutation and constant-column-sum invariants."""
    if array.rows <= 1:
        return False
    if isinstance(array, KotzigArray):
        k = array.cols
        want = list(range(1, k + 1))
        for row in array.entries:
            if sorted(row) != want:
                return False
        target = array.rows * (k + 1) / 2
        return all(
            sum(row[j] for row in array.entries) == target for j in range(k)
        )
    all_coords = sorted(e.coords for e in array.group.elements())
    for row in array.entries:
        if len(row) != array.group.order:
            return False
        if sorted(e.coords for e in row) != all_coords:
            return False
    sums = array.column_sums()
    return all(s == sums[0] for s in sums) if sums else True
