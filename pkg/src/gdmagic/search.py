"""Exhaustive-but-pruned searches: magic labelings by backtracking with
constraint propagation, balanced zero-neighborhood labelings through the
binary kernel of the adjacency matrix, equitable partitions, and complete
mappings.  Every positive answer is re-verified before it is returned, and
negative answers are only reported after the reduced space is exhausted."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from . import graphs as graphmod
from .errors import DomainError
from .graphs import Graph, VertexPartition, regular_valency
from .groups import AbelianGroup, CayleyTable, GroupElement, group_sum
from .labeling import (
    BinaryLabeling,
    Labeling,
    MagicCertificate,
    check_magic,
    weight,
)

__all__ = [
    "SearchBudget",
    "SearchOutcome",
    "BznlOutcome",
    "PartitionOutcome",
    "Gf2System",
    "IdentityReport",
    "search_magic",
    "gf2_system",
    "bznl_search",
    "find_partition",
    "find_complete_mapping",
    "check_gp2_identities",
    "check_gp2_group_identities",
]


@dataclass(frozen=True)
class SearchBudget:
    """Resource limits; exceeding one yields an explicit Exhausted outcome."""

    node_limit: int = 100_000_000
    time_limit: float = 600.0
    mode: str = "first"  # first | all

    def __post_init__(self) -> None:
        if self.node_limit <= 0 or self.time_limit <= 0:
            raise DomainError("budget limits must be positive")
        if self.mode not in ("first", "all"):
            raise DomainError(f"unknown search mode {self.mode!r}")


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # found | none | exhausted
    certificates: tuple[MagicCertificate, ...]
    nodes: int
    elapsed: float
    pruning: tuple[str, ...]

    @property
    def certificate(self) -> MagicCertificate | None:
        return self.certificates[0] if self.certificates else None


def _bfs_order(graph: Graph) -> list[int]:
    """BFS from a maximum-degree vertex (lowest index on ties), restarting the
    same way for further components."""
    order: list[int] = []
    seen = [False] * graph.n
    while len(order) < graph.n:
        start = max(
            (v for v in range(graph.n) if not seen[v]),
            key=lambda v: (graph.degree(v), -v),
        )
        seen[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in graph.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    return order


class _Stop(Exception):
    """Internal: budget exceeded."""


class _MagicEngine:
    """Backtracking over a BFS vertex order.

    The constant is bound when the first neighborhood completes; vertices
    whose neighborhood has a single unlabeled member force that member's
    label.  On graphs recognized as GP(n,2), the shift identities
    l(f_i) + l(f_{i+5}) = l(f_{i+3}) + l(f_{i+8}) (both vertex families)
    provide additional forcing; they are consequences of weight equality, so
    they never exclude a completion.
    """

    def __init__(
        self,
        graph: Graph,
        group: AbelianGroup,
        budget: SearchBudget,
        use_gp2: bool,
    ) -> None:
        self.graph = graph
        self.group = group
        self.table = CayleyTable(group)
        self.budget = budget
        self.order = _bfs_order(graph)
        self.adj = [list(a) for a in graph.adj]
        n = graph.n
        self.label = [-1] * n
        self.used = 0
        self.acc = [0] * n  # partial neighbor sums, element indices
        self.cnt = [len(a) for a in self.adj]
        self.mu: int | None = None
        self.trail: list[tuple[str, int]] = []
        self.forced: deque[tuple[int, int]] = deque()
        self.nodes = 0
        self.solutions: list[MagicCertificate] = []
        self.start = time.monotonic()
        self.deadline = self.start + budget.time_limit
        self.valency = regular_valency(graph)
        self.pruning = ["neighborhood-forcing"]
        if self.valency is not None and n > 0:
            self.pruning.append("translation-fix")
        self.instances: list[tuple[int, int, int, int]] = []
        self.inst_of: list[list[int]] = [[] for _ in range(n)]
        if use_gp2:
            hit = _gp2_layout(graph)
            if hit is not None:
                self._build_gp2_instances(hit)
                self.pruning.append("gp2-shift-identities")

    def _build_gp2_instances(self, n: int) -> None:
        for base in (0, n):  # outer family then inner family
            for i in range(n):
                vs = (
                    base + i,
                    base + (i + 5) % n,
                    base + (i + 3) % n,
                    base + (i + 8) % n,
                )
                if len(set(vs)) != 4:
                    continue
                idx = len(self.instances)
                self.instances.append(vs)
                for v in vs:
                    self.inst_of[v].append(idx)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise _Stop
        if self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise _Stop

    def _assign(self, v: int, val: int) -> bool:
        self._tick()
        if self.used >> val & 1:
            return False
        self.label[v] = val
        self.used |= 1 << val
        self.trail.append(("v", v))
        add = self.table.add
        for u in self.adj[v]:
            self.acc[u] = add[self.acc[u]][val]
            self.cnt[u] -= 1
            if self.cnt[u] == 0:
                if self.mu is None:
                    self.mu = self.acc[u]
                    self.trail.append(("mu", -1))
                    # earlier near-complete neighborhoods become forcible now
                    for w in range(self.graph.n):
                        if self.cnt[w] == 1:
                            self._force_last(w)
                elif self.acc[u] != self.mu:
                    return False
            elif self.cnt[u] == 1 and self.mu is not None:
                self._force_last(u)
        for idx in self.inst_of[v]:
            a, b, c, d = self.instances[idx]
            la, lb, lc, ld = (
                self.label[a],
                self.label[b],
                self.label[c],
                self.label[d],
            )
            known = (la >= 0) + (lb >= 0) + (lc >= 0) + (ld >= 0)
            if known == 4:
                if add[la][lb] != add[lc][ld]:
                    return False
            elif known == 3:
                sub = self.table.sub
                if la < 0:
                    self.forced.append((a, sub(add[lc][ld], lb)))
                elif lb < 0:
                    self.forced.append((b, sub(add[lc][ld], la)))
                elif lc < 0:
                    self.forced.append((c, sub(add[la][lb], ld)))
                else:
                    self.forced.append((d, sub(add[la][lb], lc)))
        return True

    def _force_last(self, u: int) -> None:
        """Queue the label forced on the single unlabeled neighbor of u."""
        for w in self.adj[u]:
            if self.label[w] == -1:
                self.forced.append((w, self.table.sub(self.mu, self.acc[u])))
                return

    def _propagate(self) -> bool:
        while self.forced:
            v, val = self.forced.popleft()
            if self.label[v] != -1:
                if self.label[v] != val:
                    return False
                continue
            if not self._assign(v, val):
                return False
        return True

    def _undo_to(self, mark: int) -> None:
        add = self.table.add
        neg = self.table.neg
        while len(self.trail) > mark:
            kind, v = self.trail.pop()
            if kind == "mu":
                self.mu = None
                continue
            val = self.label[v]
            self.label[v] = -1
            self.used &= ~(1 << val)
            nval = neg[val]
            for u in self.adj[v]:
                self.acc[u] = add[self.acc[u]][nval]
                self.cnt[u] += 1
        self.forced.clear()

    def _record_solution(self) -> bool:
        values = tuple(self.table.decode(val) for val in self.label)
        labeling = Labeling(self.graph, self.group, values)
        check = check_magic(labeling)
        if not check.ok:  # the engine must only reach consistent leaves
            raise RuntimeError(f"engine produced a bad leaf: {check.defect}")
        self.solutions.append(check.certificate)
        return self.budget.mode == "first"

    def _search(self, pos: int) -> bool:
        while pos < len(self.order) and self.label[self.order[pos]] != -1:
            pos += 1
        if pos == len(self.order):
            return self._record_solution()
        v = self.order[pos]
        for val in range(self.table.order):
            if self.used >> val & 1:
                continue
            mark = len(self.trail)
            if self._assign(v, val) and self._propagate():
                if self._search(pos + 1):
                    return True
            self._undo_to(mark)
        return False

    def run(self) -> SearchOutcome:
        status = "none"
        try:
            if self.graph.n == 0:
                self.solutions.append(
                    check_magic(Labeling(self.graph, self.group, ())).certificate
                )
            else:
                # initial pass binds the constant for isolated vertices
                ok = True
                for v in range(self.graph.n):
                    if self.cnt[v] == 0:
                        if self.mu is None:
                            self.mu = self.acc[v]
                        elif self.acc[v] != self.mu:
                            ok = False
                            break
                if ok:
                    if self.valency is not None:
                        v0 = self.order[0]
                        if self._assign(v0, 0) and self._propagate():
                            self._search(0)
                        self._undo_to(0)
                    else:
                        self._search(0)
        except _Stop:
            status = "exhausted"
        if self.solutions:
            status = "found" if status != "exhausted" else "exhausted"
        return SearchOutcome(
            status,
            tuple(self.solutions),
            self.nodes,
            time.monotonic() - self.start,
            tuple(self.pruning),
        )


def _gp2_layout(graph: Graph) -> int | None:
    """n if the graph equals gp(n,2) under identity indexing, else None."""
    if graph.n % 2 or graph.n < 10:
        return None
    n = graph.n // 2
    if 2 * 2 >= n:
        return None
    if graphmod.same_structure(graph, graphmod.gp(n, 2)):
        return n
    return None


def search_magic(
    graph: Graph,
    group: AbelianGroup,
    budget: SearchBudget | None = None,
    use_gp2_propagation: bool = True,
) -> SearchOutcome:
    """Search for a magic labeling.

    Symmetry is broken by fixing the first vertex's label to zero when the
    graph is regular: translating every label by c shifts every weight by
    r*c, so magicness is translation-invariant there.  With mode "all", the
    outcome collects every solution of the reduced space (one representative
    per translation class on regular graphs).
    """
    if budget is None:
        budget = SearchBudget()
    if graph.n != group.order:
        raise DomainError(
            f"graph order {graph.n} does not match group order {group.order}"
        )
    return _MagicEngine(graph, group, budget, use_gp2_propagation).run()


@dataclass(frozen=True)
class Gf2System:
    """Adjacency matrix over GF(2) as row bitsets plus a nullspace basis."""

    n: int
    rows: tuple[int, ...]
    basis: tuple[int, ...]

    @property
    def nullity(self) -> int:
        return len(self.basis)

    def in_kernel(self, vector: int) -> bool:
        return all((row & vector).bit_count() % 2 == 0 for row in self.rows)


def gf2_system(graph: Graph) -> Gf2System:
    """Row-reduce the adjacency matrix over GF(2) and extract a kernel basis."""
    n = graph.n
    rows = [0] * n
    for v in range(n):
        for u in graph.adj[v]:
            rows[v] |= 1 << u
    work = rows[:]
    pivots: list[tuple[int, int]] = []  # (row, col)
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if work[r] >> col & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(n):
            if r != rank and (work[r] >> col & 1):
                work[r] ^= work[rank]
        pivots.append((rank, col))
        rank += 1
    pivot_cols = {col for _, col in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        vec = 1 << free
        for r, col in pivots:
            if work[r] >> free & 1:
                vec |= 1 << col
        basis.append(vec)
    system = Gf2System(n, tuple(rows), tuple(basis))
    for vec in basis:
        if not system.in_kernel(vec):
            raise RuntimeError("kernel basis failed the membership check")
    return system


@dataclass(frozen=True)
class BznlOutcome:
    status: str  # found | none | exhausted
    labeling: BinaryLabeling | None
    nullity: int | None
    enumerated: int
    note: str = ""


def bznl_search(graph: Graph, limit: int = 24) -> BznlOutcome:
    """Look for a balanced zero-neighborhood labeling through the kernel of
    the adjacency matrix over GF(2).

    Immediate negatives: odd vertex count (balance impossible) and, on cubic
    graphs, half-order odd (the type-2 count 3n/2 would not be an integer).
    Kernels with more than ``limit`` dimensions yield Exhausted, never a
    sampled guess.
    """
    if graph.n % 2 == 1:
        return BznlOutcome("none", None, None, 0, "odd vertex count")
    half = graph.n // 2
    if regular_valency(graph) == 3 and half % 2 == 1:
        return BznlOutcome("none", None, None, 0, "half-order odd on a cubic graph")
    system = gf2_system(graph)
    d = system.nullity
    if d > limit:
        return BznlOutcome("exhausted", None, d, 0, f"nullity {d} above cap {limit}")
    # Gray-code walk over the kernel; the zero vector only qualifies when n=0
    vec = 0
    count = 1
    best: int | None = 0 if half == 0 else None
    for step in range(1, 1 << d):
        vec ^= system.basis[(step & -step).bit_length() - 1]
        count += 1
        if vec.bit_count() == half:
            best = vec
            break
    if best is None:
        return BznlOutcome("none", None, d, count)
    bits = tuple(best >> v & 1 for v in range(graph.n))
    labeling = BinaryLabeling(graph, bits)
    # independent re-check, not via the kernel machinery
    if not labeling.is_balanced() or not labeling.is_zero_neighborhood():
        raise RuntimeError("kernel vector failed the direct re-check")
    return BznlOutcome("found", labeling, d, count)


@dataclass(frozen=True)
class PartitionOutcome:
    status: str  # found | none | exhausted
    partition: VertexPartition | None
    nodes: int
    elapsed: float


def find_partition(
    graph: Graph, p: int, budget: SearchBudget | None = None
) -> PartitionOutcome:
    """Backtracking search for a partition into p parts with every vertex
    seeing the same number of neighbors in each part.

    A regular graph can only have one when p divides the valency; vertex 0 is
    pinned to the first part.
    """
    if budget is None:
        budget = SearchBudget()
    start = time.monotonic()
    r = regular_valency(graph)
    if p < 2 or r is None or r % p != 0 or graph.n == 0:
        return PartitionOutcome("none", None, 0, time.monotonic() - start)
    share = r // p
    part = [-1] * graph.n
    counts = [[0] * p for _ in range(graph.n)]
    remaining = [graph.degree(v) for v in range(graph.n)]
    nodes = 0
    deadline = start + budget.time_limit

    def feasible(u: int) -> bool:
        deficit = sum(max(0, share - c) for c in counts[u])
        return deficit <= remaining[u]

    def rec(v: int) -> bool:
        nonlocal nodes
        if v == graph.n:
            return True
        choices = (0,) if v == 0 else range(p)
        for i in choices:
            nodes += 1
            if nodes > budget.node_limit or (
                nodes % 4096 == 0 and time.monotonic() > deadline
            ):
                raise _Stop
            ok = True
            touched = 0
            part[v] = i
            for u in graph.adj[v]:
                counts[u][i] += 1
                remaining[u] -= 1
                touched += 1
                if counts[u][i] > share or not feasible(u):
                    ok = False
                    break
            if ok and rec(v + 1):
                return True
            part[v] = -1
            for u in graph.adj[v][:touched]:
                counts[u][i] -= 1
                remaining[u] += 1
        return False

    try:
        found = rec(0)
    except _Stop:
        return PartitionOutcome("exhausted", None, nodes, time.monotonic() - start)
    if not found:
        return PartitionOutcome("none", None, nodes, time.monotonic() - start)
    parts: list[list[int]] = [[] for _ in range(p)]
    for v, i in enumerate(part):
        parts[i].append(v)
    partition = VertexPartition(graph, tuple(tuple(q) for q in parts))
    if not partition.is_equitable():
        raise RuntimeError("partition search produced an inequitable result")
    return PartitionOutcome("found", partition, nodes, time.monotonic() - start)


def find_complete_mapping(group: AbelianGroup) -> tuple[GroupElement, ...] | None:
    """A permutation theta of the group with g -> g + theta(g) also a
    permutation, aligned with the lexicographic element order, or None.

    Odd order: theta = identity works since doubling is then a bijection.
    If the sum of all elements is nonzero, none exists: summing g + theta(g)
    over a complete mapping would force that sum to equal twice itself.
    """
    elems = list(group.elements())
    if group.order % 2 == 1:
        return tuple(elems)
    if not group_sum(group).is_zero:
        return None
    table = CayleyTable(group)
    n = table.order
    theta = [-1] * n
    used_t = 0
    used_s = 0
    add = table.add

    def rec(i: int) -> bool:
        nonlocal used_t, used_s
        if i == n:
            return True
        for cand in range(n):
            if used_t >> cand & 1:
                continue
            s = add[i][cand]
            if used_s >> s & 1:
                continue
            theta[i] = cand
            used_t |= 1 << cand
            used_s |= 1 << s
            if rec(i + 1):
                return True
            used_t &= ~(1 << cand)
            used_s &= ~(1 << s)
        theta[i] = -1
        return False

    if not rec(0):
        return None
    return tuple(table.decode(t) for t in theta)


@dataclass(frozen=True)
class IdentityReport:
    n: int
    checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _gp2_bits(n: int, vector) -> tuple[list[int], list[int]]:
    if isinstance(vector, BinaryLabeling):
        bits = list(vector.bits)
    else:
        bits = [int(b) for b in vector]
    if len(bits) != 2 * n or any(b not in (0, 1) for b in bits):
        raise DomainError(f"expected a 0/1 vector of length {2 * n}")
    return bits[:n], bits[n:]


def check_gp2_identities(n: int, vector) -> IdentityReport:
    """Check the shift identities satisfied by every vector in the binary
    kernel of gp(n,2): derived from zero neighborhood sums alone, so balance
    is not required.  The input must lie in the kernel."""
    graph = graphmod.gp(n, 2)
    x, y = _gp2_bits(n, vector)
    bits = x + y
    for v in range(graph.n):
        if sum(bits[u] for u in graph.adj[v]) % 2 != 0:
            raise DomainError("vector is not in the zero-neighborhood kernel")
    violations: list[str] = []
    checked = 0

    def expect(cond: bool, label: str) -> None:
        nonlocal checked
        checked += 1
        if not cond:
            violations.append(label)

    for i in range(n):
        expect(y[i] == x[(i - 1) % n] ^ x[(i + 1) % n], f"inner-from-outer i={i}")
        expect(x[i] == y[(i - 2) % n] ^ y[(i + 2) % n], f"outer-from-inner i={i}")
        expect(
            x[i] ^ x[(i + 2) % n] == x[(i - 3) % n] ^ x[(i + 5) % n],
            f"distance-2-shift i={i}",
        )
        expect(
            x[(i + 3) % n] ^ x[(i + 5) % n] == x[(i + 18) % n] ^ x[(i + 20) % n],
            f"shift-15-pair i={i}",
        )
        expect(x[i] == x[(i + 15) % n], f"outer-period-15 i={i}")
        expect(y[i] == y[(i + 15) % n], f"inner-period-15 i={i}")
        for t in range(2 * n + 1):
            expect(
                x[i] ^ x[(i + 3) % n]
                == x[(i + 5 * t) % n] ^ x[(i + 5 * t + 3) % n],
                f"gap-3-step-5 i={i} t={t}",
            )
            expect(
                x[i] ^ x[(i + 5) % n]
                == x[(i + 3 * t) % n] ^ x[(i + 3 * t + 5) % n],
                f"gap-5-step-3 i={i} t={t}",
            )
    return IdentityReport(n, checked, tuple(violations))


def check_gp2_group_identities(
    n: int, group: AbelianGroup, sample
) -> IdentityReport:
    """Check l(f_i) + l(f_{i+5}) = l(f_{i+3}) + l(f_{i+8}) on both vertex
    families of gp(n,2) for a constant-weight map (bijectivity not needed)."""
    graph = graphmod.gp(n, 2)
    if isinstance(sample, Labeling):
        if sample.graph.n != graph.n:
            raise DomainError("sample is not a labeling of gp(n,2)")
        values = list(sample.values)
        labeling = sample
    else:
        values = list(sample)
        if len(values) != graph.n:
            raise DomainError(f"expected {graph.n} values")
        labeling = Labeling(graph, group, tuple(values))
    w0 = weight(labeling, 0)
    for v in range(1, graph.n):
        if weight(labeling, v) != w0:
            raise DomainError("sample does not have constant weight")
    violations: list[str] = []
    checked = 0
    for base, family in ((0, "outer"), (n, "inner")):
        for i in range(n):
            lhs = values[base + i] + values[base + (i + 5) % n]
            rhs = values[base + (i + 3) % n] + values[base + (i + 8) % n]
            checked += 1
            if lhs != rhs:
                violations.append(f"{family} i={i}")
    return IdentityReport(n, checked, tuple(violations))
