"""Build verified magic labelings of disjoint unions tG from a labeling of G.

Three constructions are provided: copy-expansion through a group Kotzig
array over a new direct factor, copy-expansion inside a cyclic factor
through an integer Kotzig array, and valency-many copies with constant
second coordinates.  The plan driver chains the first two along the prime
factorization gap between the base group and a target group, moving one
prime-power factor at a time and recording every coordinate permutation."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .graphs import Graph, VertexPartition, disjoint_union, regular_valency
from .groups import (
    AbelianGroup,
    embeds,
    format_group,
    involutions,
)
from .kotzig import build_group, build_integer
from .labeling import (
    Labeling,
    MagicCertificate,
    check_magic,
    format_element,
    weight,
)


def _require_regular(cert: MagicCertificate) -> int:
    r = regular_valency(cert.labeling.graph)
    if r is None:
        raise DomainError("the base graph must be regular")
    return r


def _require_partition(cert: MagicCertificate, partition: VertexPartition) -> None:
    if partition.graph != cert.labeling.graph:
        raise DomainError("partition does not belong to the labeled graph")
    if not partition.is_equitable():
        raise DomainError("partition is not equitable")


def _verified(labeling: Labeling, context: str) -> MagicCertificate:
    check = check_magic(labeling)
    if not check.ok:
        raise RuntimeError(f"{context} failed verification: {check.defect}")
    return check.certificate


def _subgroup_certificate(labeling: Labeling, context: str) -> MagicCertificate:
    """Constant-weight check for labelings that are bijective onto a proper
    subgroup of their coordinate group (so full verification cannot apply)."""
    if len({v.coords for v in labeling.values}) != labeling.graph.n:
        raise RuntimeError(f"{context}: labels are not distinct")
    mu = weight(labeling, 0) if labeling.graph.n else labeling.group.zero()
    for v in range(1, labeling.graph.n):
        if weight(labeling, v) != mu:
            raise RuntimeError(f"{context}: weights are not constant")
    return MagicCertificate(labeling, mu)


def expand_with_group_array(
    cert: MagicCertificate,
    partition: VertexPartition,
    factor_group: AbelianGroup,
) -> MagicCertificate:
    """Label |B| disjoint copies over A + B: copy j of a part-i vertex keeps
    its old label and gains the (i, j) entry of a zero-column-sum B-array.
    The constant becomes (mu', 0)."""
    _require_regular(cert)
    _require_partition(cert, partition)
    base = cert.labeling
    t = factor_group.order
    array = build_group(partition.p, factor_group)  # raises NotExists if p odd and |I|=1
    big_graph = disjoint_union(base.graph, t)
    big_group = AbelianGroup.direct_sum(base.group, factor_group)
    owner = partition.part_of()
    n = base.graph.n
    values = []
    for j in range(t):
        for v in range(n):
            values.append(
                big_group.element(
                    base.values[v].coords + array.entries[owner[v]][j].coords
                )
            )
    out = _verified(
        Labeling(big_graph, big_group, tuple(values)), "group-array expansion"
    )
    assert out.mu.coords == cert.mu.coords + (0,) * factor_group.rank
    return out


def expand_within_cyclic(
    cert: MagicCertificate,
    partition: VertexPartition,
    t: int,
    m: int,
) -> MagicCertificate:
    """Label t disjoint copies over the same group A + Z_tm, given a base
    labeling supported on A + <t>: copy j of a part-i vertex adds the (i, j)
    entry of an integer t-column array to its last coordinate.  The constant
    becomes mu' + (0, r(t+1)/2)."""
    r = _require_regular(cert)
    _require_partition(cert, partition)
    base = cert.labeling
    group = base.group
    if t < 1 or m < 1 or not group.factors or group.factors[-1] != t * m:
        raise DomainError(
            f"last factor must be a cyclic group of order t*m = {t * m}"
        )
    if base.graph.n * t != group.order:
        raise DomainError(
            "base labeling is not bijective onto the index-t subgroup"
        )
    for v, value in enumerate(base.values):
        if value.coords[-1] % t != 0:
            raise DomainError(
                f"label of {base.graph.names[v]} leaves the index-{t} cyclic "
                "subgroup on the last coordinate"
            )
    # input sanity: distinct labels with a single common weight
    try:
        _subgroup_certificate(base, "cyclic-factor expansion input")
    except RuntimeError as exc:
        raise DomainError(str(exc)) from None
    array = build_integer(partition.p, t)  # raises NotExists if p(t-1) is odd
    big_graph = disjoint_union(base.graph, t)
    owner = partition.part_of()
    n = base.graph.n
    tm = t * m
    values = []
    for j in range(t):
        for v in range(n):
            coords = base.values[v].coords
            values.append(
                group.element(
                    coords[:-1] + ((coords[-1] + array.entries[owner[v]][j]) % tm,)
                )
            )
    out = _verified(
        Labeling(big_graph, group, tuple(values)), "cyclic-factor expansion"
    )
    assert r * (t + 1) % 2 == 0
    shift = (r * (t + 1) // 2) % tm
    want = cert.mu.coords[:-1] + ((cert.mu.coords[-1] + shift) % tm,)
    assert out.mu.coords == want
    return out


def replicate_valency_copies(
    cert: MagicCertificate, copy_group: AbelianGroup
) -> MagicCertificate:
    """Label r disjoint copies over A + B with |B| = valency r: copy j gets
    the constant j-th element of B appended, whose weight contribution
    r*b = |B|*b vanishes.  No partition is needed; the constant is (mu', 0)."""
    r = _require_regular(cert)
    if copy_group.order != r:
        raise DomainError(
            f"|B| = {copy_group.order} must equal the valency {r}"
        )
    base = cert.labeling
    big_graph = disjoint_union(base.graph, r)
    big_group = AbelianGroup.direct_sum(base.group, copy_group)
    values = []
    for b in copy_group.elements():
        for v in range(base.graph.n):
            values.append(big_group.element(base.values[v].coords + b.coords))
    out = _verified(
        Labeling(big_graph, big_group, tuple(values)), "valency-copy expansion"
    )
    assert out.mu.coords == cert.mu.coords + (0,) * copy_group.rank
    return out


def _permute_certificate(
    cert: MagicCertificate, perm: tuple[int, ...]
) -> MagicCertificate:
    """Reorder group coordinates; position j of the result reads old
    position perm[j]."""
    group = cert.labeling.group
    new_group = AbelianGroup(tuple(group.factors[i] for i in perm))
    values = tuple(
        new_group.element(tuple(v.coords[i] for i in perm))
        for v in cert.labeling.values
    )
    return _verified(
        Labeling(cert.labeling.graph, new_group, values), "coordinate permutation"
    )


def _move_last_to(cert: MagicCertificate, position: int) -> MagicCertificate:
    rank = cert.labeling.group.rank
    perm = list(range(rank - 1))
    perm.insert(position, rank - 1)
    return _permute_certificate(cert, tuple(perm))


def _move_to_last(cert: MagicCertificate, position: int) -> MagicCertificate:
    rank = cert.labeling.group.rank
    perm = [i for i in range(rank) if i != position] + [position]
    return _permute_certificate(cert, tuple(perm))


def _lift_last_coordinate(cert: MagicCertificate, multiplier: int) -> MagicCertificate:
    """Replace the last factor Z_m by Z_{multiplier*m}, sending c to
    multiplier*c (the canonical embedding onto the index-multiplier
    subgroup).  The result is bijective onto that subgroup, not the whole
    group, so only distinctness and constant weight can be re-checked."""
    group = cert.labeling.group
    new_group = AbelianGroup(group.factors[:-1] + (group.factors[-1] * multiplier,))
    values = tuple(
        new_group.element(v.coords[:-1] + (v.coords[-1] * multiplier,))
        for v in cert.labeling.values
    )
    return _subgroup_certificate(
        Labeling(cert.labeling.graph, new_group, values), "subgroup lift"
    )


def lift_partition(partition: VertexPartition, big_graph: Graph) -> VertexPartition:
    """The copy-wise lift: each part collects its vertices across all copies."""
    n = partition.graph.n
    if big_graph.n % n != 0:
        raise DomainError("graph is not a union of copies of the partitioned graph")
    t = big_graph.n // n
    parts = tuple(
        tuple(sorted(j * n + v for j in range(t) for v in part))
        for part in partition.parts
    )
    lifted = VertexPartition(big_graph, parts)
    if not lifted.is_equitable():
        raise RuntimeError("lifted partition lost equitability")
    return lifted


@dataclass(frozen=True)
class PlanStep:
    prime: int
    alpha: int
    beta: int
    action: str  # skip | group-array | cyclic
    copies: int  # number of copies this step multiplies in


@dataclass(frozen=True)
class UnionPlan:
    graph: Graph
    certificate: MagicCertificate
    partition: VertexPartition | None
    target: AbelianGroup
    steps: tuple[PlanStep, ...]

    @property
    def total_copies(self) -> int:
        out = 1
        for step in self.steps:
            out *= step.copies
        return out


@dataclass(frozen=True)
class ExecutionResult:
    certificate: MagicCertificate
    audit: tuple[str, ...]


def plan_union(
    graph: Graph,
    cert: MagicCertificate,
    partition: VertexPartition | None,
    target: AbelianGroup,
) -> UnionPlan:
    """Match the base group into the target prime by prime and lay out one
    expansion step per target factor, ordered by ascending prime then
    descending exponent.  Requires an even part count or an odd total copy
    multiplier."""
    if cert.labeling.graph != graph:
        raise DomainError("certificate does not label the given graph")
    base_group = cert.labeling.group
    emb = embeds(base_group, target)
    if emb is None:
        raise DomainError(
            f"{format_group(base_group)} does not embed in {format_group(target)}"
        )
    t = target.order // base_group.order
    if partition is None:
        if t != 1:
            raise DomainError("an equitable partition is required when t > 1")
    else:
        _require_partition(cert, partition)
        if partition.p % 2 == 1 and t % 2 == 0:
            raise DomainError(
                f"part count {partition.p} is odd, so the copy multiplier "
                f"{t} must be odd"
            )
    beta_of = {j: 0 for j in range(target.rank)}
    for i, j in enumerate(emb.factor_map):
        beta_of[j] = _exponent(base_group.factors[i], target.factor_primes[j])
    entries = []
    for j in range(target.rank):
        q = target.factor_primes[j]
        alpha = _exponent(target.factors[j], q)
        beta = beta_of[j]
        if beta == alpha:
            action = "skip"
        elif beta == 0:
            action = "group-array"
        else:
            action = "cyclic"
        entries.append(PlanStep(q, alpha, beta, action, q ** (alpha - beta)))
    entries.sort(key=lambda s: (s.prime, -s.alpha, -s.beta))
    return UnionPlan(graph, cert, partition, target, tuple(entries))


def _exponent(q: int, p: int) -> int:
    e = 0
    while q > 1:
        q //= p
        e += 1
    return e


def execute_plan(plan: UnionPlan) -> ExecutionResult:
    """Fold the plan steps, re-coordinatizing between steps with explicit
    factor permutations, and verify the final certificate over the target."""
    audit: list[str] = []
    current = _rebase_to_plan_order(plan, audit)
    graph = plan.graph
    part = plan.partition
    copies = 1
    for i, step in enumerate(plan.steps):
        if step.action == "skip":
            audit.append(
                f"step {i + 1}: prime={step.prime} action=skip t={copies} "
                f"group={format_group(current.labeling.group)}"
            )
            continue
        if part is None:
            raise DomainError("an equitable partition is required when t > 1")
        if step.action == "group-array":
            factor = AbelianGroup((step.prime**step.alpha,))
            current = expand_with_group_array(current, part, factor)
            current = _move_last_to(current, i)
        else:
            current = _move_to_last(current, i)
            current = _lift_last_coordinate(current, step.copies)
            current = expand_within_cyclic(
                current, part, step.copies, step.prime**step.beta
            )
            current = _move_last_to(current, i)
        copies *= step.copies
        graph = current.labeling.graph
        part = lift_partition(part, graph)
        audit.append(
            f"step {i + 1}: prime={step.prime} action={step.action} "
            f"copies={step.copies} t={copies} "
            f"group={format_group(current.labeling.group)}"
        )
    current = _match_target_order(current, plan.target, audit)
    audit.append(
        f"final: t={copies} group={format_group(current.labeling.group)} "
        f"mu={format_element(current.mu)}"
    )
    return ExecutionResult(current, tuple(audit))


def _rebase_to_plan_order(plan: UnionPlan, audit: list[str]) -> MagicCertificate:
    """Permute the base certificate's coordinates to the plan's step order."""
    base = plan.certificate.labeling.group
    wanted = [
        step.prime**step.beta for step in plan.steps if step.beta > 0
    ]
    perm = _stable_match(base.factors, wanted)
    cert = _permute_certificate(plan.certificate, perm)
    audit.append(
        f"base: group={format_group(cert.labeling.group)} "
        f"mu={format_element(cert.mu)}"
    )
    return cert


def _match_target_order(
    cert: MagicCertificate, target: AbelianGroup, audit: list[str]
) -> MagicCertificate:
    perm = _stable_match(cert.labeling.group.factors, list(target.factors))
    out = _permute_certificate(cert, perm)
    if out.labeling.group != target:
        raise RuntimeError("final group does not match the requested target")
    return out


def _stable_match(have: tuple[int, ...], want: list[int]) -> tuple[int, ...]:
    """For each wanted value take the first unused position holding it."""
    used = [False] * len(have)
    perm = []
    for value in want:
        for i, q in enumerate(have):
            if not used[i] and q == value:
                used[i] = True
                perm.append(i)
                break
        else:
            raise RuntimeError(f"factor {value} missing during re-coordinatization")
    if len(perm) != len(have):
        raise RuntimeError("factor multisets do not match")
    return tuple(perm)
