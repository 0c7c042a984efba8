"""Vertex labelings over abelian groups: the magic verifier, binary
projections, the non-existence decision procedure, and file formats."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import graphs
from .errors import DomainError, FormatError, NotInvertible
from .graphs import Graph
from .groups import (
    AbelianGroup,
    GroupElement,
    format_element,
    format_group,
    involutions,
    parse_element,
    parse_group,
    solve_scalar,
)


@dataclass(frozen=True)
class Labeling:
    """A total assignment of group elements to the vertices of a graph."""

    graph: Graph
    group: AbelianGroup
    values: tuple[GroupElement, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.graph.n:
            raise DomainError(
                f"{len(self.values)} values for {self.graph.n} vertices"
            )
        for v in self.values:
            if v.group != self.group:
                raise DomainError("label outside the declared group")

    def is_bijective(self) -> bool:
        return (
            self.graph.n == self.group.order
            and len({v.coords for v in self.values}) == self.graph.n
        )

    def translate(self, delta: GroupElement) -> "Labeling":
        return Labeling(self.graph, self.group, tuple(v + delta for v in self.values))


def weight(labeling: Labeling, vertex: int) -> GroupElement:
    """Sum of the labels over the open neighborhood of ``vertex``."""
    acc = labeling.group.zero()
    for u in labeling.graph.adj[vertex]:
        acc = acc + labeling.values[u]
    return acc


@dataclass(frozen=True)
class MagicCertificate:
    """A labeling together with its verified common neighbor-sum value."""

    labeling: Labeling
    mu: GroupElement


@dataclass(frozen=True)
class MagicDefect:
    """Why a labeling failed verification: the offending vertex or the
    bijectivity violation."""

    kind: str  # order-mismatch | duplicate-label | unequal-weight
    vertex: int | None = None
    detail: str = ""


@dataclass(frozen=True)
class MagicCheck:
    certificate: MagicCertificate | None
    defect: MagicDefect | None

    @property
    def ok(self) -> bool:
        return self.certificate is not None


def check_magic(labeling: Labeling) -> MagicCheck:
    """Full verification with a structured defect on failure."""
    graph = labeling.graph
    if graph.n != labeling.group.order:
        return MagicCheck(
            None,
            MagicDefect(
                "order-mismatch",
                detail=f"{graph.n} vertices vs group order {labeling.group.order}",
            ),
        )
    seen: dict[tuple[int, ...], int] = {}
    for v, value in enumerate(labeling.values):
        if value.coords in seen:
            return MagicCheck(
                None,
                MagicDefect(
                    "duplicate-label",
                    vertex=v,
                    detail=f"label {format_element(value)} also used by "
                    f"{graph.names[seen[value.coords]]}",
                ),
            )
        seen[value.coords] = v
    mu: GroupElement | None = None
    for v in range(graph.n):
        w = weight(labeling, v)
        if mu is None:
            mu = w
        elif w != mu:
            return MagicCheck(
                None,
                MagicDefect(
                    "unequal-weight",
                    vertex=v,
                    detail=f"weight {format_element(w)} != {format_element(mu)}",
                ),
            )
    if mu is None:  # vertex-free graph over the trivial group
        mu = labeling.group.zero()
    return MagicCheck(MagicCertificate(labeling, mu), None)


def verify_magic(labeling: Labeling) -> MagicCertificate | None:
    return check_magic(labeling).certificate


@dataclass(frozen=True)
class BinaryLabeling:
    """A 0/1 vertex labeling."""

    graph: Graph
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) != self.graph.n:
            raise DomainError("bit count does not match vertex count")
        if any(b not in (0, 1) for b in self.bits):
            raise DomainError("labels must be 0 or 1")

    @property
    def ones(self) -> int:
        return sum(self.bits)

    def is_balanced(self) -> bool:
        return 2 * self.ones == self.graph.n

    def is_zero_neighborhood(self) -> bool:
        return all(
            sum(self.bits[u] for u in self.graph.adj[v]) % 2 == 0
            for v in range(self.graph.n)
        )


class NonMagicReason:
    """Base for structured non-existence justifications."""

    tag = "Unspecified"

    def describe(self) -> str:
        return self.tag


@dataclass(frozen=True)
class OddRegularUniqueInvolution(NonMagicReason):
    """Odd valency with a unique involution in the group forbids a labeling."""

    valency: int
    involution: GroupElement
    tag = "OddRegularUniqueInvolution"


@dataclass(frozen=True)
class OrderTwoMod4(NonMagicReason):
    """Odd valency on n = 2 (mod 4) vertices forbids a labeling for every group."""

    n: int
    valency: int
    tag = "OrderTwoMod4"


@dataclass(frozen=True)
class PowerOfTwoHypercubeArgument(NonMagicReason):
    """Cubic graphs admit no labeling over an elementary abelian 2-group."""

    rank: int
    tag = "PowerOfTwoHypercubeArgument"


@dataclass(frozen=True)
class FourCycleConnectedCubic(NonMagicReason):
    """A 4-cycle in a connected cubic graph forbids a labeling for every group."""

    cycle: tuple[int, int, int, int]
    tag = "FourCycleConnectedCubic"


@dataclass(frozen=True)
class GPFamily(NonMagicReason):
    """Structural recognition of GP(n,1) or GP(n,2).

    For k = 2 the shift identities force period 30 on any labeling, so
    bijectivity restricts n to divisors of 30, and each survivor is excluded
    by the parity, unique-involution, or binary-kernel arguments.
    """

    n: int
    k: int
    tag = "GPFamily"


@dataclass(frozen=True)
class ExhaustiveSearch(NonMagicReason):
    """The pruned-but-complete search exhausted the reduced space."""

    nodes: int
    tag = "ExhaustiveSearch"


@dataclass(frozen=True)
class Decision:
    verdict: str  # magic | not-magic | unknown
    certificate: MagicCertificate | None = None
    reason: NonMagicReason | None = None

    @property
    def is_magic(self) -> bool:
        return self.verdict == "magic"

    @property
    def is_not_magic(self) -> bool:
        return self.verdict == "not-magic"


def _matches_gp(graph: Graph) -> tuple[int, int] | None:
    """(n, k) if the graph equals gp(n,k) for k in {1,2} under identity indexing."""
    if graph.n % 2 or graph.n < 6:
        return None
    n = graph.n // 2
    for k in (1, 2):
        if 2 * k >= n:
            continue
        if graphs.same_structure(graph, graphs.gp(n, k)):
            return (n, k)
    return None


def _is_k33_union(graph: Graph) -> bool:
    """True when every component is a triangle-free cubic graph on 6 vertices,
    which pins each component to the complete bipartite graph on 3+3."""
    if graphs.regular_valency(graph) != 3:
        return False
    for comp in graphs.components(graph):
        if len(comp) != 6:
            return False
        for v in comp:
            for u in graph.adj[v]:
                if set(graph.adj[u]) & set(graph.adj[v]):
                    return False  # triangle
    return True


def decide(graph: Graph, group: AbelianGroup, budget=None) -> Decision:
    """Apply the non-existence criteria cheapest-first; fall back to Unknown.

    Order: odd-regular with unique involution; odd-regular on 2 (mod 4)
    vertices; cubic over an elementary abelian 2-group; connected cubic with
    a 4-cycle; union-of-K33 recognition (delegates construction to search);
    GP(n,1)/GP(n,2) recognition.
    """
    if graph.n != group.order:
        raise DomainError(
            f"graph order {graph.n} does not match group order {group.order}"
        )
    r = graphs.regular_valency(graph)
    invs = involutions(group)
    if r is not None and r % 2 == 1:
        if len(invs) == 1:
            return Decision(
                "not-magic", reason=OddRegularUniqueInvolution(r, invs[0])
            )
        if graph.n % 4 == 2:
            return Decision("not-magic", reason=OrderTwoMod4(graph.n, r))
    if r == 3:
        if group.factors and all(q == 2 for q in group.factors):
            return Decision(
                "not-magic", reason=PowerOfTwoHypercubeArgument(group.rank)
            )
        if graphs.is_connected(graph):
            cycle = graphs.find_4cycle(graph)
            if cycle is not None:
                return Decision("not-magic", reason=FourCycleConnectedCubic(cycle))
        if _is_k33_union(graph) and len(invs) >= 2:
            from .search import search_magic  # deferred: search depends on this module

            outcome = search_magic(graph, group, budget=budget)
            if outcome.status == "found":
                return Decision("magic", certificate=outcome.certificate)
            return Decision("unknown")
        hit = _matches_gp(graph)
        if hit is not None:
            return Decision("not-magic", reason=GPFamily(*hit))
    return Decision("unknown")


def retarget_constant(
    certificate: MagicCertificate,
    factor_indices: Sequence[int],
    target: Sequence[int] | GroupElement,
) -> MagicCertificate:
    """Translate every label so that the magic constant's projection onto the
    chosen canonical factors becomes ``target``, leaving the rest unchanged.

    Requires the graph to be regular with valency coprime to the order of the
    chosen sub-product.
    """
    labeling = certificate.labeling
    group = labeling.group
    idx = sorted(set(int(i) for i in factor_indices))
    if any(i < 0 or i >= group.rank for i in idx):
        raise DomainError("factor index out of range")
    r = graphs.regular_valency(labeling.graph)
    if r is None:
        raise DomainError("retargeting needs a regular graph")
    sub = AbelianGroup(tuple(group.factors[i] for i in idx))
    if isinstance(target, GroupElement):
        if target.group != sub:
            raise DomainError("target does not live in the selected sub-product")
        target_coords = target.coords
    else:
        target_coords = sub.element(target).coords
    import math

    if math.gcd(sub.order, r) != 1:
        raise NotInvertible(
            f"gcd(|A|={sub.order}, valency={r}) != 1; constant cannot be retargeted"
        )
    mu_proj = sub.element([certificate.mu.coords[i] for i in idx])
    shift = solve_scalar(r, sub.element(target_coords) - mu_proj)
    delta_coords = [0] * group.rank
    for pos, i in enumerate(idx):
        delta_coords[i] = shift.coords[pos]
    delta = group.element(delta_coords)
    moved = labeling.translate(delta)
    check = check_magic(moved)
    if not check.ok:  # translation preserves magicness on regular graphs
        raise RuntimeError(f"retarget broke the certificate: {check.defect}")
    return check.certificate


def project_binary(certificate: MagicCertificate) -> BinaryLabeling:
    """First-coordinate projection of a certificate whose group starts with a
    Z2 factor and whose constant has first coordinate 0.  The result is a
    balanced zero-neighborhood labeling; both properties are re-checked."""
    group = certificate.labeling.group
    if not group.factors or group.factors[0] != 2:
        raise DomainError("first canonical factor must be Z2")
    if certificate.mu.coords[0] != 0:
        raise DomainError(
            "magic constant has first coordinate 1; retarget it to 0 first"
        )
    bits = tuple(v.coords[0] for v in certificate.labeling.values)
    binary = BinaryLabeling(certificate.labeling.graph, bits)
    if not binary.is_balanced() or not binary.is_zero_neighborhood():
        raise RuntimeError("projection failed its guaranteed properties")
    return binary


def classify_types(binary: BinaryLabeling) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split the vertices of a cubic zero-neighborhood labeling into those with
    zero 1-labeled neighbors (type 1) and exactly two (type 2)."""
    graph = binary.graph
    if graphs.regular_valency(graph) != 3:
        raise DomainError("type classification needs a cubic graph")
    if not binary.is_zero_neighborhood():
        raise DomainError("labeling is not zero-neighborhood")
    type1, type2 = [], []
    for v in range(graph.n):
        ones = sum(binary.bits[u] for u in graph.adj[v])
        (type1 if ones == 0 else type2).append(v)
    return tuple(type1), tuple(type2)


# Bundled magic labelings over Z2+Z2+Z3 for the two builtin 12-vertex graphs.
_TIETZE_LABELS = {
    "x0": (0, 0, 1), "x1": (1, 1, 1), "x2": (0, 1, 0), "x3": (0, 0, 0),
    "x4": (1, 1, 0), "x5": (0, 1, 2), "x6": (0, 0, 2), "x7": (1, 1, 2),
    "x8": (0, 1, 1), "y0": (1, 0, 1), "y1": (1, 0, 0), "y2": (1, 0, 2),
}
_X12_LABELS = {
    "x0": (1, 0, 2), "x1": (0, 1, 2), "x2": (1, 0, 0), "x3": (0, 1, 0),
    "x4": (1, 1, 2), "x5": (0, 0, 2), "x6": (0, 0, 0), "x7": (1, 1, 0),
    "y0": (0, 0, 1), "y1": (0, 1, 1), "y2": (1, 1, 1), "y3": (1, 0, 1),
}


def builtin_labeling(name: str) -> Labeling:
    """The bundled Z2+Z2+Z3 magic labeling of ``tietze`` or ``x12``."""
    table = {"tietze": _TIETZE_LABELS, "x12": _X12_LABELS}.get(name)
    if table is None:
        raise DomainError(f"no bundled labeling for {name!r}")
    graph = graphs.builtin(name)
    group = parse_group("Z2^2+Z3")
    values = tuple(table[graph.names[v]] for v in range(graph.n))
    return Labeling(graph, group, tuple(group.element(c) for c in values))


def parse_labeling(text: str, graph: Graph) -> Labeling:
    """Parse the labeling file format: ``group <spec>`` header, then one
    ``<vertex-name> = (c1,...,ck)`` line per vertex.  A trailing MAGIC or
    NOT-MAGIC verdict line is tolerated and ignored."""
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines or not lines[0].startswith("group "):
        raise FormatError("labeling file must start with a 'group <spec>' line")
    group = parse_group(lines[0][len("group "):])
    index = graph.name_index
    assigned: dict[int, GroupElement] = {}
    for ln in lines[1:]:
        if ln.startswith("MAGIC") or ln.startswith("NOT-MAGIC"):
            continue
        if "=" not in ln:
            raise FormatError(f"bad labeling line {ln!r}")
        name, value = (part.strip() for part in ln.split("=", 1))
        if name not in index:
            raise FormatError(f"unknown vertex name {name!r}")
        v = index[name]
        if v in assigned:
            raise FormatError(f"vertex {name!r} labeled twice")
        assigned[v] = parse_element(value, group)
    missing = [graph.names[v] for v in range(graph.n) if v not in assigned]
    if missing:
        raise FormatError(f"unlabeled vertices: {', '.join(sorted(missing))}")
    return Labeling(graph, group, tuple(assigned[v] for v in range(graph.n)))


def format_labeling(labeling: Labeling) -> str:
    """Serialize deterministically: header then lines in lexicographic
    vertex-name order.  Requires a canonically ordered group so that the
    header re-parses to the same coordinate system."""
    if not labeling.group.is_canonical:
        raise DomainError("labeling files require canonical group factor order")
    lines = [f"group {format_group(labeling.group)}"]
    order = sorted(range(labeling.graph.n), key=lambda v: labeling.graph.names[v])
    for v in order:
        lines.append(
            f"{labeling.graph.names[v]} = {format_element(labeling.values[v])}"
        )
    return "\n".join(lines) + "\n"


def format_certificate(certificate: MagicCertificate) -> str:
    return (
        format_labeling(certificate.labeling)
        + f"MAGIC mu={format_element(certificate.mu)}\n"
    )


def format_binary_labeling(binary: BinaryLabeling) -> str:
    order = sorted(range(binary.graph.n), key=lambda v: binary.graph.names[v])
    lines = [f"{binary.graph.names[v]} = {binary.bits[v]}" for v in order]
    return "\n".join(lines) + "\n"
