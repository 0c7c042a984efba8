"""Group distance magic labelings of cubic graphs: groups, graphs, verified
labelings, exhaustive searches, Kotzig arrays, and union constructions."""

from .errors import (
    DomainError,
    FormatError,
    GdmError,
    GroupMismatchError,
    NotExists,
    NotInvertible,
)
from .graphs import (
    Graph,
    VertexPartition,
    builtin,
    disjoint_union,
    from_edges,
    gp,
    has_4cycle,
    is_connected,
    regular_valency,
)
from .groups import (
    AbelianGroup,
    Embedding,
    GroupElement,
    embeds,
    enumerate_groups,
    even_odd_split,
    format_group,
    group_sum,
    involutions,
    parse_group,
    refine,
    solve_scalar,
)
from .kotzig import GroupKotzigArray, KotzigArray, build_group, build_integer, verify_array
from .labeling import (
    BinaryLabeling,
    Decision,
    Labeling,
    MagicCertificate,
    builtin_labeling,
    check_magic,
    classify_types,
    decide,
    project_binary,
    retarget_constant,
    verify_magic,
    weight,
)
from .search import (
    SearchBudget,
    bznl_search,
    check_gp2_group_identities,
    check_gp2_identities,
    find_complete_mapping,
    find_partition,
    gf2_system,
    search_magic,
)
from .unions import (
    UnionPlan,
    execute_plan,
    expand_with_group_array,
    expand_within_cyclic,
    plan_union,
    replicate_valency_copies,
)

__version__ = "0.1.0"
