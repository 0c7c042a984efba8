import itertools

import pytest

from gdmagic.corpus import corpus_entries
from gdmagic.errors import DomainError, FormatError, NotInvertible
from gdmagic.graphs import builtin, disjoint_union, from_edges, gp
from gdmagic.groups import AbelianGroup, enumerate_groups, parse_group
from gdmagic.labeling import (
    BinaryLabeling,
    Labeling,
    MagicCertificate,
    builtin_labeling,
    check_magic,
    classify_types,
    decide,
    format_certificate,
    format_labeling,
    parse_labeling,
    project_binary,
    retarget_constant,
    verify_magic,
    weight,
)
from gdmagic.search import gf2_system, search_magic

import oracles

Z223 = parse_group("Z2^2+Z3")


def test_weight_examples():
    tietze = builtin_labeling("tietze")
    x0 = tietze.graph.name_index["x0"]
    assert weight(tietze, x0).is_zero
    lonely = from_edges(1, [])
    group1 = parse_group("Z1")
    lab = Labeling(lonely, group1, (group1.zero(),))
    assert weight(lab, 0).is_zero
    zeros = Labeling(
        builtin("k33"), Z223, tuple(Z223.zero() for _ in range(6))
    )
    assert all(weight(zeros, v).is_zero for v in range(6))


def test_builtin_labelings_verify():
    for name in ("tietze", "x12"):
        cert = verify_magic(builtin_labeling(name))
        assert cert is not None
        assert cert.mu.coords == (0, 0, 0)


def test_swapped_labels_break_verification():
    lab = builtin_labeling("x12")
    i, j = lab.graph.name_index["x0"], lab.graph.name_index["x1"]
    values = list(lab.values)
    values[i], values[j] = values[j], values[i]
    swapped = Labeling(lab.graph, lab.group, tuple(values))
    check = check_magic(swapped)
    assert not check.ok
    assert check.defect.kind == "unequal-weight"


def test_duplicate_label_defect():
    lab = builtin_labeling("x12")
    values = list(lab.values)
    values[1] = values[0]
    check = check_magic(Labeling(lab.graph, lab.group, tuple(values)))
    assert not check.ok and check.defect.kind == "duplicate-label"


def test_verify_agrees_with_brute_force_predicate():
    cycle4 = from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    group = parse_group("Z4")
    elems = list(group.elements())
    magic_count = 0
    for perm in itertools.permutations(range(4)):
        lab = Labeling(cycle4, group, tuple(elems[perm[v]] for v in range(4)))
        weights = {weight(lab, v).coords for v in range(4)}
        brute_ok = len(weights) == 1
        assert (verify_magic(lab) is not None) == brute_ok
        magic_count += brute_ok
    assert magic_count > 0  # the brute predicate does accept some labelings


def test_decide_examples():
    d = decide(builtin("k33"), parse_group("Z6"))
    assert d.is_not_magic and d.reason.tag == "OddRegularUniqueInvolution"
    # every group of order 14 has a unique involution, so the unique-involution
    # rule fires before the 2-mod-4 rule; both theorems apply to this row
    d = decide(gp(7, 2), parse_group("Z14"))
    assert d.is_not_magic
    assert d.reason.tag in ("OddRegularUniqueInvolution", "OrderTwoMod4")
    d = decide(gp(6, 2), Z223)
    assert d.is_not_magic and d.reason.tag == "GPFamily"
    d = decide(gp(4, 1), parse_group("Z2^3"))
    assert d.is_not_magic and d.reason.tag == "PowerOfTwoHypercubeArgument"
    d = decide(gp(6, 1), Z223)
    assert d.is_not_magic and d.reason.tag == "FourCycleConnectedCubic"
    d = decide(disjoint_union(builtin("k33"), 2), Z223)
    assert d.is_magic and verify_magic(d.certificate.labeling) is not None
    assert decide(builtin("x12"), Z223).verdict == "unknown"
    with pytest.raises(DomainError):
        decide(builtin("k33"), Z223)


def test_decide_never_contradicts_search_on_the_corpus():
    for gid, graph in corpus_entries(max_vertices=10):
        for group in enumerate_groups(graph.n):
            decision = decide(graph, group)
            outcome = search_magic(graph, group)
            if decision.is_not_magic:
                assert outcome.status == "none", (gid, group.factors)
            if decision.is_magic:
                assert outcome.status == "found", (gid, group.factors)


def test_retarget_constant():
    cert = verify_magic(builtin_labeling("x12"))
    # move the first binary coordinate of the constant to 1 (gcd(2,3)=1)
    moved = retarget_constant(cert, [0], (1,))
    assert moved.mu.coords == (1, 0, 0)
    assert verify_magic(moved.labeling) is not None
    # identity retarget
    same = retarget_constant(cert, [0], (0,))
    assert same.labeling.values == cert.labeling.values
    # composing two retargets equals one retarget to the final target
    two_step = retarget_constant(retarget_constant(cert, [0], (1,)), [0], (0,))
    assert two_step.labeling.values == cert.labeling.values
    # the ternary coordinate cannot move on a cubic graph: gcd(3,3) != 1
    with pytest.raises(NotInvertible):
        retarget_constant(cert, [2], (1,))


def test_project_binary_preconditions():
    cert = verify_magic(builtin_labeling("x12"))
    binary = project_binary(cert)
    assert binary.is_balanced() and binary.is_zero_neighborhood()
    shifted = retarget_constant(cert, [0], (1,))
    with pytest.raises(DomainError):
        project_binary(shifted)
    # no binary factor at the front: nine isolated vertices over Z9
    isolated = from_edges(9, [])
    z9 = parse_group("Z9")
    lab = Labeling(isolated, z9, tuple(z9.elements()))
    cert9 = verify_magic(lab)
    assert cert9 is not None
    with pytest.raises(DomainError):
        project_binary(cert9)


def test_classify_types():
    k33 = builtin("k33")
    zeros = BinaryLabeling(k33, (0,) * 6)
    type1, type2 = classify_types(zeros)
    assert len(type1) == 6 and not type2
    with pytest.raises(DomainError):
        classify_types(BinaryLabeling(from_edges(3, [(0, 1), (1, 2)]), (0, 0, 0)))
    with pytest.raises(DomainError):
        classify_types(BinaryLabeling(k33, (1, 0, 0, 0, 0, 0)))


def test_type2_counting_identity_on_kernel_vectors():
    # 2*|type2| = 3*(number of 1-labeled vertices) for cubic zero-neighborhood
    # labelings, balanced or not
    graphs = [g for _, g in corpus_entries(max_vertices=10)]
    graphs += [builtin("tietze"), builtin("x12"), gp(6, 2)]
    checked = 0
    for graph in graphs:
        system = gf2_system(graph)
        for take in range(1 << min(system.nullity, 6)):
            vec = 0
            for bit in range(min(system.nullity, 6)):
                if take >> bit & 1:
                    vec ^= system.basis[bit]
            bits = tuple(vec >> v & 1 for v in range(graph.n))
            binary = BinaryLabeling(graph, bits)
            _, type2 = classify_types(binary)
            assert 2 * len(type2) == 3 * binary.ones
            checked += 1
    assert checked > 100


def test_projection_chain_type2_count():
    two = disjoint_union(builtin("k33"), 2)
    cert = search_magic(two, Z223).certificate
    cert = retarget_constant(cert, [0], (0,))
    binary = project_binary(cert)
    _, type2 = classify_types(binary)
    assert len(type2) == 9


def test_labeling_file_roundtrip():
    lab = builtin_labeling("x12")
    text = format_labeling(lab)
    parsed = parse_labeling(text, lab.graph)
    assert parsed == lab
    assert format_labeling(parsed) == text
    cert_text = format_certificate(verify_magic(lab))
    assert cert_text.endswith("MAGIC mu=(0,0,0)\n")
    assert parse_labeling(cert_text, lab.graph) == lab


def test_labeling_file_errors():
    x12 = builtin("x12")
    with pytest.raises(FormatError):
        parse_labeling("x0 = (0,0,0)\n", x12)  # missing header
    head = "group Z2^2+Z3\n"
    with pytest.raises(FormatError):
        parse_labeling(head + "bogus = (0,0,0)\n", x12)
    with pytest.raises(FormatError):
        parse_labeling(head + "x0 = (0,0,0)\nx0 = (1,0,0)\n", x12)
    with pytest.raises(FormatError):
        parse_labeling(head + "x0 = (0,0,0)\n", x12)  # others unlabeled
    with pytest.raises(FormatError):
        parse_labeling(head + "x0 = (0,0)\n", x12)


def test_format_labeling_requires_canonical_group():
    graph = from_edges(6, [])
    group = AbelianGroup((3, 2))  # legal group, non-canonical order
    lab = Labeling(graph, group, tuple(group.elements()))
    with pytest.raises(DomainError):
        format_labeling(lab)


def test_builtin_labeling_unknown():
    with pytest.raises(DomainError):
        builtin_labeling("k33")
