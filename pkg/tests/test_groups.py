import math

import pytest

from gdmagic.errors import (
    DomainError,
    FormatError,
    GroupMismatchError,
    NotInvertible,
)
from gdmagic.groups import (
    AbelianGroup,
    CayleyTable,
    embeds,
    enumerate_groups,
    even_odd_split,
    format_element,
    format_group,
    group_sum,
    involutions,
    parse_element,
    parse_group,
    refine,
    solve_scalar,
)

import oracles

Z4 = parse_group("Z4")
Z223 = parse_group("Z2^2+Z3")


def test_add_examples():
    a = Z223.element((1, 1, 2))
    b = Z223.element((1, 0, 1))
    assert (a + b).coords == (0, 1, 0)
    g = Z223.element((1, 0, 2))
    assert (g + Z223.zero()) == g
    assert (Z4.element((3,)) + Z4.element((2,))).coords == (1,)


def test_negate_and_scalar():
    assert (-Z4.element((1,))).coords == (3,)
    assert (3 * Z4.element((1,))).coords == (3,)
    assert (0 * Z223.element((1, 1, 2))).is_zero
    assert (-2 * Z4.element((1,))).coords == (2,)


def test_cross_group_arithmetic_is_an_error():
    with pytest.raises(GroupMismatchError):
        Z4.element((1,)) + parse_group("Z2+Z2").element((1, 0))


def test_involutions_examples():
    assert [e.coords for e in involutions(Z223)] == [(0, 1, 0), (1, 0, 0), (1, 1, 0)]
    assert [e.coords for e in involutions(parse_group("Z4+Z3"))] == [(2, 0)]
    assert involutions(parse_group("Z9")) == []


def test_involution_count_matches_exhaustive_scan():
    for n in range(1, 65):
        for group in enumerate_groups(n):
            p = sum(1 for q in group.factors if q % 2 == 0)
            invs = involutions(group)
            assert len(invs) == 2**p - 1
            brute = [e for e in group.elements() if e.is_involution]
            assert invs == brute


def test_group_sum_examples():
    assert group_sum(Z4).coords == (2,)
    assert group_sum(parse_group("Z2+Z2")).is_zero
    assert group_sum(parse_group("Z9")).is_zero


def test_group_sum_matches_brute_force_up_to_64():
    for n in range(1, 65):
        for group in enumerate_groups(n):
            acc = group.zero()
            for e in group.elements():
                acc = acc + e
            assert group_sum(group) == acc


def test_solve_scalar_examples():
    assert solve_scalar(3, Z4.element((1,))).coords == (3,)
    z22 = parse_group("Z2+Z2")
    assert solve_scalar(3, z22.zero()).is_zero
    with pytest.raises(NotInvertible):
        solve_scalar(2, Z4.element((1,)))


def test_solve_scalar_roundtrip():
    for n in range(1, 25):
        for group in enumerate_groups(n):
            for r in range(1, 11):
                if math.gcd(r, group.order) != 1:
                    continue
                for g in group.elements():
                    assert solve_scalar(r, r * g) == g


def test_enumerate_groups_examples():
    assert {g.factors for g in enumerate_groups(12)} == {(2, 2, 3), (4, 3)}
    assert enumerate_groups(1) == [AbelianGroup(())]
    order36 = enumerate_groups(36)
    assert len(order36) == 4
    assert sum(1 for g in order36 if len(involutions(g)) != 1) == 2


def test_enumerate_groups_no_duplicates_deterministic():
    for n in (8, 16, 24, 36, 48, 64):
        groups = enumerate_groups(n)
        assert len({g.factors for g in groups}) == len(groups)
        assert groups == enumerate_groups(n)
        assert all(g.order == n for g in groups)
    with pytest.raises(DomainError):
        enumerate_groups(0)


def test_embeds_examples():
    assert embeds(Z223, parse_group("Z2^2+Z9")) is not None
    assert embeds(parse_group("Z2+Z2"), parse_group("Z4+Z9")) is None
    emb = embeds(Z223, Z223)
    assert emb is not None and emb.factor_map == (0, 1, 2)


def test_embedding_is_injective_and_additive():
    pairs = [
        ("Z2^2+Z3", "Z2^2+Z9"),
        ("Z2+Z3", "Z4+Z3"),
        ("Z2+Z2", "Z2+Z4"),
        ("Z3", "Z9"),
        ("Z2^2+Z3", "Z2^2+Z3^2"),
    ]
    for small_spec, big_spec in pairs:
        small, big = parse_group(small_spec), parse_group(big_spec)
        emb = embeds(small, big)
        assert emb is not None
        images = {emb.apply(e).coords for e in small.elements()}
        assert len(images) == small.order
        for a in small.elements():
            for b in small.elements():
                assert emb.apply(a + b) == emb.apply(a) + emb.apply(b)


def test_embeds_agrees_with_subgroup_enumeration_up_to_36():
    for n in range(1, 37):
        for big in enumerate_groups(n):
            available = {
                oracles.order_statistics(sub, big.factors)
                for sub in oracles.all_subgroups(big.factors)
            }
            for d in range(1, n + 1):
                if n % d:
                    continue
                for small in enumerate_groups(d):
                    got = embeds(small, big) is not None
                    want = (
                        oracles.order_statistics(
                            oracles.all_elements(small.factors), small.factors
                        )
                        in available
                    )
                    assert got == want, (small.factors, big.factors)


def test_even_odd_split():
    left, right = even_odd_split(Z223)
    assert left.factors == (2, 2) and right.factors == (3,)
    left, right = even_odd_split(parse_group("Z9"))
    assert left.is_trivial and right.factors == (9,)
    left, right = even_odd_split(refine([4, 3, 2]))
    assert sorted(left.factors) == [2, 4] and right.factors == (3,)
    for n in (8, 12, 30, 36):
        for group in enumerate_groups(n):
            left, _ = even_odd_split(group)
            assert len(involutions(group)) == len(involutions(left))


def test_refine():
    assert refine([6]).factors == (2, 3)
    assert refine([12]).factors == (4, 3)
    assert refine([2, 2, 3]).factors == (2, 2, 3)
    assert refine([2, 3, 2]).factors == (2, 2, 3)
    assert math.prod(refine([12, 10]).factors) == 120
    assert refine(list(refine([8, 9, 5]).factors)) == refine([8, 9, 5])
    with pytest.raises(DomainError):
        refine([1])


def test_parse_and_format_group():
    assert format_group(parse_group("Z2^2+Z3")) == "Z2^2+Z3"
    assert format_group(parse_group("Z12")) == "Z4+Z3"
    assert format_group(parse_group("Z1")) == "Z1"
    assert parse_group("Z1").is_trivial
    for spec in ("Z2^3", "Z4+Z3", "Z8+Z9+Z5", "Z2+Z2+Z3^2"):
        group = parse_group(spec)
        assert parse_group(format_group(group)) == group
    for bad in ("", "Z", "Q8", "Z4+", "Z0"):
        with pytest.raises(FormatError):
            parse_group(bad)


def test_parse_and_format_element():
    e = parse_element("(1,0,2)", Z223)
    assert e.coords == (1, 0, 2)
    assert format_element(e) == "(1,0,2)"
    assert parse_element("(5,-1,7)", Z223).coords == (1, 1, 1)
    assert parse_element("()", AbelianGroup(())).coords == ()
    with pytest.raises(FormatError):
        parse_element("(1,2)", Z223)
    with pytest.raises(FormatError):
        parse_element("1,2,3", Z223)


def test_group_not_prime_power_rejected():
    with pytest.raises(DomainError):
        AbelianGroup((6,))


def test_cayley_table_matches_element_ops():
    for spec in ("Z4+Z3", "Z2^2+Z3", "Z8", "Z1"):
        group = parse_group(spec)
        table = CayleyTable(group)
        elems = list(group.elements())
        assert table.elements == elems
        for i, a in enumerate(elems):
            assert table.decode(table.neg[i]) == -a
            for j, b in enumerate(elems):
                assert table.decode(table.add[i][j]) == a + b
