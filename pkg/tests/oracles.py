"""Independent brute-force oracles used to cross-check the library.

Everything here recomputes from definitions (modular arithmetic on
coordinate tuples, plain permutation loops) and stays off the library's
search and table machinery.
"""

from __future__ import annotations

import itertools


def all_elements(factors):
    return list(itertools.product(*(range(q) for q in factors)))


def add_coords(a, b, factors):
    return tuple((x + y) % q for x, y, q in zip(a, b, factors))


def brute_force_magic(graph, factors):
    """First magic bijection found by trying all |V|! assignments, or None."""
    elems = all_elements(factors)
    zero = tuple(0 for _ in factors)
    n = graph.n
    assert len(elems) == n
    adj = graph.adj
    for perm in itertools.permutations(range(n)):
        mu = None
        ok = True
        for v in range(n):
            acc = zero
            for u in adj[v]:
                acc = add_coords(acc, elems[perm[u]], factors)
            if mu is None:
                mu = acc
            elif acc != mu:
                ok = False
                break
        if ok:
            return [elems[perm[v]] for v in range(n)], mu
    return None


def brute_force_bznl(graph):
    """First balanced zero-neighborhood bit vector over all 2^n, or None."""
    n = graph.n
    if n % 2:
        return None
    for mask in range(1 << n):
        if mask.bit_count() * 2 != n:
            continue
        if all(
            sum(mask >> u & 1 for u in graph.adj[v]) % 2 == 0 for v in range(n)
        ):
            return mask
    return None


def brute_force_has_4cycle(graph):
    for quad in itertools.combinations(range(graph.n), 4):
        a, b, c, d = quad
        for order in ((a, b, c, d), (a, c, b, d), (a, b, d, c)):
            w, x, y, z = order
            if (
                x in graph.adj[w]
                and y in graph.adj[x]
                and z in graph.adj[y]
                and w in graph.adj[z]
            ):
                return True
    return False


def order_statistics(subset, factors):
    """Multiset of element orders of a subgroup given as coordinate tuples."""
    stats = {}
    for e in subset:
        k = 1
        acc = e
        zero = tuple(0 for _ in factors)
        while acc != zero:
            acc = add_coords(acc, e, factors)
            k += 1
        stats[k] = stats.get(k, 0) + 1
    return tuple(sorted(stats.items()))


def all_subgroups(factors):
    """Every subgroup of the group with the given factor orders, as frozensets
    of coordinate tuples, found by closing generator sets breadth-first."""
    elems = all_elements(factors)
    zero = tuple(0 for _ in factors)

    def closure(gens):
        seen = {zero}
        frontier = [zero]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = add_coords(x, g, factors)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    subgroups = {frozenset({zero})}
    frontier = [frozenset({zero})]
    while frontier:
        sub = frontier.pop()
        for g in elems:
            if g in sub:
                continue
            bigger = closure(set(sub) | {g})
            if bigger not in subgroups:
                subgroups.add(bigger)
                frontier.append(bigger)
    return subgroups


def has_subgroup_isomorphic(big_factors, small_factors):
    """Abelian groups of equal order statistics are isomorphic, so subgroup
    existence reduces to matching order statistics."""
    want = order_statistics(all_elements(small_factors), small_factors)
    return any(
        order_statistics(sub, big_factors) == want
        for sub in all_subgroups(big_factors)
    )
