"""Tests for the abelian group layer.

Automorphism counts are checked against two independent oracles: Euler's
totient for cyclic groups and a brute-force scan over all permutations for
every group of order at most 8.
"""

import itertools
import math

import pytest

from alexquandle.abelian import (
    AbelianGroup,
    GroupAutomorphism,
    abelian_groups_of_order,
    conjugacy_classes,
    enumerate_automorphisms,
    factorize,
    identity_automorphism,
    invariant_factors_from_element_orders,
    is_prime,
    iter_automorphisms,
)


def partition_count(k: int) -> int:
    # Euler's recurrence with pentagonal numbers would be overkill; a
    # direct DP over largest part is plenty for the sizes used here.
    table = [[0] * (k + 1) for _ in range(k + 1)]
    for largest in range(k + 1):
        table[largest][0] = 1
    for largest in range(1, k + 1):
        for total in range(1, k + 1):
            table[largest][total] = table[largest - 1][total]
            if total >= largest:
                table[largest][total] += table[largest][total - largest]
    return table[k][k]


def brute_automorphism_count(group: AbelianGroup) -> int:
    """Count additive bijections by scanning all permutations fixing 0."""
    n = group.order
    add = group.add
    count = 0
    for rest in itertools.permutations(range(1, n)):
        perm = (0,) + rest
        if all(
            perm[add(x, y)] == add(perm[x], perm[y])
            for x in range(1, n)
            for y in range(x, n)
        ):
            count += 1
    return count


def test_factorize():
    assert factorize(1) == {}
    assert factorize(12) == {2: 2, 3: 1}
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    for n in range(1, 200):
        fact = factorize(n)
        assert math.prod(p**e for p, e in fact.items()) == n
        assert all(is_prime(p) for p in fact)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)


def test_invariant_factor_validation():
    with pytest.raises(ValueError):
        AbelianGroup((4, 2))  # chain must ascend by divisibility
    with pytest.raises(ValueError):
        AbelianGroup((2, 3))
    with pytest.raises(ValueError):
        AbelianGroup((1, 4))
    assert AbelianGroup(()).order == 1
    assert AbelianGroup((2, 4)).order == 8


def test_group_counts_match_partition_numbers():
    for n in range(1, 37):
        expected = math.prod(
            partition_count(e) for e in factorize(n).values()
        )
        assert len(abelian_groups_of_order(n)) == expected, n


def test_group_ordering_at_order_8():
    groups = abelian_groups_of_order(8)
    assert [g.invariant_factors for g in groups] == [(8,), (2, 4), (2, 2, 2)]


def test_coords_index_roundtrip():
    for factors in [(12,), (2, 4), (2, 2, 2), (3, 9)]:
        g = AbelianGroup(factors)
        for x in g.elements():
            assert g.index_of(g.coords(x)) == x
        assert g.coords(0) == (0,) * len(factors)


def test_arithmetic_consistency():
    g = AbelianGroup((2, 4))
    for x in g.elements():
        assert g.add(x, g.neg(x)) == 0
        assert g.sub(x, x) == 0
        assert g.scale(0, x) == 0
        assert g.scale(1, x) == x
        # scale by c is c-fold addition
        acc = 0
        for c in range(1, 9):
            acc = g.add(acc, x)
            assert g.scale(c, x) == acc
    for x in g.elements():
        for y in g.elements():
            assert g.add(x, y) == g.add(y, x)
            cx, cy = g.coords(x), g.coords(y)
            summed = tuple(
                (a + b) % d for a, b, d in zip(cx, cy, g.invariant_factors)
            )
            assert g.add(x, y) == g.index_of(summed)


def test_element_order_brute():
    for factors in [(8,), (2, 4), (3, 3), (2, 6)]:
        g = AbelianGroup(factors)
        for x in g.elements():
            acc = x
            k = 1
            while acc != 0:
                acc = g.add(acc, x)
                k += 1
            assert g.element_order(x) == k


def test_generator_indices():
    g = AbelianGroup((2, 4))
    gens = g.generator_indices()
    assert len(gens) == 2
    assert [g.element_order(e) for e in gens] == [2, 4]
    # every element is a combination of the generators
    span = {0}
    for d, e in zip(g.invariant_factors, gens):
        span = {g.add(s, g.scale(c, e)) for s in span for c in range(d)}
    assert span == set(g.elements())


def test_automorphism_rejects_bad_images():
    g = AbelianGroup((2, 4))
    gens = g.generator_indices()
    order4 = next(x for x in g.elements() if g.element_order(x) == 4)
    with pytest.raises(ValueError):
        # order-2 generator cannot map to an order-4 element
        GroupAutomorphism(g, (order4, gens[1]))
    with pytest.raises(ValueError):
        GroupAutomorphism(g, (0, gens[1]))  # not injective
    with pytest.raises(ValueError):
        GroupAutomorphism(g, (gens[0],))  # wrong arity


def test_automorphism_is_additive():
    g24 = AbelianGroup((2, 4))
    sample = list(iter_automorphisms(g24))
    g33 = AbelianGroup((3, 3))
    sample += list(itertools.islice(iter_automorphisms(g33), 7))
    for aut in sample:
        g = aut.group
        for x in g.elements():
            for y in g.elements():
                assert aut(g.add(x, y)) == g.add(aut(x), aut(y))


def test_compose_and_inverse():
    g = AbelianGroup((2, 4))
    auts = enumerate_automorphisms(g)
    ident = identity_automorphism(g)
    for f in auts:
        assert f.compose(f.inverse()).element_map == ident.element_map
        assert f.inverse().compose(f).element_map == ident.element_map
    f, h = auts[1], auts[-1]
    for x in g.elements():
        assert f.compose(h)(x) == f(h(x))


def test_automorphism_count_cyclic_is_totient():
    for n in range(2, 31):
        g = AbelianGroup((n,))
        expected = sum(1 for a in range(1, n) if math.gcd(a, n) == 1)
        assert len(enumerate_automorphisms(g)) == expected, n


def test_automorphism_count_elementary_abelian():
    # |GL_k(F_p)| = prod_{i<k} (p^k - p^i)
    for p, k in [(2, 2), (2, 3), (3, 2)]:
        g = AbelianGroup((p,) * k)
        expected = math.prod(p**k - p**i for i in range(k))
        assert len(enumerate_automorphisms(g)) == expected


def test_automorphism_count_brute_all_groups_up_to_8():
    for n in range(1, 9):
        for g in abelian_groups_of_order(n):
            auts = enumerate_automorphisms(g)
            assert len(auts) == brute_automorphism_count(g), g
            # no duplicates, identity first
            maps = [a.element_map for a in auts]
            assert len(set(maps)) == len(maps)
            assert maps[0] == tuple(range(n))


def test_iter_order_deterministic():
    g = AbelianGroup((2, 4))
    first = [a.generator_images for a in iter_automorphisms(g)]
    second = [a.generator_images for a in iter_automorphisms(g)]
    assert first == second
    assert first == sorted(first)


def test_conjugacy_classes_partition():
    g = AbelianGroup((2, 4))
    auts = enumerate_automorphisms(g)
    classes = conjugacy_classes(auts)
    assert sorted(a.element_map for cls in classes for a in cls) == sorted(
        a.element_map for a in auts
    )
    assert sum(len(c) for c in classes) == len(auts)

    def conjugate(h, f):
        return h.compose(f).compose(h.inverse()).element_map

    # members of one class are conjugate, representatives are not
    for cls in classes:
        rep = cls[0]
        for other in cls[1:]:
            assert any(
                conjugate(h, rep) == other.element_map for h in auts
            )
    reps = [cls[0] for cls in classes]
    for i, r in enumerate(reps):
        for s in reps[i + 1:]:
            assert all(conjugate(h, r) != s.element_map for h in auts)


def test_conjugacy_classes_rejects_non_closed():
    g = AbelianGroup((5,))
    auts = enumerate_automorphisms(g)
    with pytest.raises(ValueError):
        conjugacy_classes(auts[:2])  # {id, x->2x} is not closed


def test_invariant_factors_from_element_orders_roundtrip():
    for n in range(1, 37):
        for g in abelian_groups_of_order(n):
            orders = [g.element_order(x) for x in g.elements()]
            recovered = invariant_factors_from_element_orders(orders)
            assert recovered == g.invariant_factors, g


def test_invariant_factors_from_element_orders_rejects_garbage():
    with pytest.raises(ValueError):
        invariant_factors_from_element_orders([1, 2, 2])  # order 3, not abelian
