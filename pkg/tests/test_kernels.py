"""Differential tests: the compiled kernel must match the pure one."""

import random

import pytest

from braidforge.errors import EnumerationLimit
from braidforge.kernels import pure

try:
    from braidforge.kernels import _core as core
except ImportError:
    core = None

needs_core = pytest.mark.skipif(core is None, reason="compiled kernel not built")

CASES = [(2,), (4,), (2, 4), (3, 3), (2, 2, 2), (12,), (2, 2, 4), (3, 9), (16,)]


def strides_of(orders):
    s, out = 1, []
    for m in reversed(orders):
        out.append(s)
        s *= m
    return list(reversed(out))


@needs_core
@pytest.mark.parametrize("orders", CASES)
def test_backends_agree(orders):
    rng = random.Random(sum(orders))
    n = 1
    for m in orders:
        n *= m
    add = pure.add_table(orders)
    assert add == core.add_table(orders)
    assert pure.neg_table(orders) == core.neg_table(orders)
    assert pure.element_orders(n, add) == core.element_orders(n, add)
    gens = [rng.randrange(n) for _ in range(2)]
    assert pure.closure(n, add, gens) == core.closure(n, add, gens)
    assert pure.all_subgroups(n, add) == core.all_subgroups(n, add)
    strides = strides_of(orders)
    gords = list(orders)
    p1 = pure.automorphisms(n, add, strides, gords, 10 ** 6)
    p2 = core.automorphisms(n, add, strides, gords, 10 ** 6)
    assert p1 == p2
    table = [rng.randrange(4) for _ in range(n)]
    assert pure.stabilizer(p1, table) == core.stabilizer(p1, table)
    perm = p1[len(p1) // 2]
    assert pure.apply_perm(perm, table) == core.apply_perm(perm, table)
    moved = list(pure.apply_perm(perm, table))
    f1 = pure.find_isomorphism(n, add, strides, gords, table, moved)
    f2 = core.find_isomorphism(n, add, strides, gords, table, moved)
    assert f1 == f2
    assert f2 is not None
    # a table with a fresh value cannot be reached
    alien = list(table)
    alien[0] = 99
    assert core.find_isomorphism(n, add, strides, gords, table, alien) is None


@needs_core
def test_cap_raises_in_both():
    orders = (2, 2, 2)
    add = pure.add_table(orders)
    with pytest.raises(EnumerationLimit):
        pure.automorphisms(8, add, [4, 2, 1], [2, 2, 2], 10)
    with pytest.raises(EnumerationLimit):
        core.automorphisms(8, add, [4, 2, 1], [2, 2, 2], 10)


def test_permutations_are_automorphisms():
    orders = (2, 4)
    add = pure.add_table(orders)
    n = 8
    perms = pure.automorphisms(n, add, [4, 1], [2, 4], 10 ** 6)
    assert len(perms) == 8
    for p in perms:
        assert sorted(p) == list(range(n))
        for a in range(n):
            for b in range(n):
                assert p[add[a * n + b]] == add[p[a] * n + p[b]]
