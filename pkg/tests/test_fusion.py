"""Fusion rings: axioms, FP dimensions, subrings, gradings."""

import math

import pytest

from braidforge.abelian import FinAbGroup
from braidforge.errors import (
    AssociativityFail,
    EnumerationLimit,
    NotWeaklyIntegral,
    Unsupported,
)
from braidforge.fusion import (
    adjoint_subring,
    all_subrings,
    fp_dims,
    fp_square_grading,
    group_ring,
    integral_part,
    ising_ring,
    pointed_part,
    product_ring,
    subring_generated,
    universal_grading,
    validate_ring,
)


def s3_character_ring():
    N = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        N[0][i][i] = 1
        N[i][0][i] = 1
    N[1][1][0] = 1
    N[1][2][2] = 1
    N[2][1][2] = 1
    N[2][2] = [1, 1, 1]
    return validate_ring(("1", "sgn", "V"), 0, (0, 1, 2), N)


def test_validate_ring_examples():
    I = ising_ring()
    validate_ring(I.labels, I.unit, I.dual, I.N)
    R3 = group_ring(FinAbGroup((3,)))
    validate_ring(R3.labels, R3.unit, R3.dual, R3.N)
    bad = [list(map(list, p)) for p in I.N]
    bad[2][2][1] = 2
    with pytest.raises(AssociativityFail):
        validate_ring(I.labels, I.unit, I.dual, bad)


def test_fp_dims():
    I = ising_ring()
    fp = fp_dims(I)
    assert abs(fp.fpdim[0] - 1) < 1e-9 and abs(fp.fpdim[1] - 1) < 1e-9
    assert abs(fp.fpdim[2] - math.sqrt(2)) < 1e-9
    assert abs(fp.total - 4) < 1e-9
    R = group_ring(FinAbGroup((2, 2)))
    fp = fp_dims(R)
    assert all(abs(d - 1) < 1e-12 for d in fp.fpdim)
    assert abs(fp.total - 4) < 1e-9
    S3 = s3_character_ring()
    fp = fp_dims(S3)
    # oracle: the Perron root of [[0,0,1],[0,0,1],[1,1,1]] solves
    # x^2 - x - 2 = 0, so it is exactly 2
    assert abs(fp.fpdim[2] - 2) < 1e-9
    assert abs(fp.total - 6) < 1e-9


def test_fp_character_property():
    for R in (ising_ring(), s3_character_ring(), group_ring(FinAbGroup((4,)))):
        fp = fp_dims(R)
        for i in range(R.rank):
            for j in range(R.rank):
                want = sum(R.N[i][j][k] * fp.fpdim[k] for k in range(R.rank))
                assert abs(fp.fpdim[i] * fp.fpdim[j] - want) < 1e-6


def test_subring_generated():
    I = ising_ring()
    assert subring_generated(I, (1,)).indices == (0, 1)
    assert subring_generated(I, (2,)).indices == (0, 1, 2)
    assert subring_generated(I, ()).indices == (0,)
    # idempotent closure
    for seed in [(1,), (2,), ()]:
        s = subring_generated(I, seed)
        assert subring_generated(I, s.indices).indices == s.indices


def test_all_subrings():
    I = ising_ring()
    lat = all_subrings(I)
    assert [s.indices for s in lat.subrings] == [(0,), (0, 1), (0, 1, 2)]
    G = FinAbGroup((2, 2))
    R = group_ring(G)
    lat = all_subrings(R)
    from braidforge.abelian import subgroups

    assert len(lat.subrings) == len(subgroups(G))
    one = lat.subrings[0]
    assert len(all_subrings(group_ring(FinAbGroup(()))).subrings) == 1
    # meet and join
    a, b = lat.subrings[1], lat.subrings[2]
    assert set(lat.meet(a, b).indices) == set(a.indices) & set(b.indices)
    assert set(lat.join(a, one).indices) == set(a.indices)


def test_rank_guard():
    R = group_ring(FinAbGroup((16,)))
    with pytest.raises(EnumerationLimit):
        all_subrings(R)


def test_modular_law_spot_checks():
    # commutative table: the subring lattice is modular
    R = group_ring(FinAbGroup((2, 4)))
    lat = all_subrings(R)
    subs = lat.subrings
    for a in subs:
        for b in subs:
            for d in subs:
                if set(d.indices) <= set(a.indices):
                    lhs = lat.meet(a, lat.join(b, d)).indices
                    rhs = lat.join(lat.meet(a, b), d).indices
                    assert lhs == rhs


def test_adjoint_subring():
    assert adjoint_subring(ising_ring()).indices == (0, 1)
    assert adjoint_subring(group_ring(FinAbGroup((4,)))).indices == (0,)
    S3 = s3_character_ring()
    assert adjoint_subring(S3).indices == (0, 1, 2)


def test_universal_grading():
    g = universal_grading(ising_ring())
    assert g.group.orders == (2,)
    assert g.deg[0] == g.deg[1] == (0,) and g.deg[2] == (1,)
    G = FinAbGroup((2, 4))
    g = universal_grading(group_ring(G))
    assert g.group.orders == (2, 4)
    assert len(set(g.deg)) == 8  # singleton components
    g = universal_grading(s3_character_ring())
    assert g.group.orders == ()
    # grading respected on every nonzero entry
    I = ising_ring()
    g = universal_grading(I)
    for i in range(3):
        for j in range(3):
            for k in I.constituents(i, j):
                assert g.deg[k] == g.group.add(g.deg[i], g.deg[j])


def test_universal_grading_noncommutative_rejected():
    # a noncommutative based ring: the group ring shape of S3 itself
    # (not abelian); build a small noncommutative table
    import itertools

    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    n = 6
    N = [[[0] * n for _ in range(n)] for _ in range(n)]
    for p in perms:
        for q in perms:
            comp = tuple(p[q[i]] for i in range(3))
            N[idx[p]][idx[q]][idx[comp]] = 1
    unit = idx[(0, 1, 2)]
    dual = [0] * n
    for p in perms:
        inv = tuple(sorted(range(3), key=lambda i: p[i]))
        dual[idx[p]] = idx[inv]
    R = validate_ring([str(i) for i in range(n)], unit, dual, N)
    assert not R.is_commutative()
    with pytest.raises(Unsupported):
        universal_grading(R)


def test_pointed_and_integral_parts():
    I = ising_ring()
    assert pointed_part(I).indices == (0, 1)
    assert integral_part(I).indices == (0, 1)
    g = fp_square_grading(I)
    assert g.deg[2] != g.group.zero()  # class of 2
    R = group_ring(FinAbGroup((3,)))
    assert pointed_part(R).indices == (0, 1, 2)
    assert integral_part(R).indices == (0, 1, 2)
    assert fp_square_grading(R).group.orders == ()


def test_ising_square_products():
    II = product_ring(ising_ring(), ising_ring())
    ip = integral_part(II)
    assert ip.rank == 5
    fp = fp_dims(II)
    assert abs(sum(fp.fpdim[i] ** 2 for i in ip.indices) - 8) < 1e-9
    assert abs(fp.total - 16) < 1e-9
    inv = pointed_part(II)
    assert inv.rank == 4


def test_not_weakly_integral():
    # golden ring: 1, t with t^2 = 1 + t; FPdim total = 1 + phi^2 not integral
    N = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    N[0][0][0] = 1
    N[0][1][1] = N[1][0][1] = 1
    N[1][1][0] = 1
    N[1][1][1] = 1
    R = validate_ring(("1", "t"), 0, (0, 1), N)
    with pytest.raises(NotWeaklyIntegral):
        fp_square_grading(R)
