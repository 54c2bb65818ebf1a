"""Pre-modular data: fusion ring + twists + dimensions, all exact.

The S-matrix is always derived from the triple via the balancing
formula s_{XY} = theta_X^-1 theta_Y^-1 sum_Z N_{XY}^Z theta_Z d(Z),
never user-supplied, and a datum exists only if every structural
identity holds exactly: unit twist, nonzero dimensions, conjugate dual
dimensions, S symmetric and dual-invariant, first row = dimensions,
and the product relation s_{XY} s_{XZ} = d(X) sum_W N_{YZ}^W s_{XW}.

Centralizers are cut out of the normalized matrix by s~ = 1; their
component counts match exact matrix ranks.  Gauss sums, the squared
central charge, and the square-class Gauss sums of weakly integral
non-degenerate data close out the invariant set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import qform
from .config import DEFAULT, Config
from .cyclotomic import CycloNum, matrix_rank
from .errors import (
    BadParameter,
    ClassificationBug,
    DatumError,
    Degenerate,
    DualDimFail,
    NotCharacter,
    NotWeaklyIntegral,
    SymmetryFail,
    UnitTwistFail,
    VerlindeFail,
    ZeroDim,
)
from .fusion import (
    FusionRing,
    FusionSubring,
    all_subrings,
    fp_dims,
    fp_square_integers,
    group_ring,
    integral_part,
    ising_ring,
    product_ring,
    subring_generated,
    _squarefree,
)

_mod1 = lambda x: x - (x // 1)
ONE = CycloNum.one()
ZERO = CycloNum.zero()


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    status: str  # pass | fail | skipped
    witness: str = ""


@dataclass(frozen=True)
class PreModularDatum:
    ring: FusionRing
    theta: tuple          # Fraction exponents, twists as roots of unity
    dim: tuple            # CycloNum per index
    S: tuple              # derived, CycloNum matrix
    S_tilde: tuple        # s_{XY} / (d(X) d(Y))
    pointed_source: object = None  # (PreMetricGroup, chi tuple) when pointed

    @property
    def rank(self) -> int:
        return self.ring.rank

    def dim_total(self) -> CycloNum:
        out = ZERO
        for d in self.dim:
            out = out + d * d
        return out

    def cat_dim(self, indices) -> CycloNum:
        out = ZERO
        for i in indices:
            out = out + self.dim[i] * self.dim[i]
        return out

    def tau(self, sign: int = +1, indices=None) -> CycloNum:
        idx = range(self.rank) if indices is None else indices
        out = ZERO
        for i in idx:
            out = out + CycloNum.from_root(sign * self.theta[i]) * self.dim[i] * self.dim[i]
        return out

    def __repr__(self):
        return f"PreModularDatum({self.ring!r})"


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _derive_s(ring: FusionRing, theta, dim):
    r = ring.rank
    qd = [CycloNum.from_root(theta[z]) * dim[z] for z in range(r)]
    return [
        tuple(
            CycloNum.from_root(_mod1(-theta[x] - theta[y])) * _sum_z(ring, x, y, qd)
            for y in range(r)
        )
        for x in range(r)
    ]


def _sum_z(ring, x, y, qd):
    acc = ZERO
    for z, m in enumerate(ring.N[x][y]):
        if m:
            acc = acc + m * qd[z]
    return acc


def build(ring: FusionRing, theta, dim, config: Config = DEFAULT) -> PreModularDatum:
    """Derive the S-matrix and verify every datum identity exactly."""
    r = ring.rank
    theta = tuple(_mod1(Fraction(t)) for t in theta)
    dim = tuple(d if isinstance(d, CycloNum) else CycloNum.from_rational(d) for d in dim)
    if len(theta) != r or len(dim) != r:
        raise DatumError("twist and dimension tables must cover the basis")
    if theta[ring.unit] != 0:
        raise UnitTwistFail(f"unit twist is {theta[ring.unit]}, not 1")
    if dim[ring.unit] != ONE:
        raise DatumError("unit dimension must be 1")
    for i, d in enumerate(dim):
        if d.is_zero():
            raise ZeroDim(f"dimension of {ring.labels[i]} is zero")
    for i in range(r):
        if dim[ring.dual[i]] != dim[i].conjugate():
            raise DualDimFail(
                f"d(dual {ring.labels[i]}) != conjugate(d({ring.labels[i]}))"
            )
    S = _derive_s(ring, theta, dim)
    for x in range(r):
        for y in range(x, r):
            if S[x][y] != S[y][x]:
                raise SymmetryFail(f"S not symmetric at ({x}, {y})")
    for x in range(r):
        for y in range(r):
            if S[ring.dual[x]][ring.dual[y]] != S[x][y]:
                raise SymmetryFail(f"S not dual-invariant at ({x}, {y})")
        if S[ring.unit][x] != dim[x]:
            raise SymmetryFail(f"S[unit][{x}] != d({ring.labels[x]})")
    for x in range(r):
        for y in range(r):
            for z in range(r):
                rhs = ZERO
                for w, m in enumerate(ring.N[y][z]):
                    if m:
                        rhs = rhs + m * S[x][w]
                if S[x][y] * S[x][z] != dim[x] * rhs:
                    raise VerlindeFail(
                        f"product relation fails at (X, Y, Z) = "
                        f"({ring.labels[x]}, {ring.labels[y]}, {ring.labels[z]})"
                    )
    dinv = [d.inverse() for d in dim]
    St = tuple(
        tuple(S[x][y] * dinv[x] * dinv[y] for y in range(r)) for x in range(r)
    )
    return PreModularDatum(ring, theta, dim, tuple(S), St)


def pointed_datum(M: qform.PreMetricGroup, chi=None, config: Config = DEFAULT) -> PreModularDatum:
    """The pointed datum of a form, twisted by an optional sign character.

    Dimensions are chi values, twists q(g) shifted by 1/2 where chi is
    -1, so the S-matrix comes out as b(g,h) chi(g) chi(h).
    """
    G = M.group
    n = G.order
    if chi is None:
        chi = (1,) * n
    chi = tuple(int(c) for c in chi)
    if len(chi) != n or any(c not in (1, -1) for c in chi):
        raise NotCharacter("chi must be a +-1 table over the elements")
    add = G.add_flat()
    for i in range(n):
        for j in range(n):
            if chi[add[i * n + j]] != chi[i] * chi[j]:
                raise NotCharacter(
                    f"chi not multiplicative at {G.from_index(i)}, {G.from_index(j)}"
                )
    ring = group_ring(G)
    theta = tuple(
        _mod1(M.values[i] + (Fraction(1, 2) if chi[i] == -1 else 0)) for i in range(n)
    )
    dim = tuple(CycloNum.from_rational(c) for c in chi)
    datum = build(ring, theta, dim, config)
    return PreModularDatum(
        datum.ring, datum.theta, datum.dim, datum.S, datum.S_tilde, (M, chi)
    )


def ising_datum(zeta, eps: int, config: Config = DEFAULT) -> PreModularDatum:
    """The rank-3 datum with X*X = 1 + delta.

    ``zeta`` is the braiding exponent k/16 with k odd (so the root has
    eighth power -1); ``eps`` the sign of the spherical structure.
    Twists are (1, -1, eps/zeta) and d(X) = eps (zeta^2 + zeta^-2).
    """
    zeta = _mod1(Fraction(zeta))
    if zeta.denominator != 16:
        raise BadParameter(f"zeta must be odd/16, got {zeta}")
    if eps not in (1, -1):
        raise BadParameter("eps must be +-1")
    ring = ising_ring()
    theta_x = _mod1(-zeta + (Fraction(1, 2) if eps == -1 else 0))
    theta = (Fraction(0), Fraction(1, 2), theta_x)
    lam = CycloNum.from_root(2 * zeta) + CycloNum.from_root(-2 * zeta)
    dx = lam if eps == 1 else -lam
    dim = (ONE, ONE, dx)
    return build(ring, theta, dim, config)


def deligne_product(D1: PreModularDatum, D2: PreModularDatum,
                    config: Config = DEFAULT) -> PreModularDatum:
    """Basis pairs; N, twists, dimensions multiply componentwise."""
    ring = product_ring(D1.ring, D2.ring)
    r2 = D2.rank
    theta = tuple(
        _mod1(D1.theta[i] + D2.theta[j]) for i in range(D1.rank) for j in range(r2)
    )
    dim = tuple(D1.dim[i] * D2.dim[j] for i in range(D1.rank) for j in range(r2))
    datum = build(ring, theta, dim, config)
    src = None
    if (
        D1.pointed_source is not None
        and D2.pointed_source is not None
        and all(c == 1 for c in D1.pointed_source[1])
        and all(c == 1 for c in D2.pointed_source[1])
    ):
        form = qform.direct_sum(D1.pointed_source[0], D2.pointed_source[0])
        src = (form, (1,) * form.group.order)
    return PreModularDatum(
        datum.ring, datum.theta, datum.dim, datum.S, datum.S_tilde, src
    )


def trivial_datum() -> PreModularDatum:
    return pointed_datum(qform.trivial_form())


# ---------------------------------------------------------------------------
# centralizers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralizerReport:
    subring: FusionSubring
    centralizer: FusionSubring
    components: tuple   # partition of all indices
    rank_stilde: int


def centralizer(D: PreModularDatum, K: FusionSubring) -> CentralizerReport:
    """K' = {V : s~_{YV} = 1 for all Y in K}, with component count.

    The rank of the K-rows of s~ equals the number of K'-components;
    disagreement would falsify the datum and raises ClassificationBug.
    """
    R = D.ring
    St = D.S_tilde
    cent = [
        v
        for v in range(R.rank)
        if all(St[y][v] == ONE for y in K.indices)
    ]
    cent_sub = FusionSubring(R, tuple(cent))
    if subring_generated(R, cent_sub.indices).indices != cent_sub.indices:
        raise ClassificationBug("centralizer is not a subring")
    parent = list(range(R.rank))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for z in range(R.rank):
        for w in cent:
            for y in R.constituents(z, w):
                ri, rj = find(z), find(y)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    buckets = {}
    for i in range(R.rank):
        buckets.setdefault(find(i), []).append(i)
    components = tuple(tuple(v) for _, v in sorted(buckets.items()))
    rank = matrix_rank([[St[y][v] for v in range(R.rank)] for y in K.indices])
    if rank != len(components):
        raise ClassificationBug(
            f"rank {rank} != component count {len(components)}"
        )
    return CentralizerReport(K, cent_sub, components, rank)


def is_nondegenerate(D: PreModularDatum) -> bool:
    """Invertibility of s~, cross-checked against triviality of the
    centralizer of everything."""
    whole = FusionSubring(D.ring, tuple(range(D.rank)))
    rep = centralizer(D, whole)
    by_rank = rep.rank_stilde == D.rank
    by_cent = rep.centralizer.indices == (D.ring.unit,)
    if by_rank != by_cent:
        raise ClassificationBug("rank and centralizer tests disagree")
    return by_rank


def dichotomy_check(D: PreModularDatum, K: FusionSubring) -> list:
    """Per V: either s~_{YV} = 1 on K, or sum |Y|^2 s~_{YV} = 0."""
    St = D.S_tilde
    out = []
    for v in range(D.rank):
        inside = all(St[y][v] == ONE for y in K.indices)
        acc = ZERO
        for y in K.indices:
            acc = acc + D.dim[y] * D.dim[y] * St[y][v]
        vanishes = acc.is_zero()
        out.append(
            Check(
                name=f"dichotomy[{D.ring.labels[v]}]",
                anchor="centralizer-dichotomy",
                status="pass" if inside != vanishes else "fail",
                witness=f"in_centralizer={inside} weighted_column_zero={vanishes}",
            )
        )
    return out


def projective_centralizer(D: PreModularDatum, K: FusionSubring) -> FusionSubring:
    """Objects projectively centralizing K = centralizer of K's adjoint."""
    R = D.ring
    seed = []
    for y in K.indices:
        seed.extend(R.constituents(y, R.dual[y]))
    k_ad = subring_generated(R, seed)
    proj = centralizer(D, k_ad).centralizer
    cent_k = centralizer(D, K).centralizer
    if commutator(R, cent_k).indices != proj.indices:
        raise ClassificationBug("projective centralizer != commutator of centralizer")
    return proj


def commutator(R: FusionRing, K: FusionSubring) -> FusionSubring:
    """Generated by x with every constituent of x (x) dual(x) inside K."""
    kset = set(K.indices)
    seed = [
        x
        for x in range(R.rank)
        if all(z in kset for z in R.constituents(x, R.dual[x]))
    ]
    return subring_generated(R, seed)


def symmetric_and_isotropic(D: PreModularDatum, K: FusionSubring) -> dict:
    """Symmetric = double braiding trivial on K; isotropic adds trivial
    twists.  For pointed data the Lagrangian subgroups of the source
    form are reported alongside."""
    St = D.S_tilde
    symmetric = all(
        St[y][z] == ONE for y in K.indices for z in K.indices
    )
    isotropic = symmetric and all(D.theta[i] == 0 for i in K.indices)
    lagrangian = None
    if D.pointed_source is not None:
        M, _ = D.pointed_source
        recs = qform.isotropic_subgroups(M)
        lag_sets = [
            tuple(M.group.index(e) for e in r.subgroup.elements)
            for r in recs
            if r.is_lagrangian
        ]
        lagrangian = {
            "lagrangian_subgroups": lag_sets,
            "k_is_lagrangian": tuple(sorted(K.indices)) in lag_sets,
        }
    return {"symmetric": symmetric, "isotropic": isotropic, "lagrangian_pointed": lagrangian}


# ---------------------------------------------------------------------------
# identity reports
# ---------------------------------------------------------------------------

def mueger_report(D: PreModularDatum, K: FusionSubring, B: FusionSubring,
                  config: Config = DEFAULT) -> list:
    """Dimension identities for a pair of subrings, pass/fail each."""
    R = D.ring
    lat = all_subrings(R, config)
    whole = FusionSubring(R, tuple(range(R.rank)))
    Kc = centralizer(D, K).centralizer
    Bc = centralizer(D, B).centralizer
    Cc = centralizer(D, whole).centralizer
    checks = []

    def meet(a, b):
        return lat.meet(a, b)

    def record(name, anchor, ok, witness=""):
        checks.append(Check(name, anchor, "pass" if ok else "fail", witness))

    lhs = D.cat_dim(meet(B, Kc).indices) * D.cat_dim(K.indices)
    rhs = D.cat_dim(meet(K, Bc).indices) * D.cat_dim(B.indices)
    record("dim-exchange", "centralizer-dim-exchange", lhs == rhs)

    lhs = D.cat_dim(K.indices) * D.cat_dim(Kc.indices)
    rhs = D.dim_total() * D.cat_dim(meet(K, Cc).indices)
    record("dim-product", "centralizer-dim-product", lhs == rhs)

    kcc = centralizer(D, Kc).centralizer
    join_kc = lat.join(K, Cc)
    record(
        "double-centralizer",
        "double-centralizer-join",
        kcc.indices == join_kc.indices,
        f"K'' = {kcc.indices}, K v C' = {join_kc.indices}",
    )

    lhs = D.cat_dim(K.indices) * D.cat_dim(B.indices)
    rhs = D.cat_dim(lat.join(K, B).indices) * D.cat_dim(meet(K, B).indices)
    record("diamond-dims", "join-meet-dims", lhs == rhs)

    fp = fp_dims(R, config)

    def fptot(sub):
        return sum(fp.fpdim[i] ** 2 for i in sub.indices)

    lhs_f = fptot(K) * fptot(Kc)
    rhs_f = fptot(whole) * fptot(meet(K, Cc))
    record(
        "fp-dim-product",
        "centralizer-fp-dim-product",
        abs(lhs_f - rhs_f) <= config.tolerance * max(1.0, abs(rhs_f)),
        f"{lhs_f} vs {rhs_f}",
    )

    sub_rank = matrix_rank([[D.S_tilde[y][z] for z in K.indices] for y in K.indices])
    if sub_rank == K.rank:
        ok1 = meet(K, Kc).indices == (R.unit,)
        ok2 = D.cat_dim(K.indices) * D.cat_dim(Kc.indices) == D.dim_total() * D.cat_dim(meet(K, Cc).indices)
        record("nondeg-factor", "nondegenerate-subring-factorization", ok1 and ok2)
    else:
        checks.append(Check("nondeg-factor", "nondegenerate-subring-factorization", "skipped",
                            "K degenerate"))
    return checks


@dataclass(frozen=True)
class InvariantReport:
    tau_plus: CycloNum
    tau_minus: CycloNum
    charge_sq: object      # CycloNum or None when tau- = 0
    dim_total: CycloNum
    x_class: object        # square-free int or None
    gfp_plus: object       # CycloNum or None
    gfp_minus: object
    checks: tuple


def gauss_and_charge(D: PreModularDatum, config: Config = DEFAULT) -> InvariantReport:
    """Gauss sums, squared charge, and the summation identities.

    Verifies, exactly: conjugacy of the two sums; the twisted row sum
    sum_X theta_X d(X) s_{XY} = d(Y) theta_Y^-1 tau+ for every Y; the
    relation tau+-(C) tau-+(K) = dim(K) tau+-(K') for every subring K;
    and for non-degenerate data, tau(E') = tau(C) for isotropic E plus
    tau+ tau- = dim(C) with the charge a root of unity.
    """
    R = D.ring
    tau_p = D.tau(+1)
    tau_m = D.tau(-1)
    dim_tot = D.dim_total()
    checks = [
        Check("conjugate-sums", "gauss-conjugate-pair",
              "pass" if tau_m == tau_p.conjugate() else "fail")
    ]
    qd = [CycloNum.from_root(D.theta[x]) * D.dim[x] for x in range(R.rank)]
    for y in range(R.rank):
        acc = ZERO
        for x in range(R.rank):
            acc = acc + qd[x] * D.S[x][y]
        want = D.dim[y] * CycloNum.from_root(-D.theta[y]) * tau_p
        checks.append(
            Check(f"twisted-row-sum[{R.labels[y]}]", "twisted-row-sum",
                  "pass" if acc == want else "fail")
        )
    lat = all_subrings(R, config)
    nondeg = is_nondegenerate(D)
    for sub in lat.subrings:
        rep = centralizer(D, sub)
        dk = D.cat_dim(sub.indices)
        ok = (
            tau_p * D.tau(-1, sub.indices) == dk * D.tau(+1, rep.centralizer.indices)
            and tau_m * D.tau(+1, sub.indices) == dk * D.tau(-1, rep.centralizer.indices)
        )
        checks.append(
            Check(f"gauss-mult[{','.join(sub.labels())}]",
                  "gauss-centralizer-multiplicativity",
                  "pass" if ok else "fail")
        )
        flags = symmetric_and_isotropic(D, sub)
        if nondeg and flags["isotropic"]:
            ok = (
                D.tau(+1, rep.centralizer.indices) == tau_p
                and D.tau(-1, rep.centralizer.indices) == tau_m
            )
            checks.append(
                Check(f"isotropic-centralizer-gauss[{','.join(sub.labels())}]",
                      "isotropic-centralizer-gauss",
                      "pass" if ok else "fail")
            )
    charge = None
    if not tau_m.is_zero():
        charge = tau_p / tau_m
    if nondeg:
        checks.append(
            Check("norm", "gauss-norm-is-dimension",
                  "pass" if tau_p * tau_m == dim_tot else "fail")
        )
        checks.append(
            Check("charge-root", "squared-charge-root-of-unity",
                  "pass" if charge is not None and charge.is_root_of_unity() is not None
                  else "fail")
        )
    x_class = t_p = t_m = None
    try:
        x_class, t_p, t_m = gfp_invariants(D, config)
    except (Degenerate, NotWeaklyIntegral):
        pass
    return InvariantReport(tau_p, tau_m, charge, dim_tot, x_class, t_p, t_m, tuple(checks))


def gfp_invariants(D: PreModularDatum, config: Config = DEFAULT):
    """(square-free class, T+, T-) of a weakly integral non-degenerate datum.

    The class is the unique square class x with pairing values
    s~_{a, X} = theta_a d(a) for all a centralizing the integral part
    and all X of square class x; T+- sums integer-normalized FP
    dimensions against theta^+-1 d over that class.
    """
    if not is_nondegenerate(D):
        raise Degenerate("square-class Gauss sums need a non-degenerate datum")
    R = D.ring
    sq = fp_square_integers(R, config)      # NotWeaklyIntegral if not
    sf = [_squarefree(m) for m in sq]
    int_part = integral_part(R, config)
    A = centralizer(D, int_part).centralizer
    inv = set(
        x for x in range(R.rank)
        if sum(R.N[x][R.dual[x]]) == 1 and R.N[x][R.dual[x]][R.unit] == 1
    )
    if not set(A.indices) <= inv:
        raise ClassificationBug("centralizer of the integral part is not pointed")
    chi = {}
    for a in A.indices:
        val = (CycloNum.from_root(D.theta[a]) * D.dim[a]).as_rational()
        if val not in (1, -1):
            raise ClassificationBug(f"braiding character value {val} is not +-1")
        chi[a] = int(val)
    candidates = []
    for v in sorted(set(sf)):
        members = [x for x in range(R.rank) if sf[x] == v]
        if all(
            D.S_tilde[a][x] == CycloNum.from_rational(chi[a])
            for a in A.indices
            for x in members
        ):
            candidates.append(v)
    if len(candidates) != 1:
        raise ClassificationBug(f"square-class solutions: {candidates}")
    n_c = candidates[0]
    t_p = ZERO
    t_m = ZERO
    for x in range(R.rank):
        if sf[x] != n_c:
            continue
        m2, rem = divmod(sq[x], n_c)
        if rem:
            raise ClassificationBug("square class does not divide FPdim^2")
        w = math.isqrt(m2)
        if w * w != m2:
            raise ClassificationBug("normalized FP dimension is not an integer")
        t_p = t_p + w * CycloNum.from_root(D.theta[x]) * D.dim[x]
        t_m = t_m + w * CycloNum.from_root(-D.theta[x]) * D.dim[x]
    if t_m != t_p.conjugate():
        raise ClassificationBug("square-class sums are not conjugate")
    return n_c, t_p, t_m
