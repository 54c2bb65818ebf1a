"""Fusion rings: based rings with non-negative structure constants,
a unit, and a duality involution.

The table N[i][j][k] counts the k-th basis element inside the product
of the i-th and j-th.  Validation checks the unit, associativity,
duality against the unit, and the Frobenius index symmetries exactly;
everything downstream assumes a validated ring.

Frobenius-Perron dimensions are the one numeric (float) surface of the
library: the largest eigenvalue of each left-multiplication matrix,
found by power iteration with a deterministic all-ones seed.  The
iteration runs on L_x + 1 so periodic (bipartite-like) tables converge
too; subtracting one recovers the eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FinAbGroup, TRIVIAL_GROUP, smith_diagonal
from .config import DEFAULT, Config
from .errors import (
    AssociativityFail,
    ClassificationBug,
    DualityFail,
    EnumerationLimit,
    FrobeniusFail,
    NotWeaklyIntegral,
    NumericalFail,
    UnitFail,
    Unsupported,
)

_POWER_TOL = 1e-12
_POWER_CAP = 100_000


@dataclass(frozen=True)
class FusionRing:
    labels: tuple
    unit: int
    dual: tuple
    N: tuple  # N[i][j][k], non-negative ints

    @property
    def rank(self) -> int:
        return len(self.labels)

    def mult(self, i: int, j: int) -> tuple:
        return self.N[i][j]

    def constituents(self, i: int, j: int) -> list:
        return [k for k, m in enumerate(self.N[i][j]) if m > 0]

    def is_commutative(self) -> bool:
        r = self.rank
        return all(
            self.N[i][j] == self.N[j][i] for i in range(r) for j in range(i + 1, r)
        )

    def label_of(self, i: int) -> str:
        return self.labels[i]

    def __repr__(self):
        return f"FusionRing({', '.join(self.labels)})"


def validate_ring(labels, unit, dual, N) -> FusionRing:
    """Exact axioms check; the first violation is reported with indices."""
    labels = tuple(str(l) for l in labels)
    r = len(labels)
    dual = tuple(int(d) for d in dual)
    N = tuple(tuple(tuple(int(m) for m in row) for row in plane) for plane in N)
    if len(N) != r or any(len(p) != r or any(len(row) != r for row in p) for p in N):
        raise UnitFail(f"N must be {r}x{r}x{r}")
    if sorted(dual) != list(range(r)) or any(dual[dual[i]] != i for i in range(r)):
        raise DualityFail("dual is not an involution on indices")
    if any(m < 0 for p in N for row in p for m in row):
        raise UnitFail("negative structure constant")
    for j in range(r):
        for k in range(r):
            want = 1 if j == k else 0
            if N[unit][j][k] != want or N[j][unit][k] != want:
                raise UnitFail(f"unit law fails at ({j}, {k})")
    for x in range(r):
        for y in range(r):
            for z in range(r):
                for v in range(r):
                    lhs = sum(N[x][y][w] * N[w][z][v] for w in range(r))
                    rhs = sum(N[y][z][w] * N[x][w][v] for w in range(r))
                    if lhs != rhs:
                        raise AssociativityFail(
                            f"associativity fails at ({x}, {y}, {z}) -> {v}"
                        )
    for x in range(r):
        for y in range(r):
            if N[x][y][unit] != (1 if y == dual[x] else 0):
                raise DualityFail(
                    f"N[{x}][{y}][unit] = {N[x][y][unit]} but dual({x}) = {dual[x]}"
                )
    for x in range(r):
        for y in range(r):
            for z in range(r):
                if not (
                    N[x][y][z] == N[dual[z]][x][dual[y]] == N[y][dual[z]][dual[x]]
                ):
                    raise FrobeniusFail(f"Frobenius symmetry fails at ({x}, {y}, {z})")
    return FusionRing(labels, unit, dual, N)


# ---------------------------------------------------------------------------
# standard constructions
# ---------------------------------------------------------------------------

def group_ring(G: FinAbGroup) -> FusionRing:
    """The pointed ring of a finite abelian group."""
    els = G.elements()
    n = len(els)
    idx = {e: i for i, e in enumerate(els)}
    N = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            N[i][j][idx[G.add(a, b)]] = 1
    labels = tuple("g" + "".join(str(c) for c in e) if e else "1" for e in els)
    dual = tuple(idx[G.neg(e)] for e in els)
    return FusionRing(labels, idx[G.zero()], dual, _freeze(N))


def ising_ring() -> FusionRing:
    """Rank 3: unit, delta, X with X*X = 1 + delta."""
    N = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    table = {
        (0, 0): [0],
        (0, 1): [1],
        (0, 2): [2],
        (1, 0): [1],
        (1, 1): [0],
        (1, 2): [2],
        (2, 0): [2],
        (2, 1): [2],
        (2, 2): [0, 1],
    }
    for (i, j), ks in table.items():
        for k in ks:
            N[i][j][k] = 1
    return FusionRing(("1", "delta", "X"), 0, (0, 1, 2), _freeze(N))


def product_ring(R1: FusionRing, R2: FusionRing) -> FusionRing:
    """Basis = pairs, structure constants multiply."""
    r1, r2 = R1.rank, R2.rank
    labels = tuple(
        f"{R1.labels[i]}*{R2.labels[j]}" for i in range(r1) for j in range(r2)
    )
    dual = tuple(R1.dual[i] * r2 + R2.dual[j] for i in range(r1) for j in range(r2))
    rank = r1 * r2
    N = [[[0] * rank for _ in range(rank)] for _ in range(rank)]
    for a1 in range(r1):
        for a2 in range(r2):
            i = a1 * r2 + a2
            for b1 in range(r1):
                for b2 in range(r2):
                    j = b1 * r2 + b2
                    for c1 in range(r1):
                        m1 = R1.N[a1][b1][c1]
                        if not m1:
                            continue
                        for c2 in range(r2):
                            m2 = R2.N[a2][b2][c2]
                            if m2:
                                N[i][j][c1 * r2 + c2] = m1 * m2
    unit = R1.unit * r2 + R2.unit
    return FusionRing(labels, unit, dual, _freeze(N))


def _freeze(N):
    return tuple(tuple(tuple(row) for row in plane) for plane in N)


# ---------------------------------------------------------------------------
# Frobenius-Perron dimensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FPData:
    fpdim: tuple    # floats, one per basis index
    total: float    # sum of squares
    tolerance: float


def fp_dims(R: FusionRing, config: Config = DEFAULT) -> FPData:
    """Perron eigenvalues of the left-multiplication matrices."""
    dims = []
    r = R.rank
    for x in range(r):
        # A[z][y] = N[x][y][z]; iterate on A + 1 so periodic tables converge
        A = [[R.N[x][y][z] + (1 if y == z else 0) for y in range(r)] for z in range(r)]
        v = [1.0] * r
        lam = 1.0
        for _ in range(_POWER_CAP):
            w = [sum(A[z][y] * v[y] for y in range(r)) for z in range(r)]
            tot = sum(w)
            new_lam = tot / sum(v)
            v = [wi / tot for wi in w]
            if abs(new_lam - lam) < _POWER_TOL:
                lam = new_lam
                break
            lam = new_lam
        else:
            raise NumericalFail(f"power iteration did not converge for index {x}")
        dims.append(lam - 1.0)
    total = sum(d * d for d in dims)
    return FPData(tuple(dims), total, config.tolerance)


def fp_subring_total(R: FusionRing, indices, fp: FPData) -> float:
    return sum(fp.fpdim[i] ** 2 for i in indices)


# ---------------------------------------------------------------------------
# subrings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FusionSubring:
    parent: FusionRing
    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))

    @property
    def rank(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in set(self.indices)

    def labels(self) -> tuple:
        return tuple(self.parent.labels[i] for i in self.indices)


def subring_generated(R: FusionRing, seed) -> FusionSubring:
    """Least constituent-closed subset containing the seed and the unit.

    Dual-closure always follows for genuine fusion rings, so it is not
    part of the closure; it is asserted afterwards, and a violation
    marks the input as not a fusion ring.
    """
    cur = set(seed) | {R.unit}
    while True:
        new = set(cur)
        for i in cur:
            for j in cur:
                new.update(R.constituents(i, j))
        if new == cur:
            break
        cur = new
    for i in cur:
        if R.dual[i] not in cur:
            raise ClassificationBug(f"closure not dual-closed at index {i}")
    return FusionSubring(R, tuple(sorted(cur)))


@dataclass(frozen=True)
class SubringLattice:
    ring: FusionRing
    subrings: tuple  # sorted by (rank, indices)

    def meet(self, a: FusionSubring, b: FusionSubring) -> FusionSubring:
        common = set(a.indices) & set(b.indices)
        sub = FusionSubring(self.ring, tuple(common))
        if subring_generated(self.ring, sub.indices).indices != sub.indices:
            raise ClassificationBug("intersection of subrings is not a subring")
        return sub

    def join(self, a: FusionSubring, b: FusionSubring) -> FusionSubring:
        return subring_generated(self.ring, a.indices + b.indices)


def all_subrings(R: FusionRing, config: Config = DEFAULT) -> SubringLattice:
    """The full subring lattice, by closure of single-element extensions."""
    if R.rank > config.rank_guard:
        raise EnumerationLimit(f"rank {R.rank} exceeds rank_guard = {config.rank_guard}")
    base = subring_generated(R, ())
    found = {base.indices}
    queue = [base.indices]
    while queue:
        cur = queue.pop()
        for x in range(R.rank):
            if x in cur:
                continue
            ext = subring_generated(R, cur + (x,)).indices
            if ext not in found:
                found.add(ext)
                queue.append(ext)
    subs = tuple(
        FusionSubring(R, s) for s in sorted(found, key=lambda s: (len(s), s))
    )
    return SubringLattice(R, subs)


def adjoint_subring(R: FusionRing) -> FusionSubring:
    """Generated by the constituents of x (x) dual(x)."""
    seed = []
    for x in range(R.rank):
        seed.extend(R.constituents(x, R.dual[x]))
    return subring_generated(R, seed)


def pointed_part(R: FusionRing) -> FusionSubring:
    """Subring of invertibles (x with x (x) dual(x) = unit on the nose)."""
    inv = [
        x
        for x in range(R.rank)
        if sum(R.N[x][R.dual[x]]) == 1 and R.N[x][R.dual[x]][R.unit] == 1
    ]
    sub = FusionSubring(R, tuple(inv))
    if subring_generated(R, sub.indices).indices != sub.indices:
        raise ClassificationBug("invertibles do not close under the product")
    return sub


# ---------------------------------------------------------------------------
# gradings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Grading:
    group: FinAbGroup
    deg: tuple  # GroupElement per basis index

    def trivial_component(self) -> tuple:
        z = self.group.zero()
        return tuple(i for i, d in enumerate(self.deg) if d == z)

    def is_faithful(self) -> bool:
        return len(set(self.deg)) == self.group.order


def group_from_table(n: int, mul, unit: int):
    """Canonical FinAbGroup from an abstract abelian multiplication table.

    ``mul(i, j)`` gives the product index.  Returns (G, encode) where
    encode maps an abstract index to a GroupElement of G.  Presentation:
    one generator per abstract element, relations from the full table.
    """
    if n == 1:
        return TRIVIAL_GROUP, {unit: ()}
    cols = []
    for i in range(n):
        for j in range(i, n):
            col = [0] * n
            col[i] += 1
            col[j] += 1
            col[mul(i, j)] -= 1
            cols.append(col)
    col = [0] * n
    col[unit] += 1
    cols.append(col)
    mat = [[c[i] for c in cols] for i in range(n)]
    diag, U = smith_diagonal(mat)
    kept = [(i, d) for i, d in enumerate(diag) if d != 1]
    if any(d == 0 for _, d in kept):
        raise ClassificationBug("abstract table does not present a finite group")
    G = FinAbGroup(tuple(d for _, d in kept)) if kept else TRIVIAL_GROUP
    encode = {}
    for j in range(n):
        encode[j] = tuple(U[i][j] % d for i, d in kept)
    if len(set(encode.values())) != n or G.order != n:
        raise ClassificationBug("abstract table is not a group of the stated size")
    return G, encode


def universal_grading(R: FusionRing, config: Config = DEFAULT) -> Grading:
    """The finest group grading; trivial component = adjoint subring.

    Components are the classes of "y occurs in z (x) a for adjoint a";
    the class product is read off representatives and checked to be
    well-defined.  Only commutative tables are supported (the grading
    group must be abelian).
    """
    if not R.is_commutative():
        raise Unsupported("universal grading requires a commutative table")
    if R.rank > config.rank_guard:
        raise EnumerationLimit(f"rank {R.rank} exceeds rank_guard = {config.rank_guard}")
    ad = adjoint_subring(R)
    parent = list(range(R.rank))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for z in range(R.rank):
        for a in ad.indices:
            for y in R.constituents(z, a):
                union(z, y)
    classes = sorted(set(find(i) for i in range(R.rank)))
    cls_index = {c: k for k, c in enumerate(classes)}
    comp = [cls_index[find(i)] for i in range(R.rank)]

    mul_table = {}
    for i in range(R.rank):
        for j in range(R.rank):
            cs = {comp[k] for k in R.constituents(i, j)}
            if len(cs) != 1:
                raise ClassificationBug("component product is not well-defined")
            key = (comp[i], comp[j])
            got = cs.pop()
            if mul_table.setdefault(key, got) != got:
                raise ClassificationBug("component product depends on representatives")
    k = len(classes)
    G, encode = group_from_table(k, lambda i, j: mul_table[(i, j)], comp[R.unit])
    deg = tuple(encode[comp[i]] for i in range(R.rank))
    grading = Grading(G, deg)
    if set(grading.trivial_component()) != set(ad.indices):
        raise ClassificationBug("trivial component differs from the adjoint subring")
    if not grading.is_faithful():
        raise ClassificationBug("universal grading must be faithful")
    return grading


# ---------------------------------------------------------------------------
# weak integrality and the square grading
# ---------------------------------------------------------------------------

def _squarefree(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return out * n


def fp_square_integers(R: FusionRing, config: Config = DEFAULT) -> tuple:
    """round(FPdim(x)^2) for all x, tolerance-checked; requires weak
    integrality of the total."""
    fp = fp_dims(R, config)
    total = fp.total
    if abs(total - round(total)) > config.tolerance:
        raise NotWeaklyIntegral(f"total squared dimension {total} is not integral")
    out = []
    for x, d in enumerate(fp.fpdim):
        sq = d * d
        m = round(sq)
        if abs(sq - m) > config.tolerance or m <= 0:
            raise NumericalFail(
                f"FPdim^2 = {sq} at index {x} does not round decisively"
            )
        out.append(m)
    return tuple(out)


def fp_square_grading(R: FusionRing, config: Config = DEFAULT) -> Grading:
    """Grading by square-free parts of FPdim^2 (an elementary 2-group)."""
    sq = fp_square_integers(R, config)
    sf = [_squarefree(m) for m in sq]
    primes = sorted({p for v in sf for p in _prime_list(v)})
    r = len(primes)
    G = FinAbGroup((2,) * r) if r else TRIVIAL_GROUP
    deg = tuple(
        tuple(1 if v % p == 0 else 0 for p in primes) for v in sf
    )
    grading = Grading(G, deg)
    for i in range(R.rank):
        for j in range(R.rank):
            for k in R.constituents(i, j):
                if _squarefree(sf[i] * sf[j]) != sf[k]:
                    raise NumericalFail(
                        f"square classes not multiplicative at ({i}, {j}) -> {k}"
                    )
    return grading


def _prime_list(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def integral_part(R: FusionRing, config: Config = DEFAULT) -> FusionSubring:
    """Maximal integral subring: trivial component of the square grading."""
    grading = fp_square_grading(R, config)
    sub = FusionSubring(R, grading.trivial_component())
    if subring_generated(R, sub.indices).indices != sub.indices:
        raise ClassificationBug("integral component is not closed")
    return sub
