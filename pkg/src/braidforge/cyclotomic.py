"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q[x]/Phi_n(x) as an integer coefficient vector over a single positive
denominator, always at the minimal conductor (never = 2 mod 4), so
equality is plain field-by-field comparison.  Roots of unity enter and
leave as reduced fractions r in [0,1) denoting e^(2*pi*i*r).

The integer-vector layout keeps the hot paths (products of root sums,
Gauss sums, S-matrix entries) in machine-integer convolutions; a single
gcd pass restores canonical form afterwards.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from .errors import BadParameter, DivisionByZero

RootExp = Fraction  # reduced fraction in [0,1), meaning e^(2*pi*i*r)


def root_exp(num, den=None) -> RootExp:
    """Normalize to the canonical representative in [0,1)."""
    r = Fraction(num, den) if den is not None else Fraction(num)
    return r - (r // 1)


# -- per-conductor context ---------------------------------------------------

_CTX: dict = {}


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a, b):
    """Exact division of integer polynomials (leading coeff of b = +-1)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        coef = a[i] // lb
        q[i - db] = coef
        if coef:
            for j in range(db + 1):
                a[i - db + j] -= coef * b[j]
    assert all(c == 0 for c in a), "inexact cyclotomic division"
    return q


def cyclotomic_polynomial(n: int) -> list:
    """Integer coefficients of Phi_n, low degree first."""
    if n == 1:
        return [-1, 1]
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return poly


class _Ctx:
    """Cached reduction data for one conductor."""

    def __init__(self, n: int):
        self.n = n
        self.phi = _euler_phi(n)
        self.poly = cyclotomic_polynomial(n)
        deg = self.phi
        # x^k mod Phi_n for k = 0 .. max(n-1, 2*deg-2)
        top = max(n - 1, 2 * deg - 2)
        pows = [[0] * deg for _ in range(top + 1)]
        for k in range(min(deg, top + 1)):
            pows[k][k] = 1
        for k in range(deg, top + 1):
            prev = pows[k - 1]
            shifted = [0] + prev[:]
            lead = shifted[deg]
            if lead:
                for j in range(deg):
                    shifted[j] -= lead * self.poly[j]
            pows[k] = shifted[:deg]
        self.pows = [tuple(v) for v in pows]
        self.root_index: dict = {}


def _euler_phi(n: int) -> int:
    out = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            out -= out // d
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out -= out // m
    return out


def _ctx(n: int) -> _Ctx:
    c = _CTX.get(n)
    if c is None:
        c = _Ctx(n)
        _CTX[n] = c
    return c


def _canonical_conductor(b: int) -> int:
    return b // 2 if b % 4 == 2 else b


# -- the number type ---------------------------------------------------------

class CycloNum:
    """An element of the maximal cyclotomic field, exactly."""

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n: int, num, den: int, _reduced: bool = False):
        if _reduced:
            self.n = n
            self.num = tuple(num)
            self.den = den
            self._hash = None
            return
        norm = _normalize(n, list(num), den)
        self.n, self.num, self.den = norm
        self._hash = None

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero() -> "CycloNum":
        return _mk_reduced(1, (0,), 1)

    @staticmethod
    def one() -> "CycloNum":
        return _mk_reduced(1, (1,), 1)

    @staticmethod
    def from_rational(q) -> "CycloNum":
        q = Fraction(q)
        return _mk_reduced(1, (q.numerator,), q.denominator)

    @staticmethod
    def from_root(r) -> "CycloNum":
        """e^(2*pi*i*r) for a rational r."""
        return root_sum([(root_exp(r), Fraction(1))])

    @staticmethod
    def from_coeffs(n: int, coeffs) -> "CycloNum":
        """Element of Q(zeta_n) with rational power-basis coefficients."""
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != _ctx(n).phi:
            raise BadParameter(
                f"conductor {n} needs {_ctx(n).phi} coefficients, got {len(coeffs)}"
            )
        den = reduce(math.lcm, (c.denominator for c in coeffs), 1)
        num = [int(c * den) for c in coeffs]
        return CycloNum(n, num, den)

    # -- views ---------------------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.num)

    def as_rational(self):
        """The value as a Fraction, or None when it is irrational."""
        if self.n == 1:
            return Fraction(self.num[0], self.den)
        return None

    def is_root_of_unity(self):
        """The exponent r with self = e^(2*pi*i*r), or None.

        The roots of unity inside Q(zeta_n) form exactly the group
        mu_m with m = lcm(2, n), so membership is a finite table lookup.
        """
        if self.den != 1:
            return None
        ctx = _ctx(self.n)
        if not ctx.root_index:
            m = self.n if self.n % 2 == 0 else 2 * self.n
            for j in range(m):
                ctx.root_index[CycloNum.from_root(Fraction(j, m))] = root_exp(j, m)
        return ctx.root_index.get(self)

    # -- ring operations ------------------------------------------------------
    def _lift(self, L: int) -> tuple:
        """Coefficient vector of self in Q(zeta_L), n | L."""
        if L == self.n:
            return self.num
        ctx = _ctx(L)
        step = L // self.n
        out = [0] * ctx.phi
        for i, c in enumerate(self.num):
            if c:
                row = ctx.pows[(i * step) % L]
                for j in range(ctx.phi):
                    out[j] += c * row[j]
        return tuple(out)

    def __add__(self, other) -> "CycloNum":
        other = _coerce(other)
        L = _join(self.n, other.n)
        a, b = self._lift(L), other._lift(L)
        da, db = self.den, other.den
        g = math.gcd(da, db)
        ma, mb = db // g, da // g
        return CycloNum(L, [x * ma + y * mb for x, y in zip(a, b)], da * db // g)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "CycloNum":
        return _mk_reduced(self.n, tuple(-x for x in self.num), self.den)

    def __sub__(self, other) -> "CycloNum":
        return self.__add__(_coerce(other).__neg__())

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other) -> "CycloNum":
        other = _coerce(other)
        L = _join(self.n, other.n)
        a, b = self._lift(L), other._lift(L)
        ctx = _ctx(L)
        deg = ctx.phi
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = list(conv[:deg])
        for k in range(deg, 2 * deg - 1):
            c = conv[k]
            if c:
                row = ctx.pows[k]
                for j in range(deg):
                    out[j] += c * row[j]
        return CycloNum(L, out, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int) -> "CycloNum":
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloNum.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse, via extended gcd with Phi_n over Q."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        ctx = _ctx(self.n)
        a = [Fraction(x, self.den) for x in self.num]
        b = [Fraction(c) for c in ctx.poly]
        s = _poly_xgcd_mod(a, b)
        return CycloNum.from_coeffs(self.n, s + [0] * (ctx.phi - len(s)))

    def __truediv__(self, other) -> "CycloNum":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    # -- Galois action ---------------------------------------------------------
    def galois(self, k: int) -> "CycloNum":
        """sigma_k: zeta_n -> zeta_n^k, for gcd(k, n) = 1."""
        k %= self.n if self.n > 1 else 1
        if self.n == 1:
            return self
        if math.gcd(k, self.n) != 1:
            raise BadParameter(f"galois exponent {k} not coprime to {self.n}")
        ctx = _ctx(self.n)
        out = [0] * ctx.phi
        for i, c in enumerate(self.num):
            if c:
                row = ctx.pows[(i * k) % self.n]
                for j in range(ctx.phi):
                    out[j] += c * row[j]
        return CycloNum(self.n, out, self.den)

    def conjugate(self) -> "CycloNum":
        """Complex conjugation: every root of unity to its inverse."""
        if self.n == 1:
            return self
        return self.galois(self.n - 1)

    def galois_conjugates(self) -> list:
        """All sigma_k images, k coprime to the conductor."""
        return [self.galois(k) for k in range(1, max(self.n, 2)) if math.gcd(k, self.n) == 1]

    # -- protocol ---------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = _coerce(other)
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.n == other.n and self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.num, self.den))
        return self._hash

    def __repr__(self):
        q = self.as_rational()
        if q is not None:
            return f"Cyclo({q})"
        return f"Cyclo(n={self.n}, {[str(c) for c in self.coeffs]})"


def _coerce(x) -> CycloNum:
    if isinstance(x, CycloNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycloNum.from_rational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to CycloNum")


def _mk_reduced(n, num, den) -> CycloNum:
    return CycloNum(n, num, den, _reduced=True)


def _join(a: int, b: int) -> int:
    # lcm of two canonical conductors is canonical: 2-adic valuation 0 or >= 2
    return math.lcm(a, b)


def _normalize(n, num, den):
    """gcd-reduce, fix sign, minimize conductor."""
    if den == 0:
        raise DivisionByZero("zero denominator")
    if den < 0:
        den = -den
        num = [-x for x in num]
    if all(x == 0 for x in num):
        return 1, (0,), 1
    g = 0
    for x in num:
        g = math.gcd(g, x)
    g = math.gcd(g, den)
    if g > 1:
        num = [x // g for x in num]
        den //= g
    n, num = _descend(n, num)
    return n, tuple(num), den


def _descend(n, num):
    """Re-express at the minimal conductor (Galois-invariance test)."""
    changed = True
    while changed and n > 1:
        changed = False
        for p in _prime_divisors(n):
            m = n // p
            m = _canonical_conductor(m)
            if m == n:
                continue
            sub = _try_subfield(n, num, m)
            if sub is not None:
                n, num = m, sub
                changed = True
                break
    return n, list(num)


def _prime_divisors(n):
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


def _try_subfield(n, num, m):
    """Coefficients of the element in Q(zeta_m) if it lies there, else None."""
    ctx = _ctx(n)
    # Galois invariance under Gal(Q(zeta_n)/Q(zeta_m)) = {k = 1 mod m}
    for k in range(1, n):
        if k % m != 1 or math.gcd(k, n) != 1 or k == 1:
            continue
        img = [0] * ctx.phi
        for i, c in enumerate(num):
            if c:
                row = ctx.pows[(i * k) % n]
                for j in range(ctx.phi):
                    img[j] += c * row[j]
        if img != list(num):
            return None
    # solve for coordinates in the embedded power basis of Q(zeta_m)
    sub = _ctx(m)
    step = n // m
    basis = [ctx.pows[(j * step) % n] for j in range(sub.phi)]
    sol = _solve_int_system(basis, num)
    if sol is None:
        return None
    den = reduce(math.lcm, (c.denominator for c in sol), 1)
    if den != 1:
        # cannot happen: the basis is integral and unimodular over the
        # subfield lattice; kept as a guard
        return None
    return [int(c) for c in sol]


def _solve_int_system(basis, target):
    """Solve sum_j c_j basis[j] = target over Q (columns = basis vectors)."""
    rows = len(target)
    cols = len(basis)
    A = [[Fraction(basis[j][i]) for j in range(cols)] + [Fraction(target[i])] for i in range(rows)]
    piv_cols = []
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pv = A[rank][col]
        A[rank] = [x / pv for x in A[rank]]
        for r in range(rows):
            if r != rank and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        piv_cols.append(col)
        rank += 1
    # consistency
    for r in range(rank, rows):
        if A[r][cols] != 0:
            return None
    sol = [Fraction(0)] * cols
    for r, col in enumerate(piv_cols):
        sol[col] = A[r][cols]
    return sol


def _poly_xgcd_mod(a, b):
    """s with s*a = 1 mod b, over Fraction coefficients (b irreducible)."""
    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def pdivmod(x, y):
        x = x[:]
        q = [Fraction(0)] * max(1, len(x) - len(y) + 1)
        while len(x) >= len(y) and trim(x):
            f = x[-1] / y[-1]
            sh = len(x) - len(y)
            q[sh] = f
            for i, c in enumerate(y):
                x[sh + i] -= f * c
            trim(x)
        return q, x

    r0, r1 = trim([Fraction(c) for c in b]), trim([Fraction(c) for c in a])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1:
        q, r = pdivmod(r0, r1)
        qs = _poly_mul_frac(q, s1)
        s = [x - y for x, y in _zip_pad(s0, qs)]
        r0, r1, s0, s1 = r1, trim(r), s1, trim(s)
    # r0 = gcd (a nonzero constant, since Phi_n is irreducible)
    c = r0[0]
    return [x / c for x in s0]


def _poly_mul_frac(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1 if a and b else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


# -- bulk constructors --------------------------------------------------------

def root_sum(terms) -> CycloNum:
    """Exact sum of weighted roots of unity.

    ``terms`` is an iterable of (exponent fraction, rational weight);
    the whole sum reduces through a single Phi_N pass, which is how
    Gauss sums and S-matrix entries stay cheap.
    """
    terms = [(root_exp(r), Fraction(w)) for r, w in terms]
    if not terms:
        return CycloNum.zero()
    N = reduce(math.lcm, (_canonical_conductor(r.denominator) for r, _ in terms), 1)
    den = reduce(math.lcm, (w.denominator for _, w in terms), 1)
    ctx = _ctx(N)
    acc = [0] * ctx.phi
    for r, w in terms:
        c = int(w * den)
        if c == 0:
            continue
        # e^(2 pi i r) = (-1)^s zeta_N^t with N never = 2 mod 4
        b = r.denominator
        a = r.numerator
        if b % 4 == 2:
            mm = b // 2
            s = a % 2
            t = ((a - s * mm) // 2) % mm
            t = (t * (N // mm)) % N
        else:
            s = 0
            t = (a * (N // b)) % N
        row = ctx.pows[t]
        sign = -c if s else c
        for j in range(ctx.phi):
            acc[j] += sign * row[j]
    return CycloNum(N, acc, den)


ZERO = CycloNum.zero()
ONE = CycloNum.one()


def matrix_rank(rows) -> int:
    """Exact rank of a matrix of CycloNums (Gaussian elimination)."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if not M[r][col].is_zero()), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = M[rank][col].inverse()
        M[rank] = [x * inv for x in M[rank]]
        for r in range(len(M)):
            if r != rank and not M[r][col].is_zero():
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank
