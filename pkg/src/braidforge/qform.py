"""Quadratic forms on finite abelian groups, with values in Q/Z.

A form is a total value table q: G -> Q/Z (fractions in [0,1), one per
element in lexicographic order); the multiplicative picture of roots of
unity is recovered as e^(2*pi*i*q).  The polarization
b(g,h) = q(g+h) - q(g) - q(h) is the associated bicharacter.

Covers isotropy and orthogonality, quotients by isotropic subgroups,
cores, the full classification of anisotropic forms (odd rank-1 and
norm forms; the order-2 forms i^(n^2); the order-4 family with a
distinguished element of value -1; their order-8 sums; the two
degenerate anisotropic 2-groups), and weak anisotropy with its
hyperbolic-plane decomposition.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from . import kernels
from .abelian import (
    FinAbGroup,
    GroupHom,
    Subgroup,
    TRIVIAL_GROUP,
    automorphism_perms,
    canonical_form,
    hom_from_perm,
    primes_of,
    quotient,
    smith_diagonal,
)
from .config import DEFAULT, Config
from .errors import (
    ClassificationBug,
    EnumerationLimit,
    NotAnisotropic,
    NotASubgroup,
    NotEven,
    NotIsotropic,
    NotNormalized,
    NotQuadratic,
)

_mod1 = lambda x: x - (x // 1)


@dataclass(frozen=True)
class PreMetricGroup:
    """A group with a Q/Z-valued quadratic form (value table in lex order)."""

    group: FinAbGroup
    values: tuple

    def __post_init__(self):
        vals = tuple(_mod1(Fraction(v)) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.group.order:
            raise NotQuadratic(
                f"value table has {len(vals)} entries for a group of order {self.group.order}"
            )

    @property
    def order(self) -> int:
        return self.group.order

    def q(self, g) -> Fraction:
        return self.values[self.group.index(g)]

    def q_idx(self, i: int) -> Fraction:
        return self.values[i]

    def b(self, g, h) -> Fraction:
        G = self.group
        return _mod1(self.q(G.add(g, h)) - self.q(g) - self.q(h))

    def int_table(self):
        """(L, table) with q(g) = table[g]/L; the kernel-facing encoding."""
        L = reduce(math.lcm, (v.denominator for v in self.values), 1)
        return L, tuple(int(v * L) for v in self.values)

    def negated(self) -> "PreMetricGroup":
        return PreMetricGroup(self.group, tuple(_mod1(-v) for v in self.values))

    def __repr__(self):
        return f"PreMetricGroup({self.group!r}, {[str(v) for v in self.values]})"


@dataclass(frozen=True)
class Bicharacter:
    """Symmetric biadditive pairing, tabulated on all element pairs."""

    group: FinAbGroup
    table: tuple  # flat n*n of Fractions in [0,1)

    def b(self, g, h) -> Fraction:
        n = self.group.order
        return self.table[self.group.index(g) * n + self.group.index(h)]


@dataclass(frozen=True)
class DegeneracyClass:
    tag: str  # nondegenerate | slightly_degenerate | degenerate_other
    radical: Subgroup


@dataclass(frozen=True)
class AnisotropicLabel:
    """Isomorphism-class label of an anisotropic form at one prime.

    kinds and parameters:
      OddRank1(p; residue)   residue is +1 for square class, -1 otherwise
      OddNorm(p)             the rank-2 norm form
      A(i_sign)              order 2, q(1) = i_sign in {1/4, 3/4}
      M(xi)                  order 4, distinguished value xi (8*xi = 0 mod 1)
      MplusA(xi, i_sign)     order 8, canonicalized to i_sign = 1/4
      SlightDeg2             order 2 degenerate, q(1) = 1/2
      SlightDeg4             order 4 degenerate anisotropic (single class)
    """

    kind: str
    prime: int
    params: tuple = ()

    def __repr__(self):
        if not self.params:
            return f"{self.kind}(p={self.prime})"
        return f"{self.kind}(p={self.prime}, {', '.join(map(str, self.params))})"


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------

def validate(group: FinAbGroup, value_table) -> PreMetricGroup:
    """Check the quadratic-form axioms and return the validated form.

    Raises NotNormalized (q(0) != 0), NotEven (q(-g) != q(g)), or
    NotQuadratic (polarization not biadditive), naming the witness.
    """
    M = PreMetricGroup(group, tuple(value_table))
    n = group.order
    L, t = M.int_table()
    if t[0] != 0:
        raise NotNormalized(f"q(0) = {M.values[0]} != 0")
    neg = group.neg_flat()
    for i in range(n):
        if t[neg[i]] != t[i]:
            raise NotEven(
                f"q(-g) != q(g) at g = {group.from_index(i)}: "
                f"{M.values[neg[i]]} vs {M.values[i]}"
            )
    add = group.add_flat()

    def bi(i, j):
        return (t[add[i * n + j]] - t[i] - t[j]) % L

    for s in group.gen_strides():
        for g in range(n):
            sg = add[s * n + g]
            for h in range(n):
                if (bi(sg, h) - bi(s, h) - bi(g, h)) % L != 0:
                    raise NotQuadratic(
                        "polarization not biadditive at "
                        f"({group.from_index(s)} + {group.from_index(g)}, {group.from_index(h)})"
                    )
    return M


def bicharacter(M: PreMetricGroup) -> Bicharacter:
    G = M.group
    n = G.order
    add = G.add_flat()
    tab = []
    for i in range(n):
        qi = M.values[i]
        row = [_mod1(M.values[add[i * n + j]] - qi - M.values[j]) for j in range(n)]
        tab.extend(row)
    return Bicharacter(G, tuple(tab))


def degeneracy(M: PreMetricGroup) -> DegeneracyClass:
    """Radical Ker b and the three-way degeneracy tag."""
    G = M.group
    n = G.order
    L, t = M.int_table()
    add = G.add_flat()
    rad = [
        i
        for i in range(n)
        if all((t[add[i * n + j]] - t[i] - t[j]) % L == 0 for j in range(n))
    ]
    radical = Subgroup(G, tuple(G.from_index(i) for i in rad))
    if len(rad) == 1:
        tag = "nondegenerate"
    elif len(rad) == 2 and M.q_idx(rad[1]) == Fraction(1, 2):
        tag = "slightly_degenerate"
    else:
        tag = "degenerate_other"
    return DegeneracyClass(tag, radical)


def is_metric(M: PreMetricGroup) -> bool:
    return degeneracy(M).tag == "nondegenerate"


# ---------------------------------------------------------------------------
# isotropy and orthogonality
# ---------------------------------------------------------------------------

def orthogonal_complement(M: PreMetricGroup, H: Subgroup) -> Subgroup:
    """H-perp = {g : b(g,h) = 0 for all h in H}."""
    G = M.group
    if H.parent.orders != G.orders:
        raise NotASubgroup("subgroup belongs to a different group")
    n = G.order
    L, t = M.int_table()
    add = G.add_flat()
    gens = [G.index(h) for h in H.generators]
    out = [
        i
        for i in range(n)
        if all((t[add[i * n + j]] - t[i] - t[j]) % L == 0 for j in gens)
    ]
    return Subgroup(G, tuple(G.from_index(i) for i in out))


@dataclass(frozen=True)
class IsotropicSubgroup:
    subgroup: Subgroup
    is_maximal: bool
    is_lagrangian: bool


def isotropic_subgroups(M: PreMetricGroup, config: Config = DEFAULT) -> list:
    """All subgroups with q = 0, maximal/Lagrangian flags set.

    Grown by closure: H extends by x exactly when q(x) = 0 and
    b(x, H) = 0, so the search never leaves the isotropic lattice.
    """
    G = M.group
    n = G.order
    if n > config.enum_guard:
        raise EnumerationLimit(f"|G| = {n} exceeds enum_guard = {config.enum_guard}")
    L, t = M.int_table()
    add = G.add_flat()
    iso_elems = [i for i in range(n) if t[i] == 0]

    def extensions(idx_tuple):
        out = []
        for x in iso_elems:
            if x in idx_tuple:
                continue
            if all((t[add[x * n + h]] - t[x] - t[h]) % L == 0 for h in idx_tuple):
                out.append(x)
        return out

    trivial = (0,)
    found = {trivial}
    queue = [trivial]
    maximal = {}
    while queue:
        cur = queue.pop()
        exts = extensions(cur)
        maximal[cur] = not exts
        for x in exts:
            new = kernels.closure(n, add, list(cur) + [x])
            if new not in found:
                found.add(new)
                queue.append(new)
    result = []
    for idx in sorted(found, key=lambda s: (len(s), s)):
        sub = Subgroup(G, tuple(G.from_index(i) for i in idx))
        perp = orthogonal_complement(M, sub)
        result.append(
            IsotropicSubgroup(sub, maximal[idx], perp.elements == sub.elements)
        )
    return result


def _sub_structure(G: FinAbGroup, H: Subgroup):
    """Abstract structure of a subgroup: (K, to_K, from_K).

    K is canonical; to_K maps H's elements to K's, from_K the inverse.
    Derived from the relation lattice of H's generating sequence via
    Smith reduction, so dependent generators are handled correctly.
    """
    gens = list(H.generators)
    if not gens:
        K = TRIVIAL_GROUP
        return K, {G.zero(): ()}, {(): G.zero()}
    k = len(gens)
    gord = [G.element_order(g) for g in gens]
    # relations inside the box prod Z/ord(g_i): all combos summing to zero
    rel_cols = [[gord[i] if j == i else 0 for j in range(k)] for i in range(k)]
    combos = [()]
    for o in gord:
        combos = [c + (j,) for c in combos for j in range(o)]
    for v in combos:
        if any(v):
            s = G.zero()
            for c, g in zip(v, gens):
                s = G.add(s, G.mul(c, g))
            if s == G.zero():
                rel_cols.append(list(v))
    mat = [[col[i] for col in rel_cols] for i in range(k)]
    diag, U = smith_diagonal(mat)
    kept = [(i, d) for i, d in enumerate(diag) if d != 1]
    K = FinAbGroup(tuple(d for _, d in kept)) if kept else TRIVIAL_GROUP
    to_K = {}
    for v in combos:
        el = G.zero()
        for c, g in zip(v, gens):
            el = G.add(el, G.mul(c, g))
        kk = tuple(sum(U[i][j] * v[j] for j in range(k)) % d for i, d in kept)
        to_K.setdefault(el, kk)
    if len(to_K) != len(H.elements) or len(set(to_K.values())) != K.order or K.order != len(H.elements):
        raise ClassificationBug("subgroup structure map is not bijective")
    from_K = {v: g for g, v in to_K.items()}
    return K, to_K, from_K


def restrict(M: PreMetricGroup, H: Subgroup) -> PreMetricGroup:
    """The form restricted to a subgroup, on its canonical abstract group."""
    K, to_K, from_K = _sub_structure(M.group, H)
    vals = [M.q(from_K[e]) for e in K.elements()]
    return PreMetricGroup(K, tuple(vals))


def quotient_form(M: PreMetricGroup, H: Subgroup) -> PreMetricGroup:
    """The induced form on H-perp / H for isotropic H."""
    for h in H.elements:
        if M.q(h) != 0:
            raise NotIsotropic(f"q({h}) = {M.q(h)} != 0")
    perp = orthogonal_complement(M, H)
    K, to_K, from_K = _sub_structure(M.group, perp)
    H_in_K = Subgroup(K, tuple(to_K[h] for h in H.elements))
    Q, proj = quotient(K, H_in_K)
    vals = {}
    for e in K.elements():
        y = proj(e)
        v = M.q(from_K[e])
        if y in vals and vals[y] != v:
            raise ClassificationBug("induced form not constant on cosets")
        vals[y] = v
    return PreMetricGroup(Q, tuple(vals[y] for y in Q.elements()))


# ---------------------------------------------------------------------------
# sums, isomorphism
# ---------------------------------------------------------------------------

def direct_sum(M1: PreMetricGroup, M2: PreMetricGroup) -> PreMetricGroup:
    """Orthogonal direct sum, recanonicalized."""
    orders = M1.group.orders + M2.group.orders
    if not orders:
        return trivial_form()
    G, iso = canonical_form(orders)
    src = iso.source
    n1 = M1.group.order
    vals = [Fraction(0)] * G.order
    for x in src.elements():
        g1 = x[: M1.group.rank]
        g2 = x[M1.group.rank :]
        vals[G.index(iso(x))] = _mod1(M1.q(g1) + M2.q(g2))
    return PreMetricGroup(G, tuple(vals))


def trivial_form() -> PreMetricGroup:
    return PreMetricGroup(TRIVIAL_GROUP, (Fraction(0),))


def isomorphic(M1: PreMetricGroup, M2: PreMetricGroup, config: Config = DEFAULT):
    """A form-preserving isomorphism M1 -> M2, or None.

    Deterministic first witness from the generator-image backtracking
    search; groups must be in invariant-factor form.
    """
    G1, G2 = M1.group, M2.group
    if G1.orders != G2.orders:
        return None
    if G1.order > config.aut_guard:
        raise EnumerationLimit(f"|G| = {G1.order} exceeds aut_guard = {config.aut_guard}")
    L1, t1 = M1.int_table()
    L2, t2 = M2.int_table()
    L = math.lcm(L1, L2)
    t1 = [x * (L // L1) for x in t1]
    t2 = [x * (L // L2) for x in t2]
    perm = kernels.find_isomorphism(
        G1.order, G1.add_flat(), G1.gen_strides(), list(G1.orders), t1, t2
    )
    if perm is None:
        return None
    return hom_from_perm(G1, perm)


def q_automorphism_perms(M: PreMetricGroup, config: Config = DEFAULT) -> list:
    """Aut(G, q) as index permutations."""
    perms = automorphism_perms(M.group, config)
    _, t = M.int_table()
    return kernels.stabilizer(perms, list(t))


def form_automorphisms(M: PreMetricGroup, config: Config = DEFAULT) -> list:
    """Aut(G, q) as GroupHoms."""
    return [hom_from_perm(M.group, p) for p in q_automorphism_perms(M, config)]


# ---------------------------------------------------------------------------
# the core
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoreResult:
    core: PreMetricGroup
    subgroup: Subgroup  # the maximal isotropic used
    gamma: tuple        # induced automorphisms of the core (GroupHoms)


def core(M: PreMetricGroup, config: Config = DEFAULT) -> CoreResult:
    """Quotient by the least maximal isotropic subgroup, with the
    induced automorphism image.

    The choice of maximal isotropic subgroup is pinned to the
    lexicographically least element list; the quotient is independent of
    the choice up to isomorphism, and gamma records the image in
    Aut(core) of its stabilizer inside Aut(G, q).
    """
    iso_list = isotropic_subgroups(M, config)
    maximal = [r.subgroup for r in iso_list if r.is_maximal]
    H = min(maximal, key=lambda s: s.elements)
    coreform = quotient_form(M, H)
    gamma = _induced_on_core(M, H, coreform, config)
    return CoreResult(coreform, H, gamma)


def _induced_on_core(M, H, coreform, config):
    G = M.group
    perp = orthogonal_complement(M, H)
    K, to_K, from_K = _sub_structure(G, perp)
    H_in_K = Subgroup(K, tuple(to_K[h] for h in H.elements))
    Q, proj = quotient(K, H_in_K)
    if Q.orders != coreform.group.orders:
        raise ClassificationBug("core recomputation mismatch")
    h_idx = set(G.index(h) for h in H.elements)
    perp_idx = [G.index(e) for e in perp.elements]
    induced = set()
    for p in q_automorphism_perms(M, config):
        if {p[i] for i in h_idx} != h_idx:
            continue
        mapping = {}
        for i in perp_idx:
            src = proj(to_K[G.from_index(i)])
            dst = proj(to_K[G.from_index(p[i])])
            if src in mapping and mapping[src] != dst:
                raise ClassificationBug("automorphism does not descend to the core")
            mapping[src] = dst
        induced.add(tuple(mapping[y] for y in Q.elements()))
    gamma = []
    for imgs in sorted(induced):
        hom = GroupHom(Q, Q, tuple(imgs[Q.index(e)] for e in Q.generators()))
        for y in Q.elements():
            if coreform.q(hom(y)) != coreform.q(y):
                raise ClassificationBug("core automorphism does not preserve the form")
        gamma.append(hom)
    return tuple(gamma)


# ---------------------------------------------------------------------------
# the anisotropic catalog
# ---------------------------------------------------------------------------

def odd_rank1(p: int, c: int = 1) -> PreMetricGroup:
    """(Z/p, q(n) = c n^2 / p) for odd p."""
    G = FinAbGroup((p,))
    return PreMetricGroup(G, tuple(Fraction(c * n * n, p) for n in range(p)))


def odd_norm(p: int) -> PreMetricGroup:
    """The rank-2 anisotropic norm form on (Z/p)^2."""
    if p == 2:
        G = FinAbGroup((2, 2))
        vals = [Fraction(x * x + x * y + y * y, 2) for x in range(2) for y in range(2)]
        return PreMetricGroup(G, tuple(vals))
    d = next(c for c in range(2, p) if pow(c, (p - 1) // 2, p) == p - 1)
    G = FinAbGroup((p, p))
    vals = [Fraction((x * x - d * y * y) % p, p) for x in range(p) for y in range(p)]
    return PreMetricGroup(G, tuple(vals))


def a_form(i_sign=Fraction(1, 4)) -> PreMetricGroup:
    """Order-2 metric form q(n) = i_sign * n^2, i_sign in {1/4, 3/4}."""
    return PreMetricGroup(FinAbGroup((2,)), (Fraction(0), Fraction(i_sign)))


def m_form(xi) -> PreMetricGroup:
    """The order-4 form with a distinguished element u of value 1/2 and
    value xi elsewhere; xi runs over the eighth roots (8*xi = 0)."""
    xi = _mod1(Fraction(xi))
    if xi.denominator == 8:
        # cyclic: q(n) = xi * n^2 on Z/4
        G = FinAbGroup((4,))
        return PreMetricGroup(G, tuple(_mod1(xi * n * n) for n in range(4)))
    G = FinAbGroup((2, 2))
    half = Fraction(1, 2)
    vals = {(0, 0): Fraction(0), (1, 0): half, (0, 1): xi, (1, 1): _mod1(xi + half)}
    # q(1,1) must equal xi for the distinguished-u presentation
    vals[(1, 1)] = xi
    return PreMetricGroup(G, tuple(vals[e] for e in G.elements()))


def hyperbolic_plane(p: int) -> PreMetricGroup:
    """(Z/p)^2 with q(x,y) = xy/p."""
    G = FinAbGroup((p, p))
    return PreMetricGroup(G, tuple(Fraction(x * y, p) for x in range(p) for y in range(p)))


def slight_deg2() -> PreMetricGroup:
    return PreMetricGroup(FinAbGroup((2,)), (Fraction(0), Fraction(1, 2)))


def slight_deg4(i_sign=Fraction(1, 4)) -> PreMetricGroup:
    G = FinAbGroup((2, 2))
    i_sign = Fraction(i_sign)
    vals = {
        (0, 0): Fraction(0),
        (0, 1): Fraction(1, 2),
        (1, 0): i_sign,
        (1, 1): _mod1(i_sign + Fraction(1, 2)),
    }
    return PreMetricGroup(G, tuple(vals[e] for e in G.elements()))


def build_labeled_form(label: AnisotropicLabel) -> PreMetricGroup:
    """A representative form of a classification label."""
    p = label.prime
    if label.kind == "OddRank1":
        c = 1 if label.params[0] == 1 else _least_nonresidue(p)
        return odd_rank1(p, c)
    if label.kind == "OddNorm":
        return odd_norm(p)
    if label.kind == "A":
        return a_form(label.params[0])
    if label.kind == "M":
        return m_form(label.params[0])
    if label.kind == "MplusA":
        return direct_sum(m_form(label.params[0]), a_form(label.params[1]))
    if label.kind == "SlightDeg2":
        return slight_deg2()
    if label.kind == "SlightDeg4":
        return slight_deg4()
    raise ClassificationBug(f"unknown label kind {label.kind}")


def _least_nonresidue(p: int) -> int:
    return next(c for c in range(2, p) if pow(c, (p - 1) // 2, p) == p - 1)


def anisotropic_catalog(p: int, order: int) -> list:
    """All anisotropic pre-metric p-group classes of the given order."""
    out = []
    if order == 1:
        return out
    if p == 2:
        if order == 2:
            out = [
                AnisotropicLabel("A", 2, (Fraction(1, 4),)),
                AnisotropicLabel("A", 2, (Fraction(3, 4),)),
                AnisotropicLabel("SlightDeg2", 2),
            ]
        elif order == 4:
            out = [
                AnisotropicLabel("M", 2, (Fraction(k, 8),)) for k in range(1, 8)
            ] + [AnisotropicLabel("SlightDeg4", 2)]
        elif order == 8:
            seen = []
            for k in range(8):
                xi = Fraction(k, 8)
                for s in (Fraction(1, 4), Fraction(3, 4)):
                    if xi == 0 or _mod1(xi + s) == 0:
                        continue  # xi = 1 or xi = -i_sign gives an isotropic value
                    lab = _canon_mplusa(xi, s)
                    if lab not in seen:
                        seen.append(lab)
            out = seen
    else:
        if order == p:
            out = [
                AnisotropicLabel("OddRank1", p, (1,)),
                AnisotropicLabel("OddRank1", p, (-1,)),
            ]
        elif order == p * p:
            out = [AnisotropicLabel("OddNorm", p)]
    return out


def _canon_mplusa(xi, i_sign) -> AnisotropicLabel:
    """Canonical (xi, i_sign): M_xi + A_{-i} matches M_{xi - 1/4} + A_i."""
    xi, i_sign = _mod1(Fraction(xi)), Fraction(i_sign)
    if i_sign == Fraction(3, 4):
        xi, i_sign = _mod1(xi - Fraction(1, 4)), Fraction(1, 4)
    return AnisotropicLabel("MplusA", 2, (xi, i_sign))


# ---------------------------------------------------------------------------
# classification of anisotropic forms
# ---------------------------------------------------------------------------

def is_anisotropic(M: PreMetricGroup) -> bool:
    return all(v != 0 for v in M.values[1:])


def sylow_decomposition(M: PreMetricGroup) -> dict:
    """Restriction of the form to each primary component (orthogonal)."""
    out = {}
    for p in primes_of(max(M.group.order, 1)) or []:
        els = [
            g
            for g in M.group.elements()
            if _p_power_order(M.group.element_order(g), p)
        ]
        sub = Subgroup(M.group, tuple(els))
        out[p] = restrict(M, sub)
    return out


def _p_power_order(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def classify_anisotropic(M: PreMetricGroup) -> tuple:
    """Classification labels, one per prime dividing |G|.

    Labels are canonical representatives of the isomorphism classes, so
    equal labels mean isomorphic forms.  Raises NotAnisotropic when the
    form vanishes away from zero, ClassificationBug when an anisotropic
    form falls outside the provably complete catalog.
    """
    if not is_anisotropic(M):
        g = next(e for e in M.group.elements()[1:] if M.q(e) == 0)
        raise NotAnisotropic(f"q({g}) = 0")
    labels = []
    for p, Mp in sorted(sylow_decomposition(M).items()):
        labels.append(_classify_primary(p, Mp))
    return tuple(labels)


def _classify_primary(p: int, Mp: PreMetricGroup) -> AnisotropicLabel:
    n = Mp.group.order
    if p != 2:
        if Mp.group.orders == (p,):
            g = Mp.group.from_index(1)
            c = (Mp.q(g) * p)
            res = 1 if pow(int(c), (p - 1) // 2, p) == 1 else -1
            return AnisotropicLabel("OddRank1", p, (res,))
        if Mp.group.orders == (p, p):
            lab = AnisotropicLabel("OddNorm", p)
            if isomorphic(Mp, build_labeled_form(lab)) is None:
                raise ClassificationBug(f"rank-2 anisotropic {p}-form not the norm form")
            return lab
        raise ClassificationBug(f"anisotropic odd {p}-group of order {n} impossible")
    deg = degeneracy(Mp)
    if deg.tag != "nondegenerate":
        if deg.tag != "slightly_degenerate":
            raise ClassificationBug("degenerate anisotropic form must be slightly degenerate")
        if n == 2:
            return AnisotropicLabel("SlightDeg2", 2)
        if n == 4:
            return AnisotropicLabel("SlightDeg4", 2)
        raise ClassificationBug(f"degenerate anisotropic 2-group of order {n} impossible")
    if n == 2:
        return AnisotropicLabel("A", 2, (Mp.q(Mp.group.from_index(1)),))
    if n == 4:
        els = Mp.group.elements()
        u = next(e for e in els[1:] if Mp.q(e) == Fraction(1, 2))
        xi = next(Mp.q(e) for e in els[1:] if e != u)
        return AnisotropicLabel("M", 2, (xi,))
    if n == 8:
        els = Mp.group.elements()
        v = next(
            e
            for e in els[1:]
            if Mp.group.element_order(e) == 2 and Mp.q(e).denominator == 4
        )
        i_sign = Mp.q(v)
        comp = orthogonal_complement(Mp, Subgroup.generated(Mp.group, [v]))
        Mc = restrict(Mp, comp)
        inner = _classify_primary(2, Mc)
        if inner.kind != "M":
            raise ClassificationBug("order-8 complement is not an order-4 metric form")
        return _canon_mplusa(inner.params[0], i_sign)
    raise ClassificationBug(f"anisotropic metric 2-group of order {n} impossible")


# ---------------------------------------------------------------------------
# weak anisotropy
# ---------------------------------------------------------------------------

def is_weakly_anisotropic(M: PreMetricGroup, config: Config = DEFAULT) -> bool:
    """No nonzero isotropic subgroup stable under Aut(G, q).

    A subgroup is stable iff it is a union of element orbits, so the
    check works directly on the automorphism list.
    """
    iso_list = isotropic_subgroups(M, config)
    nontrivial = [r.subgroup for r in iso_list if r.subgroup.order > 1]
    if not nontrivial:
        return True
    auts = q_automorphism_perms(M, config)
    G = M.group
    for sub in nontrivial:
        idx = set(G.index(e) for e in sub.elements)
        if all({p[i] for i in idx} == idx for p in auts):
            return False
    return True


def wap_decompose(M: PreMetricGroup, config: Config = DEFAULT):
    """(hyperbolic multiplicities per prime, anisotropic part), or None.

    Defined exactly when the form is weakly anisotropic; the parts
    reassemble to a form isomorphic to M.
    """
    if not is_weakly_anisotropic(M, config):
        return None
    mult = {}
    parts = []
    for p, Mp in sorted(sylow_decomposition(M).items()):
        found = None
        order = Mp.group.order
        k = 0
        while p ** (2 * k) <= order:
            rest = order // p ** (2 * k)
            if p ** (2 * k) * rest == order:
                for lab in _aniso_candidates(p, rest):
                    cand = lab
                    for _ in range(k):
                        cand = direct_sum(cand, hyperbolic_plane(p))
                    if isomorphic(Mp, cand, config) is not None:
                        found = (k, lab)
                        break
            if found:
                break
            k += 1
        if found is None:
            raise ClassificationBug(
                "weakly anisotropic form without hyperbolic decomposition"
            )
        k, aniso = found
        if k:
            mult[p] = k
        if aniso.group.order > 1:
            parts.append(aniso)
    total = trivial_form()
    for part in parts:
        total = direct_sum(total, part)
    return mult, total


def _aniso_candidates(p: int, order: int) -> list:
    if order == 1:
        return [trivial_form()]
    return [build_labeled_form(l) for l in anisotropic_catalog(p, order)]


# ---------------------------------------------------------------------------
# form enumeration and sampling
# ---------------------------------------------------------------------------

def _coeff_choices(G: FinAbGroup):
    """Parameter ranges for the diagonal/cross presentation of forms.

    Every quadratic form on G = sum Z/n_i is q(sum a_i e_i) =
    sum c_i a_i^2 + sum_{i<j} beta_ij a_i a_j with c_i in (1/2n_i)Z
    (n_i even) or (1/n_i)Z (n_i odd) and beta_ij in (1/gcd(n_i,n_j))Z.
    """
    diag = []
    for m in G.orders:
        if m % 2 == 0:
            diag.append([Fraction(k, 2 * m) for k in range(2 * m)])
        else:
            diag.append([Fraction(k, m) for k in range(m)])
    cross = {}
    r = G.rank
    for i in range(r):
        for j in range(i + 1, r):
            g = math.gcd(G.orders[i], G.orders[j])
            cross[(i, j)] = [Fraction(k, g) for k in range(g)]
    return diag, cross


def _form_from_params(G: FinAbGroup, diag_vals, cross_vals) -> PreMetricGroup:
    r = G.rank
    vals = []
    for g in G.elements():
        v = Fraction(0)
        for i in range(r):
            v += diag_vals[i] * g[i] * g[i]
        for (i, j), beta in cross_vals.items():
            v += beta * g[i] * g[j]
        vals.append(_mod1(v))
    return PreMetricGroup(G, tuple(vals))


def all_forms(G: FinAbGroup):
    """Every quadratic form on G, without repetition of value tables."""
    diag, cross = _coeff_choices(G)
    keys = sorted(cross)
    seen = set()

    def rec_diag(i, chosen):
        if i == len(diag):
            yield from rec_cross(0, chosen, {})
            return
        for c in diag[i]:
            yield from rec_diag(i + 1, chosen + [c])

    def rec_cross(j, dvals, cvals):
        if j == len(keys):
            M = _form_from_params(G, dvals, cvals)
            if M.values not in seen:
                seen.add(M.values)
                yield M
            return
        for b in cross[keys[j]]:
            nxt = dict(cvals)
            nxt[keys[j]] = b
            yield from rec_cross(j + 1, dvals, nxt)

    yield from rec_diag(0, [])


def random_form(G: FinAbGroup, rng: random.Random) -> PreMetricGroup:
    diag, cross = _coeff_choices(G)
    dvals = [rng.choice(ds) for ds in diag]
    cvals = {k: rng.choice(vs) for k, vs in cross.items()}
    return _form_from_params(G, dvals, cvals)
