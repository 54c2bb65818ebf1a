"""Pure-Python enumeration kernel.

Hot loops of the whole library live behind this small interface:
index-packed arithmetic of a finite abelian group, subgroup closure and
enumeration, automorphism search, and value-table transforms.  The
compiled twin ``_core`` (Cython) implements the same functions; either
backend may be selected at import time in ``braidforge.kernels``.

Elements of a group with invariant factors ``orders = (n1, ..., nr)``
are packed as mixed-radix integers, leftmost coordinate most
significant, so index order equals lexicographic order on coordinate
vectors.  The trivial group (r = 0) has the single index 0.  The
standard generator e_i is the index ``stride_i = n_{i+1} * ... * n_r``,
and since a group element is ``sum a_i * stride_i``, enumerating prefix
coordinates outermost-first lists indices 0..n-1 in order.
"""

from __future__ import annotations

from ..errors import EnumerationLimit

IMPL = "pure"


def group_size(orders):
    n = 1
    for m in orders:
        n *= m
    return n


def _all_coords(radix):
    coords = [()]
    for m in radix:
        coords = [c + (j,) for c in coords for j in range(m)]
    return coords


def add_table(orders):
    """Flat n*n table: add[a*n + b] = index of a + b."""
    n = group_size(orders)
    if not orders:
        return [0]
    radix = list(orders)
    coords = _all_coords(radix)
    enc = {c: i for i, c in enumerate(coords)}
    table = [0] * (n * n)
    for a, ca in enumerate(coords):
        base = a * n
        for b, cb in enumerate(coords):
            s = tuple((x + y) % m for x, y, m in zip(ca, cb, radix))
            table[base + b] = enc[s]
    return table


def neg_table(orders):
    n = group_size(orders)
    if not orders:
        return [0]
    radix = list(orders)
    coords = _all_coords(radix)
    enc = {c: i for i, c in enumerate(coords)}
    return [enc[tuple((-x) % m for x, m in zip(c, radix))] for c in coords]


def element_orders(n, add):
    """Additive order of every index."""
    out = [1] * n
    for g in range(1, n):
        k, x = 1, g
        while x != 0:
            x = add[x * n + g]
            k += 1
        out[g] = k
    return out


def _extend(n, add, sub, g):
    """Element set of <sub, g> for a subgroup ``sub`` (iterable of indices)."""
    new = set(sub)
    x = g
    while x != 0:
        base = x * n
        new.update(add[base + h] for h in sub)
        x = add[x * n + g]
    return tuple(sorted(new))


def closure(n, add, gens):
    """Sorted element indices of the subgroup generated by ``gens``."""
    cur = (0,)
    have = {0}
    for g in gens:
        if g not in have:
            cur = _extend(n, add, cur, g)
            have = set(cur)
    return cur


def all_subgroups(n, add):
    """Every subgroup, as sorted index tuples.

    Layered closure: extend each known subgroup by one cyclic generator
    until no new subgroup appears.
    """
    trivial = (0,)
    found = {trivial}
    queue = [trivial]
    while queue:
        sub = queue.pop()
        have = set(sub)
        for g in range(1, n):
            if g in have:
                continue
            ext = _extend(n, add, sub, g)
            if ext not in found:
                found.add(ext)
                queue.append(ext)
    return sorted(found, key=lambda s: (len(s), s))


def _multiples(n, add, m, count):
    """[0, m, 2m, ..., (count-1)m] as indices."""
    out = [0] * count
    for j in range(1, count):
        out[j] = add[out[j - 1] * n + m]
    return out


def automorphisms(n, add, gen_strides, gen_ords, cap):
    """All automorphisms as index permutations ``perm[g] = phi(g)``.

    Backtracking over images of the invariant-factor generators with the
    exact prune |<images so far>| == product of generator orders; a full
    assignment passing the prune is automatically bijective.  Raises
    EnumerationLimit when more than ``cap`` automorphisms exist.
    """
    ords = element_orders(n, add)
    r = len(gen_strides)
    if r == 0:
        return [(0,)]
    perms = []

    def rec(depth, span_tuple, phi_level):
        if depth == r:
            perms.append(tuple(phi_level))
            if len(perms) > cap:
                raise EnumerationLimit(f"automorphism count exceeds cap {cap}")
            return
        need = gen_ords[depth]
        target = len(span_tuple) * need
        for m in range(n):
            if need % ords[m] != 0:
                continue
            ext = _extend(n, add, span_tuple, m)
            if len(ext) != target:
                continue
            mult = _multiples(n, add, m, need)
            new_phi = [add[p * n + mj] for p in phi_level for mj in mult]
            rec(depth + 1, ext, new_phi)

    rec(0, (0,), [0])
    return perms


def stabilizer(perms, table):
    """Sub-list of perms with table[perm[g]] == table[g] for all g."""
    out = []
    n = len(table)
    for p in perms:
        for g in range(1, n):
            if table[p[g]] != table[g]:
                break
        else:
            out.append(p)
    return out


def apply_perm(perm, table):
    """Transported value table: result[perm[g]] = table[g]."""
    out = [0] * len(table)
    for g, v in enumerate(table):
        out[perm[g]] = v
    return tuple(out)


def find_isomorphism(n, add, gen_strides, gen_ords, table_a, table_b):
    """First index permutation carrying ``table_a`` to ``table_b``.

    Same search as :func:`automorphisms`, but prunes on value-table
    mismatch as soon as a partial subgroup is mapped (the prefix
    subgroup <e_1..e_k> maps to the current image span; its elements in
    enumeration order are exactly the indices with zero later
    coordinates).  Returns None when no carrying automorphism exists.
    """
    ords = element_orders(n, add)
    r = len(gen_strides)
    if r == 0:
        return (0,) if tuple(table_a) == tuple(table_b) else None

    prefix = [[0]]
    for i in range(r):
        step, om = gen_strides[i], gen_ords[i]
        prefix.append([e + j * step for e in prefix[-1] for j in range(om)])

    def rec(depth, span_tuple, phi_level):
        if depth == r:
            return tuple(phi_level)
        need = gen_ords[depth]
        target = len(span_tuple) * need
        elems_next = prefix[depth + 1]
        for m in range(n):
            if need % ords[m] != 0:
                continue
            ext = _extend(n, add, span_tuple, m)
            if len(ext) != target:
                continue
            mult = _multiples(n, add, m, need)
            new_phi = []
            ok = True
            t = 0
            for p in phi_level:
                base = p * n
                for mj in mult:
                    im = add[base + mj]
                    if table_b[im] != table_a[elems_next[t]]:
                        ok = False
                        break
                    new_phi.append(im)
                    t += 1
                if not ok:
                    break
            if not ok:
                continue
            res = rec(depth + 1, ext, new_phi)
            if res is not None:
                return res
        return None

    return rec(0, (0,), [0])
