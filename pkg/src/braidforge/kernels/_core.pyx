# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Same contract as ``braidforge.kernels.pure``; see that module for the
index-packing conventions.  Inputs and outputs stay plain Python lists
and tuples so the two backends are drop-in interchangeable; the inner
loops run on C integer buffers.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

from ..errors import EnumerationLimit

IMPL = "cython"


def group_size(orders):
    n = 1
    for m in orders:
        n *= m
    return n


cdef int* _to_cint(object seq, Py_ssize_t length) except NULL:
    cdef int* buf = <int*> malloc(length * sizeof(int))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(length):
        buf[i] = seq[i]
    return buf


def add_table(orders):
    """Flat n*n table: add[a*n + b] = index of a + b."""
    cdef list rad = list(orders)
    cdef int r = len(rad)
    cdef int n = group_size(rad)
    if r == 0:
        return [0]
    cdef int* radix = _to_cint(rad, r)
    cdef int* stride = <int*> malloc(r * sizeof(int))
    cdef int i, a, b, q, s, acc, ca, cb
    if stride == NULL:
        free(radix)
        raise MemoryError()
    stride[r - 1] = 1
    for i in range(r - 2, -1, -1):
        stride[i] = stride[i + 1] * radix[i + 1]
    out = [0] * (n * n)
    try:
        for a in range(n):
            for b in range(n):
                acc = 0
                for i in range(r):
                    ca = (a // stride[i]) % radix[i]
                    cb = (b // stride[i]) % radix[i]
                    s = ca + cb
                    if s >= radix[i]:
                        s -= radix[i]
                    acc += s * stride[i]
                out[a * n + b] = acc
    finally:
        free(radix)
        free(stride)
    return out


def neg_table(orders):
    cdef list rad = list(orders)
    cdef int r = len(rad)
    cdef int n = group_size(rad)
    if r == 0:
        return [0]
    cdef int* radix = _to_cint(rad, r)
    cdef int* stride = <int*> malloc(r * sizeof(int))
    cdef int i, a, acc, ca
    if stride == NULL:
        free(radix)
        raise MemoryError()
    stride[r - 1] = 1
    for i in range(r - 2, -1, -1):
        stride[i] = stride[i + 1] * radix[i + 1]
    out = [0] * n
    try:
        for a in range(n):
            acc = 0
            for i in range(r):
                ca = (a // stride[i]) % radix[i]
                if ca:
                    acc += (radix[i] - ca) * stride[i]
            out[a] = acc
    finally:
        free(radix)
        free(stride)
    return out


def element_orders(n_py, add):
    cdef int n = n_py
    cdef int* cadd = _to_cint(add, n * n)
    cdef int g, k, x
    out = [1] * n
    try:
        for g in range(1, n):
            k = 1
            x = g
            while x != 0:
                x = cadd[x * n + g]
                k += 1
            out[g] = k
    finally:
        free(cadd)
    return out


cdef int _c_extend(int n, int* add, int* sub, int sublen, int g,
                   char* mark, int* out) nogil:
    """<sub, g> via coset union; returns new length, out sorted ascending."""
    cdef int i, x, m
    memset(mark, 0, n)
    for i in range(sublen):
        mark[sub[i]] = 1
    x = g
    while x != 0:
        for i in range(sublen):
            mark[add[x * n + sub[i]]] = 1
        x = add[x * n + g]
    m = 0
    for i in range(n):
        if mark[i]:
            out[m] = i
            m += 1
    return m


def closure(n_py, add, gens):
    cdef int n = n_py
    cdef int* cadd = _to_cint(add, n * n)
    cdef int* cur = <int*> malloc(n * sizeof(int))
    cdef int* nxt = <int*> malloc(n * sizeof(int))
    cdef char* mark = <char*> malloc(n)
    cdef int curlen = 1, i, g
    if cur == NULL or nxt == NULL or mark == NULL:
        raise MemoryError()
    cur[0] = 0
    try:
        for g_py in gens:
            g = g_py
            memset(mark, 0, n)
            for i in range(curlen):
                mark[cur[i]] = 1
            if mark[g]:
                continue
            curlen = _c_extend(n, cadd, cur, curlen, g, mark, nxt)
            cur, nxt = nxt, cur
        return tuple([cur[i] for i in range(curlen)])
    finally:
        free(cadd); free(cur); free(nxt); free(mark)


def all_subgroups(n_py, add):
    cdef int n = n_py
    cdef int* cadd = _to_cint(add, n * n)
    cdef int* buf = <int*> malloc(n * sizeof(int))
    cdef int* sub = <int*> malloc(n * sizeof(int))
    cdef char* mark = <char*> malloc(n)
    cdef int i, g, sublen, m
    if buf == NULL or sub == NULL or mark == NULL:
        raise MemoryError()
    found = {(0,)}
    queue = [(0,)]
    try:
        while queue:
            cur = queue.pop()
            sublen = len(cur)
            for i in range(sublen):
                sub[i] = cur[i]
            for g in range(1, n):
                memset(mark, 0, n)
                for i in range(sublen):
                    mark[cur[i]] = 1
                if mark[g]:
                    continue
                m = _c_extend(n, cadd, sub, sublen, g, mark, buf)
                ext = tuple([buf[i] for i in range(m)])
                if ext not in found:
                    found.add(ext)
                    queue.append(ext)
    finally:
        free(cadd); free(buf); free(sub); free(mark)
    return sorted(found, key=lambda s: (len(s), s))


def automorphisms(n_py, add, gen_strides, gen_ords, cap_py):
    cdef int n = n_py
    cdef int r = len(gen_strides)
    if r == 0:
        return [(0,)]
    cdef int cap = cap_py
    cdef int* cadd = _to_cint(add, n * n)
    cdef int* ords = <int*> malloc(n * sizeof(int))
    cdef int* gords = _to_cint(gen_ords, r)
    # per-depth buffers: spans and phi levels
    cdef int* spans = <int*> malloc((r + 1) * n * sizeof(int))
    cdef int* phis = <int*> malloc((r + 1) * n * sizeof(int))
    cdef int* mult = <int*> malloc(n * sizeof(int))
    cdef char* mark = <char*> malloc(n)
    cdef int g, k, x
    if ords == NULL or spans == NULL or phis == NULL or mult == NULL or mark == NULL:
        raise MemoryError()
    for g in range(n):
        ords[g] = 1
    for g in range(1, n):
        k = 1
        x = g
        while x != 0:
            x = cadd[x * n + g]
            k += 1
        ords[g] = k
    perms = []
    spans[0] = 0
    phis[0] = 0
    try:
        _aut_rec(n, r, cadd, ords, gords, spans, phis, mult, mark,
                 0, 1, 1, perms, cap)
    finally:
        free(cadd); free(ords); free(gords); free(spans)
        free(phis); free(mult); free(mark)
    return perms


cdef _aut_rec(int n, int r, int* add, int* ords, int* gords,
              int* spans, int* phis, int* mult, char* mark,
              int depth, int spanlen, int philen, list perms, int cap):
    cdef int need, target, m, extlen, i, j, t, base
    cdef int* span = spans + depth * n
    cdef int* phi = phis + depth * n
    cdef int* nspan = spans + (depth + 1) * n
    cdef int* nphi = phis + (depth + 1) * n
    if depth == r:
        perms.append(tuple([phi[i] for i in range(philen)]))
        if len(perms) > cap:
            raise EnumerationLimit(f"automorphism count exceeds cap {cap}")
        return
    need = gords[depth]
    target = spanlen * need
    for m in range(n):
        if need % ords[m] != 0:
            continue
        extlen = _c_extend(n, add, span, spanlen, m, mark, nspan)
        if extlen != target:
            continue
        mult[0] = 0
        for j in range(1, need):
            mult[j] = add[mult[j - 1] * n + m]
        t = 0
        for i in range(philen):
            base = phi[i] * n
            for j in range(need):
                nphi[t] = add[base + mult[j]]
                t += 1
        _aut_rec(n, r, add, ords, gords, spans, phis, mult, mark,
                 depth + 1, extlen, t, perms, cap)


def stabilizer(perms, table):
    cdef int n = len(table)
    cdef int* tab = _to_cint(table, n)
    cdef int* p = <int*> malloc(n * sizeof(int))
    cdef int g, ok
    if p == NULL:
        free(tab)
        raise MemoryError()
    out = []
    try:
        for perm in perms:
            for g in range(n):
                p[g] = perm[g]
            ok = 1
            for g in range(1, n):
                if tab[p[g]] != tab[g]:
                    ok = 0
                    break
            if ok:
                out.append(perm)
    finally:
        free(tab); free(p)
    return out


def apply_perm(perm, table):
    cdef int n = len(table)
    out = [0] * n
    cdef int g
    for g in range(n):
        out[perm[g]] = table[g]
    return tuple(out)


def find_isomorphism(n_py, add, gen_strides, gen_ords, table_a, table_b):
    cdef int n = n_py
    cdef int r = len(gen_strides)
    if r == 0:
        return (0,) if tuple(table_a) == tuple(table_b) else None
    cdef int* cadd = _to_cint(add, n * n)
    cdef int* ords = <int*> malloc(n * sizeof(int))
    cdef int* gords = _to_cint(gen_ords, r)
    cdef int* ta = _to_cint(table_a, n)
    cdef int* tb = _to_cint(table_b, n)
    cdef int* spans = <int*> malloc((r + 1) * n * sizeof(int))
    cdef int* phis = <int*> malloc((r + 1) * n * sizeof(int))
    cdef int* prefix = <int*> malloc((r + 1) * n * sizeof(int))
    cdef int* plen = <int*> malloc((r + 1) * sizeof(int))
    cdef int* mult = <int*> malloc(n * sizeof(int))
    cdef char* mark = <char*> malloc(n)
    cdef int g, k, x, i, j, step, om, t
    if (ords == NULL or spans == NULL or phis == NULL or prefix == NULL
            or plen == NULL or mult == NULL or mark == NULL):
        raise MemoryError()
    for g in range(n):
        ords[g] = 1
    for g in range(1, n):
        k = 1
        x = g
        while x != 0:
            x = cadd[x * n + g]
            k += 1
        ords[g] = k
    prefix[0] = 0
    plen[0] = 1
    for i in range(r):
        step = gen_strides[i]
        om = gen_ords[i]
        t = 0
        for k in range(plen[i]):
            for j in range(om):
                prefix[(i + 1) * n + t] = prefix[i * n + k] + j * step
                t += 1
        plen[i + 1] = t
    spans[0] = 0
    phis[0] = 0
    try:
        res = _iso_rec(n, r, cadd, ords, gords, ta, tb,
                       spans, phis, prefix, plen, mult, mark, 0, 1, 1)
    finally:
        free(cadd); free(ords); free(gords); free(ta); free(tb)
        free(spans); free(phis); free(prefix); free(plen)
        free(mult); free(mark)
    return res


cdef _iso_rec(int n, int r, int* add, int* ords, int* gords,
              int* ta, int* tb, int* spans, int* phis,
              int* prefix, int* plen, int* mult, char* mark,
              int depth, int spanlen, int philen):
    cdef int need, target, m, extlen, i, j, t, base, im, ok
    cdef int* span = spans + depth * n
    cdef int* phi = phis + depth * n
    cdef int* nspan = spans + (depth + 1) * n
    cdef int* nphi = phis + (depth + 1) * n
    cdef int* elems
    if depth == r:
        return tuple([phi[i] for i in range(philen)])
    need = gords[depth]
    target = spanlen * need
    elems = prefix + (depth + 1) * n
    for m in range(n):
        if need % ords[m] != 0:
            continue
        extlen = _c_extend(n, add, span, spanlen, m, mark, nspan)
        if extlen != target:
            continue
        mult[0] = 0
        for j in range(1, need):
            mult[j] = add[mult[j - 1] * n + m]
        ok = 1
        t = 0
        for i in range(philen):
            base = phi[i] * n
            for j in range(need):
                im = add[base + mult[j]]
                if tb[im] != ta[elems[t]]:
                    ok = 0
                    break
                nphi[t] = im
                t += 1
            if not ok:
                break
        if not ok:
            continue
        res = _iso_rec(n, r, add, ords, gords, ta, tb, spans, phis,
                       prefix, plen, mult, mark, depth + 1, extlen, t)
        if res is not None:
            return res
    return None
