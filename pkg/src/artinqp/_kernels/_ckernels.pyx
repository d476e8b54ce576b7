# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same contract as ``_pykernels``.

Fast paths work on C arrays of 64-bit keys and coefficients and detect
overflow; when anything does not fit they defer to the Python versions.
"""

from libc.stdlib cimport malloc, free, qsort
from . import _pykernels as _py

BACKEND = "cython"

cdef extern from *:
    """
    static int k_mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int k_add_ovf(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    static int k_sub_ovf(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int k_mul_ovf(long long a, long long b, long long *r) nogil
    int k_add_ovf(long long a, long long b, long long *r) nogil
    int k_sub_ovf(long long a, long long b, long long *r) nogil

cdef long long KEY_LIMIT = (<long long>1) << 62

ctypedef struct Term:
    long long key
    long long coef

cdef int _cmp_term(const void *x, const void *y) noexcept nogil:
    cdef long long a = (<Term *>x).key
    cdef long long b = (<Term *>y).key
    return (a > b) - (a < b)

cdef int _load(dict d, Term *out) except -1:
    """Copy a dict into a Term array.  Returns 0 if some value does not fit."""
    cdef Py_ssize_t i = 0
    for k, c in d.items():
        if k >= KEY_LIMIT or k < 0:
            return 0
        if c >= KEY_LIMIT or c <= -KEY_LIMIT:
            return 0
        out[i].key = k
        out[i].coef = c
        i += 1
    return 1


def mpoly_mul(dict a, dict b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, n, w
    cdef Term *ta
    cdef Term *tb
    cdef Term *prod
    cdef long long v
    cdef bint ok = True
    if na == 0 or nb == 0:
        return {}
    if na * nb > 20000000:
        return _py.mpoly_mul(a, b)
    ta = <Term *>malloc(na * sizeof(Term))
    tb = <Term *>malloc(nb * sizeof(Term))
    prod = <Term *>malloc(na * nb * sizeof(Term))
    try:
        if not _load(a, ta) or not _load(b, tb):
            return _py.mpoly_mul(a, b)
        n = 0
        with nogil:
            for i in range(na):
                for j in range(nb):
                    prod[n].key = ta[i].key + tb[j].key
                    if k_mul_ovf(ta[i].coef, tb[j].coef, &prod[n].coef):
                        ok = False
                        break
                    n += 1
                if not ok:
                    break
            if ok:
                qsort(prod, n, sizeof(Term), _cmp_term)
                w = -1
                for i in range(n):
                    if w >= 0 and prod[w].key == prod[i].key:
                        if k_add_ovf(prod[w].coef, prod[i].coef, &v):
                            ok = False
                            break
                        prod[w].coef = v
                    else:
                        w += 1
                        prod[w] = prod[i]
        if not ok:
            return _py.mpoly_mul(a, b)
        out = {}
        for i in range(w + 1):
            if prod[i].coef:
                out[prod[i].key] = prod[i].coef
        return out
    finally:
        free(ta)
        free(tb)
        free(prod)


def mpoly_sub(a, b):
    return _py.mpoly_sub(a, b)


# Hash map with linear probing plus a lazy max-heap of keys, for division.

cdef struct DivState:
    long long *keys
    long long *coefs
    char *used
    Py_ssize_t cap
    Py_ssize_t fill
    long long *heap
    Py_ssize_t hlen
    Py_ssize_t hcap

cdef inline Py_ssize_t _slot(DivState *s, long long key) noexcept nogil:
    cdef unsigned long long h = <unsigned long long>key * 11400714819323198485ULL
    cdef Py_ssize_t i = <Py_ssize_t>(h >> 20) & (s.cap - 1)
    while s.used[i] and s.keys[i] != key:
        i = (i + 1) & (s.cap - 1)
    return i

cdef int _grow(DivState *s) noexcept nogil:
    cdef Py_ssize_t oldcap = s.cap, i, j
    cdef long long *ok = s.keys
    cdef long long *oc = s.coefs
    cdef char *ou = s.used
    s.cap = oldcap * 2
    s.keys = <long long *>malloc(s.cap * sizeof(long long))
    s.coefs = <long long *>malloc(s.cap * sizeof(long long))
    s.used = <char *>malloc(s.cap)
    if s.keys == NULL or s.coefs == NULL or s.used == NULL:
        return 0
    for i in range(s.cap):
        s.used[i] = 0
    s.fill = 0
    for i in range(oldcap):
        if ou[i] and oc[i] != 0:
            j = _slot(s, ok[i])
            s.used[j] = 1
            s.keys[j] = ok[i]
            s.coefs[j] = oc[i]
            s.fill += 1
    free(ok)
    free(oc)
    free(ou)
    return 1

cdef int _heap_push(DivState *s, long long key) noexcept nogil:
    cdef Py_ssize_t i, parent
    cdef long long *nh
    if s.hlen == s.hcap:
        nh = <long long *>malloc(2 * s.hcap * sizeof(long long))
        if nh == NULL:
            return 0
        for i in range(s.hlen):
            nh[i] = s.heap[i]
        free(s.heap)
        s.heap = nh
        s.hcap *= 2
    i = s.hlen
    s.hlen += 1
    while i > 0:
        parent = (i - 1) >> 1
        if s.heap[parent] >= key:
            break
        s.heap[i] = s.heap[parent]
        i = parent
    s.heap[i] = key
    return 1

cdef long long _heap_pop(DivState *s) noexcept nogil:
    cdef long long top = s.heap[0]
    cdef long long last
    cdef Py_ssize_t i = 0, c
    s.hlen -= 1
    if s.hlen == 0:
        return top
    last = s.heap[s.hlen]
    while True:
        c = 2 * i + 1
        if c >= s.hlen:
            break
        if c + 1 < s.hlen and s.heap[c + 1] > s.heap[c]:
            c += 1
        if s.heap[c] <= last:
            break
        s.heap[i] = s.heap[c]
        i = c
    s.heap[i] = last
    return top

# return codes: 1 ok, 0 overflow or memory, -1 inexact
cdef int _add_term(DivState *s, long long key, long long delta) noexcept nogil:
    cdef Py_ssize_t i
    cdef long long v
    if 2 * (s.fill + 1) > s.cap:
        if not _grow(s):
            return 0
    i = _slot(s, key)
    if not s.used[i]:
        s.used[i] = 1
        s.keys[i] = key
        s.coefs[i] = 0
        s.fill += 1
    if k_add_ovf(s.coefs[i], delta, &v):
        return 0
    if s.coefs[i] == 0 and v != 0:
        if not _heap_push(s, key):
            return 0
    s.coefs[i] = v
    return 1


def mpoly_divexact(dict a, dict b, guard):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, nq = 0, qcap
    cdef Term *ta
    cdef Term *tb
    cdef Term *tq
    cdef Term *nt
    cdef DivState s
    cdef long long g, kb, cb, kr, cr, d, qc, prod
    cdef int status = 1
    if nb == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    if na == 0:
        return {}
    if guard >= KEY_LIMIT:
        return _py.mpoly_divexact(a, b, guard)
    g = guard
    ta = <Term *>malloc(na * sizeof(Term))
    tb = <Term *>malloc(nb * sizeof(Term))
    qcap = na + 16
    tq = <Term *>malloc(qcap * sizeof(Term))
    s.cap = 64
    while s.cap < 4 * (na + nb):
        s.cap *= 2
    s.keys = <long long *>malloc(s.cap * sizeof(long long))
    s.coefs = <long long *>malloc(s.cap * sizeof(long long))
    s.used = <char *>malloc(s.cap)
    s.hcap = 2 * (na + nb) + 16
    s.heap = <long long *>malloc(s.hcap * sizeof(long long))
    s.hlen = 0
    s.fill = 0
    try:
        if not _load(a, ta) or not _load(b, tb):
            return _py.mpoly_divexact(a, b, guard)
        with nogil:
            for i in range(s.cap):
                s.used[i] = 0
            kb = tb[0].key
            cb = tb[0].coef
            for j in range(1, nb):
                if tb[j].key > kb:
                    kb = tb[j].key
                    cb = tb[j].coef
            for i in range(na):
                if _add_term(&s, ta[i].key, ta[i].coef) != 1:
                    status = 0
                    break
            while status == 1 and s.hlen > 0:
                kr = _heap_pop(&s)
                i = _slot(&s, kr)
                if not s.used[i] or s.coefs[i] == 0:
                    continue
                cr = s.coefs[i]
                d = (kr | g) - kb
                if (d & g) != g or cr % cb != 0:
                    status = -1
                    break
                d -= g
                qc = cr // cb
                if nq == qcap:
                    nt = <Term *>malloc(2 * qcap * sizeof(Term))
                    if nt == NULL:
                        status = 0
                        break
                    for j in range(nq):
                        nt[j] = tq[j]
                    free(tq)
                    tq = nt
                    qcap *= 2
                tq[nq].key = d
                tq[nq].coef = qc
                nq += 1
                for j in range(nb):
                    if k_mul_ovf(qc, tb[j].coef, &prod):
                        status = 0
                        break
                    if d + tb[j].key >= KEY_LIMIT:
                        status = 0
                        break
                    status = _add_term(&s, d + tb[j].key, -prod)
                    if status != 1:
                        status = 0
                        break
        if status == -1:
            raise ArithmeticError("inexact polynomial division")
        if status == 0:
            return _py.mpoly_divexact(a, b, guard)
        return {tq[i].key: tq[i].coef for i in range(nq)}
    finally:
        free(ta)
        free(tb)
        free(tq)
        free(s.keys)
        free(s.coefs)
        free(s.used)
        free(s.heap)


def bareiss_step(p, aij, aik, akj, prev, guard):
    if aik and akj:
        if aij:
            num = _py.mpoly_sub(mpoly_mul(p, aij), mpoly_mul(aik, akj))
        else:
            num = _py.mpoly_sub({}, mpoly_mul(aik, akj))
    elif aij:
        num = mpoly_mul(p, aij)
    else:
        return {}
    if len(prev) == 1 and 0 in prev and prev[0] == 1:
        return num
    return mpoly_divexact(num, prev, guard)


def rank_mod_p(rows, p):
    cdef Py_ssize_t m = len(rows), n, i, j, c, piv, rank = 0
    cdef unsigned long long P, f, inv, e, base
    cdef unsigned long long *a
    if m == 0:
        return 0
    if p >= (1 << 32) or p < 2:
        return _py.rank_mod_p(rows, p)
    P = p
    n = len(rows[0])
    if n == 0:
        return 0
    a = <unsigned long long *>malloc(m * n * sizeof(unsigned long long))
    try:
        for i in range(m):
            row = rows[i]
            for j in range(n):
                a[i * n + j] = <unsigned long long>(row[j] % p)
        with nogil:
            for c in range(n):
                piv = -1
                for i in range(rank, m):
                    if a[i * n + c]:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != rank:
                    for j in range(n):
                        f = a[piv * n + j]
                        a[piv * n + j] = a[rank * n + j]
                        a[rank * n + j] = f
                # inverse by Fermat
                inv = 1
                base = a[rank * n + c]
                e = P - 2
                while e:
                    if e & 1:
                        inv = (inv * base) % P
                    base = (base * base) % P
                    e >>= 1
                for i in range(rank + 1, m):
                    f = a[i * n + c]
                    if f:
                        f = (f * inv) % P
                        for j in range(c, n):
                            if a[rank * n + j]:
                                a[i * n + j] = (a[i * n + j] + P - (f * a[rank * n + j]) % P) % P
                rank += 1
                if rank == m:
                    break
        return rank
    finally:
        free(a)


def eval_mod_p(dict poly, point, int bits, p):
    cdef Py_ssize_t nvars = len(point), j
    cdef unsigned long long P, acc = 0, term, base, e, mask, key, pw
    cdef unsigned long long *pts
    if p >= (1 << 32) or nvars * bits > 62:
        return _py.eval_mod_p(poly, point, bits, p)
    P = p
    mask = ((<unsigned long long>1) << bits) - 1
    pts = <unsigned long long *>malloc((nvars + 1) * sizeof(unsigned long long))
    try:
        for j in range(nvars):
            pts[j] = point[j] % p
        for k, c in poly.items():
            key = k
            term = c % p
            for j in range(nvars - 1, -1, -1):
                e = key & mask
                key >>= bits
                if e:
                    pw = 1
                    base = pts[j]
                    while e:
                        if e & 1:
                            pw = (pw * base) % P
                        base = (base * base) % P
                        e >>= 1
                    term = (term * pw) % P
            acc = (acc + term) % P
        return acc
    finally:
        free(pts)
