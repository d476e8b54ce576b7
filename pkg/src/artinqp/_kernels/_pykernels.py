"""Pure-Python reference kernels.

Polynomials are dicts mapping a packed exponent key to a nonzero Python int.
A key stores ``nvars`` fields of ``bits`` bits each, most significant field
first, so integer order on keys is lexicographic order on exponent vectors.
The top bit of every field is a guard bit and must stay clear in stored keys;
``guard`` is the int with exactly those bits set.
"""

BACKEND = "python"


def mpoly_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def mpoly_sub(a, b):
    out = dict(a)
    get = out.get
    for k, c in b.items():
        v = get(k, 0) - c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def mpoly_divexact(a, b, guard):
    """Exact quotient a / b.  Raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    kb = max(b)
    cb = b[kb]
    r = dict(a)
    q = {}
    while r:
        kr = max(r)
        d = (kr | guard) - kb
        if d & guard != guard:
            raise ArithmeticError("inexact polynomial division")
        d -= guard
        qc, rem = divmod(r[kr], cb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[d] = qc
        get = r.get
        for k, c in b.items():
            kk = d + k
            v = get(kk, 0) - qc * c
            if v:
                r[kk] = v
            else:
                del r[kk]
    return q


def bareiss_step(p, aij, aik, akj, prev, guard):
    """(p*aij - aik*akj) / prev, exactly."""
    if aik and akj:
        num = mpoly_sub(mpoly_mul(p, aij), mpoly_mul(aik, akj)) if aij else \
            mpoly_sub({}, mpoly_mul(aik, akj))
    elif aij:
        num = mpoly_mul(p, aij)
    else:
        return {}
    if len(prev) == 1 and 0 in prev and prev[0] == 1:
        return num
    return mpoly_divexact(num, prev, guard)


def rank_mod_p(rows, p):
    """Rank of an integer matrix (list of lists of ints) over GF(p)."""
    m = [[x % p for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = -1
        for i in range(rank, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[c], p - 2, p)
        for i in range(rank + 1, len(m)):
            row = m[i]
            f = row[c]
            if f:
                f = (f * inv) % p
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        if rank == len(m):
            break
    return rank


def eval_mod_p(poly, point, bits, p):
    """Evaluate a packed polynomial at ``point`` (one residue per variable)."""
    nvars = len(point)
    mask = (1 << bits) - 1
    acc = 0
    for k, c in poly.items():
        term = c % p
        for j in range(nvars - 1, -1, -1):
            e = k & mask
            k >>= bits
            if e:
                term = (term * pow(point[j], e, p)) % p
        acc = (acc + term) % p
    return acc
