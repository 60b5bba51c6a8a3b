# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in _pykernels.py (same signatures, same order)."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

PRIME = 2147483647


cdef void _rec(int k, int i, long s, long q, int bound, int* buf, list out):
    cdef int rest = k - i - 1
    cdef int lim = bound
    cdef int x, j
    cdef long s2, q2
    while <long>lim * lim > q:
        lim -= 1
    for x in range(-lim, lim + 1):
        s2 = s - x
        q2 = q - <long>x * x
        if rest == 0:
            if s2 == 0 and q2 == 0:
                buf[i] = x
                out.append(tuple([buf[j] for j in range(k)]))
            continue
        if s2 * s2 > rest * q2 or (s2 - q2) % 2 != 0:
            continue
        if s2 > <long>rest * bound or -s2 > <long>rest * bound:
            continue
        buf[i] = x
        _rec(k, i + 1, s2, q2, bound, buf, out)


def signed_vectors(int k, long total, long sumsq, int bound):
    cdef list out = []
    cdef int* buf
    if k == 0:
        if total == 0 and sumsq == 0:
            out.append(())
        return out
    if sumsq < 0 or (total - sumsq) % 2 != 0:
        return out
    buf = <int*>malloc(k * sizeof(int))
    try:
        _rec(k, 0, total, sumsq, bound, buf, out)
    finally:
        free(buf)
    return out


cdef int64_t _powmod(int64_t b, int64_t e, int64_t p):
    cdef int64_t r = 1
    b %= p
    if b < 0:
        b += p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


cdef int _rank_buffer(int64_t* mat, int nrows, int ncols, int64_t p):
    cdef int rank = 0, col, i, j, piv
    cdef int64_t inv, f, tmp
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if mat[i * ncols + col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                tmp = mat[piv * ncols + j]
                mat[piv * ncols + j] = mat[rank * ncols + j]
                mat[rank * ncols + j] = tmp
        inv = _powmod(mat[rank * ncols + col], p - 2, p)
        for j in range(col, ncols):
            mat[rank * ncols + j] = mat[rank * ncols + j] * inv % p
        for i in range(rank + 1, nrows):
            f = mat[i * ncols + col]
            if f != 0:
                for j in range(col, ncols):
                    mat[i * ncols + j] = (mat[i * ncols + j] - f * mat[rank * ncols + j]) % p
                    if mat[i * ncols + j] < 0:
                        mat[i * ncols + j] += p
        rank += 1
    return rank


def rank_mod_p(rows, int ncols, int64_t p=PRIME):
    cdef list kept = [row for row in rows if any(row)]
    cdef int nrows = len(kept), i, j
    cdef int64_t* mat
    cdef int64_t v
    if nrows == 0 or ncols == 0:
        return 0
    mat = <int64_t*>malloc(nrows * ncols * sizeof(int64_t))
    try:
        for i in range(nrows):
            row = kept[i]
            for j in range(ncols):
                v = row[j] % p
                mat[i * ncols + j] = v
        return _rank_buffer(mat, nrows, ncols, p)
    finally:
        free(mat)


def interpolation_rank_mod_p(us, vs, mults, ks, js, int64_t p=PRIME):
    cdef int npts = len(mults), ncols = len(ks)
    cdef int nrows = 0, pt, s, t, c, q, row, maxdeg = 0
    cdef int64_t u0, v0, coef
    cdef int64_t* mat
    cdef int64_t* upow
    cdef int64_t* vpow
    cdef int* kk
    cdef int* jj
    for pt in range(npts):
        nrows += mults[pt] * (mults[pt] + 1) // 2
    if nrows == 0 or ncols == 0:
        return 0
    kk = <int*>malloc(ncols * sizeof(int))
    jj = <int*>malloc(ncols * sizeof(int))
    for c in range(ncols):
        kk[c] = ks[c]
        jj[c] = js[c]
        if kk[c] > maxdeg:
            maxdeg = kk[c]
        if jj[c] > maxdeg:
            maxdeg = jj[c]
    mat = <int64_t*>malloc(nrows * ncols * sizeof(int64_t))
    upow = <int64_t*>malloc((maxdeg + 1) * sizeof(int64_t))
    vpow = <int64_t*>malloc((maxdeg + 1) * sizeof(int64_t))
    try:
        row = 0
        for pt in range(npts):
            u0 = us[pt] % p
            v0 = vs[pt] % p
            upow[0] = 1
            vpow[0] = 1
            for q in range(1, maxdeg + 1):
                upow[q] = upow[q - 1] * u0 % p
                vpow[q] = vpow[q - 1] * v0 % p
            for s in range(mults[pt]):
                for t in range(mults[pt] - s):
                    for c in range(ncols):
                        if kk[c] < s or jj[c] < t:
                            mat[row * ncols + c] = 0
                            continue
                        coef = 1
                        for q in range(s):
                            coef = coef * (kk[c] - q) % p
                        for q in range(t):
                            coef = coef * (jj[c] - q) % p
                        mat[row * ncols + c] = coef * upow[kk[c] - s] % p * vpow[jj[c] - t] % p
                    row += 1
        return _rank_buffer(mat, nrows, ncols, p)
    finally:
        free(mat)
        free(upow)
        free(vpow)
        free(kk)
        free(jj)
