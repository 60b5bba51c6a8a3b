"""Pure-Python versions of the hot kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same output order; the test-suite runs both and compares.
"""
from __future__ import annotations

PRIME = 2147483647  # 2**31 - 1, keeps products inside int64 in the C twin


def signed_vectors(k, total, sumsq, bound):
    """All integer k-vectors in [-bound, bound]^k with given sum and sum of squares.

    Lexicographically increasing order.
    """
    out = []
    if k == 0:
        if total == 0 and sumsq == 0:
            out.append(())
        return out
    if sumsq < 0 or (total - sumsq) % 2:
        return out
    buf = [0] * k

    def rec(i, s, q):
        rest = k - i - 1
        lim = bound
        while lim * lim > q:
            lim -= 1
        for x in range(-lim, lim + 1):
            s2 = s - x
            q2 = q - x * x
            if rest == 0:
                if s2 == 0 and q2 == 0:
                    buf[i] = x
                    out.append(tuple(buf))
                continue
            if s2 * s2 > rest * q2 or (s2 - q2) % 2 or abs(s2) > rest * bound:
                continue
            buf[i] = x
            rec(i + 1, s2, q2)

    rec(0, total, sumsq)
    return out


def rank_mod_p(rows, ncols, p=PRIME):
    """Rank of an integer matrix (list of rows) over GF(p)."""
    mat = [[x % p for x in row] for row in rows if any(row)]
    rank = 0
    nrows = len(mat)
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        for i in range(rank, nrows):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = pow(prow[col], p - 2, p)
        if inv != 1:
            prow = [(x * inv) % p for x in prow]
            mat[rank] = prow
        for i in range(rank + 1, nrows):
            f = mat[i][col]
            if f:
                row = mat[i]
                mat[i] = [(x - f * y) % p for x, y in zip(row, prow)]
        rank += 1
    return rank


def interpolation_rank_mod_p(us, vs, mults, ks, js, p=PRIME):
    """Rank over GF(p) of the vanishing conditions for the monomials u^k v^j.

    Point t imposes d^s/du^s d^t/dv^t = 0 for s + t < mults[t] at (us[t], vs[t]).
    """
    return rank_mod_p(list(condition_rows_mod_p(us, vs, mults, ks, js, p)), len(ks), p)


def condition_rows_mod_p(us, vs, mults, ks, js, p=PRIME):
    n = len(ks)
    for u0, v0, m in zip(us, vs, mults):
        u0 %= p
        v0 %= p
        for s in range(m):
            for t in range(m - s):
                row = [0] * n
                for c in range(n):
                    k = ks[c]
                    j = js[c]
                    if k < s or j < t:
                        continue
                    coef = 1
                    for q in range(s):
                        coef = coef * (k - q) % p
                    for q in range(t):
                        coef = coef * (j - q) % p
                    row[c] = coef * pow(u0, k - s, p) % p * pow(v0, j - t, p) % p
                yield row
