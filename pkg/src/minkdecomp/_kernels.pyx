# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _kernels_py.

rref_int keeps Python integers (entries outgrow machine words during deep
eliminations) and gains from typed loop bookkeeping only; facet_scan runs
fully on int64, which is safe because the dispatcher in kernels.py admits
an input only when the Hadamard bound on every intermediate fits.  Both
must stay behaviourally identical to the pure versions: same pivot
choices, same iteration order, same output.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc

from math import gcd


cdef void _primitive_obj(list row):
    cdef Py_ssize_t j, n = len(row)
    g = 0
    for j in range(n):
        g = gcd(g, row[j])
        if g == 1:
            break
    if g == 0:
        return
    lead = 0
    for j in range(n):
        if row[j] != 0:
            lead = row[j]
            break
    if lead < 0:
        g = -g
    if g != 1:
        for j in range(n):
            row[j] = row[j] // g


def rref_int(rows, Py_ssize_t ncols):
    """Integer Gauss-Jordan; see the pure twin for the full contract."""
    mat = [list(r) for r in rows]
    cdef Py_ssize_t nrows = len(mat)
    cdef Py_ssize_t rank = 0, col, i, j, best
    pivot_cols = []
    for col in range(ncols):
        best = -1
        for i in range(rank, nrows):
            x = (<list>mat[i])[col]
            if x != 0 and (best < 0 or abs(x) < abs((<list>mat[best])[col])):
                best = i
        if best < 0:
            continue
        mat[rank], mat[best] = mat[best], mat[rank]
        piv_row = <list>mat[rank]
        _primitive_obj(piv_row)
        p = piv_row[col]
        for i in range(nrows):
            if i == rank:
                continue
            row = <list>mat[i]
            q = row[col]
            if q == 0:
                continue
            for j in range(ncols):
                row[j] = row[j] * p - q * piv_row[j]
            _primitive_obj(row)
        pivot_cols.append(col)
        rank += 1
    return pivot_cols, mat[:rank]


cdef int64_t _gcd64(int64_t a, int64_t b):
    cdef int64_t t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int64_t _det64(int64_t* a, int k):
    """Bareiss determinant on a k x k row-major buffer; destroys it."""
    cdef int i, r, c, swap
    cdef int64_t sign = 1, prev = 1, tmp
    if k == 0:
        return 1
    for i in range(k - 1):
        if a[i * k + i] == 0:
            swap = -1
            for r in range(i + 1, k):
                if a[r * k + i] != 0:
                    swap = r
                    break
            if swap < 0:
                return 0
            for c in range(k):
                tmp = a[i * k + c]
                a[i * k + c] = a[swap * k + c]
                a[swap * k + c] = tmp
            sign = -sign
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                a[r * k + c] = (a[r * k + c] * a[i * k + i]
                                - a[r * k + i] * a[i * k + c]) // prev
            a[r * k + i] = 0
        prev = a[i * k + i]
    return sign * a[(k - 1) * k + (k - 1)]


def facet_scan(coords, int d):
    """Brute-force facet enumeration; see the pure twin for the contract.
    Requires at most 63 vertices and magnitudes pre-checked by the caller."""
    cdef int n = len(coords)
    if n > 63:
        raise ValueError("compiled facet_scan supports at most 63 vertices")
    cdef int i, j, c, t, k = d - 1
    cdef int64_t* pts = NULL
    cdef int64_t* diffs = NULL
    cdef int64_t* minor = NULL
    cdef int64_t* normal = NULL
    cdef int* idx = NULL
    cdef uint64_t* fmasks = NULL
    cdef int nfound = 0, cap = 64
    cdef uint64_t smask, mask
    cdef int64_t offset, s, g, x
    cdef bint pos, neg, skip
    found = []
    pts = <int64_t*> malloc(n * d * sizeof(int64_t))
    diffs = <int64_t*> malloc((k if k else 1) * d * sizeof(int64_t))
    minor = <int64_t*> malloc((k * k if k else 1) * sizeof(int64_t))
    normal = <int64_t*> malloc(d * sizeof(int64_t))
    idx = <int*> malloc(d * sizeof(int))
    fmasks = <uint64_t*> malloc(cap * sizeof(uint64_t))
    if not (pts and diffs and minor and normal and idx and fmasks):
        free(pts); free(diffs); free(minor); free(normal); free(idx); free(fmasks)
        raise MemoryError()
    try:
        for i in range(n):
            row = coords[i]
            for c in range(d):
                pts[i * d + c] = row[c]
        for t in range(d):
            idx[t] = t
        while True:
            smask = 0
            for t in range(d):
                smask |= (<uint64_t>1) << idx[t]
            skip = False
            for i in range(nfound):
                if smask & ~fmasks[i] == 0:
                    skip = True
                    break
            if not skip:
                for t in range(k):
                    for c in range(d):
                        diffs[t * d + c] = (pts[idx[t + 1] * d + c]
                                            - pts[idx[0] * d + c])
                for j in range(d):
                    for t in range(k):
                        i = 0
                        for c in range(d):
                            if c != j:
                                minor[t * k + i] = diffs[t * d + c]
                                i += 1
                    x = _det64(minor, k)
                    normal[j] = x if j % 2 == 0 else -x
                skip = True
                for j in range(d):
                    if normal[j] != 0:
                        skip = False
                        break
                if not skip:
                    offset = 0
                    for c in range(d):
                        offset += normal[c] * pts[idx[0] * d + c]
                    pos = neg = False
                    mask = 0
                    for i in range(n):
                        s = -offset
                        for c in range(d):
                            s += normal[c] * pts[i * d + c]
                        if s > 0:
                            pos = True
                        elif s < 0:
                            neg = True
                        else:
                            mask |= (<uint64_t>1) << i
                        if pos and neg:
                            break
                    if pos and neg:
                        pass
                    elif not pos and not neg:
                        raise ValueError(
                            "all vertices on one hyperplane; input not full-dimensional"
                        )
                    else:
                        if pos:
                            for c in range(d):
                                normal[c] = -normal[c]
                            offset = -offset
                        g = 0
                        for c in range(d):
                            g = _gcd64(g, normal[c])
                        g = _gcd64(g, offset)
                        if g > 1:
                            for c in range(d):
                                normal[c] = normal[c] // g
                            offset = offset // g
                        if nfound == cap:
                            cap *= 2
                            new_masks = <uint64_t*> malloc(cap * sizeof(uint64_t))
                            if not new_masks:
                                raise MemoryError()
                            for i in range(nfound):
                                new_masks[i] = fmasks[i]
                            free(fmasks)
                            fmasks = new_masks
                        fmasks[nfound] = mask
                        nfound += 1
                        found.append(
                            (int(mask), tuple(normal[c] for c in range(d)), int(offset))
                        )
            # advance to the next lexicographic d-subset
            j = d - 1
            while j >= 0 and idx[j] == n - d + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for t in range(j + 1, d):
                idx[t] = idx[t - 1] + 1
    finally:
        free(pts); free(diffs); free(minor); free(normal); free(idx); free(fmasks)
    return found
