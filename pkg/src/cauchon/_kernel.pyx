# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: fraction-free skew condensation in machine integers.

Same algorithm as ``_kernel_py``. Intermediate entries are Pfaffians of
principal submatrices of the 0/+-1 input, bounded by d**(d/4), so 64-bit
storage is exact up to dimension 44 and the three-term update products fit
in __int128. ``cdivision`` is safe: every division is exact by construction.
The ``backend`` module enforces the dimension/entry limits before calling in.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long int128 "__int128"

MAX_DIM = 44


cdef int _condense(long long* a, int d, long long* pf_out) except -1:
    # writes the Pfaffian to pf_out, returns the nullity
    cdef int s = 0, i = 0, j = 0, i0 = 0, j0 = 0, k = 0
    cdef int sign = 1
    cdef bint pf_zero = d % 2 == 1
    cdef long long prev = 1, p = 0, asi = 0, ati = 0, tmp = 0
    cdef int128 num = 0

    if d == 0:
        pf_out[0] = 1
        return 0

    while s < d - 1:
        j0 = -1
        for j in range(s + 1, d):
            if a[s * d + j] != 0:
                j0 = j
                break
        if j0 < 0:
            pf_zero = True
            i0 = -1
            for i in range(s + 1, d - 1):
                for j in range(i + 1, d):
                    if a[i * d + j] != 0:
                        i0 = i
                        j0 = j
                        break
                if i0 >= 0:
                    break
            if i0 < 0:
                break
            for k in range(d):
                tmp = a[s * d + k]
                a[s * d + k] = a[i0 * d + k]
                a[i0 * d + k] = tmp
            for k in range(d):
                tmp = a[k * d + s]
                a[k * d + s] = a[k * d + i0]
                a[k * d + i0] = tmp
        if j0 != s + 1:
            for k in range(d):
                tmp = a[(s + 1) * d + k]
                a[(s + 1) * d + k] = a[j0 * d + k]
                a[j0 * d + k] = tmp
            for k in range(d):
                tmp = a[k * d + (s + 1)]
                a[k * d + (s + 1)] = a[k * d + j0]
                a[k * d + j0] = tmp
            sign = -sign
        p = a[s * d + s + 1]
        for i in range(s + 2, d):
            asi = a[s * d + i]
            ati = a[(s + 1) * d + i]
            for j in range(i + 1, d):
                num = (<int128> p) * a[i * d + j]
                num -= (<int128> asi) * a[(s + 1) * d + j]
                num += (<int128> a[s * d + j]) * ati
                tmp = <long long> (num / prev)
                a[i * d + j] = tmp
                a[j * d + i] = -tmp
        prev = p
        s += 2
    pf_out[0] = 0 if pf_zero else sign * prev
    return d - s


def classify_cells(rows, cols):
    """Pfaffian and nullity of the skew adjacency matrix of white squares."""
    cdef int d = len(rows)
    if d != len(cols):
        raise ValueError("rows and cols must have equal length")
    if d > MAX_DIM:
        raise ValueError(f"dimension {d} exceeds compiled kernel limit {MAX_DIM}")
    cdef long long* a = <long long*> malloc((d * d + 2 * d) * sizeof(long long))
    if a == NULL and d > 0:
        raise MemoryError()
    cdef long long* rr = a + d * d
    cdef long long* cc = rr + d
    cdef int i, j
    cdef long long pf = 0
    cdef int nullity
    try:
        for i in range(d * d):
            a[i] = 0
        for i in range(d):
            rr[i] = rows[i]
            cc[i] = cols[i]
        for i in range(d):
            for j in range(i + 1, d):
                if rr[j] == rr[i] or cc[j] == cc[i]:
                    a[i * d + j] = 1
                    a[j * d + i] = -1
        nullity = _condense(a, d, &pf)
    finally:
        free(a)
    return pf, nullity


def pfaffian_and_nullity(matrix):
    """Exact Pfaffian and nullity of a skew-symmetric matrix over {-1, 0, 1}."""
    cdef int d = len(matrix)
    if d > MAX_DIM:
        raise ValueError(f"dimension {d} exceeds compiled kernel limit {MAX_DIM}")
    cdef long long* a = <long long*> malloc(d * d * sizeof(long long))
    if a == NULL and d > 0:
        raise MemoryError()
    cdef int i, j
    cdef long long v
    cdef long long pf = 0
    cdef int nullity
    try:
        for i in range(d):
            row = matrix[i]
            if len(row) != d:
                raise ValueError("matrix must be square")
            for j in range(d):
                v = row[j]
                if v < -1 or v > 1:
                    raise ValueError("compiled kernel accepts entries in {-1, 0, 1} only")
                a[i * d + j] = v
        nullity = _condense(a, d, &pf)
    finally:
        free(a)
    return pf, nullity
