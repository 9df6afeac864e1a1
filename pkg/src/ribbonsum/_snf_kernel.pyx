# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 Smith elimination returning invariant factors.

Raises OverflowError when an intermediate entry would leave int64; the caller
then falls back to arbitrary precision.
"""
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static int rs_mul_overflow(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static int rs_sub_overflow(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static int rs_add_overflow(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int rs_mul_overflow(long long a, long long b, long long *r) nogil
    int rs_sub_overflow(long long a, long long b, long long *r) nogil
    int rs_add_overflow(long long a, long long b, long long *r) nogil


cdef inline long long _abs(long long a) nogil:
    return -a if a < 0 else a


cdef inline long long _floordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef int _axpy(long long *dst, long long *src, long long q, Py_ssize_t n, Py_ssize_t stride) nogil:
    # dst[k*stride] -= q * src[k*stride]
    cdef Py_ssize_t k
    cdef long long prod, res
    for k in range(n):
        if src[k * stride] != 0:
            if rs_mul_overflow(q, src[k * stride], &prod):
                return 1
            if rs_sub_overflow(dst[k * stride], prod, &res):
                return 1
            dst[k * stride] = res
    return 0


cdef void _swap_rows(long long *A, Py_ssize_t n, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t k
    cdef long long tmp
    if i == j:
        return
    for k in range(n):
        tmp = A[i * n + k]
        A[i * n + k] = A[j * n + k]
        A[j * n + k] = tmp


cdef void _swap_cols(long long *A, Py_ssize_t m, Py_ssize_t n, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t k
    cdef long long tmp
    if i == j:
        return
    for k in range(m):
        tmp = A[k * n + i]
        A[k * n + i] = A[k * n + j]
        A[k * n + j] = tmp


cdef int _reduce(long long *A, Py_ssize_t m, Py_ssize_t n, long long *piv, Py_ssize_t *npiv) nogil:
    cdef Py_ssize_t t = 0, i, j, bi, bj, ci, cj, bad
    cdef long long best, p, q, a, cbest
    cdef bint dirty
    npiv[0] = 0
    while t < m and t < n:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                a = _abs(A[i * n + j])
                if a != 0 and (best == 0 or a < best):
                    best = a
                    bi = i
                    bj = j
        if bi < 0:
            break
        _swap_rows(A, n, t, bi)
        _swap_cols(A, m, n, t, bj)
        while True:
            p = A[t * n + t]
            dirty = False
            for i in range(t + 1, m):
                if A[i * n + t] != 0:
                    q = _floordiv(A[i * n + t], p)
                    if _axpy(&A[i * n + t], &A[t * n + t], q, n - t, 1):
                        return 1
                    if A[i * n + t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if A[t * n + j] != 0:
                    q = _floordiv(A[t * n + j], p)
                    if _axpy(&A[t * n + j], &A[t * n + t], q, m - t, n):
                        return 1
                    if A[t * n + j] != 0:
                        dirty = True
            if dirty:
                cbest = 0
                ci = -1
                cj = -1
                for i in range(t + 1, m):
                    a = _abs(A[i * n + t])
                    if a != 0 and (cbest == 0 or a < cbest):
                        cbest = a
                        ci = i
                        cj = t
                for j in range(t + 1, n):
                    a = _abs(A[t * n + j])
                    if a != 0 and (cbest == 0 or a < cbest):
                        cbest = a
                        ci = t
                        cj = j
                if cj == t:
                    _swap_rows(A, n, t, ci)
                else:
                    _swap_cols(A, m, n, t, cj)
                continue
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i * n + j] % p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            if _axpy(&A[t * n + t], &A[bad * n + t], -1, n - t, 1):
                return 1
        piv[npiv[0]] = _abs(A[t * n + t])
        npiv[0] += 1
        t += 1
    return 0


def int_invariant_factors(Py_ssize_t rows, Py_ssize_t cols, flat):
    cdef Py_ssize_t k, total = rows * cols, npiv = 0
    cdef long long *A
    cdef long long *piv
    cdef int err
    if rows == 0 or cols == 0:
        return []
    A = <long long *> malloc(total * sizeof(long long))
    piv = <long long *> malloc((rows if rows < cols else cols) * sizeof(long long))
    if A == NULL or piv == NULL:
        free(A)
        free(piv)
        raise MemoryError()
    try:
        for k in range(total):
            A[k] = flat[k]  # raises OverflowError for huge Python ints
        with nogil:
            err = _reduce(A, rows, cols, piv, &npiv)
        if err:
            raise OverflowError("int64 overflow during elimination")
        return [piv[k] for k in range(npiv)]
    finally:
        free(A)
        free(piv)
