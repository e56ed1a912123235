# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; same signatures, same results."""
from math import gcd

BACKEND = "cython"


cpdef tuple normalize(tuple nums, object den):
    cdef Py_ssize_t i, m = len(nums)
    cdef object g, c
    if den < 0:
        nums = tuple([-c for c in nums])
        den = -den
    g = den
    for i in range(m):
        c = nums[i]
        if c:
            g = gcd(g, c)
            if g == 1:
                return nums, den
    if g == den:
        for i in range(m):
            if nums[i]:
                break
        else:
            return tuple([0] * m), 1
    return tuple([c // g for c in nums]), den // g


cpdef tuple add(tuple anums, object aden, tuple bnums, object bden):
    cdef Py_ssize_t i, m = len(anums)
    if aden == bden:
        return normalize(tuple([anums[i] + bnums[i] for i in range(m)]), aden)
    return normalize(tuple([anums[i] * bden + bnums[i] * aden for i in range(m)]),
                     aden * bden)


cdef list _polymul_reduce(tuple a, tuple b, Py_ssize_t n):
    cdef Py_ssize_t i, j, k, m = n - 1
    cdef list acc = [0] * n
    cdef object ai, bj, top
    for i in range(m):
        ai = a[i]
        if not ai:
            continue
        for j in range(m):
            bj = b[j]
            if bj:
                k = i + j
                if k >= n:
                    k -= n
                acc[k] = acc[k] + ai * bj
    top = acc[m]
    if top:
        for i in range(m):
            acc[i] = acc[i] - top
    del acc[m]
    return acc


cpdef tuple mul(tuple anums, object aden, tuple bnums, object bden, Py_ssize_t n):
    return normalize(tuple(_polymul_reduce(anums, bnums, n)), aden * bden)


cdef bint _is_zero(tuple v):
    cdef object c
    for c in v:
        if c:
            return False
    return True


cpdef tuple dot(object row, object col, Py_ssize_t n):
    cdef Py_ssize_t i, m = n - 1
    cdef list total = [0] * m
    cdef list p
    cdef object tden = 1, pden, g, lcm, sf, pf
    cdef tuple anums, bnums
    for (anums, aden), (bnums, bden) in zip(row, col):
        if _is_zero(anums) or _is_zero(bnums):
            continue
        p = _polymul_reduce(anums, bnums, n)
        pden = aden * bden
        if pden == tden:
            for i in range(m):
                total[i] = total[i] + p[i]
        else:
            g = gcd(pden, tden)
            lcm = tden // g * pden
            sf = lcm // tden
            pf = lcm // pden
            for i in range(m):
                total[i] = total[i] * sf + p[i] * pf
            tden = lcm
    return normalize(tuple(total), tden)


cpdef tuple matmul(tuple A, tuple B, Py_ssize_t n):
    cdef tuple cols = tuple(zip(*B))
    return tuple([tuple([dot(row, col, n) for col in cols]) for row in A])
