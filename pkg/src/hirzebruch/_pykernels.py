"""Pure-Python arithmetic kernels for Q(zeta_n), n prime.

An element is a pair ``(nums, den)``: ``nums`` is a tuple of ``n - 1`` Python
ints (power-basis coefficients over the common denominator ``den > 0``).
Results are always returned in lowest terms.  ``_ckernels.pyx`` is a line-by-line
port of this module and must stay in sync with it.
"""
from math import gcd

BACKEND = "python"


def normalize(nums, den):
    if den < 0:
        nums = tuple(-c for c in nums)
        den = -den
    g = den
    for c in nums:
        if c:
            g = gcd(g, c)
            if g == 1:
                return tuple(nums), den
    if g == den and not any(nums):
        return tuple(0 for _ in nums), 1
    return tuple(c // g for c in nums), den // g


def add(anums, aden, bnums, bden):
    if aden == bden:
        return normalize(tuple(x + y for x, y in zip(anums, bnums)), aden)
    return normalize(tuple(x * bden + y * aden for x, y in zip(anums, bnums)),
                     aden * bden)


def _polymul_reduce(a, b, n):
    # product of two polynomials of degree <= n-2, reduced mod 1 + x + ... + x^(n-1)
    m = n - 1
    acc = [0] * n
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
                acc[k] += ai * bj
    top = acc[m]
    if top:
        return tuple(acc[i] - top for i in range(m))
    return tuple(acc[:m])


def mul(anums, aden, bnums, bden, n):
    return normalize(_polymul_reduce(anums, bnums, n), aden * bden)


def dot(row, col, n):
    """Sum of ``row[k] * col[k]`` for sequences of ``(nums, den)`` pairs."""
    m = n - 1
    total = [0] * m
    tden = 1
    for (anums, aden), (bnums, bden) in zip(row, col):
        if not any(anums) or not any(bnums):
            continue
        p = _polymul_reduce(anums, bnums, n)
        pden = aden * bden
        if pden == tden:
            for i in range(m):
                total[i] += p[i]
        else:
            g = gcd(pden, tden)
            lcm = tden // g * pden
            sf, pf = lcm // tden, lcm // pden
            for i in range(m):
                total[i] = total[i] * sf + p[i] * pf
            tden = lcm
    return normalize(tuple(total), tden)


def matmul(A, B, n):
    """Product of matrices given as tuples of rows of ``(nums, den)`` pairs."""
    cols = tuple(zip(*B))
    return tuple(tuple(dot(row, col, n) for col in cols) for row in A)
