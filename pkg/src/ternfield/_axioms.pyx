# cython: boundscheck=False, wraparound=False, cdivision=True
"""Exhaustive O(n^5) scans over dense ternary operation tables.

Both functions take flattened row-major int32 tables (index (i*n+j)*n+k) whose
entries are assumed to lie in [0, n); closure must be checked by the caller
first.  On failure the lexicographically least witness is returned, so results
are identical to the NumPy fallback in _axioms_py.
"""


def backend_name():
    return "cython"


def assoc3(const int[::1] op, Py_ssize_t n):
    """First (a,b,c,d,e) where the three regroupings of a ternary operation
    disagree, or None if the operation is totally associative."""
    cdef Py_ssize_t a, b, c, d, e
    cdef Py_ssize_t ab_base, abc, bcd, cd_base
    cdef int v1, v2, v3
    for a in range(n):
        for b in range(n):
            ab_base = (a * n + b) * n
            for c in range(n):
                abc = op[ab_base + c]
                for d in range(n):
                    bcd = op[(b * n + c) * n + d]
                    cd_base = (c * n + d) * n
                    for e in range(n):
                        v1 = op[(abc * n + d) * n + e]
                        v2 = op[(a * n + bcd) * n + e]
                        if v1 != v2:
                            return (a, b, c, d, e)
                        v3 = op[ab_base + op[cd_base + e]]
                        if v1 != v3:
                            return (a, b, c, d, e)
    return None


def distrib3(const int[::1] nu, const int[::1] tmu, Py_ssize_t n):
    """First (law, a, b, c, d, e) violating one of the three ternary
    distributivity laws of tmu over nu, or None.

    law 1: tmu(nu(a,b,c), d, e) = nu(tmu(a,d,e), tmu(b,d,e), tmu(c,d,e))
    law 2: tmu(a, nu(b,c,d), e) = nu(tmu(a,b,e), tmu(a,c,e), tmu(a,d,e))
    law 3: tmu(a, b, nu(c,d,e)) = nu(tmu(a,b,c), tmu(a,b,d), tmu(a,b,e))

    Quintuples are scanned in row-major order; at each quintuple the laws are
    tried in the order 1, 2, 3.
    """
    cdef Py_ssize_t a, b, c, d, e
    cdef Py_ssize_t ab_base, abc_n, de, a_base
    cdef int lhs, rhs, m1, m2, m3
    for a in range(n):
        a_base = a * n
        for b in range(n):
            ab_base = (a * n + b) * n
            for c in range(n):
                abc_n = nu[ab_base + c]
                for d in range(n):
                    for e in range(n):
                        de = d * n + e
                        # law 1
                        lhs = tmu[abc_n * n * n + de]
                        m1 = tmu[a * n * n + de]
                        m2 = tmu[b * n * n + de]
                        m3 = tmu[c * n * n + de]
                        rhs = nu[(m1 * n + m2) * n + m3]
                        if lhs != rhs:
                            return (1, a, b, c, d, e)
                        # law 2
                        lhs = tmu[(a_base + nu[(b * n + c) * n + d]) * n + e]
                        m1 = tmu[(a_base + b) * n + e]
                        m2 = tmu[(a_base + c) * n + e]
                        m3 = tmu[(a_base + d) * n + e]
                        rhs = nu[(m1 * n + m2) * n + m3]
                        if lhs != rhs:
                            return (2, a, b, c, d, e)
                        # law 3
                        lhs = tmu[ab_base + nu[(c * n + d) * n + e]]
                        m1 = tmu[ab_base + c]
                        m2 = tmu[ab_base + d]
                        m3 = tmu[ab_base + e]
                        rhs = nu[(m1 * n + m2) * n + m3]
                        if lhs != rhs:
                            return (3, a, b, c, d, e)
    return None
