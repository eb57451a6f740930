"""NumPy fallback for the exhaustive O(n^5) table scans.

Same contract as the compiled extension: flattened row-major int32 tables,
entries in [0, n), lexicographically least witness.  The scans broadcast one
outer index at a time so peak memory stays at a few n^4 slices.
"""

import numpy as np


def backend_name():
    return "numpy"


def _as_cube(op, n):
    arr = np.ascontiguousarray(op, dtype=np.int32).reshape(n, n, n)
    return arr


def assoc3(op, n):
    """First (a,b,c,d,e) where the three regroupings of a ternary operation
    disagree, or None if the operation is totally associative."""
    t = _as_cube(op, n)
    for a in range(n):
        ta = t[a]
        v1 = t[ta]                # [b,c][d,e] = t[t[a,b,c],d,e]
        v2 = ta[t, :]             # [b,c,d][e] = t[a,t[b,c,d],e]
        v3 = ta[:, t]             # [b][c,d,e] = t[a,b,t[c,d,e]]
        bad = (v1 != v2) | (v1 != v3)
        if bad.any():
            b, c, d, e = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return (a, int(b), int(c), int(d), int(e))
    return None


def distrib3(nu, tmu, n):
    """First (law, a, b, c, d, e) violating one of the three ternary
    distributivity laws of tmu over nu, or None.  Law order matches the
    compiled kernel: quintuples row-major, laws 1, 2, 3 at each quintuple."""
    s = _as_cube(nu, n)
    m = _as_cube(tmu, n)
    for a in range(n):
        ma = m[a]
        # law 1: m[s[a,b,c],d,e] == s[m[a,d,e], m[b,d,e], m[c,d,e]]
        lhs1 = m[s[a]]                                     # [b,c,d,e]
        rhs1 = s[ma[np.newaxis, np.newaxis, :, :],
                 m[:, np.newaxis, :, :],
                 m[np.newaxis, :, :, :]]
        bad1 = lhs1 != rhs1
        # law 2: m[a,s[b,c,d],e] == s[m[a,b,e], m[a,c,e], m[a,d,e]]
        lhs2 = ma[s, :]                                    # [b,c,d,e]
        rhs2 = s[ma[:, np.newaxis, np.newaxis, :],
                 ma[np.newaxis, :, np.newaxis, :],
                 ma[np.newaxis, np.newaxis, :, :]]
        bad2 = lhs2 != rhs2
        # law 3: m[a,b,s[c,d,e]] == s[m[a,b,c], m[a,b,d], m[a,b,e]]
        lhs3 = ma[:, s]                                    # [b,c,d,e]
        rhs3 = s[ma[:, :, np.newaxis, np.newaxis],
                 ma[:, np.newaxis, :, np.newaxis],
                 ma[:, np.newaxis, np.newaxis, :]]
        bad3 = lhs3 != rhs3
        bad = bad1 | bad2 | bad3
        if bad.any():
            b, c, d, e = np.unravel_index(int(np.argmax(bad)), bad.shape)
            if bad1[b, c, d, e]:
                law = 1
            elif bad2[b, c, d, e]:
                law = 2
            else:
                law = 3
            return (law, a, int(b), int(c), int(d), int(e))
    return None
