# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitset branch-and-bound kernel for maximum independent set.

Same contract as `_mis_py.solve_masks`, limited to 64 vertices (callers
fall back to the pure kernel above that).
"""

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef struct State:
    unsigned long long masks[64]
    unsigned long long best_mask
    int best_size


cdef void _search(State *st, unsigned long long avail,
                  unsigned long long cur_mask, int cur_size) noexcept nogil:
    cdef unsigned long long m, bit
    cdef int v, d, pivot, pivot_deg, low
    while avail:
        if cur_size + __builtin_popcountll(avail) <= st.best_size:
            return
        pivot = -1
        pivot_deg = -1
        low = -1
        m = avail
        while m:
            v = __builtin_ctzll(m)
            m &= m - 1
            d = __builtin_popcountll(st.masks[v] & avail)
            if d <= 1:
                low = v
                break
            if d > pivot_deg:
                pivot_deg = d
                pivot = v
        if low >= 0:
            bit = (<unsigned long long>1) << low
            cur_mask |= bit
            cur_size += 1
            avail &= ~(st.masks[low] | bit)
            continue
        bit = (<unsigned long long>1) << pivot
        _search(st, avail & ~bit, cur_mask, cur_size)
        cur_mask |= bit
        cur_size += 1
        avail &= ~(st.masks[pivot] | bit)
    if cur_size > st.best_size:
        st.best_size = cur_size
        st.best_mask = cur_mask


def solve_masks(masks):
    """Return the bitmask of one maximum independent set (n <= 64)."""
    cdef int n = len(masks)
    if n == 0:
        return 0
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef State st
    cdef int i
    for i in range(n):
        st.masks[i] = masks[i]
    st.best_mask = 0
    st.best_size = 0
    cdef unsigned long long full = 0
    if n == 64:
        full = <unsigned long long>0xFFFFFFFFFFFFFFFF
    else:
        full = ((<unsigned long long>1) << n) - 1
    _search(&st, full, 0, 0)
    return st.best_mask
