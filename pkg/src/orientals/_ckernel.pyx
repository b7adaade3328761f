# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled movement search over 64-bit generator masks."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

from orientals._kernel_py import SearchBudgetExceeded


cdef struct Frame:
    int k
    uint64_t xi
    uint64_t xp
    uint64_t xm


def search_moves(mu_obj, odd_list, even_list, long long node_limit=0):
    cdef int n = len(even_list)
    if n > 64 or int(mu_obj).bit_length() > 64:
        raise OverflowError("compiled kernel handles at most 64 generators")
    cdef uint64_t mu = mu_obj
    cdef uint64_t *a_odd = <uint64_t *> malloc(n * sizeof(uint64_t) + 8)
    cdef uint64_t *a_even = <uint64_t *> malloc(n * sizeof(uint64_t) + 8)
    cdef uint64_t *a_bit = <uint64_t *> malloc(n * sizeof(uint64_t) + 8)
    cdef uint64_t *suffix = <uint64_t *> malloc((n + 1) * sizeof(uint64_t))
    cdef Frame *stack = <Frame *> malloc((2 * n + 2) * sizeof(Frame))
    cdef int m = 0, g, k, top
    cdef uint64_t e, o, xi, xp, xm, pi
    cdef long long nodes = 0
    cdef list results = []
    cdef bint over = False
    try:
        for g in range(n):
            e = even_list[g]
            if e & mu:
                continue
            a_even[m] = e
            a_odd[m] = odd_list[g]
            a_bit[m] = (<uint64_t> 1) << g
            m += 1
        suffix[m] = 0
        for k in range(m - 1, -1, -1):
            suffix[k] = suffix[k + 1] | a_even[k]
        top = 0
        stack[0].k = 0
        stack[0].xi = 0
        stack[0].xp = 0
        stack[0].xm = 0
        while top >= 0:
            k = stack[top].k
            xi = stack[top].xi
            xp = stack[top].xp
            xm = stack[top].xm
            top -= 1
            nodes += 1
            if node_limit and nodes > node_limit:
                over = True
                break
            if xm & ~xp & ~mu & ~suffix[k]:
                continue
            if k == m:
                if xi:
                    pi = (mu | xp) & ~xm
                    if mu == ((pi | xm) & ~xp):
                        results.append((xi, pi))
                continue
            top += 1
            stack[top].k = k + 1
            stack[top].xi = xi
            stack[top].xp = xp
            stack[top].xm = xm
            o = a_odd[k]
            e = a_even[k]
            if not ((o & xm) or (e & xp)):
                top += 1
                stack[top].k = k + 1
                stack[top].xi = xi | a_bit[k]
                stack[top].xp = xp | e
                stack[top].xm = xm | o
    finally:
        free(a_odd)
        free(a_even)
        free(a_bit)
        free(suffix)
        free(stack)
    if over:
        raise SearchBudgetExceeded(nodes)
    results.sort()
    return results, nodes
