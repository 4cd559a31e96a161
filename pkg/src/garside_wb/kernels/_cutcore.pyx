# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled bitmask graph kernels: reachability, separation and brute-force
minimal-cut enumeration over <= 20 vertices.  Mirrors _purepy exactly."""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


cdef unsigned int _reach(unsigned int *adj, int n, unsigned int seeds,
                         unsigned int removed) noexcept nogil:
    cdef unsigned int reach = seeds & ~removed
    cdef unsigned int grown, frontier
    cdef int i
    while True:
        grown = reach
        frontier = reach
        i = 0
        while frontier:
            if frontier & 1u:
                grown |= adj[i]
            frontier >>= 1
            i += 1
        grown &= ~removed
        if grown == reach:
            return reach
        reach = grown


cdef int _separates(unsigned int *adj, int n, unsigned int c,
                    unsigned int a, unsigned int b) noexcept nogil:
    cdef unsigned int a_side = a & ~c
    cdef unsigned int b_side = b & ~c
    if a_side == 0 or b_side == 0:
        return 1
    return (_reach(adj, n, a_side, c) & b_side) == 0


cdef unsigned int *_load_adj(object adj_list, int n) except NULL:
    cdef unsigned int *adj = <unsigned int *> malloc(n * sizeof(unsigned int))
    if adj == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        adj[i] = adj_list[i]
    return adj


def reach_bits(adj_list, unsigned int seeds, unsigned int removed):
    cdef int n = len(adj_list)
    cdef unsigned int *adj = _load_adj(adj_list, n)
    try:
        return int(_reach(adj, n, seeds, removed))
    finally:
        free(adj)


def separates_bits(adj_list, unsigned int c, unsigned int a, unsigned int b):
    cdef int n = len(adj_list)
    cdef unsigned int *adj = _load_adj(adj_list, n)
    try:
        return bool(_separates(adj, n, c, a, b))
    finally:
        free(adj)


def minimal_cut_masks(adj_list, unsigned int a, unsigned int b):
    cdef int n = len(adj_list)
    if n > 20:
        raise ValueError("kernel supports at most 20 vertices")
    cdef unsigned int size = 1u << n
    cdef unsigned int *adj = _load_adj(adj_list, n)
    cdef char *sep = <char *> malloc(size)
    if sep == NULL:
        free(adj)
        raise MemoryError()
    cdef unsigned int c, bits, low
    cdef int minimal
    out = []
    try:
        with nogil:
            for c in range(size):
                sep[c] = <char> _separates(adj, n, c, a, b)
        for c in range(size):
            if not sep[c]:
                continue
            minimal = 1
            bits = c
            while bits:
                low = bits & (0 - bits)
                if sep[c ^ low]:
                    minimal = 0
                    break
                bits ^= low
            if minimal:
                out.append(int(c))
        return out
    finally:
        free(sep)
        free(adj)
