"""Pure-Python bitmask graph kernels (fallback when the compiled extension
is unavailable).  Graphs are adjacency lists of int bitmasks over <= 20
vertices; vertex i corresponds to bit 1 << i."""
from __future__ import annotations

BACKEND = "python"


def reach_bits(adj, seeds: int, removed: int) -> int:
    """Bitmask of vertices reachable from ``seeds`` avoiding ``removed``
    (seed bits inside ``removed`` are dropped)."""
    reach = seeds & ~removed
    while True:
        frontier = reach
        grown = reach
        i = 0
        while frontier:
            if frontier & 1:
                grown |= adj[i]
            frontier >>= 1
            i += 1
        grown &= ~removed
        if grown == reach:
            return reach
        reach = grown


def separates_bits(adj, c: int, a: int, b: int) -> bool:
    """True iff no vertex of b\\c is reachable from a\\c avoiding c."""
    a_side = a & ~c
    b_side = b & ~c
    if not a_side or not b_side:
        return True
    return not (reach_bits(adj, a_side, c) & b_side)


def minimal_cut_masks(adj, a: int, b: int) -> list:
    """All inclusion-minimal vertex sets separating a from b, ascending.

    Brute force over every subset with a full separation table, so the
    minimality filter is a table lookup rather than a fresh reachability
    run per candidate.
    """
    n = len(adj)
    size = 1 << n
    sep = bytearray(size)
    for c in range(size):
        if separates_bits(adj, c, a, b):
            sep[c] = 1
    out = []
    for c in range(size):
        if not sep[c]:
            continue
        bits = c
        minimal = True
        while bits:
            low = bits & -bits
            if sep[c ^ low]:
                minimal = False
                break
            bits ^= low
        if minimal:
            out.append(c)
    return out
