"""Minimal vertex cuts between two vertex sets and their lattice structure.

A minimal cut C separates A from B (vacuously when A\\C or B\\C is empty)
and no proper subset of C does.  The family of all minimal cuts is ordered
by proper inclusion of A-sides and is a lattice; meet and join are built
constructively from the reachable-set boundary, not by scanning the poset.
"""
from __future__ import annotations

import dataclasses
from typing import Iterable

from . import kernels
from .diagram import CoxeterDiagram, separates

HARD_VERTEX_LIMIT = 20


class MincutError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class BitContext:
    """Fixed vertex ordering of a diagram plus bitmask adjacency."""

    order: tuple
    adj: tuple

    @classmethod
    def of(cls, diagram: CoxeterDiagram) -> "BitContext":
        order = tuple(sorted(diagram.vertices))
        index = {v: i for i, v in enumerate(order)}
        adj = [0] * len(order)
        for pair in diagram.labels:
            u, v = sorted(pair)
            adj[index[u]] |= 1 << index[v]
            adj[index[v]] |= 1 << index[u]
        return cls(order, tuple(adj))

    def mask(self, vertices: Iterable) -> int:
        index = {v: i for i, v in enumerate(self.order)}
        m = 0
        for v in vertices:
            m |= 1 << index[v]
        return m

    def unmask(self, m: int) -> frozenset:
        return frozenset(v for i, v in enumerate(self.order) if m >> i & 1)


class MincutFamily:
    """Mincut_Λ(A,B) with cached sides and the lattice order."""

    def __init__(self, diagram: CoxeterDiagram, A, B):
        diagram.check_vertices(A, B)
        if len(diagram.vertices) > HARD_VERTEX_LIMIT:
            raise MincutError(
                f"diagram exceeds hard limit of {HARD_VERTEX_LIMIT} vertices"
            )
        self.diagram = diagram
        self.A = frozenset(A)
        self.B = frozenset(B)
        self._ctx = BitContext.of(diagram)
        a_mask = self._ctx.mask(self.A)
        b_mask = self._ctx.mask(self.B)
        masks = kernels.minimal_cut_masks(self._ctx.adj, a_mask, b_mask)
        self.cuts = tuple(sorted((self._ctx.unmask(m) for m in masks), key=sorted))
        self._side_a = {}
        self._side_b = {}
        for cut in self.cuts:
            cm = self._ctx.mask(cut)
            self._side_a[cut] = self._ctx.unmask(
                kernels.reach_bits(self._ctx.adj, a_mask, cm)
            )
            self._side_b[cut] = self._ctx.unmask(
                kernels.reach_bits(self._ctx.adj, b_mask, cm)
            )
        if __debug__:
            sides = list(self._side_a.values())
            assert len(set(sides)) == len(sides), "distinct cuts share an A-side"

    # -- queries ------------------------------------------------------------

    def __len__(self):
        return len(self.cuts)

    def __iter__(self):
        return iter(self.cuts)

    def __contains__(self, cut):
        return frozenset(cut) in self._side_a

    def _require(self, *cuts):
        out = []
        for cut in cuts:
            cut = frozenset(cut)
            if cut not in self._side_a:
                raise MincutError(f"cut {sorted(cut)} not in family")
            out.append(cut)
        return out

    def side_a(self, cut) -> frozenset:
        """Φ^A: union of components of Λ\\Φ meeting A\\Φ."""
        (cut,) = self._require(cut)
        return self._side_a[cut]

    def side_b(self, cut) -> frozenset:
        (cut,) = self._require(cut)
        return self._side_b[cut]

    def compare(self, cut1, cut2) -> str:
        """'less' | 'greater' | 'equal' | 'incomparable' in the A-side order."""
        cut1, cut2 = self._require(cut1, cut2)
        if cut1 == cut2:
            return "equal"
        s1, s2 = self._side_a[cut1], self._side_a[cut2]
        if __debug__:
            self._assert_comparable_equivalences(cut1, cut2)
        if s1 < s2:
            return "less"
        if s2 < s1:
            return "greater"
        return "incomparable"

    def _assert_comparable_equivalences(self, cut1, cut2):
        # the four equivalent characterizations of comparability must agree
        c1 = self._side_a[cut1] <= self._side_a[cut2]
        c2 = self._side_b[cut1] >= self._side_b[cut2]
        c3 = separates(self.diagram, cut1, cut2, self.A)
        c4 = separates(self.diagram, cut2, cut1, self.B)
        assert c1 == c2 == c3 == c4, (sorted(cut1), sorted(cut2), c1, c2, c3, c4)

    def less(self, cut1, cut2) -> bool:
        return self.compare(cut1, cut2) == "less"

    # -- lattice operations -------------------------------------------------

    def _bound(self, cut1, cut2, seeds, seed_sets) -> frozenset:
        union = self._ctx.mask(cut1 | cut2)
        e = kernels.reach_bits(self._ctx.adj, self._ctx.mask(seeds), union)
        e_set = self._ctx.unmask(e)
        boundary = frozenset(
            w for v in e_set for w in self.diagram.neighbors(v)
        ) - e_set
        result = boundary | (cut1 & seed_sets) | (cut2 & seed_sets)
        if result not in self._side_a:
            raise AssertionError(
                f"constructed bound {sorted(result)} escaped the family"
            )
        assert result <= cut1 | cut2
        return result

    def meet(self, cut1, cut2) -> frozenset:
        """∂E ∪ (Φ1∩A) ∪ (Φ2∩A), E = vertices reachable from A off Φ1∪Φ2."""
        cut1, cut2 = self._require(cut1, cut2)
        return self._bound(cut1, cut2, self.A, self.A)

    def join(self, cut1, cut2) -> frozenset:
        cut1, cut2 = self._require(cut1, cut2)
        return self._bound(cut1, cut2, self.B, self.B)

    # -- presentation -------------------------------------------------------

    def hasse_edges(self) -> list:
        """Covering pairs (lower, upper) of the order, deterministically."""
        edges = []
        for x in self.cuts:
            for y in self.cuts:
                if x != y and self.less(x, y):
                    if not any(
                        self.less(x, z) and self.less(z, y)
                        for z in self.cuts
                        if z not in (x, y)
                    ):
                        edges.append((x, y))
        return sorted(edges, key=lambda e: (sorted(e[0]), sorted(e[1])))


def enumerate_mincuts(diagram: CoxeterDiagram, A, B) -> MincutFamily:
    return MincutFamily(diagram, A, B)
