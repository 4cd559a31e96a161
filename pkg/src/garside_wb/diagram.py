"""Coxeter diagrams and the elementary graph predicates everything else uses.

A diagram is a finite simple graph with vertex ids that are opaque strings and
edge labels m >= 3 or infinity; a missing edge means label 2 (commuting
generators).  The graph-theoretic helpers here (separation, components, tight
paths, peripheral vertices, path selection) only look at the underlying graph
and ignore labels.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
from collections import deque
from typing import Iterable, Mapping, Optional, Sequence

from . import kernels

#: Edge label for (st)^m with m = infinity.  Participates in no arithmetic
#: outside the coxeter module.
INFINITY = float("inf")

VertexSet = frozenset


class DiagramError(ValueError):
    """Malformed diagram input or unknown vertex id."""


@dataclasses.dataclass(frozen=True)
class CoxeterDiagram:
    """Labeled simple graph. ``labels`` maps frozenset({u, v}) to m >= 3."""

    vertices: frozenset
    labels: Mapping

    def __post_init__(self):
        for pair, m in self.labels.items():
            if len(pair) != 2:
                raise DiagramError(f"loop or malformed edge {set(pair)!r}")
            if not pair <= self.vertices:
                raise DiagramError(f"edge {set(pair)!r} uses unknown vertex")
            if m != INFINITY and (not isinstance(m, int) or m < 3):
                raise DiagramError(f"label < 3 on edge {set(pair)!r}: {m!r}")

    # -- basic queries ------------------------------------------------------

    def check_vertices(self, *vertex_sets: Iterable) -> None:
        for vs in vertex_sets:
            for v in vs:
                if v not in self.vertices:
                    raise DiagramError(f"unknown vertex id {v!r}")

    def label(self, u, v):
        """Coxeter label m(u,v); 2 when no edge is drawn."""
        return self.labels.get(frozenset((u, v)), 2)

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.labels

    def neighbors(self, v) -> frozenset:
        return frozenset(w for w in self.vertices if self.adjacent(v, w))

    def edges(self):
        """Edges as sorted pairs, deterministic order."""
        return sorted(tuple(sorted(pair)) for pair in self.labels)

    def induced(self, keep: Iterable) -> "CoxeterDiagram":
        keep = frozenset(keep)
        self.check_vertices(keep)
        return CoxeterDiagram(
            keep, {p: m for p, m in self.labels.items() if p <= keep}
        )

    def valence(self, v) -> int:
        return len(self.neighbors(v))

    # -- connectivity -------------------------------------------------------

    def reach(self, seeds: Iterable, removed: Iterable = ()) -> frozenset:
        """Vertices reachable from ``seeds`` in the graph minus ``removed``.

        Seeds inside ``removed`` are dropped.
        """
        removed = frozenset(removed)
        seen = set(s for s in seeds if s in self.vertices - removed)
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for w in self.neighbors(v):
                if w not in seen and w not in removed:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def components(self, removed: Iterable = ()) -> list:
        removed = frozenset(removed)
        left = set(self.vertices) - removed
        comps = []
        while left:
            comp = self.reach([min(left)], removed)
            comps.append(comp)
            left -= comp
        return sorted(comps, key=sorted)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


# ---------------------------------------------------------------------------
# JSON interchange


def parse_diagram(data: dict) -> CoxeterDiagram:
    """Build a diagram from the decoded JSON object."""
    if not isinstance(data, dict) or set(data) != {"vertices", "edges"}:
        raise DiagramError("expected object with fields 'vertices' and 'edges'")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or len(set(vertices)) != len(vertices):
        raise DiagramError("field 'vertices': expected list of unique ids")
    labels = {}
    for i, edge in enumerate(data["edges"]):
        if not (isinstance(edge, list) and len(edge) == 3):
            raise DiagramError(f"edges[{i}]: expected [id, id, label]")
        u, v, m = edge
        if u == v:
            raise DiagramError(f"edges[{i}]: loop at {u!r}")
        if m == "inf":
            m = INFINITY
        elif not isinstance(m, int) or m < 3:
            raise DiagramError(f"edges[{i}]: label < 3 (got {m!r})")
        pair = frozenset((u, v))
        if pair in labels:
            raise DiagramError(f"edges[{i}]: duplicate edge {u!r}-{v!r}")
        labels[pair] = m
    return CoxeterDiagram(frozenset(vertices), labels)


def load_diagram(text: str) -> CoxeterDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"parse error at line {exc.lineno}: {exc.msg}") from exc
    return parse_diagram(data)


def canonical_json(diagram: CoxeterDiagram) -> bytes:
    """Canonical byte form used for hashing: sorted, UTF-8, no whitespace."""
    edges = [
        [*sorted(pair), "inf" if m == INFINITY else m]
        for pair, m in diagram.labels.items()
    ]
    data = {"vertices": sorted(diagram.vertices), "edges": sorted(edges)}
    return json.dumps(data, separators=(",", ":"), sort_keys=True).encode()


def diagram_hash(diagram: CoxeterDiagram) -> str:
    return hashlib.sha256(canonical_json(diagram)).hexdigest()


def diagram_from_edges(edges: Sequence, extra_vertices: Iterable = ()) -> CoxeterDiagram:
    """Convenience constructor: edges as (u, v) or (u, v, m) tuples."""
    labels = {}
    vertices = set(extra_vertices)
    for edge in edges:
        u, v, *rest = edge
        labels[frozenset((u, v))] = rest[0] if rest else 3
        vertices.update((u, v))
    return CoxeterDiagram(frozenset(vertices), labels)


# ---------------------------------------------------------------------------
# Separation and paths


def _bit_tables(diagram: CoxeterDiagram):
    """Vertex index and adjacency bitmasks, cached on the diagram."""
    tables = diagram.__dict__.get("_bit_tables")
    if tables is None:
        index = {v: i for i, v in enumerate(sorted(diagram.vertices))}
        adj = [0] * len(index)
        for pair in diagram.labels:
            u, v = tuple(pair)
            adj[index[u]] |= 1 << index[v]
            adj[index[v]] |= 1 << index[u]
        tables = (index, adj)
        object.__setattr__(diagram, "_bit_tables", tables)
    return tables


def separates(diagram: CoxeterDiagram, C, A, B) -> bool:
    """True iff every x in A\\C, y in B\\C lie in different components of
    the diagram minus C (vacuously true when either difference is empty)."""
    diagram.check_vertices(C, A, B)
    if len(diagram.vertices) <= 20:
        try:
            index, adj = _bit_tables(diagram)
        except TypeError:  # unsortable mixed vertex ids
            pass
        else:
            cm = am = bm = 0
            for v in C:
                cm |= 1 << index[v]
            for v in A:
                am |= 1 << index[v]
            for v in B:
                bm |= 1 << index[v]
            return kernels.separates_bits(adj, cm, am, bm)
    C = frozenset(C)
    a_side = frozenset(A) - C
    b_side = frozenset(B) - C
    if not a_side or not b_side:
        return True
    return not (diagram.reach(a_side, C) & b_side)


def tight_path(diagram, start, end, tight_sets=(), forbidden=()) -> Optional[tuple]:
    """A path from start to end meeting each set in ``tight_sets`` exactly
    once (as a path vertex) and avoiding ``forbidden``; None if impossible.

    Exhaustive search over simple paths with early pruning on the counts.
    """
    diagram.check_vertices([start, end], forbidden, *tight_sets)
    forbidden = frozenset(forbidden)
    tight_sets = [frozenset(t) for t in tight_sets]
    if start in forbidden or end in forbidden:
        return None

    def hits(v):
        return [i for i, t in enumerate(tight_sets) if v in t]

    def ok_final(counts):
        return all(c == 1 for c in counts)

    best: list = []

    def dfs(path, counts):
        if best:
            return
        v = path[-1]
        if v == end:
            if ok_final(counts):
                best.append(tuple(path))
            return
        for w in sorted(diagram.neighbors(v)):
            if w in forbidden or w in path:
                continue
            new_counts = list(counts)
            over = False
            for i in hits(w):
                new_counts[i] += 1
                if new_counts[i] > 1:
                    over = True
            if over:
                continue
            path.append(w)
            dfs(path, new_counts)
            path.pop()

    counts = [0] * len(tight_sets)
    for i in hits(start):
        counts[i] += 1
    if any(c > 1 for c in counts):
        return None
    dfs([start], counts)
    return best[0] if best else None


def peripheral_vertex(diagram: CoxeterDiagram, X, avoid=None):
    """A vertex x of X such that X\\{x} lies in one component of the diagram
    minus x; x != avoid when avoid is given.  Smallest valid id wins."""
    diagram.check_vertices(X)
    if not diagram.is_connected():
        raise DiagramError("diagram must be connected")
    X = frozenset(X)
    if not X:
        raise DiagramError("X must be nonempty")
    if avoid is not None and len(X) <= 1:
        raise DiagramError("avoid requires |X| > 1")
    for x in sorted(X):
        if x == avoid:
            continue
        rest = X - {x}
        if not rest:
            return x
        comp = diagram.reach([min(rest)], {x})
        if rest <= comp:
            return x
    raise DiagramError("no peripheral vertex found")  # pragma: no cover


# ---------------------------------------------------------------------------
# The path P


class PathError(ValueError):
    """Path violates the structural requirements; rejected, never repaired."""


@dataclasses.dataclass(frozen=True)
class PathP:
    """Path a .. b whose interior vertices have valence 2 in the diagram.

    Embedded except possibly a = b (a closed cycle); endpoints may not be
    valence-1 vertices of the diagram.
    """

    diagram: CoxeterDiagram
    sequence: tuple

    def __post_init__(self):
        seq = self.sequence
        self.diagram.check_vertices(seq)
        if len(seq) < 2:
            raise PathError("path must be nontrivial")
        closed = seq[0] == seq[-1]
        body = seq[:-1] if closed else seq
        if len(set(body)) != len(body):
            raise PathError("path must be embedded (except possibly a = b)")
        for u, v in zip(seq, seq[1:]):
            if not self.diagram.adjacent(u, v):
                raise PathError(f"{u!r}-{v!r} is not an edge")
        for v in self.interior:
            if self.diagram.valence(v) != 2:
                raise PathError(f"interior vertex {v!r} has valence != 2")
        for endpoint in (self.a, self.b):
            if self.diagram.valence(endpoint) == 1:
                raise PathError(f"endpoint {endpoint!r} has valence 1")

    @property
    def a(self):
        return self.sequence[0]

    @property
    def b(self):
        return self.sequence[-1]

    @property
    def closed(self) -> bool:
        return self.a == self.b

    @property
    def interior(self) -> tuple:
        return self.sequence[1:-1]

    @property
    def support(self) -> frozenset:
        return frozenset(self.sequence)

    def diagram_minus_interior(self) -> CoxeterDiagram:
        """The host diagram minus the interior vertices of the path."""
        return self.diagram.induced(self.diagram.vertices - set(self.interior))


def induced_cycles(diagram: CoxeterDiagram) -> list:
    """All induced cycles, each as a canonical vertex tuple.

    Canonical form: rotated/reflected so the smallest vertex comes first and
    its smaller neighbor second.  Exhaustive; guarded to |V| <= 16.
    """
    if len(diagram.vertices) > 16:
        raise DiagramError("diagram too large for induced-cycle search")
    cycles = set()
    order = sorted(diagram.vertices)

    def canonical(cycle):
        i = cycle.index(min(cycle))
        rot = cycle[i:] + cycle[:i]
        rev = (rot[0],) + tuple(reversed(rot[1:]))
        return min(rot, rev)

    def extend(path):
        v = path[-1]
        for w in sorted(diagram.neighbors(v)):
            if w == path[0] and len(path) >= 3:
                # induced: no chords among path vertices
                chord = any(
                    diagram.adjacent(p, q)
                    for i, p in enumerate(path)
                    for q in path[i + 2 :]
                    if not (i == 0 and q == path[-1])
                )
                if not chord:
                    cycles.add(canonical(tuple(path)))
            elif w not in path and w > path[0]:
                # chords to interior vertices are pruned here; a chord to
                # path[0] is only legal for the closing vertex and is caught
                # by the closure check above
                if all(not diagram.adjacent(w, p) for p in path[1:-1]):
                    extend(path + (w,))

    for v in order:
        extend((v,))
    return sorted(cycles)


def select_path(diagram: CoxeterDiagram, s) -> PathP:
    """The path P of the tree-reduction step: take an induced cycle C nearest
    to s, let s* be the unique nearest vertex of C, and return the maximal
    subpath of C starting at s* whose interior vertices have valence 2 in the
    diagram (the whole cycle when no other branch vertex interrupts it)."""
    diagram.check_vertices([s])
    if not diagram.is_connected():
        raise DiagramError("diagram must be connected")
    cycles = induced_cycles(diagram)
    if not cycles:
        raise DiagramError("diagram is a forest: no induced cycle")

    # distance from s to every vertex
    dist = {s: 0}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in sorted(diagram.neighbors(v)):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)

    cycle = min(cycles, key=lambda c: (min(dist[v] for v in c), tuple(sorted(c))))
    d0 = min(dist[v] for v in cycle)
    nearest = sorted(v for v in cycle if dist[v] == d0)
    assert len(nearest) == 1, f"nearest vertex on cycle not unique: {nearest}"
    s_low = nearest[0]

    k = len(cycle)
    i0 = cycle.index(s_low)

    def arc(direction):
        # walk around the cycle from s_low while interior vertices are free
        seq = [s_low]
        for step in range(1, k + 1):
            v = cycle[(i0 + direction * step) % k]
            seq.append(v)
            if v == s_low or diagram.valence(v) != 2:
                break
        return tuple(seq)

    # deterministic tie-break: longest arc first, then lexicographically
    candidates = [arc(+1), arc(-1)]
    longest = max(len(c) for c in candidates)
    best = min(c for c in candidates if len(c) == longest)
    return PathP(diagram, best)
