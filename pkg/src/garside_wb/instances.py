"""Concrete hat-complex providers and windowed complex builders.

Two infinite providers implement the engine protocol exactly: Z^n with the
diagonal as the Garside element (intervals are Boolean lattices), and the
braid group on n strands with permutation simples under the left weak
order.  Both carry closed-form distance shortcuts whose agreement with
plain breadth-first search is a test obligation, not an assumption.

Windowed builders turn these and Coxeter group windows into finite
cyclically ordered complexes (``FiniteComplex``), including the shadow of
the minimal-cut complex where vertices are cosets typed by a cut family.
``iso_check`` decides type- and cyclic-order-preserving isomorphism of two
finite complexes; ``four_cycle_search`` enumerates alternating 4-cycles
and looks for link centers.  All reports are verdict lists over what was
searched -- never claims about the infinite objects.
"""
from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable, Optional

from . import coxeter as cx
from .diagram import CoxeterDiagram, PathP
from .garside import FiniteComplex, GarsideError, _canon_cycle
from .mincut import enumerate_mincuts
from .order import CPFamily

#: Rank bounds for the shipped provider families.
MIN_RANK = 2
MAX_RANK = 7

#: Above this vertex count 4-cycle enumeration must be seeded sampling.
FOUR_CYCLE_EXACT_CAP = 10_000

#: Window margin (in representative word length) inside which a link
#: computation counts as fully windowed rather than inconclusive.
WINDOW_MARGIN = 2


class InstanceError(GarsideError):
    pass


def _check_rank(n: int) -> None:
    if not (MIN_RANK <= n <= MAX_RANK):
        raise InstanceError(f"rank must be in [{MIN_RANK}, {MAX_RANK}], got {n}")


# ---------------------------------------------------------------------------
# Z^n provider


class ZnProvider:
    """Hat complex of Z^n: vertices are integer n-tuples, rank is the
    coordinate sum, phi adds the diagonal Delta = (1, ..., 1).  The
    interval [x, phi(x)] is the Boolean lattice of 0/1 offsets; the base
    complex is Z^n modulo Delta with the minimum-zero representative."""

    def __init__(self, n: int):
        _check_rank(n)
        self.n = n
        self.period = n
        self.delta = (1,) * n
        #: simple steps except identity, ending with the full diagonal
        self.steps = tuple(
            e for e in itertools.product((0, 1), repeat=n)
            if any(e) and not all(e)
        ) + (self.delta,)

    # -- protocol -----------------------------------------------------------

    def rank(self, v) -> int:
        return sum(v)

    def phi(self, v):
        return tuple(a + 1 for a in v)

    def phi_inv(self, v):
        return tuple(a - 1 for a in v)

    def up_neighbors(self, v):
        return [tuple(a + b for a, b in zip(v, e)) for e in self.steps]

    def down_neighbors(self, v):
        return [tuple(a - b for a, b in zip(v, e)) for e in self.steps]

    def leq_t(self, u, v) -> bool:
        return all(a <= b for a, b in zip(u, v))

    def base(self, v):
        m = min(v)
        return tuple(a - m for a in v)

    def lift(self, x):
        if min(x) != 0:
            raise InstanceError(f"{x!r} is not a base representative")
        return x

    def base_neighbors(self, x):
        return frozenset(
            self.base(tuple(a + b for a, b in zip(x, e)))
            for e in self.steps[:-1]
        )

    # -- shortcuts (cross-checked against BFS in the tests) -----------------

    def is_up_edge(self, u, v) -> bool:
        diff = tuple(b - a for a, b in zip(u, v))
        return any(diff) and all(d in (0, 1) for d in diff)

    def up_lift(self, v, base_vertex):
        d = [a - b for a, b in zip(v, base_vertex)]
        if max(d) - min(d) > 1:
            raise GarsideError(
                f"{base_vertex!r} is not adjacent below a translate of {v!r}"
            )
        c = max(d) if max(d) > min(d) else d[0] + 1
        return tuple(b + c for b in base_vertex)

    def alpha_step(self, x, y):
        return tuple(a + (1 if b > a else 0) for a, b in zip(x, y))

    def beta_step(self, x, y):
        return tuple(b - (1 if b > a else 0) for a, b in zip(x, y))

    def hat_distance(self, u, v) -> int:
        diff = [b - a for a, b in zip(u, v)]
        return max(max(diff), 0) + max(-min(diff), 0)

    def base_distance(self, a, b) -> int:
        diff = [y - x for x, y in zip(a, b)]
        return min(
            max(max(diff) + c, 0) + max(-min(diff) - c, 0)
            for c in range(-max(diff) - 1, -min(diff) + 2)
        )


def zn_provider(n: int) -> ZnProvider:
    return ZnProvider(n)


def zn_base_complex(n: int, radius: int) -> FiniteComplex:
    """Ball of the given graph-distance radius around the origin of the
    base complex of Z^n, with cyclic orders by coordinate-sum residue."""
    prov = ZnProvider(n)
    origin = (0,) * n
    dist = {origin: 0}
    frontier = [origin]
    while frontier:
        nxt = []
        for x in frontier:
            for y in prov.base_neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if dist[y] < radius:
                        nxt.append(y)
        frontier = nxt
    vertices = tuple(sorted(dist))
    keep = set(vertices)
    edges = frozenset(
        frozenset((x, y))
        for x in vertices
        for y in prov.base_neighbors(x)
        if y in keep
    )
    f = {x: sum(x) % n for x in vertices}
    skeleton = FiniteComplex(vertices, edges, ())
    orders = tuple(
        tuple(sorted(c, key=lambda v: f[v]))
        for c in sorted(skeleton.maximal_cliques(), key=sorted)
        if len(c) >= 2
    )
    return FiniteComplex(vertices, edges, orders, rank=f, period=n,
                         types=dict(f))


# ---------------------------------------------------------------------------
# Braid provider: permutation simples under the left weak order


def _compose(u: tuple, v: tuple) -> tuple:
    """Apply u then v: (u * v)(i) = v(u(i)), so prefix divisibility of
    positive braids matches inversion-set containment."""
    return tuple(v[j] for j in u)


class _SymTables:
    """Per-strand-count tables for the symmetric group: inversion sets,
    longest element, twist, complements, and cached lattice operations on
    the left weak order."""

    def __init__(self, n: int):
        self.n = n
        self.identity = tuple(range(n))
        self.w0 = tuple(range(n - 1, -1, -1))
        self.perms = tuple(itertools.permutations(range(n)))
        self.inv_set = {
            p: frozenset(
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if p[i] > p[j]
            )
            for p in self.perms
        }
        self.length = {p: len(s) for p, s in self.inv_set.items()}
        self.inv_perm = {}
        for p in self.perms:
            q = [0] * n
            for i, pi in enumerate(p):
                q[pi] = i
            self.inv_perm[p] = tuple(q)
        self.complement = {
            p: _compose(self.inv_perm[p], self.w0) for p in self.perms
        }
        self.tau = {
            p: _compose(_compose(self.w0, p), self.w0) for p in self.perms
        }
        self._meet = {}
        self._join = {}

    def meet(self, a: tuple, b: tuple) -> tuple:
        key = (a, b)
        if key not in self._meet:
            common = self.inv_set[a] & self.inv_set[b]
            cands = [p for p in self.perms if self.inv_set[p] <= common]
            top = max(cands, key=lambda p: self.length[p])
            if any(not self.inv_set[p] <= self.inv_set[top] for p in cands):
                raise InstanceError("weak order meet is not unique")
            self._meet[key] = top
        return self._meet[key]

    def join(self, a: tuple, b: tuple) -> tuple:
        key = (a, b)
        if key not in self._join:
            union = self.inv_set[a] | self.inv_set[b]
            cands = [p for p in self.perms if self.inv_set[p] >= union]
            bot = min(cands, key=lambda p: self.length[p])
            if any(not self.inv_set[bot] <= self.inv_set[p] for p in cands):
                raise InstanceError("weak order join is not unique")
            self._join[key] = bot
        return self._join[key]


_SYM_CACHE: dict = {}


def _sym_tables(n: int) -> _SymTables:
    if n not in _SYM_CACHE:
        _SYM_CACHE[n] = _SymTables(n)
    return _SYM_CACHE[n]


class BraidProvider:
    """Hat complex of the braid group on n strands.  Elements are pairs
    (k, parts): the left-greedy form Delta^k p_1 ... p_l with permutation
    simples p_i (never identity or the longest element).  Up-edges multiply
    by a nontrivial simple on the right; phi multiplies by Delta; the base
    complex is the quotient by the cyclic group generated by Delta."""

    def __init__(self, n: int):
        _check_rank(n)
        self.n = n
        self.t = _sym_tables(n)
        self.period = n * (n - 1) // 2
        self.identity = (0, ())
        self.delta = (1, ())
        self._inv_simple = {
            p: self.inv(self.simple(p))
            for p in self.t.perms
            if p != self.t.identity
        }

    # -- group arithmetic ---------------------------------------------------

    def simple(self, p: tuple):
        """The element of a single permutation braid."""
        if p == self.t.identity:
            return self.identity
        if p == self.t.w0:
            return self.delta
        return (0, (p,))

    def generator(self, i: int):
        """sigma_i for 1 <= i <= n-1."""
        if not 1 <= i < self.n:
            raise InstanceError(f"generator index out of range: {i}")
        p = list(range(self.n))
        p[i - 1], p[i] = p[i], p[i - 1]
        return self.simple(tuple(p))

    def from_word(self, word: Iterable[int]):
        """Product of sigma_i (positive letters) and sigma_i^-1."""
        out = self.identity
        for letter in word:
            g = self.generator(abs(letter))
            out = self.mult(out, g if letter > 0 else self.inv(g))
        return out

    def _normalize(self, k: int, parts: list):
        t = self.t
        parts = [p for p in parts if p != t.identity]
        changed = True
        while changed:
            changed = False
            i = 0
            while i < len(parts):
                if parts[i] == t.w0:
                    # p Delta = Delta tau(p): absorb and twist the prefix
                    k += 1
                    for j in range(i):
                        parts[j] = t.tau[parts[j]]
                    parts.pop(i)
                    changed = True
                else:
                    i += 1
            for i in range(len(parts) - 1, 0, -1):
                a, b = parts[i - 1], parts[i]
                h = t.meet(t.complement[a], b)
                if h != t.identity:
                    parts[i - 1] = _compose(a, h)
                    rest = _compose(t.inv_perm[h], b)
                    if rest == t.identity:
                        parts.pop(i)
                    else:
                        parts[i] = rest
                    changed = True
        return (k, tuple(parts))

    def times_simple(self, u, p: tuple):
        return self._normalize(u[0], list(u[1]) + [p])

    def times_delta(self, u, m: int):
        k, parts = u
        if m % 2:
            parts = tuple(self.t.tau[p] for p in parts)
        return (k + m, parts)

    def mult(self, u, v):
        out = self.times_delta(u, v[0])
        for p in v[1]:
            out = self.times_simple(out, p)
        return out

    def inv(self, u):
        t = self.t
        out = self.identity
        for p in reversed(u[1]):
            # p^-1 = complement(p) * Delta^-1
            out = self.times_simple(out, t.complement[p])
            out = self.times_delta(out, -1)
        return self.times_delta(out, -u[0])

    # -- protocol -----------------------------------------------------------

    def rank(self, v) -> int:
        return v[0] * self.period + sum(self.t.length[p] for p in v[1])

    def phi(self, v):
        return self.times_delta(v, 1)

    def phi_inv(self, v):
        return self.times_delta(v, -1)

    def up_neighbors(self, v):
        return [
            self.times_simple(v, p)
            for p in self.t.perms
            if p != self.t.identity
        ]

    def down_neighbors(self, v):
        return [self.mult(v, g) for g in self._inv_simple.values()]

    def leq_t(self, u, v) -> bool:
        return self.mult(self.inv(u), v)[0] >= 0

    def base(self, v):
        return self.times_delta(v, -v[0])

    def lift(self, x):
        if x[0] != 0:
            raise InstanceError(f"{x!r} is not a base representative")
        return x

    def base_neighbors(self, x):
        return frozenset(
            self.base(self.times_simple(x, p))
            for p in self.t.perms
            if p not in (self.t.identity, self.t.w0)
        )

    # -- shortcuts (cross-checked against the generic engine in tests) ------

    def is_up_edge(self, u, v) -> bool:
        k, parts = self.mult(self.inv(u), v)
        return (k == 0 and len(parts) == 1) or (k == 1 and not parts)

    def up_lift(self, v, base_vertex):
        k, parts = self.mult(self.inv(v), base_vertex)
        if len(parts) == 1:
            j = -k
        elif not parts:
            j = 1 - k
        else:
            raise GarsideError(
                f"{base_vertex!r} is not adjacent below a translate of {v!r}"
            )
        return self.times_delta(base_vertex, j)

    def alpha_step(self, x, y):
        k, parts = self.mult(self.inv(x), y)
        if k >= 1:
            return self.phi(x)
        if not parts:
            raise GarsideError("alpha needs x strictly below y")
        return self.times_simple(x, parts[0])

    def beta_step(self, x, y):
        g = self.mult(self.inv(x), y)
        if g[0] >= 1:
            return self.phi_inv(y)
        if not g[1]:
            raise GarsideError("beta needs x strictly below y")
        # the maximal simple right-divisor is read off the reversed word
        rev = self.identity
        for p in reversed(g[1]):
            rev = self.times_simple(rev, self.t.inv_perm[p])
        m = self.t.inv_perm[rev[1][0]]
        return self.mult(y, self._inv_simple[m])

    def hat_distance(self, u, v) -> int:
        k, parts = self.mult(self.inv(u), v)
        inf, sup = k, k + len(parts)
        return max(sup, 0) - min(inf, 0)

    def base_distance(self, a, b) -> int:
        return len(self.mult(self.inv(a), b)[1])


def braid_provider(n: int) -> BraidProvider:
    return BraidProvider(n)


# ---------------------------------------------------------------------------
# Coxeter complex windows as finite cyclically ordered complexes


def diagram_cycle(diagram: CoxeterDiagram) -> Optional[tuple]:
    """The vertex cycle when the diagram is a single all-3-labeled cycle
    (affine type A), traversed deterministically; None otherwise."""
    verts = sorted(diagram.vertices)
    if len(verts) < 3 or not diagram.is_connected():
        return None
    if any(m != 3 for m in diagram.labels.values()):
        return None
    if any(diagram.valence(v) != 2 for v in verts):
        return None
    start = verts[0]
    cycle = [start, min(diagram.neighbors(start))]
    while True:
        nxt = [w for w in diagram.neighbors(cycle[-1]) if w != cycle[-2]]
        if nxt[0] == start:
            return tuple(cycle)
        cycle.append(nxt[0])


def coxeter_shadow_provider(
    diagram: CoxeterDiagram,
    types: Iterable,
    radius: int,
    cache_dir: Optional[str] = None,
) -> FiniteComplex:
    """Window of the relative Coxeter complex on the given vertex types,
    as a finite complex.  When the diagram is a single all-3-labeled cycle
    the maximal simplices carry the cyclic order of the diagram cycle and
    the complex gets the matching rank map."""
    engine = cx.build_group(diagram)
    window = cx.ComplexWindow(engine, types, radius, cache_dir=cache_dir)
    vertex_types = {v: v.vertex_type for v in window.vertices}
    edges = frozenset(frozenset(e) for e in window.edges)
    cycle = diagram_cycle(diagram)
    if cycle is not None:
        pos = {s: i for i, s in enumerate(cycle)}
        f = {v: pos[v.vertex_type] for v in window.vertices}
        orders = tuple(
            tuple(sorted(simplex, key=lambda v: pos[v.vertex_type]))
            for simplex in window.simplices
        )
        period = len(cycle)
    else:
        f = None
        orders = tuple(
            tuple(sorted(simplex, key=repr)) for simplex in window.simplices
        )
        period = 0
    return FiniteComplex(window.vertices, edges, orders, rank=f,
                         period=period, types=vertex_types)


def graph_ball(complex_: FiniteComplex, center, radius: int) -> FiniteComplex:
    """Induced subcomplex on the graph-distance ball around a vertex,
    inheriting orders, ranks and types from the ambient complex."""
    if center not in complex_.vertices:
        raise InstanceError(f"{center!r} is not a vertex")
    dist = {center: 0}
    frontier = [center]
    while frontier:
        nxt = []
        for x in frontier:
            for y in complex_.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if dist[y] < radius:
                        nxt.append(y)
        frontier = nxt
    keep = set(dist)
    vertices = tuple(v for v in complex_.vertices if v in keep)
    edges = frozenset(e for e in complex_.edges if e <= keep)
    skeleton = FiniteComplex(vertices, edges, ())
    orders = []
    for clique in sorted(skeleton.maximal_cliques(),
                         key=lambda c: sorted(map(repr, c))):
        if len(clique) < 2:
            continue
        order = complex_.induced_cyclic(clique)
        orders.append(order if order is not None
                      else tuple(sorted(clique, key=repr)))
    rank = ({v: complex_.rank[v] for v in vertices}
            if complex_.rank is not None else None)
    types = ({v: complex_.types[v] for v in vertices}
             if complex_.types is not None else None)
    return FiniteComplex(vertices, edges, tuple(orders), rank=rank,
                         period=complex_.period, types=types)


# ---------------------------------------------------------------------------
# Isomorphism of finite cyclically ordered complexes


def _degree_sequence(complex_: FiniteComplex) -> tuple:
    return tuple(sorted(len(complex_.neighbors(v))
                        for v in complex_.vertices))


def _type_class_sizes(complex_: FiniteComplex) -> Optional[tuple]:
    if complex_.types is None:
        return None
    counts: dict = {}
    for v in complex_.vertices:
        counts[complex_.types[v]] = counts.get(complex_.types[v], 0) + 1
    return tuple(sorted(counts.values()))


def _signatures(complex_: FiniteComplex) -> dict:
    """Stable vertex invariants: iterated degree refinement plus the size
    of the vertex's type class."""
    adj = {v: complex_.neighbors(v) for v in complex_.vertices}
    sig = {v: (len(adj[v]),) for v in complex_.vertices}
    if complex_.types is not None:
        counts: dict = {}
        for v in complex_.vertices:
            t = complex_.types[v]
            counts[t] = counts.get(t, 0) + 1
        sig = {v: sig[v] + (counts[complex_.types[v]],)
               for v in complex_.vertices}
    for _ in range(3):
        sig = {
            v: (sig[v], tuple(sorted(sig[w] for w in adj[v])))
            for v in complex_.vertices
        }
    return sig


def iso_check(x1: FiniteComplex, x2: FiniteComplex) -> dict:
    """Search for a simplicial isomorphism preserving vertex types (up to a
    type bijection) and the cyclic orders of maximal simplices.  Returns a
    mapping, or a mismatch certificate naming the differing invariant."""
    for name, inv in (
        ("vertex count", lambda c: len(c.vertices)),
        ("edge count", lambda c: len(c.edges)),
        ("degree sequence", _degree_sequence),
        ("maximal simplex sizes",
         lambda c: tuple(sorted(len(o) for o in c.simplex_orders))),
        ("type class sizes", _type_class_sizes),
    ):
        a, b = inv(x1), inv(x2)
        if a != b:
            return {"isomorphic": False, "mapping": None,
                    "mismatch": {"invariant": name, "left": a, "right": b}}
    sig1, sig2 = _signatures(x1), _signatures(x2)
    if sorted(sig1.values()) != sorted(sig2.values()):
        return {"isomorphic": False, "mapping": None,
                "mismatch": {"invariant": "refined degree signatures",
                             "left": sorted(map(repr, sig1.values()))[:3],
                             "right": sorted(map(repr, sig2.values()))[:3]}}

    adj1 = {v: x1.neighbors(v) for v in x1.vertices}
    adj2 = {v: x2.neighbors(v) for v in x2.vertices}
    # visit order: BFS from the vertex with the rarest signature
    counts: dict = {}
    for s in sig1.values():
        counts[s] = counts.get(s, 0) + 1
    start = min(x1.vertices, key=lambda v: (counts[sig1[v]], repr(v)))
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        for w in sorted(adj1[order[i]], key=repr):
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    order += [v for v in sorted(x1.vertices, key=repr) if v not in seen]

    verts2 = sorted(x2.vertices, key=repr)

    def orders_respected(mapping):
        for o in x1.simplex_orders:
            if len(o) < 3:
                continue
            image = tuple(mapping[v] for v in o)
            if x2.induced_cyclic(frozenset(image)) != _canon_cycle(image):
                return False
        return True

    def extend(i, mapping, used, tmap, tmap_rev):
        if i == len(order):
            return dict(mapping) if orders_respected(mapping) else None
        v = order[i]
        for w in verts2:
            if w in used or sig2[w] != sig1[v]:
                continue
            if any((u in adj1[v]) != (mapping[u] in adj2[w])
                   for u in mapping):
                continue
            added_t = None
            if x1.types is not None:
                tv, tw = x1.types[v], x2.types[w]
                if tmap.get(tv, tw) != tw or tmap_rev.get(tw, tv) != tv:
                    continue
                if tv not in tmap:
                    added_t = (tv, tw)
                    tmap[tv] = tw
                    tmap_rev[tw] = tv
            mapping[v] = w
            used.add(w)
            found = extend(i + 1, mapping, used, tmap, tmap_rev)
            if found is not None:
                return found
            del mapping[v]
            used.remove(w)
            if added_t is not None:
                del tmap[added_t[0]]
                del tmap_rev[added_t[1]]
        return None

    mapping = extend(0, {}, set(), {}, {})
    if mapping is None:
        return {"isomorphic": False, "mapping": None,
                "mismatch": {"invariant": "exhaustive search",
                             "reason": "no compatible vertex bijection "
                                       "respects the cyclic orders"}}
    return {"isomorphic": True, "mapping": mapping, "mismatch": None}


# ---------------------------------------------------------------------------
# Shadow of the minimal-cut complex


@dataclasses.dataclass(frozen=True, eq=False)
class MincutComplexShadow:
    """Window of the cut-typed coset complex: vertices are cosets
    w * W_{S minus T} for T in the cut family of the path, edges require
    comparable types and intersecting cosets.  ``complex`` carries the
    cyclic orders induced by the family's rank map; ``rep_length`` drives
    the fully-windowed / inconclusive split of link verdicts."""

    diagram: CoxeterDiagram
    family: CPFamily
    radius: int
    complex: FiniteComplex
    rep_length: dict
    type_sets: dict  # sorted-tuple type -> frozenset element of the family

    def link_report(self) -> dict:
        """Per-vertex link verdicts over the in-window link poset.  A pair
        passes when it is unbounded or its bound is a unique extremum; a
        violating pair is a failure only when vertex and pair all sit at
        least WINDOW_MARGIN inside the window -- boundary violations are
        merely inconclusive, since the true bound may lie outside."""
        comp = self.complex
        interior_cut = self.radius - WINDOW_MARGIN
        passed = failed = inconclusive = 0
        failures = []
        for x in comp.vertices:
            rel = comp.less_in_link(x)
            link = sorted(comp.neighbors(x), key=repr)
            closure = set(rel)
            changed = True
            while changed:
                changed = False
                for (a, b), (c, d) in itertools.product(list(closure),
                                                        repeat=2):
                    if b == c and (a, d) not in closure:
                        closure.add((a, d))
                        changed = True
            leq = closure | {(v, v) for v in link}
            for a, b in itertools.combinations(link, 2):
                ok = True
                ups = [z for z in link if (a, z) in leq and (b, z) in leq]
                if ups and not any(
                    all((z, w) in leq for w in ups) for z in ups
                ):
                    ok = False
                downs = [z for z in link if (z, a) in leq and (z, b) in leq]
                if downs and not any(
                    all((w, z) in leq for w in downs) for z in downs
                ):
                    ok = False
                if ok:
                    passed += 1
                elif any(self.rep_length[v] > interior_cut
                         for v in (x, a, b)):
                    inconclusive += 1
                else:
                    failed += 1
                    failures.append({"at": repr(x),
                                     "pair": (repr(a), repr(b))})
        total = passed + failed + inconclusive
        return {
            "scope": "Coxeter shadow",
            "pairs": total,
            "passed": passed,
            "failed": failed,
            "inconclusive": inconclusive,
            "inconclusive_rate": (inconclusive / total) if total else 0.0,
            "failures": failures,
        }


def mincut_complex_shadow(
    diagram: CoxeterDiagram,
    path: PathP,
    radius: int,
    cache_dir: Optional[str] = None,
) -> MincutComplexShadow:
    """Build the windowed shadow complex for a diagram and a path."""
    family = CPFamily(diagram, path)
    engine = cx.build_group(diagram)
    all_gens = set(engine.gens)
    ball = engine.ball(radius, cache_dir=cache_dir)
    order = sorted(ball, key=lambda g: (ball[g], g.word))

    type_sets = {tuple(sorted(t)): t for t in family.elements}
    seen: dict = {}
    for w in order:
        for ttuple, tset in sorted(type_sets.items()):
            coset = cx.coset_min_rep(w, all_gens - tset)
            key = (coset.rep, ttuple)
            if key not in seen:
                seen[key] = cx.ComplexVertex(coset, ttuple)
    vertices = tuple(seen.values())
    rep_length = {v: v.coset.rep.length() for v in vertices}

    edges = set()
    for v1, v2 in itertools.combinations(vertices, 2):
        if v1.vertex_type == v2.vertex_type:
            continue
        if not family.comparable(type_sets[v1.vertex_type],
                                 type_sets[v2.vertex_type]):
            continue
        if cx.coset_intersection(v1.coset, v2.coset) is not None:
            edges.add(frozenset((v1, v2)))
    edges = frozenset(edges)

    f_types = family.rank_map()
    f = {v: f_types[type_sets[v.vertex_type]] for v in vertices}
    adj = {v: set() for v in vertices}
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    skeleton = FiniteComplex(vertices, edges, ())
    orders = tuple(
        tuple(sorted(c, key=lambda v: (f[v], repr(v))))
        for c in sorted(skeleton.maximal_cliques(),
                        key=lambda c: sorted(map(repr, c)))
        if len(c) >= 2
    )
    complex_ = FiniteComplex(
        vertices, edges, orders, rank=f,
        period=max(f_types.values()) + 1 if f_types else 0,
        types={v: v.vertex_type for v in vertices},
    )
    return MincutComplexShadow(diagram, family, radius, complex_,
                               rep_length, type_sets)


# ---------------------------------------------------------------------------
# Labeled 4-cycle searches


def four_cycle_search(
    complex_: FiniteComplex,
    s,
    t,
    subdiagram,
    seed: Optional[int] = None,
    max_cycles: int = 500,
) -> dict:
    """Enumerate embedded 4-cycles of alternating vertex types s, t and
    search each for a center adjacent to all four whose type lies in the
    given connected subdiagram.  Pure reporting: verdicts say what was
    found in this finite complex, nothing more."""
    if complex_.types is None:
        raise InstanceError("complex carries no vertex types")
    if isinstance(subdiagram, CoxeterDiagram):
        allowed = frozenset(subdiagram.vertices)
        connected = subdiagram.is_connected()
    else:
        allowed = frozenset(subdiagram)
        connected = None
    if s == t or s not in allowed or t not in allowed:
        raise InstanceError("types s, t must be distinct members of the "
                            "subdiagram")
    types = complex_.types
    adj = {v: complex_.neighbors(v) for v in complex_.vertices}
    vs = sorted((v for v in complex_.vertices if types[v] == s), key=repr)
    exact = len(complex_.vertices) <= FOUR_CYCLE_EXACT_CAP
    if not exact:
        if seed is None:
            raise InstanceError(
                "complex above the exact cap: a seed is required"
            )
        import random

        vs = random.Random(seed).sample(vs, min(len(vs), max_cycles))
    found = {}
    for x1 in vs:
        for x2 in sorted(adj[x1], key=repr):
            if types[x2] != t:
                continue
            for x3 in sorted(adj[x2], key=repr):
                if x3 == x1 or types[x3] != s:
                    continue
                for x4 in sorted(adj[x3] & adj[x1], key=repr):
                    if x4 == x2 or types[x4] != t:
                        continue
                    key = (frozenset((x1, x3)), frozenset((x2, x4)))
                    if key in found:
                        continue
                    cycle = (x1, x2, x3, x4)
                    centers = [
                        z for z in complex_.vertices
                        if types[z] in allowed
                        and all(x in adj[z] for x in cycle)
                    ]
                    witness = min(centers, key=repr) if centers else None
                    found[key] = {
                        "cycle": [repr(x) for x in cycle],
                        "center": repr(witness) if witness else None,
                        "center_type": (repr(types[witness])
                                        if witness else None),
                    }
    verdicts = sorted(found.values(), key=lambda d: d["cycle"])
    return {
        "scope": "finite window",
        "types": [repr(s), repr(t)],
        "subdiagram": sorted(map(repr, allowed)),
        "subdiagram_connected": connected,
        "cycles": len(verdicts),
        "centered": sum(1 for d in verdicts if d["center"] is not None),
        "exact": exact,
        "seed": seed,
        "verdicts": verdicts,
    }


def strong_four_cycle_search(
    diagram: CoxeterDiagram,
    A: Iterable,
    B: Iterable,
    radius: int,
    cache_dir: Optional[str] = None,
) -> dict:
    """Generalized 4-cycle search at the Coxeter shadow level: vertices of
    type-set A and B are cosets of the parabolic missing those generators,
    cycles alternate A, B, A, B with intersecting consecutive cosets, and
    a witness is a coset typed by a minimal cut of (A, B) meeting all
    four.  Reports verdicts for the window only."""
    A, B = frozenset(A), frozenset(B)
    diagram.check_vertices(A, B)
    cuts = enumerate_mincuts(diagram, A, B)
    engine = cx.build_group(diagram)
    all_gens = set(engine.gens)
    ball = engine.ball(radius, cache_dir=cache_dir)
    order = sorted(ball, key=lambda g: (ball[g], g.word))

    def cosets_of(tset):
        out = {}
        for w in order:
            c = cx.coset_min_rep(w, all_gens - tset)
            out.setdefault(c.rep, c)
        return tuple(out.values())

    va, vb = cosets_of(A), cosets_of(B)
    cut_cosets = {cut: cosets_of(cut) for cut in cuts}

    def meets(c1, c2):
        return cx.coset_intersection(c1, c2) is not None

    found = {}
    for x1, x3 in itertools.combinations(va, 2):
        for x2, x4 in itertools.combinations(vb, 2):
            if not (meets(x1, x2) and meets(x2, x3)
                    and meets(x3, x4) and meets(x4, x1)):
                continue
            key = (frozenset((x1.rep, x3.rep)), frozenset((x2.rep, x4.rep)))
            if key in found:
                continue
            witness = None
            for cut in cuts:
                for y in cut_cosets[cut]:
                    if all(meets(y, x) for x in (x1, x2, x3, x4)):
                        witness = (cut, y)
                        break
                if witness:
                    break
            found[key] = {
                "cycle": [repr(x.rep) for x in (x1, x2, x3, x4)],
                "witness": (repr(witness[1].rep) if witness else None),
                "witness_cut": (sorted(witness[0]) if witness else None),
            }
    verdicts = sorted(found.values(), key=lambda d: d["cycle"])
    return {
        "scope": "Coxeter shadow",
        "A": sorted(A),
        "B": sorted(B),
        "radius": radius,
        "cycles": len(verdicts),
        "witnessed": sum(1 for d in verdicts if d["witness"] is not None),
        "verdicts": verdicts,
    }
