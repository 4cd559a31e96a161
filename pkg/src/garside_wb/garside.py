"""Engine for triangulated-plane-like complexes and their Garside structure.

The engine works over a *provider*: an object exposing a vertex set of a
"hat" complex (the rank-graded cover of a cyclically ordered base complex)
through a small protocol:

    period          rank increment of the automorphism phi
    rank(v)         integer rank
    phi(v), phi_inv(v)
    up_neighbors(v) all w with an edge v < w (phi(v) included)
    down_neighbors(v)
    leq_t(u, v)     reachability in the transitive order
    base(v), lift(x), base_neighbors(x)
    hat_distance(u, v)  (optional) graph distance in the hat 1-skeleton
    base_distance(a, b) (optional) graph distance in the base 1-skeleton

On top of that protocol: greedy steps alpha/beta, left/right normal forms
with their certificates, strip replacement, B-geodesics, the asymmetric
rank metric, convexity and curvature checks.  Structural verification of
finite base complexes (flagness, cyclic orders, link posets, rank-map
morphism, first homology by integer Smith normal form) lives here too.

Window discipline: anything that would need a vertex outside the provider's
reach raises TruncationError ("truncated") instead of guessing.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
from typing import Iterable, Optional

#: Hard cap on hat vertices any single computation may touch.
HAT_VERTEX_CAP = 1_000_000

#: Cap on the search for a phi-power aligning two hat vertices.
MAX_PHI_SEARCH = 64


class GarsideError(ValueError):
    pass


class TruncationError(GarsideError):
    """Raised when a window is too small to complete a computation."""


# ---------------------------------------------------------------------------
# Generic order computations over a provider


def interval_up(provider, v) -> tuple:
    """The interval [v, phi(v)], breadth-first, deterministic order."""
    top = provider.phi(v)
    seen = {v}
    order = [v]
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for w in provider.up_neighbors(u):
                if w not in seen and provider.leq_t(w, top):
                    seen.add(w)
                    order.append(w)
                    nxt.append(w)
            if len(seen) > HAT_VERTEX_CAP:
                raise TruncationError("truncated: interval exceeds cap")
        frontier = nxt
    return tuple(order)


def is_up_edge(provider, u, v) -> bool:
    if hasattr(provider, "is_up_edge"):
        return provider.is_up_edge(u, v)
    return v in set(provider.up_neighbors(u))


def up_lift(provider, v, base_vertex):
    """The unique w with v < w lying over the given base vertex."""
    if hasattr(provider, "up_lift"):
        return provider.up_lift(v, base_vertex)
    hits = [w for w in provider.up_neighbors(v)
            if provider.base(w) == base_vertex]
    if len(hits) != 1:
        raise GarsideError(
            f"expected one lift of {base_vertex!r} above {v!r}, "
            f"found {len(hits)}"
        )
    return hits[0]


def phi_power(provider, v, k: int):
    for _ in range(abs(k)):
        v = provider.phi(v) if k > 0 else provider.phi_inv(v)
    return v


def alpha(provider, x, y):
    """Greedy left step: the maximal element of [x, phi(x)] below y."""
    if not provider.leq_t(x, y):
        raise GarsideError("alpha needs x <=_t y")
    if hasattr(provider, "alpha_step"):
        # provider shortcut; agreement with the generic search is a test
        return provider.alpha_step(x, y)
    candidates = [z for z in interval_up(provider, x)
                  if provider.leq_t(z, y)]
    maxima = [z for z in candidates
              if not any(c != z and provider.leq_t(z, c) for c in candidates)]
    if len(maxima) != 1:
        raise GarsideError(
            f"interval of {x!r} is not a lattice: maxima {maxima!r}"
        )
    return maxima[0]


def beta(provider, x, y):
    """Greedy right step: the minimal element of [phi^-1(y), y] above x."""
    if not provider.leq_t(x, y):
        raise GarsideError("beta needs x <=_t y")
    if hasattr(provider, "beta_step"):
        return provider.beta_step(x, y)
    candidates = [z for z in interval_up(provider, provider.phi_inv(y))
                  if provider.leq_t(x, z)]
    minima = [z for z in candidates
              if not any(c != z and provider.leq_t(c, z) for c in candidates)]
    if len(minima) != 1:
        raise GarsideError(
            f"interval below {y!r} is not a lattice: minima {minima!r}"
        )
    return minima[0]


def align_phi_power(provider, x, y, positive_only: bool = False) -> int:
    """The smallest m (with m >= 1 if positive_only) such that
    x <=_t phi^m(y)."""
    # rank(phi^m(y)) >= rank(x) is necessary, so start exactly there; the
    # relation is monotone in m and the first hit is the minimum
    lo = -((provider.rank(y) - provider.rank(x)) // provider.period)
    if positive_only:
        lo = max(lo, 1)
    for m in range(lo, lo + MAX_PHI_SEARCH):
        if provider.leq_t(x, phi_power(provider, y, m)):
            # minimality: monotone in m, so walk back to the first hit
            while m > lo and (not positive_only or m > 1) and provider.leq_t(
                x, phi_power(provider, y, m - 1)
            ):
                m -= 1
            return m
    raise TruncationError("truncated: phi-power alignment not found")


# ---------------------------------------------------------------------------
# Normal forms


@dataclasses.dataclass(frozen=True)
class NormalForm:
    """Greedy normal-form path x_1 ... x_l ... x_n in the hat complex:
    proper simple steps up to index l (1-based), then |k| Delta-steps."""

    side: str
    path: tuple
    l: int
    k: int

    def __len__(self):
        return len(self.path) - 1

    @property
    def simples(self) -> tuple:
        """The (source, target) pairs of the proper simple steps."""
        return tuple(zip(self.path[: self.l - 1], self.path[1: self.l]))


def left_quasi_normal(provider, x, y) -> tuple:
    """Greedy path x, alpha(x y), alpha(alpha(x y) y), ..., y."""
    if not provider.leq_t(x, y):
        raise GarsideError("left quasi-normal path needs x <=_t y")
    path = [x]
    cap = (provider.rank(y) - provider.rank(x)) + 2
    while path[-1] != y:
        path.append(alpha(provider, path[-1], y))
        if len(path) > cap:
            raise GarsideError("greedy path failed to terminate")
    return tuple(path)


def quasi_to_left_nf(provider, quasi: tuple, extra_delta: int = 0) -> NormalForm:
    """Convert a quasi-normal path (Delta-steps first) into the normal-form
    path (Delta-steps last); extra_delta shifts the recorded Delta power
    (used when the true target is a phi-translate of the path's endpoint)."""
    n = len(quasi)
    lead = 0
    while lead < n - 1 and quasi[lead + 1] == provider.phi(quasi[lead]):
        lead += 1
    k = lead - extra_delta
    simple_part = [phi_power(provider, v, -lead) for v in quasi[lead:]]
    end = simple_part[-1]
    step = 1 if k > 0 else -1
    delta_part = [phi_power(provider, end, step * j)
                  for j in range(1, abs(k) + 1)]
    path = tuple(simple_part + delta_part)
    return NormalForm("left", path, len(simple_part), k)


def left_nf(provider, x, y) -> NormalForm:
    """Left greedy Deligne normal form of the pair (x, y)."""
    m = align_phi_power(provider, x, y)
    quasi = left_quasi_normal(provider, x, phi_power(provider, y, m))
    nf = quasi_to_left_nf(provider, quasi, extra_delta=m)
    if nf.path[-1] != y:
        raise GarsideError("normal-form endpoint mismatch")
    verify_left_nf(provider, nf)
    return nf


def right_nf(provider, x, y) -> NormalForm:
    """Right greedy Deligne normal form of the pair (x, y)."""
    m = 0
    if not provider.leq_t(x, y):
        m = align_phi_power(provider, x, y, positive_only=True)
    top = phi_power(provider, y, m)
    down = [top]
    cap = (provider.rank(top) - provider.rank(x)) + 2
    while down[-1] != x:
        down.append(beta(provider, x, down[-1]))
        if len(down) > cap:
            raise GarsideError("greedy path failed to terminate")
    path = list(reversed(down))
    lead_top = 0
    while lead_top < len(path) - 1 and path[-lead_top - 1] == provider.phi(
        path[-lead_top - 2]
    ):
        lead_top += 1
    k = lead_top - m
    l = len(path) - lead_top
    end = path[l - 1]
    step = 1 if k > 0 else -1
    delta_part = [phi_power(provider, end, step * j)
                  for j in range(1, abs(k) + 1)]
    nf = NormalForm("right", tuple(path[:l] + delta_part), l, k)
    if nf.path[-1] != y:
        raise GarsideError("normal-form endpoint mismatch")
    verify_right_nf(provider, nf)
    return nf


def verify_left_nf(provider, nf: NormalForm) -> None:
    """Re-check the characterizing bullets of the left form post hoc."""
    path, l = nf.path, nf.l
    for i in range(l - 1):
        if not is_up_edge(provider, path[i], path[i + 1]):
            raise GarsideError(f"simple step {i} is not an edge")
        if path[i + 1] == provider.phi(path[i]):
            raise GarsideError(f"simple step {i} is a full Delta step")
    for i in range(1, l - 1):
        if alpha(provider, path[i - 1], path[i + 1]) != path[i]:
            raise GarsideError(f"greedy certificate fails at index {i}")
    step = 1 if nf.k > 0 else -1
    for i in range(l - 1, len(path) - 1):
        if path[i + 1] != phi_power(provider, path[i], step):
            raise GarsideError(f"Delta step {i} inconsistent")


def verify_right_nf(provider, nf: NormalForm) -> None:
    path, l = nf.path, nf.l
    for i in range(l - 1):
        if not is_up_edge(provider, path[i], path[i + 1]):
            raise GarsideError(f"simple step {i} is not an edge")
        if path[i + 1] == provider.phi(path[i]):
            raise GarsideError(f"simple step {i} is a full Delta step")
    for i in range(1, l - 1):
        if beta(provider, path[i - 1], path[i + 1]) != path[i]:
            raise GarsideError(f"greedy certificate fails at index {i}")
    step = 1 if nf.k > 0 else -1
    for i in range(l - 1, len(path) - 1):
        if path[i + 1] != phi_power(provider, path[i], step):
            raise GarsideError(f"Delta step {i} inconsistent")


def strip_replace(provider, quasi: tuple, y):
    """Extend a left quasi-normal path by the edge quasi[-1] < y, restoring
    quasi-normality by backwards triangle replacements.

    Returns (new_path, strip) where strip records, right to left, each local
    replacement (source, old_mid, new_local_path).
    """
    if not is_up_edge(provider, quasi[-1], y):
        raise GarsideError("strip extension needs an edge quasi[-1] < y")
    strip = []
    suffix = [y]
    cur = y
    for i in range(len(quasi) - 2, -1, -1):
        local = left_quasi_normal(provider, quasi[i], cur)
        if len(local) > 3:
            raise GarsideError("local replacement is not a triangle")
        strip.append((quasi[i], quasi[i + 1], local))
        if len(local) == 3:
            cur = local[1]
            suffix.insert(0, cur)
    return tuple([quasi[0]] + suffix), tuple(strip)


# ---------------------------------------------------------------------------
# B-geodesics and the asymmetric metric


def b_geodesic(provider, a, b, side: str = "left") -> tuple:
    """The unique left (or right) B-geodesic between base vertices."""
    if side not in ("left", "right"):
        raise GarsideError(f"side must be 'left' or 'right', got {side!r}")
    if a == b:
        return (a,)
    x = provider.lift(a)
    y0 = provider.lift(b)
    m = align_phi_power(provider, x, y0)
    y = phi_power(provider, y0, m)
    if side == "left":
        hat = left_quasi_normal(provider, x, y)
        if hat[1] == provider.phi(hat[0]):
            raise GarsideError("alignment overshoot: leading Delta step")
    else:
        down = [y]
        cap = (provider.rank(y) - provider.rank(x)) + 2
        while down[-1] != x:
            down.append(beta(provider, x, down[-1]))
            if len(down) > cap:
                raise GarsideError("greedy path failed to terminate")
        hat = tuple(reversed(down))
        if hat[-1] == provider.phi(hat[-2]):
            raise GarsideError("alignment overshoot: trailing Delta step")
    return tuple(provider.base(v) for v in hat)


def admissible_lift(provider, path: tuple, start=None) -> tuple:
    """The unique ascending hat lift of a base edge-path from the given
    (or default) lift of its first vertex."""
    if start is None:
        start = provider.lift(path[0])
    if provider.base(start) != path[0]:
        raise GarsideError("start does not lift the first vertex")
    lifted = [start]
    for base_vertex in path[1:]:
        lifted.append(up_lift(provider, lifted[-1], base_vertex))
    return tuple(lifted)


def bestvina_dist(provider, a, b) -> int:
    """Rank gap of the admissible lift of the left B-geodesic a -> b."""
    path = b_geodesic(provider, a, b, "left")
    lift1 = admissible_lift(provider, path)
    gap = provider.rank(lift1[-1]) - provider.rank(lift1[0])
    # lift-independence: any other lift is a phi-translate
    lift2 = admissible_lift(provider, path, provider.phi(lift1[0]))
    gap2 = provider.rank(lift2[-1]) - provider.rank(lift2[0])
    if gap != gap2:
        raise GarsideError("asymmetric distance depends on the lift")
    return gap


def link_meet(provider, v, w1, w2, side: str):
    """Meet (side='left') or join (side='right') of two link elements
    w1, w2 of [v, phi(v)] in the link poset; None when no bound exists."""
    inter = interval_up(provider, v)
    top = provider.phi(v)
    if side == "left":
        bounds = [z for z in inter
                  if provider.leq_t(z, w1) and provider.leq_t(z, w2)]
        extreme = [z for z in bounds
                   if not any(c != z and provider.leq_t(z, c) for c in bounds)]
        if extreme == [v]:
            return None  # no common lower bound inside the link
    else:
        bounds = [z for z in inter
                  if provider.leq_t(w1, z) and provider.leq_t(w2, z)]
        extreme = [z for z in bounds
                   if not any(c != z and provider.leq_t(c, z) for c in bounds)]
        if extreme == [top]:
            return None
    if len(extreme) != 1:
        raise GarsideError("link poset pair has no unique bound")
    return extreme[0]


def check_local_convex(provider, members: Iterable, side: str = "left",
                       samples: int = 20, seed: int = 0) -> dict:
    """Local B-convexity of the full subcomplex on ``members``, plus a
    sampled check that B-geodesics between members stay inside."""
    import random

    members = set(members)
    violations = []
    for y in sorted(members, key=repr):
        link_in = [z for z in provider.base_neighbors(y) if z in members]
        v = provider.lift(y)
        for y1, y2 in itertools.combinations(sorted(link_in, key=repr), 2):
            w1 = up_lift(provider, v, y1)
            w2 = up_lift(provider, v, y2)
            bound = link_meet(provider, v, w1, w2, side)
            if bound is not None and provider.base(bound) not in members:
                violations.append({
                    "kind": "local",
                    "at": y,
                    "pair": (y1, y2),
                    "escapes_to": provider.base(bound),
                })
    report = {
        "side": side,
        "local_violations": violations,
        "geodesic_violations": [],
        "samples": samples,
        "seed": seed,
    }
    if violations:
        return report
    rng = random.Random(seed)
    pool = sorted(members, key=repr)
    for _ in range(samples):
        a, b = rng.choice(pool), rng.choice(pool)
        path = b_geodesic(provider, a, b, side)
        outside = [p for p in path if p not in members]
        if outside:
            report["geodesic_violations"].append({
                "kind": "geodesic", "pair": (a, b), "outside": outside,
            })
    return report


def curvature_edge_check(provider, a, x, y) -> dict:
    """The two phi-exponents comparing geodesics to the endpoints of the
    edge x-y, seen from basepoint a; the pair must be (0,1) or (1,0)."""
    if y not in set(provider.base_neighbors(x)):
        raise GarsideError("x and y must be adjacent in the base complex")
    path_x = b_geodesic(provider, a, x, "left")
    path_y = b_geodesic(provider, a, y, "left")
    start = provider.lift(a)
    hx = admissible_lift(provider, path_x, start)[-1]
    hy = admissible_lift(provider, path_y, start)[-1]
    hy_prime = admissible_lift(provider, path_x + (y,), start)[-1]
    hx_prime = admissible_lift(provider, path_y + (x,), start)[-1]
    n = (provider.rank(hy_prime) - provider.rank(hy)) // provider.period
    m = (provider.rank(hx_prime) - provider.rank(hx)) // provider.period
    return {
        "m": m,
        "n": n,
        "ok": (m, n) in ((0, 1), (1, 0)),
        "d_ax": bestvina_dist(provider, a, x),
        "d_ay": bestvina_dist(provider, a, y),
    }


def curvature_geodesic_check(provider, a, path: tuple) -> dict:
    """Unimodality of i -> asymmetric distance from a along a B-geodesic:
    strictly decreasing, then strictly increasing."""
    dists = [bestvina_dist(provider, a, p) for p in path]
    i = 0
    while i + 1 < len(dists) and dists[i + 1] < dists[i]:
        i += 1
    ok = all(dists[j + 1] > dists[j] for j in range(i, len(dists) - 1))
    return {"distances": dists, "unimodal": ok}


def hat_distance_bfs(provider, u, v, cap: int = HAT_VERTEX_CAP) -> int:
    """Plain bidirectional-free BFS distance in the hat 1-skeleton."""
    if u == v:
        return 0
    seen = {u: 0}
    frontier = [u]
    while frontier:
        nxt = []
        for w in frontier:
            for z in itertools.chain(provider.up_neighbors(w),
                                     provider.down_neighbors(w)):
                if z not in seen:
                    seen[z] = seen[w] + 1
                    if z == v:
                        return seen[z]
                    nxt.append(z)
            if len(seen) > cap:
                raise TruncationError("truncated: BFS exceeded cap")
        frontier = nxt
    raise GarsideError("vertices are not connected")


# ---------------------------------------------------------------------------
# Finite base complexes with cyclic orders


@dataclasses.dataclass(frozen=True)
class FiniteComplex:
    """Finite flag complex with cyclic orders on maximal simplices, an
    integer rank map, and optional vertex types.

    ``complete`` marks a complex that is the whole object rather than a
    window of something infinite; only then is a pi1 check attempted.
    """

    vertices: tuple
    edges: frozenset
    simplex_orders: tuple  # cyclic orders of the maximal simplices
    rank: Optional[dict] = None
    period: int = 0
    types: Optional[dict] = None
    complete: bool = False

    def neighbors(self, x) -> frozenset:
        return frozenset(
            next(iter(e - {x})) for e in self.edges if x in e
        )

    def maximal_cliques(self) -> tuple:
        adj = {v: set(self.neighbors(v)) for v in self.vertices}
        out = []

        def bron(clique, cand, excl):
            if not cand and not excl:
                out.append(frozenset(clique))
                return
            for v in list(cand):
                bron(clique + [v],
                     [w for w in cand if w in adj[v]],
                     [w for w in excl if w in adj[v]])
                cand.remove(v)
                excl.append(v)

        bron([], list(self.vertices), [])
        return tuple(out)

    def triangles(self) -> tuple:
        tris = set()
        for order in self.simplex_orders:
            for tri in itertools.combinations(order, 3):
                tris.add(frozenset(tri))
        return tuple(sorted(tris, key=lambda t: sorted(map(repr, t))))

    def induced_cyclic(self, subset: frozenset) -> Optional[tuple]:
        """The cyclic order induced on a sub-simplex, canonicalized to start
        at its smallest vertex; None if no maximal simplex covers it."""
        for order in self.simplex_orders:
            if subset <= set(order):
                sub = tuple(v for v in order if v in subset)
                return _canon_cycle(sub)
        return None

    def less_in_link(self, x) -> set:
        """The relation <_x on the link: y <_x z iff some triangle through
        x carries the cyclic order [y, z, x]."""
        rel = set()
        for tri in self.triangles():
            if x not in tri:
                continue
            cyc = self.induced_cyclic(tri)
            y, z = [v for v in cyc if v != x]
            # rotate so x is last: [y', z', x]
            i = cyc.index(x)
            ordered = cyc[i + 1:] + cyc[:i]
            rel.add((ordered[0], ordered[1]))
        return rel


def _canon_cycle(cycle: tuple) -> tuple:
    i = min(range(len(cycle)), key=lambda j: repr(cycle[j]))
    return cycle[i:] + cycle[:i]


def check_an_like(complex_: FiniteComplex) -> dict:
    """Verify the defining conditions of a consistently cyclically ordered
    complex with lattice-like links and a rank morphism, on a finite window.

    Violations are report content, never exceptions.  Simple-connectedness:
    pi1 is attempted only for complete complexes; otherwise H1 = 0 via
    integer Smith normal form, reported as "H1-trivial (pi1 unchecked)".
    """
    violations = []
    cliques = set(complex_.maximal_cliques())
    ordered = {frozenset(o) for o in complex_.simplex_orders}

    # flagness relative to the declared simplices
    for o in complex_.simplex_orders:
        pairs = itertools.combinations(o, 2)
        missing = [p for p in pairs if frozenset(p) not in complex_.edges]
        if missing:
            violations.append({"check": "flag", "simplex": o,
                               "missing_edges": missing})
    for c in cliques:
        if len(c) > 1 and c not in ordered:
            violations.append({"check": "flag", "clique": sorted(c, key=repr),
                               "reason": "maximal clique has no cyclic order"})
    for s in ordered:
        if not any(s <= c for c in cliques):
            violations.append({"check": "flag",
                               "simplex": sorted(s, key=repr),
                               "reason": "ordered set is not a clique"})

    # cyclic-order consistency on shared triangles
    tri_orders = {}
    for order in complex_.simplex_orders:
        for tri in itertools.combinations(order, 3):
            key = frozenset(tri)
            sub = _canon_cycle(tuple(v for v in order if v in key))
            if key in tri_orders and tri_orders[key] != sub:
                violations.append({"check": "consistency",
                                   "triangle": sorted(key, key=repr),
                                   "orders": [tri_orders[key], sub]})
            tri_orders.setdefault(key, sub)

    # each <_x is a partial order whose bounded pairs have joins and meets
    for x in complex_.vertices:
        rel = complex_.less_in_link(x)
        link = sorted(complex_.neighbors(x), key=repr)
        closure = set(rel)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(closure), repeat=2):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
        for a, b in closure:
            if a == b or (b, a) in closure:
                violations.append({"check": "link-partial-order", "at": x,
                                   "witness": (a, b)})
                break
        else:
            leq = closure | {(v, v) for v in link}
            for a, b in itertools.combinations(link, 2):
                ups = [z for z in link
                       if (a, z) in leq and (b, z) in leq]
                if ups and not any(
                    all((z, w) in leq for w in ups) for z in ups
                ):
                    violations.append({"check": "link-join", "at": x,
                                       "pair": (a, b)})
                downs = [z for z in link
                         if (z, a) in leq and (z, b) in leq]
                if downs and not any(
                    all((w, z) in leq for w in downs) for z in downs
                ):
                    violations.append({"check": "link-meet", "at": x,
                                       "pair": (a, b)})

    # rank map: injective cyclic-order morphism on each maximal simplex
    if complex_.rank is not None:
        for order in complex_.simplex_orders:
            vals = [complex_.rank[v] for v in order]
            if len(set(vals)) != len(vals):
                violations.append({"check": "rank-injective",
                                   "simplex": order, "ranks": vals})
                continue
            shift = vals.index(min(vals))
            rot = vals[shift:] + vals[:shift]
            if rot != sorted(rot):
                violations.append({"check": "rank-morphism",
                                   "simplex": order, "ranks": vals})

    h1 = h1_trivial(complex_)
    if complex_.complete:
        pi1 = pi1_trivial(complex_)
        if pi1 is True:
            connectivity = "pi1-trivial"
        elif pi1 is False:
            connectivity = "pi1-nontrivial"
            violations.append({"check": "pi1", "reason": "nontrivial pi1"})
        else:
            connectivity = ("H1-trivial (pi1 unchecked)"
                            if h1 else "H1-nontrivial")
    else:
        connectivity = "H1-trivial (pi1 unchecked)" if h1 else "H1-nontrivial"
    if not h1:
        violations.append({"check": "H1", "reason": "H1 is nonzero"})
    return {"violations": violations, "connectivity": connectivity}


# ---------------------------------------------------------------------------
# Homology and pi1 on finite complexes


def smith_diagonal(matrix: list) -> list:
    """Diagonal of the integer Smith normal form (non-negative entries)."""
    m = [row[:] for row in matrix]
    rows, cols = len(m), len(m[0]) if m else 0
    diag = []
    r = c = 0
    while r < rows and c < cols:
        pivot = None
        best = None
        for i in range(r, rows):
            for j in range(c, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best = abs(m[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[r], m[i] = m[i], m[r]
        for row in m:
            row[c], row[j] = row[j], row[c]
        while True:
            # clear column c then row r; restart if a remainder appears
            dirty = False
            for i in range(rows):
                if i != r and m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        m[r], m[i] = m[i], m[r]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(cols):
                if j != c and m[r][j] != 0:
                    q = m[r][j] // m[r][c]
                    for row in m:
                        row[j] -= q * row[c]
                    if m[r][j] != 0:
                        for row in m:
                            row[c], row[j] = row[j], row[c]
                        dirty = True
                        break
            if not dirty:
                break
        diag.append(abs(m[r][c]))
        r += 1
        c += 1
    # enforce the divisibility chain: diag(a, b) ~ diag(gcd, lcm)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if a and b and b % a:
                g = math.gcd(a, b)
                diag[i], diag[j] = g, a * b // g
    return diag


def h1_trivial(complex_: FiniteComplex) -> bool:
    """First homology over Z of the 2-skeleton vanishes."""
    verts = list(complex_.vertices)
    vi = {v: i for i, v in enumerate(verts)}
    edges = sorted(complex_.edges, key=lambda e: sorted(map(repr, e)))
    oriented = [tuple(sorted(e, key=lambda v: vi[v])) for e in edges]
    ei = {e: i for i, e in enumerate(oriented)}
    tris = complex_.triangles()
    if not edges:
        return True
    # boundary_1: edges -> vertices
    b1 = [[0] * len(edges) for _ in verts]
    for j, (u, w) in enumerate(oriented):
        b1[vi[u]][j] -= 1
        b1[vi[w]][j] += 1
    rank_b1 = sum(1 for d in smith_diagonal(b1) if d != 0)
    cycle_rank = len(edges) - rank_b1
    if not tris:
        return cycle_rank == 0
    # boundary_2: triangles -> edges
    b2 = [[0] * len(tris) for _ in edges]
    for j, tri in enumerate(tris):
        a, b, c = sorted(tri, key=lambda v: vi[v])
        for (u, w), sign in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
            b2[ei[(u, w)]][j] += sign
    d2 = smith_diagonal(b2)
    rank_b2 = sum(1 for d in d2 if d != 0)
    torsion_free = all(d in (0, 1) for d in d2)
    return cycle_rank == rank_b2 and torsion_free


def pi1_trivial(complex_: FiniteComplex) -> Optional[bool]:
    """Attempt a pi1-triviality certificate via spanning tree plus Tietze
    generator elimination; None when the attempt is inconclusive."""
    verts = list(complex_.vertices)
    if not verts:
        return True
    tree = set()
    seen = {verts[0]}
    frontier = [verts[0]]
    while frontier:
        v = frontier.pop()
        for w in sorted(complex_.neighbors(v), key=repr):
            if w not in seen:
                seen.add(w)
                tree.add(frozenset((v, w)))
                frontier.append(w)
    if seen != set(verts):
        return None  # disconnected: not simply connected, but report H1 route
    gens = sorted(
        (e for e in complex_.edges if e not in tree),
        key=lambda e: sorted(map(repr, e)),
    )
    gen_index = {e: i for i, e in enumerate(gens)}
    # each triangle's boundary word in the non-tree edge generators
    relators = []
    for tri in complex_.triangles():
        a, b, c = sorted(tri, key=repr)
        word = []
        for u, w in ((a, b), (b, c), (c, a)):
            e = frozenset((u, w))
            if e in gen_index:
                sign = 1 if sorted(e, key=repr) == [u, w] else -1
                word.append((gen_index[e], sign))
        relators.append(word)
    # a relator with exactly one occurrence of a live generator (all other
    # letters already known trivial) forces that generator to be trivial
    alive = set(range(len(gens)))
    changed = True
    while changed and alive:
        changed = False
        for word in relators:
            live = [g for g, _ in word if g in alive]
            if len(live) == 1:
                alive.discard(live[0])
                changed = True
    if not alive:
        return True
    return None


# ---------------------------------------------------------------------------
# Quotient-and-lift provider over a finite base complex


class HatWindow:
    """Provider built by lifting a finite rank-mapped base complex to the
    rank band [lo, hi].  Queries needing vertices outside the band raise
    TruncationError."""

    def __init__(self, complex_: FiniteComplex, lo: int, hi: int):
        if complex_.rank is None or not complex_.period:
            raise GarsideError("base complex needs a rank map and period")
        self.complex = complex_
        self.period = complex_.period
        self.lo, self.hi = lo, hi
        self._f = complex_.rank
        self.vertices = tuple(
            (x, i)
            for x in complex_.vertices
            for i in range(lo, hi + 1)
            if (i - self._f[x]) % self.period == 0
        )
        if len(self.vertices) > HAT_VERTEX_CAP:
            raise TruncationError("truncated: hat window exceeds cap")
        self._vset = set(self.vertices)

    def rank(self, v) -> int:
        return v[1]

    def phi(self, v):
        w = (v[0], v[1] + self.period)
        if w not in self._vset:
            raise TruncationError("truncated: phi leaves the window")
        return w

    def phi_inv(self, v):
        w = (v[0], v[1] - self.period)
        if w not in self._vset:
            raise TruncationError("truncated: phi leaves the window")
        return w

    def _adjacent_bases(self, x):
        return itertools.chain([x], self.complex.neighbors(x))

    def up_neighbors(self, v):
        x, i = v
        out = []
        for y in self._adjacent_bases(x):
            # the unique congruent rank in (i, i + period]
            j = i + 1 + (self._f[y] - i - 1) % self.period
            if y == x:
                j = i + self.period
            if j > self.hi:
                raise TruncationError("truncated: neighbor above the window")
            out.append((y, j))
        return out

    def down_neighbors(self, v):
        x, i = v
        out = []
        for y in self._adjacent_bases(x):
            j = i - 1 - (i - 1 - self._f[y]) % self.period
            if y == x:
                j = i - self.period
            if j < self.lo:
                raise TruncationError("truncated: neighbor below the window")
            out.append((y, j))
        return out

    def leq_t(self, u, v) -> bool:
        if u == v:
            return True
        if u[1] >= v[1]:
            return False
        # ascending BFS never exceeds rank(v), so it stays in the window
        target_rank = v[1]
        seen = {u}
        frontier = [u]
        while frontier:
            nxt = []
            for (x, i) in frontier:
                for y in self._adjacent_bases(x):
                    j = i + 1 + (self._f[y] - i - 1) % self.period
                    if y == x:
                        j = i + self.period
                    if j > target_rank:
                        continue
                    w = (y, j)
                    if w == v:
                        return True
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return False

    def base(self, v):
        return v[0]

    def lift(self, x):
        mid = (self.lo + self.hi) // 2
        i = mid - (mid - self._f[x]) % self.period
        return (x, i)

    def base_neighbors(self, x):
        return self.complex.neighbors(x)
