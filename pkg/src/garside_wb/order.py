"""Posets, partial cyclic orders, the glued construction, the family C_P,
its localization at an element, and the admissibility checker.

Elements throughout are hashable; the C_P machinery uses frozensets of
diagram vertices (type I elements are singleton interior vertices of the
path, type II elements are minimal cuts of the path-deleted diagram between
the path's endpoints).
"""
from __future__ import annotations

import dataclasses
import itertools
from typing import Callable, Iterable, Optional

from .diagram import CoxeterDiagram, PathP, separates
from .mincut import MincutFamily, enumerate_mincuts


class OrderError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Finite posets


class FinitePoset:
    """Strict partial order given by its set of (x, y) pairs with x < y."""

    def __init__(self, elements: Iterable, less_pairs: Iterable):
        self.elements = tuple(elements)
        eset = set(self.elements)
        if len(eset) != len(self.elements):
            raise OrderError("duplicate elements")
        self.less_pairs = frozenset(less_pairs)
        for x, y in self.less_pairs:
            if x not in eset or y not in eset:
                raise OrderError(f"relation uses unknown element {x!r} or {y!r}")
            if x == y:
                raise OrderError(f"irreflexivity violated at {x!r}")
            if (y, x) in self.less_pairs:
                raise OrderError(f"antisymmetry violated at {x!r}, {y!r}")
        for (x, y), (y2, z) in itertools.product(self.less_pairs, repeat=2):
            if y == y2 and (x, z) not in self.less_pairs:
                raise OrderError(f"transitivity violated: {x!r} < {y!r} < {z!r}")

    def lt(self, x, y) -> bool:
        return (x, y) in self.less_pairs

    def leq(self, x, y) -> bool:
        return x == y or self.lt(x, y)

    def comparable(self, x, y) -> bool:
        return x == y or self.lt(x, y) or self.lt(y, x)

    def upper_bounds(self, x, y):
        return [z for z in self.elements if self.leq(x, z) and self.leq(y, z)]

    def lower_bounds(self, x, y):
        return [z for z in self.elements if self.leq(z, x) and self.leq(z, y)]

    def join(self, x, y):
        """Least upper bound, or None (no upper bound / no least one)."""
        ubs = self.upper_bounds(x, y)
        least = [u for u in ubs if all(self.leq(u, v) for v in ubs)]
        return least[0] if least else None

    def meet(self, x, y):
        lbs = self.lower_bounds(x, y)
        greatest = [u for u in lbs if all(self.leq(v, u) for v in lbs)]
        return greatest[0] if greatest else None

    def height_rank(self) -> dict:
        """Longest-chain height: r(x) = length of the longest chain below x.

        Satisfies x < y => r(x) < r(y), the weak grading the constructions
        need.
        """
        rank = {}

        def r(x):
            if x not in rank:
                below = [y for y in self.elements if self.lt(y, x)]
                rank[x] = 1 + max((r(y) for y in below), default=-1)
            return rank[x]

        for x in self.elements:
            r(x)
        return rank

    def maximal_chains_through(self):  # pragma: no cover - debug helper
        return sorted(
            [x for x in self.elements],
            key=lambda x: self.height_rank()[x],
        )


def chain_poset(chain: Iterable) -> FinitePoset:
    chain = list(chain)
    pairs = [
        (chain[i], chain[j])
        for i in range(len(chain))
        for j in range(i + 1, len(chain))
    ]
    return FinitePoset(chain, pairs)


# ---------------------------------------------------------------------------
# Partial cyclic orders


@dataclasses.dataclass(frozen=True)
class PartialCyclicOrder:
    ground: frozenset
    triples: frozenset  # of 3-tuples [a, b, c]

    def holds(self, a, b, c) -> bool:
        return (a, b, c) in self.triples

    def induced_poset(self, x) -> FinitePoset:
        """The order on X\\{x} with x1 < x2 iff [x1, x2, x]."""
        if x not in self.ground:
            raise OrderError(f"{x!r} not in ground set")
        rest = [y for y in self.ground if y != x]
        pairs = [
            (y, z) for y in rest for z in rest if y != z and self.holds(y, z, x)
        ]
        return FinitePoset(rest, pairs)


def check_partial_cyclic(ground, triples) -> list:
    """Violations of the partial-cyclic-order axioms, each with a witness."""
    ground = set(ground)
    triples = set(tuple(t) for t in triples)
    report = []
    for t in sorted(triples, key=repr):
        if len(set(t)) != 3:
            report.append({"axiom": "distinct", "witness": t})
        if any(x not in ground for x in t):
            report.append({"axiom": "ground", "witness": t})
    for a, b, c in sorted(triples, key=repr):
        if (b, c, a) not in triples:
            report.append({"axiom": "cyclicity", "witness": (a, b, c)})
        if (c, b, a) in triples:
            report.append({"axiom": "asymmetry", "witness": (a, b, c)})
    by_first = {}
    for a, b, c in triples:
        by_first.setdefault(a, set()).add((b, c))
    for a, rest in sorted(by_first.items(), key=repr):
        for (b, c), (c2, d) in itertools.product(rest, rest):
            if c == c2 and (b, d) not in rest and b != d:
                report.append({"axiom": "transitivity", "witness": (a, b, c, d)})
    return report


def cyclic_from_linear(chain: Iterable) -> PartialCyclicOrder:
    """The cyclic order induced by a linear order (all rotations of
    increasing triples)."""
    chain = list(chain)
    triples = set()
    for t in itertools.combinations(chain, 3):
        for rot in (t, t[1:] + t[:1], t[2:] + t[:2]):
            triples.add(rot)
    return PartialCyclicOrder(frozenset(chain), frozenset(triples))


def glue(x1: FinitePoset, x2: FinitePoset, a, b) -> PartialCyclicOrder:
    """Glue two posets sharing exactly {a, b} into a partial cyclic order.

    b is maximal and a minimal in x2; b minimal and a maximal in x1.  The
    relation is generated by: increasing triples within either poset, and
    mixed triples [x, y, z] with x < y in one poset and z interior to the
    other (plus all cyclic permutations).
    """
    s1, s2 = set(x1.elements), set(x2.elements)
    if s1 & s2 != {a, b}:
        raise OrderError(f"posets must share exactly {{a, b}}, got {s1 & s2}")
    for x in s2:
        if not (x2.leq(a, x) and x2.leq(x, b)):
            raise OrderError(f"{x!r} not between a and b in X2")
    for x in s1:
        if not (x1.leq(b, x) and x1.leq(x, a)):
            raise OrderError(f"{x!r} not between b and a in X1")

    triples = set()

    def add(t):
        triples.add(t)
        triples.add((t[1], t[2], t[0]))
        triples.add((t[2], t[0], t[1]))

    for x, y, z in itertools.permutations(x2.elements, 3):
        if x2.lt(x, y) and x2.lt(y, z):
            add((x, y, z))
    for x, y, z in itertools.permutations(x1.elements, 3):
        if x1.lt(x, y) and x1.lt(y, z):
            add((x, y, z))
    interior1 = s1 - {a, b}
    interior2 = s2 - {a, b}
    for x, y in x2.less_pairs:
        for z in interior1:
            add((x, y, z))
    for y, z in x1.less_pairs:
        for x in interior2:
            add((x, y, z))

    order = PartialCyclicOrder(frozenset(s1 | s2), frozenset(triples))
    if len(order.ground) <= 64:
        violations = check_partial_cyclic(order.ground, order.triples)
        if violations:
            raise OrderError(f"glued relation is not cyclic: {violations[0]}")
    return order


# ---------------------------------------------------------------------------
# The family C_P


class CPFamily:
    """Type I elements (interior path vertices) and type II elements
    (minimal cuts of the path-deleted diagram between the endpoints), with
    comparability and the glued partial cyclic order."""

    def __init__(self, diagram: CoxeterDiagram, path: PathP):
        if path.diagram is not diagram and path.diagram != diagram:
            raise OrderError("path does not live in the given diagram")
        self.diagram = diagram
        self.path = path
        lam_p = path.diagram_minus_interior()
        if not lam_p.is_connected():
            raise OrderError("diagram minus path interior is disconnected")
        self.diagram_minus_p = lam_p
        self.a = frozenset((path.a,))
        self.b = frozenset((path.b,))

        if path.closed:
            # closed path: the family is just the path vertices, cyclically
            self.closed = True
            self.type_i = tuple(frozenset((v,)) for v in path.sequence[:-1])
            self.type_ii = ()
            self.mincuts: Optional[MincutFamily] = None
            self.elements = self.type_i
            self.cyclic = cyclic_of_cycle(self.type_i)
            return

        self.closed = False
        self.type_i = tuple(frozenset((v,)) for v in path.interior)
        self.mincuts = enumerate_mincuts(lam_p, self.a, self.b)
        self.type_ii = tuple(self.mincuts.cuts)
        self.elements = tuple(dict.fromkeys(self.type_i + self.type_ii))
        if __debug__:
            self._assert_ab_remark()

        # X2: the mincut lattice with {a} minimal, {b} maximal
        pairs2 = [
            (c1, c2)
            for c1 in self.type_ii
            for c2 in self.type_ii
            if self.mincuts.compare(c1, c2) == "less"
        ]
        x2 = FinitePoset(self.type_ii, pairs2)
        # X1: the chain {b} < p_k < ... < p_1 < {a} along the path
        chain = [self.b] + [frozenset((v,)) for v in reversed(path.interior)] + [self.a]
        x1 = chain_poset(chain)
        self.cyclic = glue(x1, x2, self.a, self.b)

    def _assert_ab_remark(self):
        # {a} and {b} are mincuts; no other mincut touches a or b
        assert self.a in self.mincuts and self.b in self.mincuts
        for cut in self.mincuts:
            if cut not in (self.a, self.b):
                assert not (cut & (self.a | self.b)), sorted(cut)

    def is_type_i(self, element) -> bool:
        return element in self.type_i

    def comparable(self, s1, s2) -> bool:
        """Comparable per the family rule: a type I element is comparable to
        everything; two type II elements compare in the mincut order."""
        if s1 not in self.elements or s2 not in self.elements:
            raise OrderError("element not in family")
        if self.closed:
            return True
        if self.is_type_i(s1) or self.is_type_i(s2):
            return True
        return self.mincuts.compare(s1, s2) != "incomparable"

    def rank_map(self) -> dict:
        """The cyclic-order morphism f into Z: mincut height extended along
        the path by distance to b."""
        if self.closed:
            return {t: i for i, t in enumerate(self.type_i)}
        pairs2 = [
            (c1, c2)
            for c1 in self.type_ii
            for c2 in self.type_ii
            if self.mincuts.compare(c1, c2) == "less"
        ]
        f = FinitePoset(self.type_ii, pairs2).height_rank()
        seq = self.path.sequence
        for k, v in enumerate(reversed(seq[1:-1]), start=1):
            f[frozenset((v,))] = f[self.b] + k
        return f


def cyclic_of_cycle(elements) -> PartialCyclicOrder:
    """Total cyclic order of a cycle given in traversal order."""
    elements = list(elements)
    n = len(elements)
    triples = set()
    for i, j, k in itertools.permutations(range(n), 3):
        if (j - i) % n < (k - i) % n:
            triples.add((elements[i], elements[j], elements[k]))
    return PartialCyclicOrder(frozenset(elements), frozenset(triples))


def build_CP(diagram: CoxeterDiagram, path: PathP) -> CPFamily:
    return CPFamily(diagram, path)


# ---------------------------------------------------------------------------
# Localization


@dataclasses.dataclass(frozen=True)
class Localization:
    family: CPFamily
    center: frozenset  # T
    poset: FinitePoset  # C_{P,T}
    lambda_t: CoxeterDiagram  # Λ_T
    phi: dict  # R -> R ∩ Λ_T
    localized: tuple  # C'_{P,T} in poset-element order
    multi_component: bool  # P\T met several components of Λ\T

    def localized_poset(self) -> FinitePoset:
        pairs = [
            (self.phi[x], self.phi[y]) for x, y in self.poset.less_pairs
        ]
        return FinitePoset(self.localized, pairs)


def localize(family: CPFamily, center) -> Localization:
    """C_{P,T}: elements comparable to but distinct from T, ordered by the
    cyclic order at T; C'_{P,T}: their intersections with Λ_T; φ the
    bijection, with its inverse rebuilt from T-tight paths and checked."""
    center = frozenset(center)
    if center not in family.elements:
        raise OrderError(f"{sorted(center)} not in family")
    comp = tuple(
        e for e in family.elements if e != center and family.comparable(e, center)
    )
    induced = family.cyclic.induced_poset(center)
    pairs = [
        (x, y) for x, y in induced.less_pairs if x in comp and y in comp
    ]
    poset = FinitePoset(comp, pairs)

    diagram = family.diagram
    p_minus_t = frozenset(family.path.sequence) - center
    comps = [c for c in diagram.components(center) if c & p_minus_t]
    lam_t_vertices = frozenset().union(*comps) if comps else frozenset()
    lam_t = diagram.induced(lam_t_vertices)
    phi = {r: r & lam_t_vertices for r in comp}
    localized = tuple(dict.fromkeys(phi[r] for r in comp))
    if len(localized) != len(comp):
        raise AssertionError("phi is not injective on C_{P,T}")

    if __debug__:
        for r in comp:
            r_back = _phi_inverse(family, center, phi[r])
            assert r_back == r, (sorted(center), sorted(r), sorted(r_back))

    return Localization(
        family, center, poset, lam_t, phi, localized, len(comps) > 1
    )


def _phi_inverse(family: CPFamily, center, r_prime) -> frozenset:
    """Inverse of localization: augment R' by the vertices of T reachable
    from the appropriate endpoint by a T-tight path avoiding R'."""
    if frozenset(r_prime) in family.type_i or family.is_type_i(center):
        return frozenset(r_prime)
    lam_p = family.diagram_minus_p
    a, b = family.path.a, family.path.b
    side_vertices = {}
    for endpoint in (a, b):
        if endpoint in center:
            side_vertices[endpoint] = frozenset()
        else:
            side_vertices[endpoint] = lam_p.reach([endpoint], center)
    r_prime = frozenset(r_prime)
    if r_prime <= side_vertices[a] and r_prime:
        endpoint, side = a, side_vertices[a]
    elif r_prime <= side_vertices[b] and r_prime:
        endpoint, side = b, side_vertices[b]
    else:
        raise AssertionError(
            f"localized element {sorted(r_prime)} lies on neither side"
        )
    extra = set()
    for t in sorted(center):
        # T-tight path from t to the endpoint inside (side ∪ T) \ R':
        # leave T immediately, stay inside the side and off T afterwards
        reachable = lam_p.reach(
            [w for w in lam_p.neighbors(t) if w in side - r_prime],
            center | r_prime,
        )
        if endpoint in reachable:
            extra.add(t)
    return r_prime | extra


# ---------------------------------------------------------------------------
# Admissibility


def check_admissible(elements, less_pairs, diagram: CoxeterDiagram) -> list:
    """The four admissibility conditions for a family of vertex sets with a
    strict relation; every violation is witnessed.  Condition 2 enumerates
    Mincut(A,B) inside ``diagram`` for every comparable pair.
    """
    report = []
    elements = [frozenset(e) for e in elements]
    try:
        poset = FinitePoset(elements, less_pairs)
    except OrderError as exc:
        return [{"condition": 1, "witness": str(exc)}]

    for x, y in itertools.combinations(elements, 2):
        if not poset.comparable(x, y):
            continue
        lo, hi = (x, y) if poset.lt(x, y) else (y, x)
        fam = enumerate_mincuts(diagram, lo, hi)
        for cut in fam:
            if cut not in elements:
                report.append(
                    {"condition": 2, "witness": (sorted(lo), sorted(hi), sorted(cut)),
                     "reason": "mincut escapes family"}
                )
            elif not (poset.leq(lo, cut) and poset.leq(cut, hi)):
                report.append(
                    {"condition": 2, "witness": (sorted(lo), sorted(hi), sorted(cut)),
                     "reason": "mincut not between the pair"}
                )

    for x, y, z in itertools.permutations(elements, 3):
        if poset.lt(x, y) and poset.lt(y, z):
            if not separates(diagram, y, x, z):
                report.append(
                    {"condition": 3,
                     "witness": (sorted(x), sorted(y), sorted(z))}
                )

    for x, y in itertools.combinations(elements, 2):
        if poset.upper_bounds(x, y):
            j = poset.join(x, y)
            if j is None:
                report.append({"condition": 4, "kind": "join missing",
                               "witness": (sorted(x), sorted(y))})
            elif not j <= x | y:
                report.append({"condition": 4, "kind": "join containment",
                               "witness": (sorted(x), sorted(y), sorted(j))})
        if poset.lower_bounds(x, y):
            m = poset.meet(x, y)
            if m is None:
                report.append({"condition": 4, "kind": "meet missing",
                               "witness": (sorted(x), sorted(y))})
            elif not m <= x | y:
                report.append({"condition": 4, "kind": "meet containment",
                               "witness": (sorted(x), sorted(y), sorted(m))})
    return report
