"""Exact Coxeter group engine and the complexes built on it.

Group elements are matrices of the geometric representation over
Q(sqrt2, sqrt3, sqrt5) (exact.ExactScalar), so equality is the word problem
and descent sets come from root signs.  On top of the engine:

- parabolic and double-coset minimal representatives,
- gates (nearest-point projections to standard subcomplexes),
- radius-limited windows of the (relative) Coxeter complex,
- Davis-complex windows with face projections and oriented cells,
- sphericity (positive-definiteness of the cosine Gram matrix).

Everything on infinite groups is windowed by representative length; results
that would need elements beyond a window raise TruncationError rather than
guessing.
"""
from __future__ import annotations

import dataclasses
import os
import struct
from typing import Iterable, Optional

from filelock import FileLock

from .diagram import INFINITY, CoxeterDiagram, diagram_hash
from .exact import ExactScalar, FieldError

SUPPORTED_LABELS = frozenset({2, 3, 4, 5, 6, INFINITY})

#: Hard cap on elements a single window may materialize.
DEFAULT_ELEMENT_CAP = 200_000

_CACHE_MAGIC = b"GWBALL01"


class CoxeterError(ValueError):
    pass


class TruncationError(CoxeterError):
    """The requested object does not fit in the enumerated window."""


def _check_labels(diagram: CoxeterDiagram) -> None:
    for pair, m in diagram.labels.items():
        if m not in SUPPORTED_LABELS:
            raise FieldError(
                f"field not supported: label {m} on edge {sorted(pair)}"
            )


# ---------------------------------------------------------------------------
# Engine and elements


class GroupElement:
    """Element of a Coxeter group, identified by its representation matrix."""

    __slots__ = ("engine", "matrix", "word", "_length", "_inverse",
                 "_reduced", "_hash")

    def __init__(self, engine: "GroupEngine", matrix, word):
        self.engine = engine
        self.matrix = matrix
        self.word = tuple(word)
        self._length: Optional[int] = None
        self._inverse: Optional["GroupElement"] = None
        self._reduced: Optional[tuple] = None
        self._hash: Optional[int] = None

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.engine is not self.engine:
            raise CoxeterError("elements from different engines")
        return GroupElement(
            self.engine,
            _mat_mul(self.matrix, other.matrix),
            self.word + other.word,
        )

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and other.engine is self.engine
            and other.matrix == self.matrix
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.matrix)
        return self._hash

    def __repr__(self):
        return f"<{' '.join(map(str, self.reduced_word())) or 'e'}>"

    def is_identity(self) -> bool:
        return self.matrix == self.engine.identity.matrix

    def inverse(self) -> "GroupElement":
        if self._inverse is None:
            eng = self.engine
            inv = GroupElement(
                eng, _mat_inv(self.matrix), tuple(reversed(self.word))
            )
            inv._inverse = self
            self._inverse = inv
        return self._inverse

    def times_gen(self, s) -> "GroupElement":
        return GroupElement(
            self.engine,
            _mat_mul(self.matrix, self.engine._gen_mats[s]),
            self.word + (s,),
        )

    def gen_times(self, s) -> "GroupElement":
        return GroupElement(
            self.engine,
            _mat_mul(self.engine._gen_mats[s], self.matrix),
            (s,) + self.word,
        )

    def maps_root_negative(self, s) -> bool:
        """True iff this element sends the simple root of s to a negative
        root, i.e. s is a right descent."""
        col = self.engine._gi[s]
        for row in self.matrix:
            sign = row[col].sign()
            if sign:
                return sign < 0
        raise AssertionError("image of a simple root cannot vanish")

    def descents(self, side: str = "right") -> tuple:
        if side == "right":
            g = self
        elif side == "left":
            g = self.inverse()
        else:
            raise CoxeterError(f"side must be 'left' or 'right', got {side!r}")
        return tuple(s for s in self.engine.gens if g.maps_root_negative(s))

    def reduced_word(self) -> tuple:
        """Canonical reduced word: repeatedly strip the smallest right
        descent."""
        if self._reduced is not None:
            return self._reduced
        stripped = []
        g = self
        while True:
            ds = g.descents("right")
            if not ds:
                break
            s = ds[0]
            stripped.append(s)
            g = g.times_gen(s)
        if not g.is_identity():
            raise AssertionError("descent stripping did not reach identity")
        self._reduced = tuple(reversed(stripped))
        return self._reduced

    def length(self) -> int:
        if self._length is None:
            self._length = len(self.reduced_word())
        return self._length


class GroupEngine:
    """Shared context: diagram, generator matrices, bilinear form, balls."""

    def __init__(self, diagram: CoxeterDiagram):
        _check_labels(diagram)
        self.diagram = diagram
        self.gens = tuple(sorted(diagram.vertices))
        self._gi = {s: i for i, s in enumerate(self.gens)}
        n = len(self.gens)
        one, zero = ExactScalar(1), ExactScalar(0)
        b = _gram(diagram, self.gens)
        self._b = b
        self._gen_mats = {}
        for s in self.gens:
            si = self._gi[s]
            # s(alpha_j) = alpha_j - 2 B(s, j) alpha_s
            mat = [
                [
                    (one if i == j else zero)
                    - (ExactScalar(2) * b[si][j] if i == si else zero)
                    for j in range(n)
                ]
                for i in range(n)
            ]
            self._gen_mats[s] = tuple(tuple(row) for row in mat)
        ident = tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)
        )
        self.identity = GroupElement(self, ident, ())
        self._balls: dict = {}
        self._subgroups: dict = {}
        self._gates: dict = {}

    def check_subset(self, subset: Iterable) -> frozenset:
        subset = frozenset(subset)
        unknown = subset - set(self.gens)
        if unknown:
            raise CoxeterError(f"unknown generators {sorted(unknown)}")
        return subset

    def gen(self, s) -> GroupElement:
        self.check_subset([s])
        return GroupElement(self, self._gen_mats[s], (s,))

    def from_word(self, word: Iterable) -> GroupElement:
        g = self.identity
        for s in word:
            g = g.times_gen(s)
        return g

    def ball(self, radius: int, cache_dir: Optional[str] = None) -> dict:
        """All elements of length <= radius, as {element: length}; BFS by
        word length, deterministic order.  Optionally persisted on disk."""
        if radius in self._balls:
            return self._balls[radius]
        if cache_dir is not None:
            cached = _load_ball(self, radius, cache_dir)
            if cached is not None:
                self._balls[radius] = cached
                return cached
        out = {self.identity: 0}
        frontier = [self.identity]
        for depth in range(1, radius + 1):
            nxt = []
            for g in frontier:
                for s in self.gens:
                    h = g.times_gen(s)
                    if h not in out:
                        out[h] = depth
                        h._length = depth
                        nxt.append(h)
            frontier = nxt
            if len(out) > DEFAULT_ELEMENT_CAP:
                raise TruncationError(
                    f"ball of radius {radius} exceeds the element cap"
                )
        self._balls[radius] = out
        if cache_dir is not None:
            _store_ball(self, radius, out, cache_dir)
        return out

    def subgroup_elements(self, subset: Iterable) -> tuple:
        """All elements of the standard parabolic W_subset (must be finite)."""
        subset = self.check_subset(subset)
        if subset in self._subgroups:
            return self._subgroups[subset]
        if not is_spherical(self.diagram.induced(subset)):
            raise CoxeterError(
                f"parabolic {sorted(subset)} is infinite; cannot enumerate"
            )
        out = {self.identity: 0}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in sorted(subset):
                    h = g.times_gen(s)
                    if h not in out:
                        out[h] = out[g] + 1
                        nxt.append(h)
            frontier = nxt
        elems = tuple(sorted(out, key=lambda g: (out[g], g.word)))
        self._subgroups[subset] = elems
        return elems


def build_group(diagram: CoxeterDiagram) -> GroupEngine:
    return GroupEngine(diagram)


def _gram(diagram: CoxeterDiagram, gens=None) -> tuple:
    """Cosine Gram matrix B(s, t) = -cos(pi / m_st), diagonal 1."""
    if gens is None:
        gens = tuple(sorted(diagram.vertices))
    one = ExactScalar(1)
    half = ExactScalar(1) / ExactScalar(2)
    return tuple(
        tuple(
            one if s == t else -(ExactScalar.two_cos(diagram.label(s, t)) * half)
            for t in gens
        )
        for s in gens
    )


def _mat_mul(a, b):
    n = len(a)
    bt = _transpose(b)
    return tuple(
        tuple(_dot(row, col) for col in bt) for row in a
    )


def _dot(row, col):
    total = ExactScalar(0)
    for x, y in zip(row, col):
        total = total + x * y
    return total


def _transpose(m):
    return tuple(zip(*m))


def _mat_inv(m):
    """Matrix inverse over ExactScalar by Gauss-Jordan elimination."""
    n = len(m)
    one, zero = ExactScalar(1), ExactScalar(0)
    a = [list(row) + [one if i == j else zero for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if not a[r][col].is_zero()), None
        )
        if pivot is None:
            raise CoxeterError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return tuple(tuple(a[i][n:]) for i in range(n))


# ---------------------------------------------------------------------------
# Parabolic cosets, double cosets, gates


@dataclasses.dataclass(frozen=True)
class ParabolicCoset:
    """Left coset rep * W_gens with the minimal-length representative."""

    rep: GroupElement
    gens: frozenset

    def __post_init__(self):
        if any(s in self.gens for s in self.rep.descents("right")):
            raise CoxeterError("representative is not minimal")

    @property
    def engine(self) -> GroupEngine:
        return self.rep.engine

    def contains(self, x: GroupElement) -> bool:
        return coset_min_rep(x, self.gens).rep == self.rep

    def elements(self) -> tuple:
        """All coset elements (finite parabolics only), deterministic."""
        return tuple(
            self.rep * u for u in self.engine.subgroup_elements(self.gens)
        )


def coset_min_rep(g: GroupElement, subset: Iterable) -> ParabolicCoset:
    """Strip right descents inside ``subset`` until none remain."""
    subset = g.engine.check_subset(subset)
    while True:
        s = next((t for t in g.descents("right") if t in subset), None)
        if s is None:
            return ParabolicCoset(g, subset)
        g = g.times_gen(s)


def _double_strip(g: GroupElement, left_set, right_set):
    """Reduce g by left descents in left_set and right descents in
    right_set; returns (reduced, u1, u2) with g = u1 * reduced * u2,
    u1 in W_left_set, u2 in W_right_set."""
    eng = g.engine
    u1, u2 = eng.identity, eng.identity
    while True:
        s = next((t for t in g.descents("left") if t in left_set), None)
        if s is not None:
            g = g.gen_times(s)
            u1 = u1.times_gen(s)
            continue
        s = next((t for t in g.descents("right") if t in right_set), None)
        if s is not None:
            g = g.times_gen(s)
            u2 = u2.gen_times(s)
            continue
        return g, u1, u2


def double_coset_min_rep(g: GroupElement, s1: Iterable, s2: Iterable) -> GroupElement:
    s1 = g.engine.check_subset(s1)
    s2 = g.engine.check_subset(s2)
    return _double_strip(g, s1, s2)[0]


def coset_intersection(
    c1: ParabolicCoset, c2: ParabolicCoset
) -> Optional[GroupElement]:
    """A common element of the two cosets, or None if they are disjoint.

    rep1^-1 rep2 lies in W_S1 * W_S2 iff the double strip reaches the
    identity; the strip factors then exhibit a common element.
    """
    h = c1.rep.inverse() * c2.rep
    reduced, u1, _ = _double_strip(h, c1.gens, c2.gens)
    if not reduced.is_identity():
        return None
    return c1.rep * u1


def cosets_intersect(
    g: GroupElement, s1: Iterable, h: GroupElement, s2: Iterable
) -> bool:
    return double_coset_min_rep(g.inverse() * h, s1, s2).is_identity()


def gate(x: GroupElement, coset: ParabolicCoset) -> GroupElement:
    """The unique nearest vertex of the coset, computed algebraically.

    d(x, rep*w) = l(w^-1 rep^-1 x) = l(k w) for k = x^-1 rep, so the
    minimizing w is read off by stripping right descents of k inside the
    coset's generators.
    """
    if x.engine is not coset.engine:
        raise CoxeterError("elements from different engines")
    cache = x.engine._gates
    key = (x, coset.rep, coset.gens)
    hit = cache.get(key)
    if hit is not None:
        return hit
    k = x.inverse() * coset.rep
    w = coset.engine.identity
    while True:
        s = next((t for t in k.descents("right") if t in coset.gens), None)
        if s is None:
            out = coset.rep * w
            cache[key] = out
            return out
        k = k.times_gen(s)
        w = w.times_gen(s)


# ---------------------------------------------------------------------------
# Sphericity and supports


def is_spherical(diagram: CoxeterDiagram) -> bool:
    """Finite group iff the cosine Gram matrix is positive definite, i.e.
    all leading principal minors are positive."""
    _check_labels(diagram)
    if any(m == INFINITY for m in diagram.labels.values()):
        return False
    gram = _gram(diagram)
    n = len(gram)
    for k in range(1, n + 1):
        minor = [row[:k] for row in gram[:k]]
        if _det(minor).sign() <= 0:
            return False
    return True


def _det(m) -> ExactScalar:
    n = len(m)
    a = [list(row) for row in m]
    det = ExactScalar(1)
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if not a[r][col].is_zero()), None
        )
        if pivot is None:
            return ExactScalar(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col]
        inv = a[col][col].inverse()
        for r in range(col + 1, n):
            if not a[r][col].is_zero():
                f = a[r][col] * inv
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return det


def supp(faces: Iterable) -> frozenset:
    """Union of the generator labels carried by the given faces/edges."""
    out = set()
    for face in faces:
        out |= face.gens
    return frozenset(out)


# ---------------------------------------------------------------------------
# Coxeter complex windows


@dataclasses.dataclass(frozen=True)
class ComplexVertex:
    """Vertex of the Coxeter complex: a coset of a maximal parabolic,
    labeled by its type (the missing generator)."""

    coset: ParabolicCoset
    vertex_type: object  # the generator s with gens = S \ {s}

    def __repr__(self):
        return f"[{self.coset.rep!r}:{self.vertex_type}]"


class ComplexWindow:
    """Radius-limited window of the (relative) Coxeter complex.

    Vertices: cosets w*W_{S minus s} for s in ``types`` whose minimal
    representative has length <= radius.  Edges by coset intersection;
    simplices are cliques, and every clique's global coset intersection is
    recomputed — a pairwise/global discrepancy is a hard error.
    """

    def __init__(self, engine: GroupEngine, types: Iterable, radius: int,
                 cap: int = DEFAULT_ELEMENT_CAP, cache_dir: Optional[str] = None):
        if radius < 0:
            raise CoxeterError("radius must be >= 0")
        self.engine = engine
        self.types = tuple(sorted(engine.check_subset(types)))
        self.radius = radius
        all_gens = set(engine.gens)

        ball = engine.ball(radius, cache_dir=cache_dir)
        order = sorted(ball, key=lambda g: (ball[g], g.word))
        seen = {}
        for w in order:
            for s in self.types:
                c = coset_min_rep(w, all_gens - {s})
                key = (c.rep, s)
                if key not in seen:
                    seen[key] = ComplexVertex(c, s)
                    if len(seen) > cap:
                        raise TruncationError("window exceeds the element cap")
        self.vertices = tuple(seen.values())

        self.edges = []
        for i, v1 in enumerate(self.vertices):
            for v2 in self.vertices[i + 1:]:
                if v1.vertex_type == v2.vertex_type:
                    continue
                if coset_intersection(v1.coset, v2.coset) is not None:
                    self.edges.append((v1, v2))
        self.edges = tuple(self.edges)
        self._adj = {v: set() for v in self.vertices}
        for v1, v2 in self.edges:
            self._adj[v1].add(v2)
            self._adj[v2].add(v1)
        self.simplices = self._cliques_checked()

    def neighbors(self, v) -> frozenset:
        return frozenset(self._adj[v])

    def _cliques_checked(self) -> tuple:
        """Maximal cliques of the edge graph (Bron-Kerbosch), each
        re-verified to have a globally nonempty coset intersection."""
        index = {v: i for i, v in enumerate(self.vertices)}
        maximal = []

        def bron(clique, candidates, excluded):
            if not candidates and not excluded:
                if len(clique) > 1:
                    maximal.append(tuple(clique))
                return
            for v in list(candidates):
                bron(
                    clique + [v],
                    [w for w in candidates if w in self._adj[v]],
                    [w for w in excluded if w in self._adj[v]],
                )
                candidates.remove(v)
                excluded.append(v)

        bron([], sorted(self.vertices, key=index.get), [])
        for clique in maximal:
            common = clique[0].coset
            rep, gens = common.rep, common.gens
            for v in clique[1:]:
                elem = coset_intersection(
                    ParabolicCoset(coset_min_rep(rep, gens).rep, gens), v.coset
                )
                if elem is None:
                    raise CoxeterError(
                        "pairwise-intersecting cosets with empty global "
                        f"intersection: {clique!r}"
                    )
                gens = gens & v.coset.gens
                rep = coset_min_rep(elem, gens).rep
        uniq = {frozenset(c): c for c in maximal}
        return tuple(uniq[k] for k in sorted(uniq, key=lambda fs: sorted(
            (v.vertex_type, v.coset.rep.word) for v in fs)))


# ---------------------------------------------------------------------------
# Davis windows and oriented cells


@dataclasses.dataclass(frozen=True)
class DavisFace:
    """Face of the Davis complex: a coset of a finite standard parabolic."""

    coset: ParabolicCoset

    @property
    def gens(self) -> frozenset:
        return self.coset.gens

    def vertex_set(self) -> tuple:
        return self.coset.elements()

    def __repr__(self):
        return f"D[{self.coset.rep!r};{sorted(self.gens)}]"


@dataclasses.dataclass(frozen=True)
class OrientedCell:
    """Cell [F, v] of the oriented Davis complex, canonicalized so that the
    basepoint is the gate of v in F (two basepoints give the same cell iff
    their gates agree)."""

    face: DavisFace
    base: GroupElement

    @classmethod
    def of(cls, face: DavisFace, v: GroupElement) -> "OrientedCell":
        return cls(face, gate(v, face.coset))


class DavisWindow:
    """All Davis faces whose coset representative has length <= radius."""

    def __init__(self, engine: GroupEngine, radius: int,
                 cache_dir: Optional[str] = None):
        self.engine = engine
        self.radius = radius
        subsets = spherical_subsets(engine.diagram)
        ball = engine.ball(radius, cache_dir=cache_dir)
        order = sorted(ball, key=lambda g: (ball[g], g.word))
        faces = {}
        for w in order:
            for t in subsets:
                c = coset_min_rep(w, t)
                key = (c.rep, t)
                if key not in faces:
                    faces[key] = DavisFace(c)
        self.faces = tuple(faces.values())
        self._by_vertex_set = {
            frozenset(f.vertex_set()): f for f in self.faces
        }
        self._projections: dict = {}

    def vertices(self) -> tuple:
        return tuple(f for f in self.faces if not f.gens)

    def face_by_vertices(self, vertex_set) -> DavisFace:
        try:
            return self._by_vertex_set[frozenset(vertex_set)]
        except KeyError:
            raise TruncationError(
                "projected face lies outside the enumerated window"
            ) from None

    def face_projection(self, e: DavisFace, f: ParabolicCoset) -> DavisFace:
        """Project the face e into the standard subcomplex spanned by the
        coset f, by gating every vertex; basepoint-independent, memoized."""
        key = (e, f)
        hit = self._projections.get(key)
        if hit is None:
            image = {gate(v, f) for v in e.vertex_set()}
            hit = self.face_by_vertices(image)
            self._projections[key] = hit
        return hit

    def oriented_retraction(self, cell: OrientedCell, f: ParabolicCoset) -> OrientedCell:
        projected = self.face_projection(cell.face, f)
        return OrientedCell.of(projected, cell.base)


def spherical_subsets(diagram: CoxeterDiagram) -> tuple:
    """All generator subsets spanning a finite parabolic, smallest first."""
    import itertools as _it

    gens = sorted(diagram.vertices)
    out = []
    for r in range(len(gens) + 1):
        for t in _it.combinations(gens, r):
            if is_spherical(diagram.induced(t)):
                out.append(frozenset(t))
    return tuple(out)


# ---------------------------------------------------------------------------
# Ball cache persistence


def resolve_cache_dir(explicit: Optional[str] = None) -> str:
    """Cache directory: explicit flag, then GARSIDE_WB_CACHE, then a
    platform default under the user cache directory."""
    if explicit:
        return explicit
    env = os.environ.get("GARSIDE_WB_CACHE")
    if env:
        return env
    return os.path.join(
        os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache")),
        "garside_wb",
    )


def _cache_path(engine: GroupEngine, radius: int, cache_dir: str) -> str:
    return os.path.join(
        cache_dir, f"ball-{diagram_hash(engine.diagram)[:32]}-r{radius}.bin"
    )


def _store_ball(engine: GroupEngine, radius: int, ball: dict, cache_dir: str) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(engine, radius, cache_dir)
    gi = engine._gi
    payload = bytearray()
    payload += _CACHE_MAGIC
    payload += bytes.fromhex(diagram_hash(engine.diagram))
    payload += struct.pack("<II", radius, len(ball))
    for g in sorted(ball, key=lambda g: (ball[g], g.word)):
        word = g.word
        payload += struct.pack("<H", len(word))
        payload += bytes(gi[s] for s in word)
    with FileLock(path + ".lock"):
        with open(path, "wb") as fh:
            fh.write(payload)


def _load_ball(engine: GroupEngine, radius: int, cache_dir: str) -> Optional[dict]:
    path = _cache_path(engine, radius, cache_dir)
    if not os.path.exists(path):
        return None
    with FileLock(path + ".lock"):
        with open(path, "rb") as fh:
            data = fh.read()
    if not data.startswith(_CACHE_MAGIC):
        return None
    off = len(_CACHE_MAGIC)
    stored_hash = data[off:off + 32].hex()
    off += 32
    if stored_hash != diagram_hash(engine.diagram):
        return None
    stored_radius, count = struct.unpack_from("<II", data, off)
    off += 8
    if stored_radius != radius:
        return None
    out = {}
    for _ in range(count):
        (wlen,) = struct.unpack_from("<H", data, off)
        off += 2
        word = tuple(engine.gens[b] for b in data[off:off + wlen])
        off += wlen
        g = engine.from_word(word)
        g._length = len(word)
        out[g] = len(word)
    return out
