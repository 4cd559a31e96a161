"""Diagram parsing, separation, tight paths, and path selection."""
import json

import pytest

from garside_wb.diagram import (
    INFINITY,
    CoxeterDiagram,
    DiagramError,
    PathError,
    PathP,
    canonical_json,
    diagram_from_edges,
    diagram_hash,
    induced_cycles,
    load_diagram,
    peripheral_vertex,
    select_path,
    separates,
    tight_path,
)

THETA = diagram_from_edges(
    [("a", "p"), ("p", "b"), ("a", "x"), ("x", "b"), ("a", "y"), ("y", "b")]
)
TRIANGLE = diagram_from_edges([("a", "b"), ("b", "c"), ("c", "a")])
PATH3 = diagram_from_edges([("a", "c"), ("c", "b")])


def bfs_reachable(edges, start, removed):
    """Independent reachability oracle on an edge list."""
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    seen = {start} - set(removed)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in adj.get(v, ()):
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return seen


class TestParsing:
    def test_round_trip(self):
        text = json.dumps(
            {"vertices": ["a", "b", "c"], "edges": [["a", "b", 3], ["b", "c", "inf"]]}
        )
        d = load_diagram(text)
        assert d.vertices == frozenset("abc")
        assert d.label("a", "b") == 3
        assert d.label("b", "c") == INFINITY
        assert d.label("a", "c") == 2

    def test_duplicate_edge_rejected(self):
        text = json.dumps(
            {"vertices": ["a", "b"], "edges": [["a", "b", 3], ["b", "a", 4]]}
        )
        with pytest.raises(DiagramError, match="edges\\[1\\]"):
            load_diagram(text)

    def test_label_two_rejected(self):
        with pytest.raises(DiagramError, match="label < 3"):
            load_diagram(
                json.dumps({"vertices": ["a", "b"], "edges": [["a", "b", 2]]})
            )

    def test_loop_rejected(self):
        with pytest.raises(DiagramError, match="loop"):
            load_diagram(json.dumps({"vertices": ["a"], "edges": [["a", "a", 3]]}))

    def test_unknown_vertex_rejected(self):
        with pytest.raises(DiagramError):
            CoxeterDiagram(frozenset("ab"), {frozenset("ac"): 3})

    def test_hash_is_order_independent(self):
        d1 = load_diagram(
            json.dumps({"vertices": ["b", "a"], "edges": [["b", "a", 3]]})
        )
        d2 = load_diagram(
            json.dumps({"vertices": ["a", "b"], "edges": [["a", "b", 3]]})
        )
        assert canonical_json(d1) == canonical_json(d2)
        assert diagram_hash(d1) == diagram_hash(d2)


class TestSeparation:
    def test_middle_vertex_separates_path(self):
        assert separates(PATH3, {"c"}, {"a"}, {"b"})
        assert not separates(PATH3, set(), {"a"}, {"b"})

    def test_vacuous_when_side_swallowed(self):
        # A \ C empty: vacuously separated
        assert separates(PATH3, {"a"}, {"a"}, {"b"})
        assert separates(PATH3, {"b"}, {"a"}, {"b"})

    def test_triangle_needs_two_vertices(self):
        assert not separates(TRIANGLE, {"c"}, {"a"}, {"b"})
        assert separates(TRIANGLE, {"a"}, {"a"}, {"b"})

    def test_against_reachability_oracle(self):
        import itertools
        import random

        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(3, 7)
            names = [f"v{i}" for i in range(n)]
            edges = [
                (u, v)
                for u, v in itertools.combinations(names, 2)
                if rng.random() < 0.5
            ]
            d = diagram_from_edges(edges, extra_vertices=names)
            for _ in range(10):
                c = set(rng.sample(names, rng.randint(0, n - 2)))
                a, b = rng.sample(names, 2)
                expect = (
                    a in c
                    or b in c
                    or b not in bfs_reachable(edges, a, c)
                )
                assert separates(d, c, {a}, {b}) == expect


class TestTightPath:
    def test_plain_path(self):
        assert tight_path(PATH3, "a", "b") == ("a", "c", "b")

    def test_tight_set_must_be_hit_once(self):
        # on the theta graph, a path a -> b tight on {x, y} is impossible:
        # it would have to pass through both
        assert tight_path(THETA, "a", "b", tight_sets=[{"p"}]) == ("a", "p", "b")
        assert tight_path(THETA, "a", "b", tight_sets=[{"x"}, {"y"}]) is None

    def test_tight_set_hit_exactly_once(self):
        square = diagram_from_edges(
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]
        )
        # {b, d} can only be visited once, in either branch
        path = tight_path(square, "a", "c", tight_sets=[{"b", "d"}])
        assert path in (("a", "b", "c"), ("a", "d", "c"))

    def test_forbidden(self):
        assert tight_path(THETA, "a", "b", forbidden={"p", "x"}) == ("a", "y", "b")
        assert tight_path(THETA, "a", "b", forbidden={"p", "x", "y"}) is None


class TestPeripheral:
    def test_leaf_of_a_cut(self):
        # on the path a-c-b, {a, c} has peripheral vertex a (removing it
        # keeps c connected to the rest); c disconnects a
        assert peripheral_vertex(PATH3, {"a", "c"}) == "a"

    def test_avoid(self):
        assert peripheral_vertex(THETA, {"x", "y"}) == "x"
        assert peripheral_vertex(THETA, {"x", "y"}, avoid="x") == "y"

    def test_avoid_needs_room(self):
        with pytest.raises(DiagramError):
            peripheral_vertex(THETA, {"x"}, avoid="x")


class TestInducedCycles:
    def test_triangle(self):
        assert induced_cycles(TRIANGLE) == [("a", "b", "c")]

    def test_theta_has_three(self):
        # each pair of arcs of the theta graph makes an induced 4-cycle
        assert induced_cycles(THETA) == [
            ("a", "p", "b", "x"),
            ("a", "p", "b", "y"),
            ("a", "x", "b", "y"),
        ]

    def test_square_with_chord_has_two_triangles(self):
        d = diagram_from_edges(
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")]
        )
        assert induced_cycles(d) == [("a", "b", "c"), ("a", "c", "d")]

    def test_forest_has_none(self):
        d = diagram_from_edges([("a", "b"), ("b", "c")])
        assert induced_cycles(d) == []


class TestPathP:
    def test_interior_valence_enforced(self):
        # in the theta graph, a and b have valence 3: no legal interior
        with pytest.raises(PathError, match="valence"):
            PathP(THETA, ("x", "a", "p"))

    def test_good_path(self):
        p = PathP(THETA, ("a", "p", "b"))
        assert p.interior == ("p",)
        assert not p.closed
        assert p.diagram_minus_interior().vertices == frozenset("abxy")

    def test_closed_path(self):
        p = PathP(TRIANGLE, ("a", "b", "c", "a"))
        assert p.closed
        assert p.interior == ("b", "c")

    def test_not_an_edge(self):
        with pytest.raises(PathError, match="not an edge"):
            PathP(THETA, ("a", "b"))

    def test_pendant_endpoint_rejected(self):
        d = diagram_from_edges(
            [("a", "b"), ("b", "c"), ("c", "a"), ("c", "z")]
        )
        with pytest.raises(PathError, match="valence 1"):
            PathP(d, ("z", "c"))


class TestSelectPath:
    def test_triangle_from_own_vertex(self):
        p = select_path(TRIANGLE, "a")
        assert p.sequence == ("a", "b", "c", "a")

    def test_pendant_vertex_selects_whole_cycle(self):
        d = diagram_from_edges(
            [("a", "b"), ("b", "c"), ("c", "a"), ("c", "z")]
        )
        # nearest cycle vertex to z is c; both arcs close up the full cycle
        p = select_path(d, "z")
        assert p.sequence == ("c", "a", "b", "c")

    def test_arc_stops_at_branch_vertex(self):
        p = select_path(THETA, "p")
        # nearest cycle containing p at distance 0: (a, p, b, x); arcs from p
        # stop at a and b (valence 3)
        assert p.sequence in (("p", "a",), ("p", "b"))
        assert len(p.sequence) == 2

    def test_forest_rejected(self):
        with pytest.raises(DiagramError, match="forest"):
            select_path(diagram_from_edges([("a", "b")]), "a")
