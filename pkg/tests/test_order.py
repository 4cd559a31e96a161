"""Partial cyclic orders, gluing, the family C_P, localization, admissibility."""
import itertools

import pytest

from garside_wb.diagram import PathP, diagram_from_edges
from garside_wb.order import (
    CPFamily,
    FinitePoset,
    OrderError,
    build_CP,
    chain_poset,
    check_admissible,
    check_partial_cyclic,
    cyclic_from_linear,
    cyclic_of_cycle,
    glue,
    localize,
)

THETA = diagram_from_edges(
    [("a", "p"), ("p", "b"), ("a", "x"), ("x", "b"), ("a", "y"), ("y", "b")]
)
TRIANGLE = diagram_from_edges([("a", "b"), ("b", "c"), ("c", "a")])
# a and b at opposite corners
SQUARE = diagram_from_edges([("a", "c"), ("c", "b"), ("b", "d"), ("d", "a")])
PATH3 = diagram_from_edges([("a", "c"), ("c", "b")])

fs = frozenset


def cycle_rotation_triples(cycle):
    """All triples (x, y, z) appearing in this cyclic order of a full cycle."""
    n = len(cycle)
    return {
        (cycle[i], cycle[j], cycle[k])
        for i, j, k in itertools.permutations(range(n), 3)
        if (j - i) % n < (k - i) % n
    }


class TestFinitePoset:
    def test_validation(self):
        with pytest.raises(OrderError, match="antisymmetry"):
            FinitePoset("ab", [("a", "b"), ("b", "a")])
        with pytest.raises(OrderError, match="transitivity"):
            FinitePoset("abc", [("a", "b"), ("b", "c")])
        with pytest.raises(OrderError, match="irreflexivity"):
            FinitePoset("a", [("a", "a")])

    def test_chain(self):
        p = chain_poset("abc")
        assert p.lt("a", "c")
        assert p.join("a", "b") == "b"
        assert p.meet("a", "b") == "a"
        assert p.height_rank() == {"a": 0, "b": 1, "c": 2}

    def test_join_absent_in_antichain(self):
        p = FinitePoset("ab", [])
        assert p.join("a", "b") is None
        assert p.upper_bounds("a", "b") == []


class TestPartialCyclic:
    def test_linear_induces_valid_cyclic(self):
        c = cyclic_from_linear("abcd")
        assert check_partial_cyclic(c.ground, c.triples) == []
        assert c.holds("a", "b", "c")
        assert c.holds("c", "d", "a")
        assert not c.holds("b", "a", "c")

    def test_axiom_witnesses(self):
        bad = check_partial_cyclic("abc", [("a", "b", "c"), ("c", "b", "a")])
        axioms = {v["axiom"] for v in bad}
        assert "asymmetry" in axioms

    def test_transitivity_witness(self):
        # [a,b,c] and [a,c,d] force [a,b,d]
        triples = set()
        for t in [("a", "b", "c"), ("a", "c", "d")]:
            for rot in (t, t[1:] + t[:1], t[2:] + t[:2]):
                triples.add(rot)
        bad = check_partial_cyclic("abcd", triples)
        assert any(v["axiom"] == "transitivity" for v in bad)

    def test_induced_poset(self):
        c = cyclic_of_cycle("abcd")
        p = c.induced_poset("d")
        assert p.lt("a", "b") and p.lt("b", "c") and p.lt("a", "c")


class TestGlue:
    def test_two_chains_make_a_cycle(self):
        # X2: a < m < b, X1: b < n < a, glued: the 4-cycle a, m, b, n
        x2 = chain_poset(["a", "m", "b"])
        x1 = chain_poset(["b", "n", "a"])
        c = glue(x1, x2, "a", "b")
        assert c.triples == fs(cycle_rotation_triples(("a", "m", "b", "n")))

    def test_result_is_always_checked(self):
        x2 = chain_poset(["a", "m1", "m2", "b"])
        x1 = chain_poset(["b", "n1", "n2", "a"])
        c = glue(x1, x2, "a", "b")
        assert check_partial_cyclic(c.ground, c.triples) == []
        assert c.triples == fs(
            cycle_rotation_triples(("a", "m1", "m2", "b", "n1", "n2"))
        )

    def test_diamond_glued_with_chain(self):
        # X2 is not a chain: a < {u, v} < b with u, v incomparable
        x2 = FinitePoset(
            ["a", "u", "v", "b"],
            [("a", "u"), ("a", "v"), ("u", "b"), ("v", "b"), ("a", "b")],
        )
        x1 = chain_poset(["b", "n", "a"])
        c = glue(x1, x2, "a", "b")
        assert check_partial_cyclic(c.ground, c.triples) == []
        # u, v stay incomparable: no triple relates them without the chain
        assert not c.holds("u", "v", "n") and not c.holds("v", "u", "n")

    def test_endpoint_conditions_enforced(self):
        x2 = chain_poset(["a", "m", "b"])
        x1 = chain_poset(["a", "n", "b"])  # wrong orientation
        with pytest.raises(OrderError, match="between"):
            glue(x1, x2, "a", "b")

    def test_overlap_enforced(self):
        # m appears in both posets
        with pytest.raises(OrderError, match="share exactly"):
            glue(chain_poset("bma"), chain_poset("amb"), "a", "b")


class TestCPFamily:
    def test_theta_elements(self):
        path = PathP(THETA, ("a", "p", "b"))
        fam = build_CP(THETA, path)
        assert fam.type_i == (fs("p"),)
        assert set(fam.type_ii) == {fs("a"), fs("b"), fs(("x", "y"))}
        assert check_partial_cyclic(fam.cyclic.ground, fam.cyclic.triples) == []

    def test_theta_cyclic_is_four_cycle(self):
        fam = build_CP(THETA, PathP(THETA, ("a", "p", "b")))
        expected = cycle_rotation_triples(
            (fs("a"), fs(("x", "y")), fs("b"), fs("p"))
        )
        assert fam.cyclic.triples == fs(expected)

    def test_theta_rank_map(self):
        fam = build_CP(THETA, PathP(THETA, ("a", "p", "b")))
        f = fam.rank_map()
        assert f == {fs("a"): 0, fs(("x", "y")): 1, fs("b"): 2, fs("p"): 3}
        # rank map is a cyclic-order morphism into Z: a triple holds in the
        # canonical cyclic order iff rotating its images to start at the
        # minimum gives an increasing sequence
        for t in fam.cyclic.triples:
            vals = [f[t[0]], f[t[1]], f[t[2]]]
            assert len(set(vals)) == 3
            shift = vals.index(min(vals))
            rot = vals[shift:] + vals[:shift]
            assert rot[0] < rot[1] < rot[2]

    def test_closed_path_is_cycle_of_vertices(self):
        fam = build_CP(TRIANGLE, PathP(TRIANGLE, ("a", "b", "c", "a")))
        assert fam.closed
        assert fam.elements == (fs("a"), fs("b"), fs("c"))
        assert check_partial_cyclic(fam.cyclic.ground, fam.cyclic.triples) == []

    def test_disconnected_complement_rejected(self):
        # a and b are joined only through m; removing the interior of
        # P = (a, m, b) splits the diagram into a-c and b-e
        d = diagram_from_edges(
            [("a", "m"), ("m", "b"), ("a", "c"), ("c", "a2"), ("b", "e"), ("e", "b2")]
        )
        with pytest.raises(OrderError, match="disconnected"):
            CPFamily(d, PathP(d, ("a", "m", "b")))


class TestLocalize:
    def test_theta_at_type_i(self):
        fam = build_CP(THETA, PathP(THETA, ("a", "p", "b")))
        loc = localize(fam, fs("p"))
        chain = {fs("a"), fs(("x", "y")), fs("b")}
        assert set(loc.poset.elements) == chain
        assert loc.poset.lt(fs("a"), fs(("x", "y")))
        assert loc.poset.lt(fs(("x", "y")), fs("b"))
        assert loc.lambda_t.vertices == frozenset("abxy")
        # type I center: localization is the identity on elements
        assert set(loc.localized) == chain
        assert not loc.multi_component

    def test_theta_at_type_ii(self):
        fam = build_CP(THETA, PathP(THETA, ("a", "p", "b")))
        loc = localize(fam, fs(("x", "y")))
        assert set(loc.poset.elements) == {fs("a"), fs("b"), fs("p")}
        assert loc.poset.lt(fs("b"), fs("p"))
        assert loc.poset.lt(fs("p"), fs("a"))
        assert loc.lambda_t.vertices == frozenset("abp")

    def test_localized_family_admissible(self):
        fam = build_CP(THETA, PathP(THETA, ("a", "p", "b")))
        for center in (fs("p"), fs(("x", "y"))):
            loc = localize(fam, center)
            localized = loc.localized_poset()
            report = check_admissible(
                localized.elements, localized.less_pairs, loc.lambda_t
            )
            assert report == []

    def test_unknown_center(self):
        fam = build_CP(THETA, PathP(THETA, ("a", "p", "b")))
        with pytest.raises(OrderError, match="not in family"):
            localize(fam, fs("z"))


class TestAdmissible:
    def test_mincut_family_is_admissible(self):
        from garside_wb.mincut import enumerate_mincuts

        for diagram, (a, b) in [(SQUARE, ("a", "b")), (PATH3, ("a", "b"))]:
            fam = enumerate_mincuts(diagram, {a}, {b})
            pairs = [
                (c1, c2)
                for c1 in fam
                for c2 in fam
                if fam.compare(c1, c2) == "less"
            ]
            assert check_admissible(fam.cuts, pairs, diagram) == []

    def test_escaping_mincut_detected(self):
        # Q = {{a}, {b}} with a < b on the path a-c-b: {c} is a minimal cut
        # between them but not in Q
        report = check_admissible(
            [fs("a"), fs("b")], [(fs("a"), fs("b"))], PATH3
        )
        assert any(
            v["condition"] == 2 and v["reason"] == "mincut escapes family"
            for v in report
        )

    def test_adjacent_pair_in_triangle_is_clean(self):
        # a and b are adjacent in the triangle, so Mincut({a},{b}) is just
        # {{a},{b}}: the two-element family is genuinely admissible
        report = check_admissible(
            [fs("a"), fs("b")], [(fs("a"), fs("b"))], TRIANGLE
        )
        assert report == []

    def test_chain_separation_violation_detected(self):
        # a < c < b on the triangle: c does not separate a from b
        report = check_admissible(
            [fs("a"), fs("c"), fs("b")],
            [(fs("a"), fs("c")), (fs("c"), fs("b")), (fs("a"), fs("b"))],
            TRIANGLE,
        )
        assert any(v["condition"] == 3 for v in report)

    def test_invalid_order_reported_as_condition_one(self):
        report = check_admissible(
            [fs("a"), fs("b")],
            [(fs("a"), fs("b")), (fs("b"), fs("a"))],
            PATH3,
        )
        assert report and report[0]["condition"] == 1
