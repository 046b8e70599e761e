from conftest import chain, e7_graph, star
from ratsing.correction import annotate, c2_formula, correction_term, is_central_minus_two_family
from ratsing.enumerate import SearchParams, enumerate_trees, random_rational_graphs
from ratsing.fundamental import fundamental_cycle
from ratsing.graph import build_graph
from ratsing.tower import build_tower


def test_c2_formula(star_graph):
    a3 = chain(2, 2, 2)
    assert c2_formula(a3, fundamental_cycle(a3)) == 0
    assert c2_formula(star_graph, fundamental_cycle(star_graph)) == 1
    g = e7_graph()
    assert c2_formula(g, fundamental_cycle(g)) == 1


def test_reduced_rule():
    s = correction_term(build_tower(chain(2, 2, 2, 2)))
    assert (s.kind, s.value, s.rule) == ("known", 0, "reduced_cycle")


def test_smooth_blowup_rule(star_graph):
    s = correction_term(build_tower(star_graph))
    assert (s.kind, s.value, s.rule) == ("known", 1, "xhat_smooth_formula")


def test_mixed_case_undetermined():
    g = star(2, 3, 3, 2)
    t = build_tower(g)
    assert fundamental_cycle(g) == g.cycle({"c": 2, "l1": 1, "l2": 1, "l3": 1})
    assert t.inv.r["l3"] == 0
    s = correction_term(t)
    assert s.kind == "undetermined" and s.value is None
    assert s.t2hat_zero
    assert s.notes == ("c = h1(T1_C(C))",)
    assert s.to_json() == {"kind": "undetermined", "t2hat_zero": True, "notes": ["c = h1(T1_C(C))"]}


def test_mixed_case_with_large_child():
    # the (-5)-curve has Z.E = 0 and becomes a point with e = 6 on the blow-up
    g = build_graph(
        [("c", 2), ("a", 3), ("b", 3), ("d", 5)] + [(f"w{i}", 2) for i in range(3)],
        [("c", "a"), ("c", "b"), ("c", "d")] + [("d", f"w{i}") for i in range(3)],
    )
    t = build_tower(g)
    s = correction_term(t)
    assert not t.inv.reduced and t.children
    assert any(c.inv.e > 4 for c in t.children)
    assert s.kind == "undetermined" and not s.t2hat_zero
    assert s.notes == ("c >= h1(T1_C(C))",)


def test_family_check(star_graph):
    assert is_central_minus_two_family(star_graph)
    assert is_central_minus_two_family(e7_graph())
    assert not is_central_minus_two_family(star(3, 3, 3, 3))
    assert not is_central_minus_two_family(star(2, 3, 3, 2))
    # long arm whose first curve is only (-3)
    g = build_graph(
        [("c", 2), ("a", 3), ("b", 3), ("d", 3), ("e", 2)],
        [("c", "a"), ("c", "b"), ("c", "d"), ("d", "e")],
    )
    assert not is_central_minus_two_family(g)
    # interior arm curve that is a (-2)-curve
    g = build_graph(
        [("c", 2), ("a", 3), ("b", 3), ("d", 4), ("e", 2), ("f", 3)],
        [("c", "a"), ("c", "b"), ("c", "d"), ("d", "e"), ("e", "f")],
    )
    assert not is_central_minus_two_family(g)


def _suite():
    yield from random_rational_graphs(seed=5, count=200, max_vertices=8, weight_min=2, weight_max=6)
    yield from enumerate_trees(SearchParams(5, 2, 4))


def test_correction_properties():
    seen_b = 0
    for g in _suite():
        t = annotate(build_tower(g))
        for node in t.walk():
            s = node.c_status
            if s.known:
                assert s.value >= 0
            smooth = all(r > 0 for r in node.inv.r.values())
            assert not (node.inv.reduced and smooth and s.rule == "xhat_smooth_formula")
            if s.rule == "xhat_smooth_formula":
                seen_b += 1
                assert not node.inv.reduced and s.value >= 1
            if is_central_minus_two_family(node.graph) and smooth:
                assert c2_formula(node.graph, node.z) > 0
    assert seen_b > 5
