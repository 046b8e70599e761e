import random
from math import comb

import pytest

from conftest import chain, e7_graph, relabel, star, two_level_reduced
from ratsing.enumerate import random_rational_graphs
from ratsing.errors import IdentityFailure
from ratsing.fundamental import ComputationSequence, computation_sequence, fundamental_cycle, numeric_invariants
from ratsing.graph import build_graph
from ratsing.invariants import (
    T1_SYMBOLIC,
    analyze,
    assemble_report,
    chi_oz_2z,
    chi_theta_z,
    expected_betti,
    lemma_e4_check,
    minus_two_count,
)
from ratsing.tower import build_tower


def _chi(g):
    z = fundamental_cycle(g)
    e = numeric_invariants(g, z).e
    return chi_oz_2z(g, z, e), chi_theta_z(g, computation_sequence(g, z))


def test_chi_values(star_graph, e7):
    assert _chi(build_graph([("v", 2)])) == (-3, (-2, -2))
    assert _chi(star_graph) == (-9, (-11, -11))
    assert _chi(e7) == (-11, (-14, -14))


def test_chi_theta_star_trace(star_graph):
    seq = computation_sequence(star_graph, fundamental_cycle(star_graph), "c")
    assert seq.vertices == ("c", "l1", "l2", "l3", "c")
    assert sum(2 - star_graph.weight(v) for v in seq.vertices) == -3


def test_chi_oz_2z_wrong_e(star_graph):
    with pytest.raises(IdentityFailure):
        chi_oz_2z(star_graph, fundamental_cycle(star_graph), 5)


def test_chi_theta_rejects_bad_sequence(star_graph):
    # second step has pairing -2, so the partial sums leave the rational regime
    bad = ComputationSequence("c", ("c",))
    with pytest.raises(IdentityFailure):
        chi_theta_z(star_graph, bad)


def test_lemma_e4(star_graph, e7):
    assert lemma_e4_check(build_graph([("v", 2)])) == -1
    assert lemma_e4_check(star_graph) == 2
    assert lemma_e4_check(e7) == 3


def test_expected_betti():
    assert expected_betti(4, 1) == 3
    assert expected_betti(5, 2) == 8
    assert expected_betti(5, 3) == 3
    with pytest.raises(ValueError):
        expected_betti(5, 4)
    with pytest.raises(ValueError):
        expected_betti(3, 1)


def test_minus_two_count():
    a3 = chain(2, 2, 2)
    assert minus_two_count(a3, fundamental_cycle(a3)) == 3
    g = build_graph([("v", 4)])
    assert minus_two_count(g, fundamental_cycle(g)) == 0
    g = chain(2, 2, 3)
    assert minus_two_count(g, fundamental_cycle(g)) == 2
    d4 = star(2, 2, 2, 2)
    with pytest.raises(ValueError):
        minus_two_count(d4, fundamental_cycle(d4))


def test_report_cone():
    rep = analyze(build_graph([("v", 4)]))
    assert rep.e_root == 5
    assert rep.t2.exact and rep.t2.value == 3
    assert rep.t1_combinatorial.value == 1 and rep.t1_symbolic == T1_SYMBOLIC
    assert rep.minus_two_count == 0 and rep.djvs_applicable


def test_report_star(star_graph):
    rep = analyze(star_graph)
    assert rep.t2.to_json() == 9
    assert rep.t1_combinatorial.to_json() == 3
    assert rep.minus_two_count is None and not rep.djvs_applicable
    assert "minus_two_count" not in rep.to_json()


def test_report_five_star(five_star):
    rep = analyze(five_star)
    assert (rep.t2.value, rep.t1_combinatorial.value) == (16, 4)
    assert rep.t2.exact and rep.djvs_applicable
    assert [r.e for r in rep.per_node] == [6, 6]
    assert rep.minus_two_count == 5


def test_report_undetermined():
    rep = analyze(star(2, 3, 3, 2))
    assert rep.e_root == 5
    assert not rep.t2.exact
    assert rep.t2.to_json() == {"lower_bound": 3, "undetermined_nodes": ["0"]}
    assert rep.t1_combinatorial.to_json() == {"lower_bound": 1, "undetermined_nodes": ["0"]}


def test_report_requires_c_status():
    with pytest.raises(ValueError):
        assemble_report(build_tower(chain(2, 3)))


def test_report_betti_metadata(e7):
    (row,) = analyze(e7).per_node
    assert row.betti == tuple(i * comb(6, i + 1) for i in range(1, 6))


SUITE = random_rational_graphs(seed=2024, count=250, max_vertices=8, weight_min=2, weight_max=6)


def test_identity_suite():
    for g in SUITE:
        z = fundamental_cycle(g)
        e = numeric_invariants(g, z).e
        assert e >= 3
        assert (e == 3) == (min(g.weights) == 2 and max(g.weights) == 2)
        assert lemma_e4_check(g) == e - 4
        seq = computation_sequence(g, z)
        assert sum(2 - g.weight(v) for v in seq.vertices) == 3 - e


def test_report_properties():
    for g in SUITE[:120] + [two_level_reduced(), e7_graph()]:
        rep = analyze(g)
        if rep.t2.exact:
            assert rep.t2.value >= 0
            assert rep.t2.value >= (rep.e_root - 2) * (rep.e_root - 4)
        if rep.e_root == 3:
            assert rep.t2.value == 0 and rep.t2.exact
        if rep.djvs_applicable:
            rows = [r for r in rep.per_node if r.e >= 4]
            assert rep.t2.value == sum((r.e - 2) * (r.e - 4) for r in rows)
            assert rep.t1_combinatorial.value == sum(r.e - 4 for r in rows)
            assert all(r.c_status.value == 0 for r in rep.per_node)
        assert all(c.passed and c.difference == c.e - 4 for c in rep.checks.values())


def _numbers(rep):
    return (
        rep.e_root,
        rep.mult_root,
        rep.t2.value,
        rep.t2.exact,
        len(rep.t2.undetermined_nodes),
        rep.t1_combinatorial.value,
        rep.djvs_applicable,
        rep.minus_two_count,
        sorted((r.e, r.mult, r.reduced, r.c_status.kind, r.c_status.value or 0) for r in rep.per_node),
    )


@pytest.mark.parametrize("seed", range(5))
def test_report_relabel_invariant(seed):
    rng = random.Random(seed)
    for g in SUITE[seed * 20 : seed * 20 + 20] + [two_level_reduced()]:
        perm = list(range(len(g)))
        rng.shuffle(perm)
        assert _numbers(analyze(g)) == _numbers(analyze(relabel(g, perm)))
