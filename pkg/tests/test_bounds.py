import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings

from perronbound import kernels
from perronbound.bounds import (PR_UPPER, analyze, cg_equality_flags, check_cg_equality,
                                comparison_sign, degree_win_table, is_perron_aligned,
                                proof_chain_check, taovu_exact, verify_report, vertex_bounds,
                                winner)
from perronbound.errors import DomainError
from perronbound.generators import enumerate_connected, graph_from_mask, named_graph
from perronbound.graph import Graph, graph_from_edges
from perronbound.spectral import principal_eigenpair
from perronbound.sweep import masks_to_adjacency

from conftest import connected_graphs, path_eigenpair, star_eigenpair


def _rows(g):
    return analyze(g).rows


def test_vertex_bounds_k4_tight():
    g = named_graph("complete", 4)
    s = principal_eigenpair(g)
    for v in range(4):
        r = vertex_bounds(g, s, v)
        assert r.degree == 3 and s.rho == pytest.approx(3.0)
        assert r.rho_deleted == pytest.approx(2.0, abs=1e-12)
        assert r.lower_new == pytest.approx(0.5, abs=1e-12)
        assert r.actual == pytest.approx(0.5, abs=1e-12)


def test_vertex_bounds_p4_end():
    rho, x = path_eigenpair(4)
    rho3, _ = path_eigenpair(3)
    # closed-form oracle values for the end vertex
    expect_new = 1 / math.sqrt(1 + 1 / (rho - rho3) ** 2)
    expect_lwm = math.sqrt((rho - rho3) / (2 * rho))
    expect_cg = 1 / math.sqrt(1 + rho ** 2)
    assert (expect_lwm, expect_cg, x[0]) == pytest.approx(
        (0.2509660, 0.5257311, 0.3717480), abs=1e-7)
    # the closed form is 0.19971430; the commonly quoted 0.1997140 is off in the 7th digit
    assert expect_new == pytest.approx(0.1997143, abs=1e-7)
    assert expect_new == pytest.approx(0.1997140, abs=5e-7)
    g = named_graph("path", 4)
    r = vertex_bounds(g, principal_eigenpair(g), 0)
    assert r.degree == 1 and r.rho_deleted == pytest.approx(math.sqrt(2), abs=1e-12)
    assert (r.lower_new, r.lower_lwm, r.upper_cg, r.actual) == pytest.approx(
        (expect_new, expect_lwm, expect_cg, x[0]), abs=1e-11)


def test_vertex_bounds_star_center():
    g = named_graph("star", 5)
    r = vertex_bounds(g, principal_eigenpair(g), 0)
    assert r.degree == 4 and r.rho_deleted == 0.0
    for val in (r.lower_new, r.actual, r.upper_cg):
        assert val == pytest.approx(0.7071068, abs=1e-7)


def test_vertex_bounds_needs_two_vertices():
    g = Graph(1)
    with pytest.raises(DomainError):
        vertex_bounds(g, principal_eigenpair(g), 0)
    with pytest.raises(DomainError):
        taovu_exact(g, principal_eigenpair(g), 0)


def test_taovu_examples():
    p3 = named_graph("path", 3)
    assert taovu_exact(p3, principal_eigenpair(p3), 1) == pytest.approx(0.5, abs=1e-12)
    k4 = named_graph("complete", 4)
    assert taovu_exact(k4, principal_eigenpair(k4), 2) == pytest.approx(0.25, abs=1e-12)
    p4 = named_graph("path", 4)
    _, x = path_eigenpair(4)
    val = taovu_exact(p4, principal_eigenpair(p4), 0)
    assert val == pytest.approx(x[0] ** 2, abs=1e-12)
    assert val == pytest.approx(0.1381966, abs=1e-7)


def test_proof_chain_examples():
    k4 = named_graph("complete", 4)
    c = proof_chain_check(k4, principal_eigenpair(k4), 0)
    assert c.t1 == pytest.approx(3.0, abs=1e-10) and c.t2 == pytest.approx(3.0, abs=1e-10)
    assert c.chain_ok and c.identity_ok
    star = named_graph("star", 5)
    c = proof_chain_check(star, principal_eigenpair(star), 0)
    assert (c.t1, c.t2) == pytest.approx((1.0, 1.0), abs=1e-10)
    p4 = named_graph("path", 4)
    c = proof_chain_check(p4, principal_eigenpair(p4), 0)
    assert c.t1 == pytest.approx(6.2360680, abs=1e-7)
    assert c.t2 == pytest.approx(24.0716, abs=1e-4)
    assert c.t1 < c.t2 and c.exact_sq == pytest.approx(c.actual_sq, abs=1e-12)


@given(connected_graphs(max_n=9))
@settings(max_examples=60)
def test_proof_chain_equality_iff_perron_aligned(g):
    s = principal_eigenpair(g)
    for v in range(g.n):
        c = proof_chain_check(g, s, v)
        assert c.chain_ok and c.identity_ok
        assert (abs(c.t2 - c.t1) <= 1e-10) == is_perron_aligned(g, v)


def test_cg_equality_examples():
    for n in range(2, 8):
        g = named_graph("complete", n)
        s = principal_eigenpair(g)
        rep = analyze(g)
        for v in range(n):
            assert check_cg_equality(g, s, v)
            assert rep.rows[v].actual == pytest.approx(1 / math.sqrt(n), abs=1e-10)
            assert abs(rep.rows[v].actual - rep.rows[v].upper_cg) <= 1e-9
    star = named_graph("star", 6)
    assert check_cg_equality(star, principal_eigenpair(star), 0)
    p4 = named_graph("path", 4)
    assert not check_cg_equality(p4, principal_eigenpair(p4), 0)


def test_cg_conditions_are_conjoint():
    # dominating vertex 0 whose deleted graph (P_3) is not regular
    g = graph_from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])
    s = principal_eigenpair(g)
    assert g.degree(0) == 3 and not check_cg_equality(g, s, 0)


def test_cg_flags_vectorized_match_per_graph():
    for n in (2, 3, 4, 5):
        masks = kernels.connected_masks(n)
        x = kernels.analyze_masks(n, masks, 1e-12, 10**6)[1]
        flags = cg_equality_flags(masks_to_adjacency(n, masks), x)
        for k, m in enumerate(masks):
            g = graph_from_mask(n, m)
            s = principal_eigenpair(g)
            assert [check_cg_equality(g, s, v) for v in range(n)] == flags[k].tolist()


def test_analyze_examples():
    rep = analyze(named_graph("star", 10))
    assert rep.pr_equality and rep.x_max == pytest.approx(0.7071068, abs=1e-7)
    assert abs(rep.x_max - PR_UPPER) <= 1e-10
    assert rep.cg_equality_flags[0] and not any(rep.cg_equality_flags[1:])

    c4 = analyze(named_graph("cycle", 4))
    first = c4.rows[0]
    for r in c4.rows:
        assert (r.lower_lwm, r.lower_new, r.actual) == pytest.approx(
            (first.lower_lwm, first.lower_new, first.actual), abs=1e-14)
    assert first.lower_lwm == pytest.approx(0.3826834, abs=1e-7)
    assert first.lower_new == pytest.approx(0.3826834, abs=1e-7)
    assert first.actual == pytest.approx(0.5, abs=1e-12)
    assert c4.winner_per_vertex == ("tie",) * 4

    k3 = analyze(named_graph("complete", 3))
    r = k3.rows[0]
    assert r.lower_new == pytest.approx(0.5773503, abs=1e-7)
    assert r.lower_new == pytest.approx(r.actual, abs=1e-10)
    assert r.lower_lwm == pytest.approx(0.5, abs=1e-12)
    assert k3.winner_per_vertex == ("new",) * 3


def test_analyze_k1_and_disconnected():
    rep = analyze(Graph(1))
    assert rep.rows == () and "K_1" in rep.note and rep.spectral.rho == 0.0
    assert verify_report(rep) == []
    with pytest.raises(DomainError, match=r"\[0, 1\]; \[2\]"):
        analyze(graph_from_edges(3, [(0, 1)]))


def test_star_k2_equality():
    rep = analyze(named_graph("complete", 2))
    assert rep.pr_equality
    assert rep.rows[0].lower_new == pytest.approx(PR_UPPER, abs=1e-12)


@pytest.mark.parametrize("g", [named_graph("complete", 5), named_graph("path", 4)])
def test_verify_report_clean(g):
    assert verify_report(analyze(g)) == []


def test_verify_report_injected_fault():
    rep = analyze(named_graph("complete", 4))
    row = rep.rows[2]
    # drop x below the gap bound but keep it above the LWM bound
    bad = (row.lower_new + row.lower_lwm) / 2
    rows = list(rep.rows)
    rows[2] = dataclasses.replace(row, actual=bad)
    violations = verify_report(dataclasses.replace(rep, rows=tuple(rows)))
    named = [v for v in violations if v.inequality == "new_lower"]
    assert len(named) == 1 and named[0].vertex == 2
    assert named[0].magnitude == pytest.approx(row.lower_new - bad)
    # the edited x no longer matches the exact identity either
    assert {v.inequality for v in violations} <= {"new_lower", "taovu_exact", "cg_equality"}
    assert "gap bound" in str(named[0])


def test_verify_report_rows_must_cover_vertices():
    rep = analyze(named_graph("path", 3))
    with pytest.raises(ValueError):
        verify_report(dataclasses.replace(rep, rows=rep.rows[:2]))


def test_winner_ties():
    assert winner(0.3, 0.3 + 1e-13) == "tie"
    assert winner(0.3, 0.31) == "new" and winner(0.31, 0.3) == "lwm"


def test_comparison_identity_ties_on_known_families():
    # C_4 and star leaves satisfy d = rho^2 - rho_i^2 exactly
    for g, vertices in ((named_graph("cycle", 4), range(4)), (named_graph("star", 7), range(1, 7))):
        rep = analyze(g)
        for v in vertices:
            r = rep.rows[v]
            assert comparison_sign(rep.spectral.rho, r.rho_deleted, r.degree) == 0
            assert rep.winner_per_vertex[v] == "tie"


@given(connected_graphs(max_n=9))
@settings(max_examples=60)
def test_comparison_identity_property(g):
    rep = analyze(g)
    for r in rep.rows:
        sign = comparison_sign(rep.spectral.rho, r.rho_deleted, r.degree)
        diff = r.lower_new - r.lower_lwm
        if sign == 0:
            assert abs(diff) <= 1e-10
        else:
            assert np.sign(diff) == sign


@given(connected_graphs(max_n=9))
@settings(max_examples=60)
def test_report_sound(g):
    rep = analyze(g)
    assert verify_report(rep) == []
    assert [r.vertex for r in rep.rows] == list(range(g.n))
    for r in rep.rows:
        assert 0 < r.lower_lwm and 0 < r.lower_new and r.rho_deleted < rep.spectral.rho
        assert abs(r.exact_sq - r.actual ** 2) <= 1e-8


def test_fused_kernel_matches_per_graph_path():
    for n in (2, 3, 4, 5):
        masks = kernels.connected_masks(n)
        rho, x, rho_del, t1, *_ = kernels.analyze_masks(n, masks, 1e-12, 10**6)
        for k, m in enumerate(masks):
            rep = analyze(graph_from_mask(n, m))
            assert rep.spectral.rho == pytest.approx(rho[k], abs=1e-12)
            assert np.allclose(rep.column("actual"), x[k], atol=1e-12)
            assert np.allclose(rep.column("rho_deleted"), rho_del[k], atol=1e-12)
            assert np.allclose(rep.column("exact_sq"), 1 / (1 + t1[k]), atol=1e-12)


def test_degree_win_table():
    table = degree_win_table([1, 1, 2, 3], [0.2, 0.3, 0.4, 0.5], [0.1, 0.3, 0.5, 0.6])
    assert table == {1: [2, 0, 1, 1], 2: [1, 1, 0, 0], 3: [1, 1, 0, 0]}


def test_star_family_closed_form():
    for n in (3, 6, 20):
        rho, x = star_eigenpair(n)
        rep = analyze(named_graph("star", n))
        assert rep.spectral.rho == pytest.approx(rho, abs=1e-12)
        assert np.allclose(rep.column("actual"), x, atol=1e-10)
