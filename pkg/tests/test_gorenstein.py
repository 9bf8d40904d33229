import pytest

from conftest import corpus_algebra, vertex
from perdim import dsl, families
from perdim import gorenstein as G
from perdim import homology as H
from perdim import modules as M
from perdim.algebra import build_algebra


@pytest.mark.parametrize("name, d", [("loop_tail_d1", 1), ("loop_tail_d2", 2), ("loop_tail_d3", 3),
                                     ("special_biserial", 4), ("dual_numbers_plus_point", 0), ("a2_path", 1)])
def test_gorenstein_verdicts(name, d):
    rep = G.gorenstein_report(corpus_algebra(name))
    assert rep.verdict == "gorenstein" and rep.d == d
    assert rep.selfinjective == (d == 0)


def test_tail_into_cycle_is_not_certified():
    rep = G.gorenstein_report(corpus_algebra("cycle_tail_n2_p3"))
    assert rep.verdict == "not_certified_within" and rep.d is None


def test_self_injective_bimodule_per_dim():
    b = G.bimodule_per_dim(corpus_algebra("dual_numbers_plus_point"))
    assert b.value == 1 and b.route == "both"
    assert b.reduction_value == b.reduction_value_op == b.direct_value == 1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_loop_tail_bimodule_per_dim(d):
    b = G.bimodule_per_dim(corpus_algebra(f"loop_tail_d{d}"))
    assert b.value == d + 1 and b.d == d and b.sandwich_ok
    if d <= 2:
        assert b.route == "both" and b.direct_value == d + 1


def test_dual_numbers_bimodule_per_dim():
    b = G.bimodule_per_dim(corpus_algebra("dual_numbers"))
    assert b.value == 0 and b.direct_value == 0


def test_bimodule_per_dim_needs_a_route():
    with pytest.raises(G.GorensteinCertificateRequired, match="requires Gorenstein certificate"):
        G.bimodule_per_dim(corpus_algebra("radical_square_six"))


def test_direct_route_alone_when_not_gorenstein():
    b = G.bimodule_per_dim(corpus_algebra("cycle_tail_n1_p1"))
    assert b.route == "direct_enveloping" and b.value == 1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_conjecture_checks_on_loop_tail(d):
    checks = G.conjecture_checks(corpus_algebra(f"loop_tail_d{d}"))
    assert checks["monomial_simples_criterion"]["simples_eventually_periodic"] is True
    assert checks["monomial_simples_criterion"]["holds"] is True
    assert checks["injective_symmetry"]["holds"] is True
    table = G.simple_table(corpus_algebra(f"loop_tail_d{d}"))
    assert max(r.per_dim for r in table) == d + 1


def test_periodicity_instance_on_dual_numbers():
    item = G.conjecture_checks(corpus_algebra("dual_numbers"))["periodicity_conjecture_instance"]
    assert item["connected"] and item["all_simples_periodic"]
    assert item["bimodule_per_dim"] == 0 and item["holds"] is True


def test_finite_bimodule_proj_dim_on_a2():
    item = G.conjecture_checks(corpus_algebra("a2_path"))["finite_bimodule_proj_dim"]
    assert item["bimodule_proj_dim"] == 1
    assert item["gl_dim"] == 1 and item["gorenstein_d"] == 1
    assert item["holds"] is True


def test_weakly_gorenstein_probe_on_projective(special_biserial):
    assert G.weakly_gorenstein_probe(M.projective_module(special_biserial, 2))["verdict"] == "gp_certified"


def test_weakly_gorenstein_probe_finds_obstruction(special_biserial):
    out = G.weakly_gorenstein_probe(M.simple_module(special_biserial, 5))
    assert out["verdict"] == "obstruction" and out["i"] == 1


def test_probe_on_periodic_simple_of_a_cycle():
    a = build_algebra(dsl.parse(families.truncated_cycle(0, 3)))
    assert G.weakly_gorenstein_probe(M.simple_module(a, vertex(a, 0)))["verdict"] == "gp_certified"


@pytest.mark.parametrize("n, p", [(1, 1), (2, 3), (3, 2)])
def test_probe_with_a_tail_sees_ext_into_the_tail(n, p):
    a = corpus_algebra(f"cycle_tail_n{n}_p{p}")
    s0 = M.simple_module(a, vertex(a, 0))
    out = G.weakly_gorenstein_probe(s0)
    assert out["verdict"] == "obstruction" and out["i"] == p
    assert H.ext_dims_by_restriction(s0, M.regular_module(a), p)[p] != 0


def test_bimodule_period_depends_on_the_characteristic():
    # Omega of the regular bimodule of k[x]/(x^2) is the twist by x -> -x,
    # isomorphic to the untwisted bimodule only in characteristic 2
    over_q = G.bimodule_per_dim(corpus_algebra("dual_numbers"))
    over_f2 = G.bimodule_per_dim(corpus_algebra("dual_numbers", "F2"))
    over_f3 = G.bimodule_per_dim(corpus_algebra("dual_numbers", "F3"))
    assert over_q.value == over_f2.value == over_f3.value == 0
    assert (over_q.direct_period, over_f3.direct_period, over_f2.direct_period) == (2, 2, 1)
