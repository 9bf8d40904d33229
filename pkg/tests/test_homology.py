import random

import pytest

from conftest import corpus_algebra, vertex
from perdim import homology as H
from perdim import modules as M
from perdim.homology import INF, Unknown
from test_modules import random_module

D_VALUES = [1, 2, 3]


def simple(name, label):
    a = corpus_algebra(name)
    return M.simple_module(a, vertex(a, label))


def test_resolution_of_projective_stops_immediately(special_biserial):
    t = H.minimal_resolution(M.projective_module(special_biserial, 3))
    assert t.terminated_at == 1 and t.proj_dim == 0
    assert t.cover_multiplicities == [(0, 0, 0, 1, 0, 0)]


def test_resolution_of_s3_in_radical_square_six():
    t = H.minimal_resolution(simple("radical_square_six", 3))
    assert t.terminated_at == 4
    assert t.syzygies[3].dim > 0 and H.nth_syzygy(simple("radical_square_six", 3), 4).dim == 0


@pytest.mark.parametrize("n, p", [(1, 1), (2, 3), (3, 2)])
def test_betti_numbers_of_cycle_simple_are_cyclic(n, p):
    s0 = simple(f"cycle_tail_n{n}_p{p}", 0)
    seq = [H.betti(s0, i) for i in range(3 * p)]
    assert all(seq[i] == seq[i + p] for i in range(2 * p))
    assert len(set(seq[:p])) == p


def test_proj_dims_in_special_biserial():
    got = [H.proj_dim(simple("special_biserial", v)) for v in (0, 1, 2, 4, 5)]
    assert got == [0, 1, 2, INF, INF]


@pytest.mark.parametrize("d", D_VALUES)
def test_proj_dims_on_loop_tail(d):
    name = f"loop_tail_d{d}"
    assert [H.proj_dim(simple(name, i)) for i in range(d)] == list(range(d))
    assert H.proj_dim(simple(name, d)) == INF


def test_ext_basics(special_biserial):
    a = special_biserial
    lam = M.regular_module(a)
    for v in range(a.n_vertices):
        s = M.simple_module(a, v)
        assert H.ext_dims(s, lam, 0)[0] == M.hom_dim(s, lam)
        assert H.ext_dims(M.projective_module(a, v), s, 4)[1:] == [0, 0, 0, 0]


def test_ext_of_s5_against_regular(special_biserial):
    e = H.ext_dims(simple("special_biserial", 5), M.regular_module(special_biserial), 6)
    assert e[1] != 0 and not any(e[2:])


@pytest.mark.parametrize("name", ["special_biserial", "radical_square_six", "loop_tail_d2", "cycle_tail_n3_p2"])
def test_ext_agrees_with_restriction_oracle(name):
    a = corpus_algebra(name)
    rng = random.Random(7)
    mods = H.simples(a) + [random_module(a, rng) for _ in range(3)]
    targets = [M.regular_module(a)] + [random_module(a, rng) for _ in range(2)]
    for m in mods:
        for n in targets:
            assert H.ext_dims(m, n, 4) == H.ext_dims_by_restriction(m, n, 4)


@pytest.mark.parametrize("name", ["special_biserial", "radical_square_six", "cycle_tail_n2_p3"])
def test_betti_equals_ext_into_simples(name):
    a = corpus_algebra(name)
    rng = random.Random(1)
    for m in H.simples(a) + [random_module(a, rng) for _ in range(3)]:
        for j, s in enumerate(H.simples(a)):
            ext = H.ext_dims(m, s, 5)
            assert ext == [H.betti(m, i)[j] for i in range(6)]


@pytest.mark.parametrize("n, p", [(1, 1), (2, 3), (3, 2)])
def test_periodicity_on_cycle_with_tail(n, p):
    name = f"cycle_tail_n{n}_p{p}"
    a = corpus_algebra(name)
    for label in a.vertex_labels:
        rep = H.periodicity_report(simple(name, label))
        i = int(label)
        assert rep.verdict == "eventually_periodic"
        assert (rep.n, rep.p) == (max(i, 0), p)


def test_per_dims_in_radical_square_six():
    assert [H.per_dim(simple("radical_square_six", v)) for v in range(6)] == [1, 2, 3, 4, 3, 4]


def test_periods_in_special_biserial():
    assert [H.periodicity_report(simple("special_biserial", v)).period for v in (0, 1, 2, 4, 5)] == [1] * 5


def test_per_dim_of_projective(special_biserial):
    assert H.per_dim(M.projective_module(special_biserial, 4)) == 1


def test_per_dim_of_semisimple_top(special_biserial):
    assert H.per_dim(H.semisimple_top(special_biserial)) == 5


@pytest.mark.parametrize("name, label", [("special_biserial", 4), ("radical_square_six", 5), ("cycle_tail_n3_p2", 3)])
def test_per_dim_drops_along_syzygies(name, label):
    s = simple(name, label)
    n = H.per_dim(s)
    for i in range(n + 2):
        assert H.per_dim(H.nth_syzygy(s, i)) == max(n - i, 0)


def test_cutoff_makes_the_verdict_unknown():
    s = simple("cycle_tail_n3_p2", 3)
    rep = H.periodicity_report(s, cutoff=2)
    assert rep.verdict == "unknown_beyond"
    assert rep.per_dim == Unknown(2)
    assert H.proj_dim(s, cutoff=2) == Unknown(2)


def test_gpd_table_in_special_biserial():
    for v, expected in zip(range(6), [0, 1, 2, 3, 4, 1]):
        g = H.gpd_report(simple("special_biserial", v))
        assert g.value == expected
        assert g.agree and g.by_summand_test == g.by_ext_vanishing == expected


def test_gpd_sandwich_cases():
    g5 = H.gpd_report(simple("special_biserial", 5))
    assert (g5.value, g5.n) == (1, 1)
    g4 = H.gpd_report(simple("special_biserial", 4))
    assert g4.n == g4.value + 1 and g4.sandwich_ok


def test_gpd_of_projective(special_biserial):
    assert H.gpd_report(M.projective_module(special_biserial, 5)).value == 0


def test_gpd_requires_a_certificate():
    s = simple("radical_square_six", 4)
    with pytest.raises(H.GpdNotCertified, match="not certified"):
        H.gpd_report(s)
    g = H.gpd_report(s, assume_finite=True)
    assert g.certificate == "assumed"


def test_gpd_is_certified_by_finite_proj_dim():
    g = H.gpd_report(simple("radical_square_six", 2))
    assert g.value == 2 and g.certificate != "assumed"


def test_injective_dimensions():
    assert H.inj_dim_regular(corpus_algebra("dual_numbers_plus_point")) == (0, 0)
    assert H.inj_dim_regular(corpus_algebra("special_biserial")) == (4, 4)
    for d in D_VALUES:
        assert H.inj_dim_regular(corpus_algebra(f"loop_tail_d{d}")) == (d, d)


def test_strongly_gorenstein_projective_check(special_biserial):
    a = special_biserial
    for p in (1, 2, 3):
        assert H.strongly_gp_check(M.projective_module(a, 3), p) is True
    assert H.strongly_gp_check(M.simple_module(a, 5), 1) is False


def test_periodic_simple_over_cycle_is_strongly_gp():
    from perdim import dsl, families
    from perdim.algebra import build_algebra
    a = build_algebra(dsl.parse(families.truncated_cycle(0, 3)))
    assert H.strongly_gp_check(M.simple_module(a, vertex(a, 0)), 3) is True


def test_global_dimension():
    assert H.gl_dim(corpus_algebra("a2_path")) == 1
    assert H.gl_dim(corpus_algebra("special_biserial")) == INF


def test_per_dim_of_sum_can_drop_below_parts():
    a = corpus_algebra("radical_square_six")
    parts = [M.simple_module(a, vertex(a, v)) for v in (1, 3, 5)]
    assert max(H.per_dim(p) for p in parts) == 4
    assert H.per_dim(M.direct_sum(parts, a)) == 0


@pytest.mark.parametrize("d", D_VALUES)
def test_per_dim_of_sum_is_max_with_certificate(d):
    a = corpus_algebra(f"loop_tail_d{d}")
    assert H.per_dim(H.semisimple_top(a)) == max(H.per_dim(s) for s in H.simples(a)) == d + 1
