import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus_algebra, vertex
from perdim import families
from perdim import homology as H
from perdim import modules as M
from perdim.algebra import opposite


def random_module(a, rng, max_parts=2):
    """A quotient of a sum of projectives by a randomly generated submodule."""
    parts = [M.projective_module(a, rng.randrange(a.n_vertices)) for _ in range(rng.randint(1, max_parts))]
    p = M.direct_sum(parts, a)
    gens = []
    for _ in range(rng.randint(0, 2)):
        v = rng.randrange(a.n_vertices)
        if p.dims[v]:
            gens.append((v, [rng.randint(-2, 2) for _ in range(p.dims[v])]))
    spans = M.generated_spans(p, gens)
    return M.quotient(p, spans, "R").module


def sample_modules(name, count=6, seed=0):
    a = corpus_algebra(name)
    rng = random.Random(seed)
    base = H.simples(a) + [M.projective_module(a, v) for v in range(a.n_vertices)]
    return a, base + [random_module(a, rng) for _ in range(count)]


def test_simple_modules():
    a = corpus_algebra("special_biserial")
    for v in range(a.n_vertices):
        s = M.simple_module(a, v)
        assert s.dim == 1 and s.dims[v] == 1
        for b in a.radical_basis:
            assert not any(any(r) for r in s.action(b))


def test_sink_simple_is_projective(radical_square_six):
    a = radical_square_six
    v = vertex(a, 0)
    assert M.is_isomorphic(M.simple_module(a, v), M.projective_module(a, v)).isomorphic


def test_projectives_of_dual_numbers_plus_point(dual_plus_point):
    a = dual_plus_point
    assert M.projective_module(a, vertex(a, 0)).dim == 2
    assert M.projective_module(a, vertex(a, -1)).dim == 1


@pytest.mark.parametrize("name", families.corpus_names())
def test_projectives_sum_to_regular_and_have_simple_tops(name):
    a = corpus_algebra(name)
    ps = [M.projective_module(a, v) for v in range(a.n_vertices)]
    assert sum(p.dim for p in ps) == a.dim
    for v, p in enumerate(ps):
        assert M.verify(p)
        assert M.top_vector(p) == tuple(int(w == v) for w in range(a.n_vertices))


def test_dual_of_simple_is_simple_over_opposite(special_biserial):
    a = special_biserial
    o = opposite(a)
    for v in range(a.n_vertices):
        d = M.dual_module(M.simple_module(a, v))
        assert d.algebra is o
        assert M.is_isomorphic(d, M.simple_module(o, v)).isomorphic


@pytest.mark.parametrize("name", ["special_biserial", "radical_square_six", "loop_tail_d2"])
def test_double_dual_and_dimension(name):
    a = corpus_algebra(name)
    lam = M.regular_module(a)
    d = M.dual_module(lam)
    assert d.dim == a.dim and M.verify(d)
    dd = M.dual_module(d)
    assert dd.algebra is a and M.is_isomorphic(dd, lam).isomorphic


def test_dual_of_self_injective_algebra_is_projective(dual_plus_point):
    x, mult, _ = M.strip_projective_summands(M.dual_module(M.regular_module(opposite(dual_plus_point))))
    assert x.dim == 0 and sum(mult) == dual_plus_point.n_vertices


@pytest.mark.parametrize("name", ["dual_numbers_plus_point", "a2_path", "loop_tail_d1"])
def test_regular_bimodule(name):
    a = corpus_algebra(name)
    b = M.regular_bimodule(a)
    n = a.n_vertices
    assert b.dim == a.dim
    assert M.verify(b)
    for i in range(n):
        for j in range(n):
            words = sum(1 for w in range(a.dim) if a.source[w] == j and a.target[w] == i)
            assert b.dims[i * n + j] == words


def test_radical_and_top(special_biserial):
    a = special_biserial
    p = M.projective_module(a, vertex(a, 5))
    rad, top = M.radical_and_top(p)
    assert rad.module.dim + top.module.dim == p.dim
    assert M.semisimple_decomposition(top.module) == {"5": 1}
    assert M.verify(rad.module) and M.verify(top.module)


@pytest.mark.parametrize("name", ["special_biserial", "radical_square_six", "cycle_tail_n2_p3"])
def test_yoneda(name):
    a, mods = sample_modules(name)
    for m in mods:
        for v in range(a.n_vertices):
            assert M.hom_dim(M.projective_module(a, v), m) == m.dims[v]


@pytest.mark.parametrize("name", ["special_biserial", "loop_tail_d3"])
def test_hom_basis_elements_are_homomorphisms(name):
    a, mods = sample_modules(name, count=3)
    for m in mods[-3:]:
        for n in mods[-3:]:
            hs = M.hom_basis(m, n)
            assert all(M.is_homomorphism(m, n, h) for h in hs.basis)


def test_isomorphism_basics(special_biserial):
    a = special_biserial
    p = M.projective_module(a, 3)
    r = M.is_isomorphic(p, p)
    assert r.isomorphic and M.is_homomorphism(p, p, r.witness)
    s0, s1 = M.simple_module(a, 0), M.simple_module(a, 1)
    r = M.is_isomorphic(s0, s1)
    assert r.verdict == "not_isomorphic" and r.certificate["invariant"] == "dim_vector"


@pytest.mark.parametrize("n, p", [(1, 1), (2, 3), (3, 2)])
def test_cycle_simples_are_periodic(n, p):
    a = corpus_algebra(f"cycle_tail_n{n}_p{p}")
    s0 = M.simple_module(a, vertex(a, 0))
    assert M.is_isomorphic(H.nth_syzygy(s0, p), s0).isomorphic
    for k in range(1, p):
        assert not M.is_isomorphic(H.nth_syzygy(s0, k), s0).isomorphic


@pytest.mark.parametrize("name", ["special_biserial", "radical_square_six"])
def test_isomorphism_symmetric_with_verified_witness(name):
    a, mods = sample_modules(name, count=8, seed=3)
    for m in mods:
        for n in mods:
            if m.dims != n.dims:
                continue
            r1, r2 = M.is_isomorphic(m, n), M.is_isomorphic(n, m)
            assert r1.verdict == r2.verdict
            if r1.isomorphic:
                assert M._verify_iso(m, n, r1.witness)


def test_syzygy_of_simple_is_radical_of_projective(special_biserial):
    a = special_biserial
    for v in range(a.n_vertices):
        rad = M.radical_and_top(M.projective_module(a, v))[0].module
        assert M.is_isomorphic(M.syzygy(M.simple_module(a, v)), rad).isomorphic


def test_radical_square_zero_syzygies(radical_square_six):
    a = radical_square_six
    for v in range(a.n_vertices):
        expected = [0] * a.n_vertices
        for g in range(len(a.generators)):
            if a.gen_source[g] == v:
                expected[a.gen_target[g]] += 1
        z = M.syzygy(M.simple_module(a, v))
        assert M.semisimple_decomposition(z) == {a.vertex_labels[w]: k for w, k in enumerate(expected) if k}


def test_syzygy_of_projective_is_zero(special_biserial):
    for v in range(special_biserial.n_vertices):
        assert M.syzygy(M.projective_module(special_biserial, v)).dim == 0


def test_direct_sum_with_zero(special_biserial):
    m = M.projective_module(special_biserial, 4)
    s = M.direct_sum([m, M.zero_module(special_biserial)])
    assert M.is_isomorphic(s, m).isomorphic


def test_semisimple_top_of_algebra(special_biserial):
    a = special_biserial
    top = M.radical_and_top(M.regular_module(a))[1].module
    assert M.is_isomorphic(top, M.direct_sum(H.simples(a), a)).isomorphic


def test_strip_projective_and_simple(special_biserial):
    a = special_biserial
    x, mult, _ = M.strip_projective_summands(M.projective_module(a, 2))
    assert x.dim == 0 and mult == (0, 0, 1, 0, 0, 0)
    s = M.simple_module(a, 3)
    x, mult, _ = M.strip_projective_summands(s)
    assert x.dims == s.dims and not any(mult)


def test_third_syzygy_of_s3_splits_off_p0(special_biserial):
    a = special_biserial
    x, mult, incl = M.strip_projective_summands(H.nth_syzygy(M.simple_module(a, 3), 3))
    assert mult[vertex(a, 0)] == 1
    assert M.verify(x)
    again = M.strip_projective_summands(x)
    assert not any(again[1]) and again[0].dims == x.dims
    assert not M.has_projective_summand(x)


@pytest.mark.parametrize("name", ["special_biserial", "radical_square_six", "loop_tail_d2"])
def test_strip_recovers_the_module(name):
    a, mods = sample_modules(name, count=5, seed=11)
    for m in mods:
        x, mult, _ = M.strip_projective_summands(m)
        rebuilt = M.direct_sum([x] + [M.projective_module(a, v) for v, k in enumerate(mult) for _ in range(k)], a)
        assert M.is_isomorphic(rebuilt, m).isomorphic
        assert not M.has_projective_summand(x)


@pytest.mark.parametrize("name", families.corpus_names())
def test_cover_minimality_and_module_axioms(name):
    a, mods = sample_modules(name, count=3, seed=5)
    for m in mods:
        assert M.verify(m)
        emb, cov = M.syzygy_with_cover(m)
        assert cov.multiplicities == M.top_vector(m)
        assert M.kernel_in_radical(cov.module, emb.maps, emb.module.dims)
        assert M.verify(emb.module)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["special_biserial", "loop_tail_d2", "cycle_tail_n2_p3"]), st.integers(0, 10 ** 6))
def test_random_quotients_are_modules(name, seed):
    a = corpus_algebra(name)
    m = random_module(a, random.Random(seed))
    assert M.verify(m)
    assert (m.dim == 0) == (sum(M.top_vector(m)) == 0)
    assert sum(sum(layer) for layer in M.radical_layers(m)) == m.dim
