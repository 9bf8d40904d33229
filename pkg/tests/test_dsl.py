from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from perdim import dsl, families
from perdim.linalg import Field

DUAL_PLUS_POINT = """\
vertices: 0 -1
arrow b: 0 -> 0
relation b*b
"""


def test_two_vertex_spec():
    spec = dsl.parse(DUAL_PLUS_POINT)
    assert spec.vertices == ("0", "-1")
    assert len(spec.arrows) == 1 and len(spec.relations) == 1
    assert spec.relations[0].terms == ((Fraction(1), ("b", "b")),)
    assert spec.convention == dsl.FUNCTIONAL
    assert spec.is_monomial


def test_empty_vertex_list():
    with pytest.raises(dsl.ParseError) as err:
        dsl.parse("vertices:\n")
    assert err.value.line == 1


def test_empty_file():
    with pytest.raises(dsl.ParseError):
        dsl.parse("")


def test_non_parallel_relation():
    text = families.corpus_text("special_biserial") + "relation alpha*beta - gamma*delta*delta\n"
    # alpha*beta runs 4 -> 5 while gamma*delta*delta runs 5 -> 4
    with pytest.raises(dsl.ParseError, match="non-parallel"):
        dsl.parse(text)


def test_non_composable_path_reports_position():
    with pytest.raises(dsl.ParseError) as err:
        dsl.parse("vertices: 0 1 2\narrow a: 0 -> 1\narrow c: 1 -> 2\nrelation a*c\n")
    assert err.value.line == 4 and err.value.col == 10
    assert "does not compose" in err.value.message


def test_length_one_relation_is_rejected():
    with pytest.raises(dsl.ParseError, match="length 1"):
        dsl.parse("vertices: 0\narrow x: 0 -> 0\nrelation x\n")


@pytest.mark.parametrize("text, fragment", [
    ("vertices: 0 0\n", "duplicate vertex"),
    ("vertices: 0\narrow x: 0 -> 0\narrow x: 0 -> 0\n", "duplicate arrow"),
    ("vertices: 0\narrow x: 0 -> 9\n", "unknown vertex"),
    ("vertices: 0\narrow x: 0 -> 0\nrelation x*y\n", "unknown arrow"),
    ("vertices: 0\nconvention: sideways\n", "convention"),
    ("vertices: 0\nfield: Fp(4)\n", "not prime"),
    ("vertices: 0\nfrobnicate\n", "unrecognised"),
    ("arrow x: 0 -> 0\nvertices: 0\n", "before 'vertices:'"),
    ("vertices: 0\narrow x: 0 -> 0\nrelation x*x - x*x\n", "identically zero"),
    ("vertices: 0\narrow x: 0 -> 0\nrelation x*x x*x\n", r"expected '\+' or '-'"),
    ("vertices: 0\narrow x: 0 -> 0\nrelation x^0\n", "positive"),
])
def test_diagnostics(text, fragment):
    with pytest.raises(dsl.ParseError, match=fragment):
        dsl.parse(text)


def test_coefficients_powers_and_field():
    spec = dsl.parse("vertices: 0\narrow x: 0 -> 0\narrow y: 0 -> 0\n"
                     "relation x*y - 2/3*y*x\nrelation x^3\nfield: F5\nbound: 9\n")
    assert spec.relations[0].terms == ((Fraction(1), ("x", "y")), (Fraction(-2, 3), ("y", "x")))
    assert spec.relations[1].terms == ((Fraction(1), ("x", "x", "x")),)
    assert spec.field == Field(5) and spec.length_bound == 9


def test_diagrammatic_convention_composability():
    spec = dsl.parse("vertices: 0 1 2\narrow a: 0 -> 1\narrow c: 1 -> 2\nrelation a*c\nconvention: diagrammatic\n")
    assert spec.path_ends(("a", "c")) == ("0", "2")


def test_truncate_generates_all_length_two_paths():
    spec = dsl.parse(families.truncated_cycle(1, 2))
    words = [r.terms[0][1] for r in spec.relations]
    assert words == [("x0", "x1"), ("x0", "cm1"), ("cm1", "x0")]


def test_comments_and_blank_lines_are_ignored():
    spec = dsl.parse("# header\n\nvertices: 0   # trailing\n  arrow x: 0 -> 0\nrelation x*x # nilpotent\n")
    assert spec.arrows[0].label == "x"


@pytest.mark.parametrize("name", families.corpus_names())
def test_render_round_trip(name):
    spec = dsl.parse(families.corpus_text(name))
    again = dsl.parse(dsl.render(spec))
    assert again == spec
    assert dsl.render(again) == dsl.render(spec)


def test_render_minimal():
    assert dsl.render(dsl.parse("vertices: 0\n")) == "vertices: 0\nconvention: functional\nfield: Q\n"


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="vertices:arow->lncfdbu 0123*^+-/#\nxyzQF()", max_size=120))
def test_parse_is_total(text):
    try:
        dsl.parse(text)
    except dsl.ParseError as exc:
        assert exc.message


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.sampled_from("xyz"), st.integers(1, 3)), min_size=2, max_size=5),
       st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool))
def test_generated_relations_round_trip(word, coeff):
    path = "*".join(a + (f"^{k}" if k > 1 else "") for a, k in word)
    text = "vertices: 0\narrow x: 0 -> 0\narrow y: 0 -> 0\narrow z: 0 -> 0\n"
    sign = "-" if coeff < 0 else "+"
    text += f"relation {path} {sign} {abs(coeff.numerator)}/{coeff.denominator}*x*y*z*x\n"
    spec = dsl.parse(text)
    assert dsl.parse(dsl.render(spec)) == spec
