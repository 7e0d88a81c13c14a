import pytest

from gentcheb.polynomials import BiPoly
from gentcheb.simplicial_core import SimplicialComplex
from gentcheb.templates import (
    Template,
    TemplateError,
    build_template,
    census,
    census_2d,
    corpus_2d,
    iterated_stellar,
    magic_2d,
    magic_from_census,
    magic_polynomial,
    named_template,
    path,
    require_valid,
    ring_3_6,
    star,
    validate_template,
)

U, V = BiPoly.x(), BiPoly.y()


def faces_by_type(L):
    """Independent census: classify every face of L by hand."""
    out = {}
    for f in L.complex.faces:
        b = sum(1 for v in f if v <= L.k)
        i = len(f) - b
        if i == 0 and len(f) <= L.k:
            continue  # proper boundary face
        out[(b, i)] = out.get((b, i), 0) + 1
    return out


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_star_is_valid(k):
    assert validate_template(star(k)) == []


@pytest.mark.parametrize("s", [1, 2, 3, 5])
def test_path_is_valid(s):
    L = path(s)
    assert validate_template(L) == []
    assert L.interior_vertices == list(range(2, s + 2))


def test_corpus_is_valid_with_expected_census():
    want = [(1, 3), (2, 5), (2, 5), (3, 6), (3, 7), (3, 7)]
    for L, me in zip(corpus_2d(), want):
        assert validate_template(L) == []
        assert census_2d(L) == me
        f = L.complex.f_vector()
        assert f[3] == 2 * me[0] + 1


def test_vertex_on_boundary_edge_is_rejected():
    L = Template(2, SimplicialComplex.from_facets([[0, 3, 2], [3, 1, 2]]))
    problems = validate_template(L)
    assert any("boundary" in p for p in problems)
    with pytest.raises(TemplateError):
        require_valid(L)


def test_unsubdivided_simplex_is_rejected():
    L = Template(2, SimplicialComplex.simplex([0, 1, 2]))
    assert validate_template(L)


def test_non_pure_is_rejected():
    L = Template(1, SimplicialComplex.from_facets([[0, 2], [2, 1], [3]]))
    assert any("pure" in p for p in validate_template(L))


def test_two_disjoint_paths_rejected():
    # two parallel arcs from 0 to 1 make a circle, not an edge
    L = Template(1, SimplicialComplex.from_facets([[0, 2], [2, 1], [0, 3], [3, 1]]))
    assert validate_template(L)


def test_census_star_triangle():
    c = census(star(2))
    assert c == {(0, 1): 1, (1, 1): 3, (2, 1): 3}
    assert c == faces_by_type(star(2))


@pytest.mark.parametrize("s", [1, 2, 4])
def test_census_path(s):
    c = census(path(s))
    assert c.get((0, 1)) == s and c.get((1, 1)) == 2 and c.get((0, 2), 0) == s - 1


def test_census_matches_hand_classification():
    for L in corpus_2d() + [path(3), star(3), star(4)]:
        assert census(L) == faces_by_type(L)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_magic_path(s):
    assert magic_polynomial(path(s)) == V * s + U * V * 2 + V * V * (s - 1) - U * U


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_magic_star(k):
    assert magic_polynomial(star(k)) == (U + 1) ** (k + 1) * V - (V + 1) * U ** (k + 1)


def test_magic_2d_closed_form():
    for L in corpus_2d():
        m, e = census_2d(L)
        assert magic_polynomial(L) == magic_2d(m, e)
        assert magic_from_census(census(L), 2) == magic_2d(m, e)


def test_two_face_split():
    for L in corpus_2d():
        m, e = census_2d(L)
        c = census(L)
        assert (c.get((2, 1), 0), c.get((1, 2), 0), c.get((0, 3), 0)) == (3, e - 3, 2 * m + 1 - e)


def test_iterated_stellar_rejects_boundary_steps():
    with pytest.raises(TemplateError):
        iterated_stellar(2, [[0, 1]])
    with pytest.raises(TemplateError):
        iterated_stellar(2, [[0, 1, 2], [0, 1, 5]])


def test_builders_and_names():
    assert build_template("path", 2).name == "path(2)"
    assert build_template("ring").name == "ring(3,6)"
    with pytest.raises(TemplateError):
        build_template("cube")
    assert named_template("m2e5").name == "stellar(2,5)a"
    assert named_template("star3").k == 3
    assert census_2d(ring_3_6()) == (3, 6)
    with pytest.raises(TemplateError):
        named_template("unknown")


def test_json_round_trip():
    L = corpus_2d()[1]
    back = Template.from_json(L.to_json())
    assert back.complex == L.complex and back.k == 2


def test_json_errors():
    with pytest.raises(TemplateError):
        Template.from_json({"facets": [[0, 1]]})
    with pytest.raises(TemplateError):
        Template.from_json({"k": 1, "boundary": [0, 5], "facets": [[0, 2], [2, 5]]})
