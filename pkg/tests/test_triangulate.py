import pytest
from hypothesis import given, settings, strategies as st

from gentcheb.polynomials import BiPoly
from gentcheb.simplicial_core import (
    SimplicialComplex,
    betti_numbers,
    cross_polytope_boundary,
    simplex_boundary,
    star,
)
from gentcheb.templates import corpus_2d, path, ring_3_6, star as star_template
from gentcheb.triangulate import (
    PlanError,
    SubdivisionPlan,
    flag_f_polynomial,
    random_complex,
    random_plan,
    restriction_property,
    tchebyshev_triangulation,
    triangulation_steps,
    validate_plan,
)

X, Y = BiPoly.x(), BiPoly.y()
TWO = SimplicialComplex.from_facets([[0, 1, 2], [1, 2, 3]])


def is_cone(K):
    return any(all(v == w or K.degree(w) and frozenset({v, w}) in K.faces for w in K.vertices) for v in K.vertices)


def test_shared_edge_first_gives_cone():
    plan = SubdivisionPlan.from_order([[1, 2], [0, 1], [0, 2], [1, 3], [2, 3]])
    C = tchebyshev_triangulation(TWO, path(1), plan).complex
    assert C.f_vector() == [1, 9, 16, 8]
    assert is_cone(C)
    assert max(C.degree(v) for v in C.vertices) == 8


def test_shared_edge_last_gives_no_cone():
    plan = SubdivisionPlan.from_order([[0, 1], [0, 2], [1, 3], [2, 3], [1, 2]])
    C = tchebyshev_triangulation(TWO, path(1), plan).complex
    assert C.f_vector() == [1, 9, 16, 8]
    assert not is_cone(C)


def test_seed_sweep_reaches_both_shapes():
    shapes = {is_cone(tchebyshev_triangulation(TWO, path(1), random_plan(TWO, path(1), s)).complex)
              for s in range(40)}
    assert shapes == {True, False}


def test_no_k_faces_leaves_complex_unchanged():
    K = SimplicialComplex.from_facets([[0, 1], [1, 2]])
    assert tchebyshev_triangulation(K, star_template(2)).complex == K


def test_subdivided_edge_flag_polynomial():
    C = tchebyshev_triangulation(SimplicialComplex.simplex([0, 1]), path(1))
    assert flag_f_polynomial(C) == BiPoly({(0, 0): 1, (1, 0): 2, (0, 1): 1, (1, 1): 2})


def test_unsubdivided_simplex_flag_polynomial():
    K = SimplicialComplex.simplex([0, 1])
    assert flag_f_polynomial(tchebyshev_triangulation(K, star_template(2))) == (X + 1) ** 2


def test_origins_record_steps():
    C = tchebyshev_triangulation(cross_polytope_boundary(2), path(2))
    steps = sorted(C.complex.origin[v] for v in C.new_vertices)
    assert steps == [1, 1, 2, 2, 3, 3, 4, 4]
    assert all(C.complex.origin[v] == 0 for v in C.old_vertices)


def test_carrier():
    C = tchebyshev_triangulation(SimplicialComplex.simplex([0, 1, 2]), star_template(2))
    apex = next(iter(C.new_vertices))
    assert C.carrier(frozenset({apex, 0})) == frozenset({0, 1, 2})


def test_plan_validation():
    with pytest.raises(PlanError):
        validate_plan(TWO, 1, SubdivisionPlan.from_order([[0, 1]]))
    with pytest.raises(PlanError):
        validate_plan(TWO, 2, SubdivisionPlan.from_order([[0, 1, 2], [1, 2, 3]], [[[0, 0], [1, 1], [2, 3]], None]))
    with pytest.raises(PlanError):
        SubdivisionPlan.from_json({"bijections": []})


def test_plan_json_round_trip():
    plan = random_plan(TWO, star_template(2), 3)
    assert SubdivisionPlan.from_json(plan.to_json()) == plan
    assert random_plan(TWO, star_template(2), 3) == plan


def test_steps_track_intermediate_complexes():
    K = cross_polytope_boundary(3)
    steps = list(triangulation_steps(K, star_template(2)))
    assert len(steps) == 8
    for st_ in steps:
        assert st_.complex.f_vector() == st_.f_vector
        assert st_.face not in st_.complex.faces
    assert steps[-1].complex == tchebyshev_triangulation(K, star_template(2)).complex


@given(st.integers(0, 500), st.sampled_from(["path1", "path2", "star2", "m2e5", "ring"]))
@settings(max_examples=30)
def test_flag_polynomial_plan_independent(seed, name):
    L = {"path1": path(1), "path2": path(2), "star2": star_template(2),
         "m2e5": corpus_2d()[1], "ring": ring_3_6()}[name]
    K = random_complex(7, seed)
    ref = flag_f_polynomial(tchebyshev_triangulation(K, L))
    other = tchebyshev_triangulation(K, L, random_plan(K, L, seed + 1))
    assert flag_f_polynomial(other) == ref
    assert betti_numbers(other.complex) == betti_numbers(K)


@pytest.mark.parametrize("L", [path(1), star_template(2), ring_3_6()], ids=lambda L: L.name)
def test_restriction_property(L):
    K = cross_polytope_boundary(3)
    assert restriction_property(K, star(K, [0]), L)
    assert restriction_property(K, star(K, [0]), L, random_plan(K, L, 5))


def test_random_complex_uses_all_vertices():
    K = random_complex(8, 7)
    assert K.vertices == list(range(8))
    assert K.dim <= 2


def test_boundary_of_tetrahedron_subdivisions_stay_spheres():
    K = simplex_boundary(4)
    for L in corpus_2d():
        assert betti_numbers(tchebyshev_triangulation(K, L).complex) == [0, 0, 0, 1]
