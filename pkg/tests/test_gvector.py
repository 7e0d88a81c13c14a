import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gentcheb import gvector as gv
from gentcheb.polynomials import UniPoly
from gentcheb.simplicial_core import (
    SimplicialComplex,
    cross_polytope_boundary,
    h_polynomial,
    join,
    relabel,
    simplex_boundary,
    two_points,
)
from gentcheb.templates import corpus_2d, path, star
from gentcheb.triangulate import random_plan, tchebyshev_triangulation

t = sympy.Symbol("t")


def cross_L(d, L):
    return tchebyshev_triangulation(cross_polytope_boundary(d), L).complex


def test_basis_examples():
    b = gv.g_basis(3, 2).polys
    assert b == (UniPoly([1, 2, 2, 1]), UniPoly([0, 1, 1]))
    assert gv.g_basis(1, 5).polys == (UniPoly([1, 1]),)
    assert gv.P(0, 3) == UniPoly.const(1)


@pytest.mark.parametrize("d", range(1, 9))
@pytest.mark.parametrize("i", range(1, 6))
def test_basis_polynomials_are_symmetric(d, i):
    for j, b in enumerate(gv.g_basis(d, i).polys):
        assert b.degree == d - j
        assert all(b[a] == b[d - a] for a in range(d + 1))


def test_octahedron_g2():
    assert gv.g_vector([1, 3, 3, 1], 3, 2).entries == (1, 1)


@pytest.mark.parametrize("d", range(1, 8))
def test_cross_polytope_gamma(d):
    g = gv.g_vector_of(cross_polytope_boundary(d), 1)
    assert g.entries[0] == 1 and all(c == 0 for c in g.entries[1:])


def test_gamma_via_sympy():
    # gamma: h(t) = sum g_j t^j (1+t)^(d-2j)
    h = h_polynomial(cross_L(4, star(2)))
    g = gv.g_vector(h, 4, 1)
    rebuilt = sum(sympy.Rational(str(c)) * t**j * (1 + t) ** (4 - 2 * j) for j, c in enumerate(g.entries))
    assert sympy.Poly(sympy.expand(rebuilt), t).all_coeffs()[::-1] == [sympy.Integer(int(c)) for c in h.coeffs]


@given(st.lists(st.integers(0, 20), min_size=1, max_size=5), st.integers(0, 1), st.integers(1, 6))
@settings(max_examples=60)
def test_usual_g_vector_for_large_i(half, odd, i_extra):
    h = [1] + half
    d = 2 * len(h) - 2 + odd
    full = h + ([h[-1]] if odd else []) + h[-2::-1]
    full = full[: d + 1]
    assert len(full) == d + 1 and full == full[::-1]
    g = gv.g_vector(full, d, d + i_extra - 1)
    assert list(g.entries) == [full[0]] + [full[j] - full[j - 1] for j in range(1, d // 2 + 1)]
    assert g.expand() == UniPoly(full)


def test_non_symmetric_raises():
    with pytest.raises(ValueError):
        gv.g_vector([1, 2, 3], 2, 1)
    with pytest.raises(ValueError):
        gv.g_vector([1, 2, 3, 4], 2, 1)


def test_membership():
    for d in range(2, 6):
        assert gv.hs_membership(cross_polytope_boundary(d), 1, d)["pass"]
        assert gv.hs_membership(simplex_boundary(d + 1), d, d)["pass"]
        assert not gv.hs_membership(simplex_boundary(d + 1), d - 1, d)["pass"]
    for L in corpus_2d()[:3]:
        assert gv.hs_membership(cross_L(4, L), 2, 4)["pass"]


def test_conjecture_requires_membership():
    with pytest.raises(gv.MembershipError):
        gv.verify_conjecture(simplex_boundary(4), 1)


@pytest.mark.parametrize("L", corpus_2d(), ids=lambda L: L.name)
def test_g2_nonnegative_small(L):
    for d in range(2, 5):
        assert gv.verify_g2_nonneg(cross_L(d, L))


@pytest.mark.parametrize("j", [1, 2, 3])
def test_starred_cross_polytopes(j):
    for d in range(j, 5):
        K = cross_L(d, star(j))
        for i in range(j, 4):
            assert gv.verify_conjecture(K, i)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_path_gamma_nonnegative(s):
    for d in range(1, 5):
        assert gv.g_vector_of(cross_L(d, path(s)), 1).nonnegative()


def test_lemma_missing():
    assert gv.verify_lemma_missing(cross_polytope_boundary(3), cross_polytope_boundary(2), 1).passed
    rep = gv.verify_lemma_missing(cross_polytope_boundary(2), cross_polytope_boundary(2), 2)
    assert rep.passed and rep.to_json()["pass"]


def test_suspension_multiplies_h():
    K = cross_L(3, star(2))
    S = join(K, two_points(1000, 1001))
    assert h_polynomial(S) == h_polynomial(K) * UniPoly([1, 1])


def test_stellar_h_identity_edge_of_octahedron():
    K = cross_polytope_boundary(3)
    F = K.faces_of_dim(1)[0]
    for u in F:
        assert gv.stellar_h_identity(K, F, u)
    assert gv.stellar_h_identity(K, [0])


def test_stellar_identities_on_triangles():
    K = cross_L(4, star(2))
    for F in K.faces_of_dim(2)[:10]:
        assert gv.stellar_h_identity(K, F)
        assert gv.stellar_g_identity(K, F, 2)
    with pytest.raises(ValueError):
        gv.stellar_h_identity(K, K.faces_of_dim(1)[0], u=10_000)


def test_link_stellar_commutation():
    K = cross_polytope_boundary(4)
    faces = [f for f in K.faces if f]
    for F in faces[:12]:
        for T in faces[:12]:
            if not T <= F:
                assert gv.link_stellar_commutation(K, F, T)


def test_dehn_sommerville():
    assert gv.dehn_sommerville(cross_L(4, corpus_2d()[3]))
    assert not gv.dehn_sommerville(SimplicialComplex.simplex(range(3)))


@pytest.mark.parametrize("L", corpus_2d(), ids=lambda L: L.name)
def test_delta_k_default_and_random(L):
    assert gv.verify_delta_k_recursion(3, L).passed
    assert gv.verify_delta_k_recursion(4, L, random_plan(cross_polytope_boundary(4), L, 2)).passed


def test_delta_k_star_has_eight_steps():
    rep = gv.verify_delta_k_recursion(3, star(2))
    assert rep.passed and rep.details["steps"] == 8 and rep.details["m"] == 1


def test_delta_k_guard():
    with pytest.raises(ValueError):
        gv.verify_delta_k_recursion(7, star(2), guard=6)


def test_fstable_octahedron():
    res = gv.fstable_transforms(cross_polytope_boundary(3))
    assert res["F_roots_in_(-1,1)"] and res["h_roots_real_negative"] and res["g2_roots_in_[-1,0)"]


def test_fstable_one_plus_t_cubed():
    res = gv.fstable_transforms([1, 0, 0, 1], 3)
    assert not res["F_roots_in_(-1,1)"]
    assert not res["h_roots_real_negative"]
    assert not res["g2_roots_in_[-1,0)"]


def test_fstable_identities_on_random_h():
    rng = random.Random(11)
    for _ in range(50):
        h, d = gv.random_symmetric_h(rng, 8)
        res = gv.fstable_transforms(h, d)
        assert res["agree"] and res["transform_identity"] and res["g2_substitution_identity"]
        # independent check of the h condition with sympy
        roots = sympy.Poly(sum(sympy.Rational(str(c)) * t**i for i, c in enumerate(h.coeffs)), t).all_roots()
        want = len(roots) == d and all(r.is_real and r < 0 for r in roots)
        assert res["h_roots_real_negative"] == want


@pytest.mark.parametrize("L", corpus_2d(), ids=lambda L: L.name)
def test_fstable_corpus_spheres(L):
    for d in range(2, 5):
        res = gv.fstable_transforms(cross_L(d, L))
        assert res["agree"]


def test_h_from_relabel_is_invariant():
    K = cross_L(3, star(2))
    assert h_polynomial(relabel(K, {v: v + 50 for v in K.vertices})) == h_polynomial(K)


def test_report_json():
    r = gv.Report("c", "i", False, {"step": 3}, {"x": 1})
    assert r.to_json() == {"check": "c", "instance": "i", "pass": False, "witness": {"step": 3}, "details": {"x": 1}}


def test_first_negative():
    g = gv.GVector(4, 1, (Fraction(1), Fraction(2), Fraction(-1)))
    assert g.first_negative() == 2 and not g.nonnegative()
