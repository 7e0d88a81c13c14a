from fractions import Fraction
from math import factorial

import pytest
import sympy

from gentcheb.polynomials import BiPoly, UniPoly
from gentcheb.simplicial_core import (
    F_polynomial,
    SimplicialComplex,
    cross_polytope_boundary,
    link,
    simplex_boundary,
)
from gentcheb.tch import (
    GuardError,
    TchFamily,
    T_closed_form_k1,
    U_closed_form_k1,
    classical_T,
    classical_U,
)
from gentcheb.templates import corpus_2d, path, ring_3_6, star
from gentcheb.triangulate import flag_f_polynomial, random_complex, tchebyshev_triangulation

x, y, t, u, v = sympy.symbols("x y t u v")
X = UniPoly.x()
TWO = SimplicialComplex.from_facets([[0, 1, 2], [1, 2, 3]])


def sym_uni(p: UniPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def sym_bi(p: BiPoly, a=x, b=y):
    return sum((sympy.Rational(c.numerator, c.denominator) * a**i * b**j for (i, j), c in p.terms.items()),
               sympy.Integer(0))


def series_coeffs(expr, N):
    s = sympy.series(expr, t, 0, N + 1).removeO()
    return [sympy.expand(s.coeff(t, n)) for n in range(N + 1)]


@pytest.fixture(scope="module")
def families():
    Ls = [path(1), path(2), path(3), star(2), star(3)] + corpus_2d()[1:]
    return {L.name: TchFamily(L) for L in Ls}


# -- f_n(x, y) -------------------------------------------------------------------

def test_subdivided_edge():
    fam = TchFamily(path(1))
    assert sym_bi(fam.fn_xy(2)) == sympy.expand(1 + 2 * x + y + 2 * x * y)


@pytest.mark.parametrize("L", [path(1), star(2), star(3), ring_3_6()], ids=lambda L: L.name)
def test_base_cases(L):
    fam = TchFamily(L)
    for n in range(L.k + 1):
        assert fam.fn_xy(n) == (BiPoly.x() + 1) ** n


def test_three_routes_agree(families):
    for fam in families.values():
        for n in range(fam.k + 4):
            assert fam.fn_xy(n) == fam.fn_xy_ie(n) == fam.fn_xy_direct(n), (fam, n)


def test_I_hat_binomial_round_trip(families):
    from math import comb
    for fam in families.values():
        for n in range(7):
            total = BiPoly()
            for j in range(n + 1):
                total = total + fam.I_hat(j) * comb(n, j)
            assert total == fam.fn_xy(n)


def test_f_K_matches_subdivision(families):
    complexes = [TWO, simplex_boundary(4), cross_polytope_boundary(3), random_complex(8, 1),
                 SimplicialComplex.from_facets([])]
    for fam in families.values():
        for K in complexes:
            if fam.k <= max(K.dim, 0):
                assert fam.f_K_xy(K) == flag_f_polynomial(tchebyshev_triangulation(K, fam.template))
    assert families["path(1)"].f_K_xy(SimplicialComplex.from_facets([])) == BiPoly.const(1)


# -- generating functions against sympy series of the closed forms --------------------

def _magic_sym(L):
    fam = TchFamily(L)
    return sym_bi(fam.magic, u, v), L.k


@pytest.mark.parametrize("L", [path(1), star(2), star(3), corpus_2d()[1]], ids=lambda L: L.name)
def test_f_generating_function(L):
    r, k = _magic_sym(L)
    D = -(-t) ** (k + 1) * r.subs({u: -1 / t, v: -1 - y})
    extra = (-t) ** (k + 1) * r.subs({u: -1 - x, v: -1 - y})
    closed = sympy.cancel((D + extra) / ((1 - t * (x + 1)) * D))
    fam = TchFamily(L)
    N = 6 if L.k == 3 else 8
    assert series_coeffs(closed, N) == [sym_bi(fam.fn_xy(n)) for n in range(N + 1)]
    assert fam.verify_fgen(N)


@pytest.mark.parametrize("L", [path(2), star(2), corpus_2d()[1]], ids=lambda L: L.name)
def test_I_generating_function(L):
    r, k = _magic_sym(L)
    E = -(-t) ** (k + 1) * r.subs({u: -(1 + t) / t, v: -1 - y})
    extra = (-t) ** (k + 1) * r.subs({u: -1 - x, v: -1 - y})
    closed = sympy.cancel((E + extra) / ((1 - t * x) * E))
    fam = TchFamily(L)
    assert series_coeffs(closed, 7) == [sym_bi(fam.I_hat(n)) for n in range(8)]
    assert fam.verify_ifgen(8)


@pytest.mark.parametrize("L", [path(2), star(2), star(3), ring_3_6()], ids=lambda L: L.name)
def test_T_generating_function(L):
    r, k = _magic_sym(L)
    P = sympy.expand((-2 * t) ** (k + 1) * r.subs({u: -(1 + t) / (2 * t), v: -(1 + x) / 2}))
    extra = (-2 * t) ** (k + 1) * r.subs({u: -(1 + x) / 2, v: -(1 + x) / 2})
    closed = sympy.cancel((P - extra) / ((1 - x * t) * P))
    fam = TchFamily(L)
    assert series_coeffs(closed, 8) == [sym_uni(fam.T_L_rec(n)) for n in range(9)]
    assert fam.verify_tgen(8)


def test_series_division_matches_recurrence(families):
    fam = families["star(2)"]
    s = fam.fgen_series(8)
    assert all(s[n] == fam.fn_xy(n) for n in range(9))


# -- first kind --------------------------------------------------------------------

@pytest.mark.parametrize("n", range(13))
def test_classical_recovery_first_kind(n):
    fam = TchFamily(path(1))
    want = sympy.chebyshevt(n, x)
    assert sym_uni(fam.T_L_direct(n)) == sympy.expand(want)
    assert sym_uni(fam.T_L_rec(n)) == sympy.expand(want)
    assert sym_uni(classical_T(n)) == sympy.expand(want)


@pytest.mark.parametrize("n", range(13))
def test_classical_recovery_second_kind(n):
    fam = TchFamily(path(1))
    want = sympy.expand(sympy.chebyshevu(n, x))
    assert sym_uni(fam.U_L_direct(2, n)) == want
    assert sym_uni(fam.U_L_rec(2, n)) == want
    assert sym_uni(classical_U(n)) == want


def test_known_values():
    fam = TchFamily(path(1))
    assert fam.T_L_direct(2) == UniPoly([-1, 0, 2])
    assert fam.T_L_direct(3) == UniPoly([0, -3, 0, 4])
    assert TchFamily(star(3)).T_L_direct(6) == UniPoly([6, 0, -9, 0, -60, 0, 64])


def test_recurrence_coefficients():
    def coeffs(L):
        return [str(p) for p in TchFamily(L).recurrence_coefficients()]
    assert coeffs(path(1)) == ["2*x", "-1"]
    assert coeffs(path(2)) == ["2*x", "-2 + x^2"]
    assert coeffs(star(2)) == ["3*x", "-3", "x"]
    assert coeffs(star(3)) == ["4*x", "-6", "4*x", "-1"]
    assert coeffs(ring_3_6()) == ["3*x", "-6 + 3*x^2", "x^3"]


def test_recurrence_matches_direct(families):
    for fam in families.values():
        for n in range(11):
            assert fam.T_L_rec(n) == fam.T_L_direct(n)
        assert fam.characteristic_identity()


def test_low_degree_is_monomial(families):
    for fam in families.values():
        for n in range(fam.k + 1):
            assert fam.T_L_rec(n) == UniPoly.monomial(n)


def test_cross_polytope_route(families):
    assert families["path(1)"].T_L_from_cross_polytope(3) == UniPoly([0, -3, 0, 4])
    for fam in families.values():
        assert fam.T_L_from_cross_polytope(1) == X
        for n in range(1 + (4 if fam.k == 1 else 3)):
            assert fam.T_L_from_cross_polytope(n) == fam.T_L_direct(n) == fam.T_L_from_h_vector(n)


def test_guard():
    fam = TchFamily(star(2), guard=3)
    with pytest.raises(GuardError):
        fam.cross_polytope(4)


# -- higher kinds ---------------------------------------------------------------------

@pytest.mark.parametrize("name,j", [("star(2)", 2), ("star(2)", 3), ("path(3)", 2), ("star(3)", 4),
                                    ("stellar(2,5)a", 3), ("ring(3,6)", 2)])
def test_U_routes(families, name, j):
    fam = families[name]
    for n in range(9):
        assert fam.U_L_rec(j, n) == fam.U_L_direct(j, n)
    for n in range(0, 6 - j + 1):
        assert fam.U_L_from_cross_polytope(j, n) == fam.U_L_rec(j, n)


def test_U_cross_polytope_values():
    fam = TchFamily(path(1))
    assert fam.U_L_from_cross_polytope(2, 1) == UniPoly([0, 2])
    assert fam.U_L_from_cross_polytope(2, 2) == UniPoly([-1, 0, 4])


def test_kind_range_checked():
    with pytest.raises(ValueError):
        TchFamily(path(1)).U_L_rec(3, 2)


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_closed_forms_against_sqrt_expansion(s):
    fam = TchFamily(path(s))
    w = sympy.sqrt(s * (x**2 - 1))
    for n in range(11):
        t_form = sympy.expand(((x + w) ** n + (x - w) ** n) / 2)
        u_form = sympy.expand(sympy.cancel(sympy.expand((x + w) ** (n + 1) - (x - w) ** (n + 1)) / (2 * w)))
        assert sym_uni(T_closed_form_k1(s, n)) == t_form == sym_uni(fam.T_L_rec(n))
        assert sym_uni(U_closed_form_k1(s, n)) == u_form == sym_uni(fam.U_L_rec(2, n))


# -- linear maps ----------------------------------------------------------------------

@pytest.mark.parametrize("L", [path(2), star(2), ring_3_6()], ids=lambda L: L.name)
def test_T_map_sends_F_to_F_of_subdivision(L):
    fam = TchFamily(L)
    for K in (TWO, simplex_boundary(4), cross_polytope_boundary(3), random_complex(7, 3)):
        if L.k > K.dim:
            continue
        sub = tchebyshev_triangulation(K, L).complex
        assert fam.T_map(F_polynomial(K)) == F_polynomial(sub)


@pytest.mark.parametrize("L,j", [(path(2), 2), (star(2), 2), (star(2), 3)], ids=str)
def test_U_map_sends_F_to_link_sums(L, j):
    fam = TchFamily(L)
    for K in (simplex_boundary(4), cross_polytope_boundary(3), random_complex(7, 3)):
        if L.k > K.dim:
            continue
        C = tchebyshev_triangulation(K, L)
        want = UniPoly()
        for sigma in K.faces_by_size.get(j - 1, ()):
            want = want + F_polynomial(link(C.complex, sigma))
        assert fam.U_map(j, F_polynomial(K)) == want


def test_U_map_normalization():
    fam = TchFamily(star(2))
    assert fam.U_map(3, UniPoly.monomial(1)).is_zero()
    assert fam.U_map(3, UniPoly.monomial(2)) == fam.U_L_rec(3, 0) * Fraction(4, factorial(2))
