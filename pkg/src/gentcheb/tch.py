"""Face-count polynomials and generalized Tchebyshev polynomials of a template.

Every quantity is available through at least two independent routes so the
routes can be checked against each other:

* f_n(x, y): a recurrence over interior faces, inclusion-exclusion over
  facet families, and the flag count of an actually subdivided simplex;
* T_n: an alternating binomial sum of f_m, a linear recurrence whose
  coefficients come from the magic polynomial, and the F-polynomial of a
  subdivided cross-polytope boundary;
* U^{(j)}_n: the same three kinds of route, with x-derivatives and links.

Caches are per family and only ever appended to; recomputing a missing entry
gives the same value, so concurrent readers see consistent results.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .polynomials import BiPoly, PolySeries, UniPoly, series_divide
from .simplicial_core import (
    F_polynomial,
    SimplicialComplex,
    cross_polytope_boundary,
    h_polynomial,
    link,
)
from .templates import Template, census, magic_polynomial, require_valid
from .triangulate import ColoredComplex, flag_f_polynomial, tchebyshev_triangulation

DEFAULT_GUARD = 7

X = UniPoly.x()
ONE = UniPoly.const(1)
HALF = Fraction(1, 2)


class GuardError(ValueError):
    """A requested complex is larger than the configured guard allows."""


class RecurrenceError(ValueError):
    pass


def _bi_one_plus(var: int) -> BiPoly:
    return BiPoly.const(1) + (BiPoly.x() if var == 0 else BiPoly.y())


class TchFamily:
    def __init__(self, template: Template, guard: int = DEFAULT_GUARD, check: bool = True):
        if check:
            require_valid(template)
        self.template = template
        self.k = template.k
        self.guard = guard
        self.magic = magic_polynomial(template)
        self.census = census(template)
        self._f: dict[int, BiPoly] = {}
        self._f_ie: dict[int, BiPoly] = {}
        self._t: dict[int, UniPoly] = {}
        self._u: dict[tuple[int, int], UniPoly] = {}
        self._cross: dict[int, ColoredComplex] = {}
        self._p: list[UniPoly] | None = None

    def __repr__(self):
        return f"TchFamily({self.template.name or 'k=%d' % self.k})"

    # -- f_n(x, y) -----------------------------------------------------------

    def fn_xy(self, n: int) -> BiPoly:
        """f_n(x, y) by the recurrence over interior faces of the template."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n in self._f:
            return self._f[n]
        k = self.k
        if n <= k:
            val = _bi_one_plus(0) ** n
        else:
            val = BiPoly()
            one_y = _bi_one_plus(1)
            for (i, j), count in self.census.items():
                sign = -1 if (k + 1 - i - j) % 2 else 1
                val = val + (one_y ** j) * self.fn_xy(n - k - 1 + i) * (sign * count)
        self._f[n] = val
        return val

    def fn_xy_ie(self, n: int) -> BiPoly:
        """f_n(x, y) by inclusion-exclusion over nonempty families of template facets."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n in self._f_ie:
            return self._f_ie[n]
        k = self.k
        if n <= k:
            val = _bi_one_plus(0) ** n
        else:
            facets = self.template.facets
            weights: dict[tuple[int, int], int] = {}
            for size in range(1, len(facets) + 1):
                sign = 1 if size % 2 else -1
                for family in combinations(facets, size):
                    common = frozenset.intersection(*family)
                    key = self.template.face_type(common)
                    weights[key] = weights.get(key, 0) + sign
            val = BiPoly()
            one_y = _bi_one_plus(1)
            for (i, j), w in weights.items():
                if w:
                    val = val + (one_y ** j) * self.fn_xy_ie(n - k - 1 + i) * w
        self._f_ie[n] = val
        return val

    def fn_xy_direct(self, n: int) -> BiPoly:
        """f_n(x, y) as the flag count of the subdivided simplex on n vertices."""
        if n > self.guard + self.k + 1:
            raise GuardError(f"simplex on {n} vertices exceeds the guard")
        K = SimplicialComplex.simplex(range(n))
        return flag_f_polynomial(tchebyshev_triangulation(K, self.template, check_template=False))

    def I_hat(self, j: int) -> BiPoly:
        """Contribution of one j-vertex facet: binomial inverse of f_0..f_j."""
        val = BiPoly()
        for n in range(j + 1):
            val = val + self.fn_xy(n) * ((-1) ** (j - n) * comb(j, n))
        return val

    def f_K_xy(self, K: SimplicialComplex) -> BiPoly:
        """Flag count of any subdivision of K, computed from its f-vector alone."""
        val = BiPoly()
        for j, fj in enumerate(K.f_vector()):
            if fj:
                val = val + self.I_hat(j) * fj
        return val

    # -- generating functions ---------------------------------------------

    def _magic_in_t(self, with_one_plus_t: bool) -> PolySeries:
        """-(-t)^(k+1) r(u, -1-y) with u = -1/t, or u = -(1+t)/t when requested."""
        k = self.k
        coeffs: dict[int, BiPoly] = {}
        minus_one_minus_y = BiPoly.const(-1) - BiPoly.y()
        for (i, j), c in self.magic.terms.items():
            scale = -c * (-1) ** (k + 1 + i)
            base = minus_one_minus_y ** j * scale
            expansion = [comb(i, a) for a in range(i + 1)] if with_one_plus_t else [1]
            for a, b in enumerate(expansion):
                power = k + 1 - i + a
                coeffs[power] = coeffs.get(power, BiPoly()) + base * b
        order = max(coeffs)
        return PolySeries([coeffs.get(p, BiPoly()) for p in range(order + 1)], order)

    def _numerator_extra(self) -> BiPoly:
        """(-1)^(k+1) r(-1-x, -1-y), the coefficient of t^(k+1) added on the right."""
        k = self.k
        val = self.magic.substitute(BiPoly.const(-1) - BiPoly.x(), BiPoly.const(-1) - BiPoly.y())
        return val * (-1) ** (k + 1)

    @staticmethod
    def _pad(series: PolySeries, N: int) -> PolySeries:
        return PolySeries(series.coeffs, N)

    def fgen_series(self, N: int) -> PolySeries:
        """Expansion of the closed form of sum f_n t^n, by exact series division."""
        D = self._pad(self._magic_in_t(False), N)
        num = D + self._monomial_series(self._numerator_extra(), self.k + 1, N)
        geometric = PolySeries([BiPoly.const(1), -(BiPoly.x() + 1)], N)
        return series_divide(num, geometric * D)

    def verify_fgen(self, N: int) -> bool:
        """Check f(t) (1 - t(x+1)) D(t) = D(t) + (-t)^(k+1) r(-1-x,-1-y) to order N."""
        D = self._pad(self._magic_in_t(False), N)
        f = PolySeries([self.fn_xy(n) for n in range(N + 1)], N)
        lhs = f * PolySeries([BiPoly.const(1), -(BiPoly.x() + 1)], N) * D
        rhs = D + self._monomial_series(self._numerator_extra(), self.k + 1, N)
        return lhs == rhs

    def verify_ifgen(self, N: int) -> bool:
        """Check I(t) (1 - tx) E(t) = E(t) + (-t)^(k+1) r(-1-x,-1-y) to order N."""
        E = self._pad(self._magic_in_t(True), N)
        ihat = PolySeries([self.I_hat(j) for j in range(N + 1)], N)
        lhs = ihat * PolySeries([BiPoly.const(1), -BiPoly.x()], N) * E
        rhs = E + self._monomial_series(self._numerator_extra(), self.k + 1, N)
        return lhs == rhs

    @staticmethod
    def _monomial_series(c: BiPoly, power: int, N: int) -> PolySeries:
        coeffs = [BiPoly()] * (N + 1)
        if power <= N:
            coeffs[power] = c
        return PolySeries(coeffs, N)

    # -- first kind --------------------------------------------------------

    def T_L_direct(self, n: int) -> UniPoly:
        """sum_m C(n,m) (-1)^(n-m) 2^m f_m(z, z) with z = (x-1)/2."""
        z = UniPoly((-HALF, HALF))
        val = UniPoly()
        for m in range(n + 1):
            val = val + self.fn_xy(m).substitute(z, z) * ((-1) ** (n - m) * comb(n, m) * 2 ** m)
        return val

    def recurrence_coefficients(self) -> list[UniPoly]:
        """p_1..p_{k+1} with T_n = sum_j p_j T_{n-j}.

        They are the t-coefficients of (-2t)^(k+1) r(-(1+t)/(2t), -(1+x)/2),
        whose constant term must be -1.
        """
        if self._p is not None:
            return self._p
        k = self.k
        v = UniPoly((-HALF, -HALF))
        coeffs = [UniPoly() for _ in range(k + 2)]
        for (i, j), c in self.magic.terms.items():
            base = (v ** j) * (c * (-2) ** (k + 1 - i))
            for a in range(i + 1):
                coeffs[k + 1 - i + a] = coeffs[k + 1 - i + a] + base * comb(i, a)
        if coeffs[0] != UniPoly.const(-1):
            raise RecurrenceError(f"constant term {coeffs[0]} should be -1; template data is inconsistent")
        self._p = coeffs[1:]
        return self._p

    def T_L_rec(self, n: int) -> UniPoly:
        if n in self._t:
            return self._t[n]
        p = self.recurrence_coefficients()
        for m in range(len(self._t), n + 1):
            if m <= self.k:
                self._t[m] = UniPoly.monomial(m)
            else:
                acc = UniPoly()
                for j, pj in enumerate(p, start=1):
                    acc = acc + pj * self._t[m - j]
                self._t[m] = acc
        return self._t[n]

    def cross_polytope(self, d: int) -> ColoredComplex:
        """The subdivided boundary of the d-dimensional cross-polytope (cached)."""
        if d > self.guard:
            raise GuardError(f"cross-polytope dimension {d} exceeds guard {self.guard}")
        if d not in self._cross:
            self._cross[d] = tchebyshev_triangulation(cross_polytope_boundary(d), self.template,
                                                      check_template=False)
        return self._cross[d]

    def T_L_from_cross_polytope(self, n: int) -> UniPoly:
        return F_polynomial(self.cross_polytope(n).complex)

    def T_L_from_h_vector(self, n: int) -> UniPoly:
        """2^-n sum h_i (x-1)^i (x+1)^(n-i) over the subdivided cross-polytope."""
        h = h_polynomial(self.cross_polytope(n).complex)
        val = UniPoly()
        for i in range(n + 1):
            val = val + (UniPoly((-1, 1)) ** i) * (UniPoly((1, 1)) ** (n - i)) * h[i]
        return val / 2 ** n

    def characteristic_identity(self) -> bool:
        """(-2)^(k+1) r(-(1+q)/2, -(1+x)/2) = -(q^(k+1) - sum_j p_j q^(k+1-j)).

        Both sides are compared as polynomials in (q, x), stored as BiPoly
        with q in the first slot.
        """
        k = self.k
        q_sub = BiPoly({(0, 0): -HALF, (1, 0): -HALF})
        x_sub = BiPoly({(0, 0): -HALF, (0, 1): -HALF})
        lhs = self.magic.substitute(q_sub, x_sub) * (-2) ** (k + 1)
        rhs = BiPoly({(k + 1, 0): 1})
        for j, pj in enumerate(self.recurrence_coefficients(), start=1):
            rhs = rhs - BiPoly({(k + 1 - j, e): c for e, c in enumerate(pj.coeffs)})
        return lhs == -rhs

    def verify_tgen(self, N: int) -> bool:
        """Check T(t) (1 - xt) P(t) = P(t) - (-2t)^(k+1) r0 to order N.

        P(t) is the recurrence polynomial above and r0 = r(-(1+x)/2, -(1+x)/2).
        """
        k = self.k
        P = PolySeries([UniPoly.const(-1)] + self.recurrence_coefficients(), k + 1)
        P = PolySeries(P.coeffs, N)
        v = UniPoly((-HALF, -HALF))
        r0 = self.magic.substitute(v, v) * (-2) ** (k + 1)
        extra = [UniPoly()] * (N + 1)
        if k + 1 <= N:
            extra[k + 1] = r0
        T = PolySeries([self.T_L_rec(n) for n in range(N + 1)], N)
        return T * PolySeries([ONE, -X], N) * P == P - PolySeries(extra, N)

    # -- higher kinds -------------------------------------------------------

    def _check_kind(self, j: int):
        if not 2 <= j <= self.k + 1:
            raise ValueError(f"kind j={j} must lie in 2..{self.k + 1}")

    def U_L_direct(self, j: int, n: int) -> UniPoly:
        """Alternating binomial sum of 2^(1-j+m) d^(j-1)/dx^(j-1) f_m at x = y = (z-1)/2."""
        self._check_kind(j)
        z = UniPoly((-HALF, HALF))
        top = n + j - 1
        val = UniPoly()
        for m in range(j - 1, top + 1):
            deriv = self.fn_xy(m).partial_derivative(0, j - 1)
            scale = (-1) ** (top - m) * comb(top, m) * Fraction(2) ** (1 - j + m)
            val = val + deriv.substitute(z, z) * scale
        return val

    def U_L_rec(self, j: int, n: int) -> UniPoly:
        self._check_kind(j)
        if (j, n) in self._u:
            return self._u[(j, n)]
        p = self.recurrence_coefficients()
        m = 0
        while (j, m) in self._u:
            m += 1
        for m in range(m, n + 1):
            if m <= self.k:
                val = self.U_L_direct(j, m)
            else:
                val = UniPoly()
                for i, pi in enumerate(p, start=1):
                    val = val + pi * self._u[(j, m - i)]
            self._u[(j, m)] = val
        return self._u[(j, n)]

    def link_F_sum(self, K: SimplicialComplex, C: ColoredComplex, size: int) -> UniPoly:
        """Sum of F(link in the subdivision) over the faces of K with ``size`` vertices."""
        val = UniPoly()
        for sigma in K.faces_by_size.get(size, ()):
            val = val + F_polynomial(link(C.complex, sigma))
        return val

    def U_L_from_cross_polytope(self, j: int, n: int) -> UniPoly:
        self._check_kind(j)
        d = n + j - 1
        C = self.cross_polytope(d)
        total = self.link_F_sum(cross_polytope_boundary(d), C, j - 1)
        return total * Fraction(factorial(j - 1), 2 ** (j - 1))

    # -- linear maps on polynomials ------------------------------------------

    def T_map(self, p: UniPoly) -> UniPoly:
        """Linear map x^n -> T_n; sends F(K) to F of any subdivision of K."""
        val = UniPoly()
        for n, c in enumerate(p.coeffs):
            if c:
                val = val + self.T_L_rec(n) * c
        return val

    def U_map(self, j: int, p: UniPoly) -> UniPoly:
        """Linear map sending F(K) to the sum of F(link) over (j-1)-vertex faces.

        x^n goes to 2^(j-1)/(j-1)! U^{(j)}_{n-j+1}, and to 0 when n <= j-2.
        """
        self._check_kind(j)
        val = UniPoly()
        scale = Fraction(2 ** (j - 1), factorial(j - 1))
        for n, c in enumerate(p.coeffs):
            if c and n >= j - 1:
                val = val + self.U_L_rec(j, n - j + 1) * (c * scale)
        return val


# -- one-dimensional closed forms --------------------------------------------

def _power_in_quadratic_ring(n: int, s: int) -> tuple[UniPoly, UniPoly]:
    """(x + w)^n = A + B w in Q[x][w] / (w^2 - s(x^2 - 1))."""
    w2 = UniPoly((-s, 0, s))
    a, b = ONE, UniPoly()
    for _ in range(n):
        a, b = a * X + b * w2, a + b * X
    return a, b


def T_closed_form_k1(s: int, n: int) -> UniPoly:
    """((x + w)^n + (x - w)^n) / 2 with w^2 = s(x^2 - 1)."""
    return _power_in_quadratic_ring(n, s)[0]


def U_closed_form_k1(s: int, n: int) -> UniPoly:
    """((x + w)^(n+1) - (x - w)^(n+1)) / (2w) with w^2 = s(x^2 - 1)."""
    return _power_in_quadratic_ring(n + 1, s)[1]


# -- classical polynomials ----------------------------------------------------

def _three_term(first: UniPoly, second: UniPoly, n: int) -> UniPoly:
    if n == 0:
        return first
    prev, cur = first, second
    for _ in range(n - 1):
        prev, cur = cur, X * cur * 2 - prev
    return cur


def classical_T(n: int) -> UniPoly:
    return _three_term(ONE, X, n)


def classical_U(n: int) -> UniPoly:
    return _three_term(ONE, X * 2, n)


__all__ = [
    "DEFAULT_GUARD",
    "GuardError",
    "RecurrenceError",
    "TchFamily",
    "T_closed_form_k1",
    "U_closed_form_k1",
    "classical_T",
    "classical_U",
]
