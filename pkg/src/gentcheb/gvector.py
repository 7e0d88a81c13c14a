"""Generalized g-vectors and the checks built on them.

g^{(i)} expresses a symmetric h-polynomial of degree d in the basis
t^j P_{d-2j,i}(t), where P_{d,i} = (1 + ... + t^i)^q (1 + ... + t^r) with
d = qi + r and 1 <= r <= i.  i = 1 gives the gamma-vector and i >= d the
classical g-vector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .polynomials import UniPoly, real_roots_with_multiplicity, root_multiplicity
from .simplicial_core import (
    F_polynomial,
    SimplicialComplex,
    betti_numbers,
    cross_polytope_boundary,
    h_from_f,
    join,
    link,
    max_missing_dimension,
    relabel,
    sphere_betti,
    stellar_subdivision,
)
from .templates import Template, census_2d
from .triangulate import SubdivisionPlan, triangulation_steps

T = UniPoly.x()


class MembershipError(ValueError):
    """The complex is not in the homology-sphere family the check requires."""


def P(d: int, i: int) -> UniPoly:
    if d < 0 or i < 1:
        raise ValueError("need d >= 0 and i >= 1")
    if d == 0:
        return UniPoly.const(1)
    q = (d - 1) // i
    r = d - q * i
    return UniPoly([1] * (i + 1)) ** q * UniPoly([1] * (r + 1))


@dataclass(frozen=True)
class GBasis:
    d: int
    i: int
    polys: tuple[UniPoly, ...]


def g_basis(d: int, i: int) -> GBasis:
    return GBasis(d, i, tuple(P(d - 2 * j, i).shift_degree(j) for j in range(d // 2 + 1)))


@dataclass(frozen=True)
class GVector:
    d: int
    i: int
    entries: tuple[Fraction, ...]

    def polynomial(self) -> UniPoly:
        """g^{(i)}(t) = sum g_j t^j."""
        return UniPoly(self.entries)

    def expand(self) -> UniPoly:
        """Rebuild h from the coefficients."""
        acc = UniPoly()
        for g, b in zip(self.entries, g_basis(self.d, self.i).polys):
            acc = acc + b * g
        return acc

    def nonnegative(self) -> bool:
        return all(g >= 0 for g in self.entries)

    def first_negative(self) -> int | None:
        return next((j for j, g in enumerate(self.entries) if g < 0), None)


def _as_poly(h) -> UniPoly:
    return h if isinstance(h, UniPoly) else UniPoly(h)


def g_vector(h, d: int, i: int) -> GVector:
    """Coefficients of h in the basis t^j P_{d-2j,i}, solved from low degree up.

    Raises ValueError when deg h > d or when h is not in the span of the basis
    (which only spans polynomials symmetric about d/2).
    """
    h = _as_poly(h)
    if h.degree > d:
        raise ValueError(f"deg h = {h.degree} exceeds d = {d}")
    residual = h
    entries = []
    for j, b in enumerate(g_basis(d, i).polys):
        g = residual[j]
        entries.append(g)
        residual = residual - b * g
    if not residual.is_zero():
        raise ValueError(f"h = {h} is not symmetric of degree {d}, so it has no g-vector")
    return GVector(d, i, tuple(entries))


def h_vector_of(K: SimplicialComplex) -> tuple[UniPoly, int]:
    """h-polynomial of K together with d = dim K + 1."""
    return UniPoly(h_from_f(K.f_vector())), K.dim + 1


def g_vector_of(K: SimplicialComplex, i: int) -> GVector:
    h, d = h_vector_of(K)
    return g_vector(h, d, i)


# -- membership -----------------------------------------------------------------

@dataclass
class Report:
    check: str
    instance: str
    passed: bool
    witness: object = None
    details: dict | None = None

    def to_json(self) -> dict:
        out = {"check": self.check, "instance": self.instance, "pass": self.passed, "witness": self.witness}
        if self.details is not None:
            out["details"] = self.details
        return out


def hs_membership(K: SimplicialComplex, i: int, d: int, global_homology: bool = True) -> dict:
    """Necessary conditions for K to be a (d-1)-homology sphere with no missing face of dimension > i.

    Vertex links are checked one level deep.  ``global_homology`` may be
    switched off for large complexes built as spheres by construction.
    """
    out = {"dimension": K.dim == d - 1}
    if global_homology:
        out["sphere_homology"] = out["dimension"] and betti_numbers(K) == sphere_betti(d - 1)
    bad_links = [v for v in K.vertices if betti_numbers(link(K, [v])) != sphere_betti(d - 2)]
    out["vertex_links"] = not bad_links
    top = max_missing_dimension(K)
    out["missing_faces"] = top is None or top <= i
    out["max_missing_dimension"] = top
    out["pass"] = all(v for key, v in out.items() if key not in ("max_missing_dimension",))
    return out


def verify_conjecture(K: SimplicialComplex, i: int, global_homology: bool = True) -> bool:
    """Componentwise nonnegativity of g^{(i)} for a member of HS(i, d)."""
    d = K.dim + 1
    membership = hs_membership(K, i, d, global_homology)
    if not membership["pass"]:
        raise MembershipError(f"complex fails HS({i},{d}) membership: {membership}")
    return g_vector_of(K, i).nonnegative()


def verify_g2_nonneg(K: SimplicialComplex, global_homology: bool = True) -> bool:
    return verify_conjecture(K, 2, global_homology)


def _disjoint_copy(K: SimplicialComplex, avoid: Iterable[int]) -> SimplicialComplex:
    start = max(avoid, default=-1) + 1
    return relabel(K, {v: start + n for n, v in enumerate(K.vertices)})


def verify_lemma_missing(K: SimplicialComplex, K2: SimplicialComplex, i: int) -> Report:
    """Instance check of: g^(i) >= 0 implies g^(i+1) >= 0, and joins keep g^(i) >= 0."""
    d, d2 = K.dim + 1, K2.dim + 1
    for C, dd in ((K, d), (K2, d2)):
        if not hs_membership(C, i, dd)["pass"]:
            raise MembershipError(f"input fails HS({i},{dd}) membership")
    g_i = g_vector_of(K, i)
    g_next = g_vector_of(K, i + 1)
    raising = (not g_i.nonnegative()) or g_next.nonnegative()
    J = join(K, _disjoint_copy(K2, K.vertices))
    joined = g_vector_of(J, i)
    both = g_i.nonnegative() and g_vector_of(K2, i).nonnegative()
    joining = (not both) or joined.nonnegative()
    details = {
        "g_i": [str(g) for g in g_i.entries],
        "g_i_plus_1": [str(g) for g in g_next.entries],
        "g_i_join": [str(g) for g in joined.entries],
        "join_in_family": hs_membership(J, i, d + d2)["pass"],
    }
    passed = raising and joining and details["join_in_family"]
    return Report("lemma-missing", f"i={i}", passed, None if passed else details, details)


# -- stellar identities --------------------------------------------------------

def stellar_h_identity(K: SimplicialComplex, F: Iterable[int], u: int | None = None) -> bool:
    """h(K(F)) = h(K) + t h(link_{K(F)}(u v_F)); for a single vertex F, h is unchanged."""
    F = frozenset(F)
    KF, apex = stellar_subdivision(K, F)
    hK, hKF = h_vector_of(K)[0], h_vector_of(KF)[0]
    if len(F) == 1:
        return hK == hKF
    if u is None:
        u = min(F)
    if u not in F:
        raise ValueError(f"{u} is not a vertex of {sorted(F)}")
    lk = link(KF, [u, apex])
    return hKF == hK + h_vector_of(lk)[0].shift_degree(1)


def stellar_g_identity(K: SimplicialComplex, F: Iterable[int], i: int, u: int | None = None) -> bool:
    """g^(i)(K(F), t) = g^(i)(K, t) + t g^(i)(link_{K(F)}(u v_F), t)."""
    F = frozenset(F)
    if len(F) < 2:
        raise ValueError("the g-identity concerns faces with at least two vertices")
    KF, apex = stellar_subdivision(K, F)
    u = min(F) if u is None else u
    lk = link(KF, [u, apex])
    lhs = g_vector_of(KF, i).polynomial()
    rhs = g_vector_of(K, i).polynomial() + g_vector(h_vector_of(lk)[0], K.dim - 1, i).polynomial().shift_degree(1)
    return lhs == rhs


def link_stellar_commutation(K: SimplicialComplex, F: Iterable[int], Tface: Iterable[int]) -> bool:
    """f-vectors of link_{K(T)}(F) and (link_K F)(T minus F) agree, for T not inside F.

    Starring a non-face leaves a complex unchanged.
    """
    F, Tface = frozenset(F), frozenset(Tface)
    if Tface <= F:
        raise ValueError("T must not be contained in F")
    KT = stellar_subdivision(K, Tface)[0] if Tface in K.faces else K
    lhs = link(KT, F)
    lkF = link(K, F)
    rest = Tface - F
    rhs = stellar_subdivision(lkF, rest)[0] if rest in lkF.faces else lkF
    return lhs.f_vector() == rhs.f_vector()


def dehn_sommerville(K: SimplicialComplex) -> bool:
    h, d = h_vector_of(K)
    return all(h[j] == h[d - j] for j in range(d + 1))


# -- the subdivision chain of a cross-polytope ----------------------------------

def verify_delta_k_recursion(d: int, L: Template, plan: SubdivisionPlan | None = None,
                             guard: int = 6) -> Report:
    """Walk the chain from the cross-polytope boundary, one triangle at a time.

    At every step check
      f(next) = f(prev) + f(link of the replaced triangle) * m (t + 3t^2 + 2t^3),
      h(next) = h(prev) + m t (1 + t) h(link),
    and g^(2)(next) >= 0.
    """
    if d > guard:
        raise ValueError(f"d={d} exceeds guard {guard}")
    m, _ = census_2d(L)
    interior = UniPoly([0, m, 3 * m, 2 * m])
    interior_direct = UniPoly([0] + [sum(1 for f in L.interior_faces if len(f) == s) for s in (1, 2, 3)]) - T ** 3
    witness = None
    steps = 0
    if interior != interior_direct:
        witness = {"step": 0, "reason": "interior face polynomial", "got": str(interior_direct)}
    start = cross_polytope_boundary(d)
    prev_f = UniPoly(start.f_vector())
    prev_h = UniPoly(h_from_f(start.f_vector()))
    ok = witness is None and g_vector(prev_h, d, 2).nonnegative()
    for st in triangulation_steps(start, L, plan, materialize=False):
        steps += 1
        if not ok:
            break
        lk = SimplicialComplex(st.link)
        f_lk = UniPoly(lk.f_vector())
        h_lk = UniPoly(h_from_f(lk.f_vector()))
        f_next = UniPoly(st.f_vector)
        h_next = UniPoly(h_from_f(st.f_vector + [0] * (d + 1 - len(st.f_vector))))
        checks = {
            "f": f_next == prev_f + f_lk * interior,
            "h": h_next == prev_h + h_lk * UniPoly([0, m, m]),
            "g2": g_vector(h_next, d, 2).nonnegative(),
        }
        if not all(checks.values()):
            ok = False
            witness = {"step": st.index, "face": sorted(st.face), "failed": [k for k, v in checks.items() if not v]}
        prev_f, prev_h = f_next, h_next
    return Report("delta-k", f"d={d},L={L.name}", ok, witness, {"steps": steps, "m": m})


# -- stability transforms ---------------------------------------------------------

def _symmetric_h(h, d: int | None) -> tuple[UniPoly, int]:
    h = _as_poly(h)
    if d is None:
        d = h.degree
    if h[0] != 1:
        raise ValueError("h_0 must be 1")
    if any(h[j] != h[d - j] for j in range(d + 1)) or h.degree > d:
        raise ValueError(f"h = {h} is not symmetric of degree {d}")
    return h, d


def F_from_h(h: UniPoly, d: int) -> UniPoly:
    """F(x) = 2^-d sum h_i (x-1)^i (x+1)^(d-i)."""
    acc = UniPoly()
    for i in range(d + 1):
        acc = acc + UniPoly((-1, 1)) ** i * UniPoly((1, 1)) ** (d - i) * h[i]
    return acc / 2 ** d


def _moebius_transform(F: UniPoly, d: int) -> UniPoly:
    """(1-t)^d F((1+t)/(1-t))."""
    acc = UniPoly()
    for i, c in enumerate(F.coeffs):
        acc = acc + UniPoly((1, 1)) ** i * UniPoly((1, -1)) ** (d - i) * c
    return acc


def fstable_transforms(source, d: int | None = None) -> dict:
    """The three equivalent stability conditions, plus the two exact identities tying them.

    ``source`` is a complex or a symmetric h-polynomial (coefficient list or
    UniPoly) with h_0 = 1.
    """
    if isinstance(source, SimplicialComplex):
        h, d = h_vector_of(source)
        F = F_polynomial(source)
    else:
        h, d = _symmetric_h(source, d)
        F = F_from_h(h, d)
    h, d = _symmetric_h(h, d)
    g2 = g_vector(h, d, 2)
    gp = g2.polynomial()
    half = d // 2

    F_ok = F.degree == d and real_roots_with_multiplicity(F, -1, 1) == d
    h_ok = h.degree == d and real_roots_with_multiplicity(h, None, 0) == d
    if gp.is_zero() or gp.degree != half:
        g_ok = False
    else:
        g_ok = real_roots_with_multiplicity(gp, -1, 0) + root_multiplicity(gp, -1) == half

    # h(t) = (1+t+t^2)^(d//2) (1+t)^(d%2) g2(t/(1+t+t^2)), cleared of denominators
    quad = UniPoly((1, 1, 1))
    sub = UniPoly()
    for j, g in enumerate(g2.entries):
        sub = sub + quad ** (half - j) * T ** j * g
    sub = sub * UniPoly((1, 1)) ** (d % 2)

    out = {
        "F_roots_in_(-1,1)": F_ok,
        "h_roots_real_negative": h_ok,
        "g2_roots_in_[-1,0)": g_ok,
        "transform_identity": _moebius_transform(F, d) == h,
        "g2_substitution_identity": sub == h,
    }
    out["agree"] = F_ok == h_ok == g_ok
    return out


def random_symmetric_h(rng: random.Random, max_degree: int = 8) -> tuple[UniPoly, int]:
    """A random symmetric h with h_0 = 1.

    Half the draws are products of palindromic real-rooted factors (so they
    are stable), the rest have random nonnegative symmetric coefficients.
    """
    d = rng.randint(1, max_degree)
    if rng.random() < 0.5:
        h = UniPoly.const(1)
        deg = 0
        while deg + 2 <= d and rng.random() < 0.8:
            a = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            h = h * UniPoly((1, a + 1 / a, 1))
            deg += 2
        h = h * UniPoly((1, 1)) ** (d - deg)
        return h, d
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[0] = coeffs[d] = Fraction(1)
    for j in range(1, d // 2 + 1):
        c = Fraction(rng.randint(0, 12 * (j + 1)))
        coeffs[j] = coeffs[d - j] = c
    return UniPoly(coeffs), d


__all__ = [
    "GBasis",
    "GVector",
    "MembershipError",
    "P",
    "Report",
    "dehn_sommerville",
    "fstable_transforms",
    "g_basis",
    "g_vector",
    "g_vector_of",
    "hs_membership",
    "link_stellar_commutation",
    "random_symmetric_h",
    "stellar_g_identity",
    "stellar_h_identity",
    "verify_conjecture",
    "verify_delta_k_recursion",
    "verify_g2_nonneg",
    "verify_lemma_missing",
]
