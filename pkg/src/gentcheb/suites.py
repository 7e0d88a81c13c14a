"""Named verification suites used by ``gentcheb verify``.

Each suite returns a list of check items; the report is sorted by
(check, instance) so identical configurations give identical bytes.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from . import gvector as gv
from .polynomials import UniPoly, all_roots_real, real_roots_with_multiplicity, sturm_distinct_roots
from .simplicial_core import (
    F_polynomial,
    SimplicialComplex,
    betti_numbers,
    cross_polytope_boundary,
    simplex_boundary,
    sphere_betti,
    star,
)
from .tch import TchFamily, T_closed_form_k1, U_closed_form_k1, classical_T, classical_U
from .templates import (
    Template,
    census_2d,
    corpus_2d,
    path,
    ring_3_6,
    star as star_template,
    validate_template,
)
from .triangulate import (
    SubdivisionPlan,
    flag_f_polynomial,
    random_complex,
    random_plan,
    restriction_property,
    tchebyshev_triangulation,
)


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    seed: int = 0
    max_n: int = 12
    max_d: int = 6
    guard: int = 7


@dataclass
class Item:
    check: str
    instance: str
    passed: bool
    claim: str
    witness: object = None

    def to_json(self) -> dict:
        return {"check": self.check, "instance": self.instance, "pass": self.passed,
                "claim": self.claim, "witness": self.witness}


def _item(check, instance, passed, claim, witness=None) -> Item:
    return Item(check, instance, bool(passed), claim, None if passed else witness)


# -- corpora ---------------------------------------------------------------------

def two_triangles() -> SimplicialComplex:
    return SimplicialComplex.from_facets([[0, 1, 2], [1, 2, 3]])


def order_complexes(seed: int) -> dict[str, SimplicialComplex]:
    return {
        "two-triangles": two_triangles(),
        "boundary-tetrahedron": simplex_boundary(4),
        "octahedron": cross_polytope_boundary(3),
        "solid-tetrahedron": SimplicialComplex.simplex(range(4)),
        "random-8-vertex": random_complex(8, seed),
    }


def order_templates() -> list[Template]:
    m2e5 = corpus_2d()[1]
    return [path(1), path(2), path(3), star_template(2), m2e5, star_template(3)]


def all_templates() -> list[Template]:
    return [path(1), path(2), path(3), star_template(3)] + corpus_2d()


def _families(guard: int) -> dict[str, TchFamily]:
    return {L.name: TchFamily(L, guard) for L in all_templates()}


# -- suites ------------------------------------------------------------------------

def suite_order_independence(cfg: SuiteConfig) -> list[Item]:
    items = []
    claim = "flag f-polynomial of the subdivision does not depend on face order or bijections"
    for kname, K in order_complexes(cfg.seed).items():
        for L in order_templates():
            if L.k > K.dim:
                continue
            fam = TchFamily(L, cfg.guard)
            reference = fam.f_K_xy(K)
            bad = []
            for r in range(20):
                plan = random_plan(K, L, cfg.seed * 1000 + r)
                if flag_f_polynomial(tchebyshev_triangulation(K, L, plan)) != reference:
                    bad.append(r)
            items.append(_item("flag-f-invariance", f"{kname}/{L.name}", not bad, claim, {"plans": bad}))
    K = two_triangles()
    L = path(1)
    cone_plan = SubdivisionPlan.from_order([[1, 2], [0, 1], [0, 2], [1, 3], [2, 3]])
    other_plan = SubdivisionPlan.from_order([[0, 1], [0, 2], [1, 3], [2, 3], [1, 2]])
    a = tchebyshev_triangulation(K, L, cone_plan).complex
    b = tchebyshev_triangulation(K, L, other_plan).complex
    max_a = max(a.degree(v) for v in a.vertices)
    max_b = max(b.degree(v) for v in b.vertices)
    ok = (a.f_vector() == b.f_vector() == [1, 9, 16, 8] and len(a.vertices) == 9
          and max_a == 8 and max_b < 8)
    items.append(_item("two-orderings", "two-triangles/path(1)", ok,
                       "shared edge first gives a cone over an 8-cycle; shared edge last gives no cone; same f-vector",
                       {"f": [a.f_vector(), b.f_vector()], "max_degree": [max_a, max_b]}))
    octa = cross_polytope_boundary(3)
    for L in (path(1), star_template(2), ring_3_6()):
        plan = random_plan(octa, L, cfg.seed)
        ok = restriction_property(octa, star(octa, [0]), L, plan)
        items.append(_item("restriction", f"octahedron/star-of-0/{L.name}", ok,
                           "subdividing a subcomplex equals restricting the subdivision"))
    return items


def suite_routes(cfg: SuiteConfig) -> list[Item]:
    items = []
    for name, fam in _families(cfg.guard).items():
        k = fam.k
        bad = [n for n in range(k + 5) if not fam.fn_xy(n) == fam.fn_xy_ie(n) == fam.fn_xy_direct(n)]
        items.append(_item("fn-three-routes", name, not bad,
                           "recurrence, inclusion-exclusion and direct subdivision give the same f_n(x,y)",
                           {"n": bad}))
        bad = []
        for n in range(k + 5):
            total = sum((fam.I_hat(j) * comb(n, j) for j in range(n + 1)), start=fam.I_hat(0) * 0)
            if total != fam.fn_xy(n):
                bad.append(n)
        items.append(_item("ihat-inversion", name, not bad, "f_n = sum_j C(n,j) I_j", {"n": bad}))
    for kname, K in order_complexes(cfg.seed).items():
        for L in order_templates():
            if L.k > K.dim:
                continue
            fam = TchFamily(L, cfg.guard)
            ok = fam.f_K_xy(K) == flag_f_polynomial(tchebyshev_triangulation(K, L))
            items.append(_item("fK-from-f-vector", f"{kname}/{L.name}", ok,
                               "flag count of the subdivision follows from the f-vector of K"))
    return items


def suite_genfun(cfg: SuiteConfig) -> list[Item]:
    items = []
    for L in (path(1), path(2), star_template(2), star_template(3), corpus_2d()[1]):
        fam = TchFamily(L, cfg.guard)
        items.append(_item("f-generating-function", L.name, fam.verify_fgen(8),
                           "closed form of sum f_n t^n matches to order 8"))
        items.append(_item("ihat-generating-function", L.name, fam.verify_ifgen(8),
                           "closed form of sum I_n t^n matches to order 8"))
        items.append(_item("t-generating-function", L.name, fam.verify_tgen(8),
                           "closed form of sum T_n t^n matches to order 8"))
        closed = fam.fgen_series(8)
        items.append(_item("f-series-division", L.name,
                           all(closed[n] == fam.fn_xy(n) for n in range(9)),
                           "dividing out the closed form reproduces f_0..f_8"))
    return items


def _t_properties(T: UniPoly, n: int) -> dict:
    x_neg = T.compose(UniPoly((0, -1))) * (-1) ** n
    distinct_all = sturm_distinct_roots(T)
    return {
        "degree": T.degree == n,
        "value_at_1": T(1) == 1,
        "parity": x_neg == T,
        "roots_inside": distinct_all == (sturm_distinct_roots(T, -1, 1) if n else 0),
    }


def suite_tch_props(cfg: SuiteConfig) -> list[Item]:
    items = []
    fam = TchFamily(path(1), cfg.guard)
    bad_t = [n for n in range(cfg.max_n + 1) if fam.T_L_rec(n) != classical_T(n) or fam.T_L_direct(n) != classical_T(n)]
    bad_u = [n for n in range(cfg.max_n + 1) if fam.U_L_rec(2, n) != classical_U(n) or fam.U_L_direct(2, n) != classical_U(n)]
    items.append(_item("classical-first-kind", "path(1)", not bad_t,
                       "one midpoint per edge gives the classical first-kind polynomials", {"n": bad_t}))
    items.append(_item("classical-second-kind", "path(1)", not bad_u,
                       "one midpoint per edge gives the classical second-kind polynomials", {"n": bad_u}))
    for name, fam in _families(cfg.guard).items():
        bad = {}
        for n in range(min(cfg.max_n, 10) + 1):
            T = fam.T_L_rec(n)
            props = _t_properties(T, n)
            props["direct_route"] = T == fam.T_L_direct(n)
            failed = [key for key, ok in props.items() if not ok]
            if failed:
                bad[n] = failed
        items.append(_item("first-kind-properties", name, not bad,
                           "deg T_n = n, T_n(1) = 1, parity, real roots inside (-1,1), routes agree", bad))
        low = all(fam.T_L_rec(n) == UniPoly.monomial(n) for n in range(fam.k + 1))
        items.append(_item("low-degree", name, low, "T_n = x^n for n <= k"))
        if fam.k >= 2:
            items.append(_item("non-orthogonality", name, fam.T_L_rec(2) == UniPoly.x() * fam.T_L_rec(1),
                               "T_2 = x T_1 when k >= 2"))
        items.append(_item("characteristic-polynomial", name, fam.characteristic_identity(),
                           "recurrence characteristic polynomial is the rescaled magic polynomial"))
        if fam.k == 2:
            m, e = census_2d(fam.template)
            x = UniPoly.x()
            want = [x * 3, x * x * (e - 3) - e, x ** 3 * (2 * m + 1 - e) + x * (e - 2 * m)]
            items.append(_item("recurrence-2d", name, fam.recurrence_coefficients() == want,
                               "2-dimensional recurrence coefficients depend only on (m, e)"))
        if fam.k == 1:
            s = len(fam.template.interior_vertices)
            x = UniPoly.x()
            want = [x * 2, (x * x - 1) * (s - 1) - 1]
            items.append(_item("recurrence-1d", name, fam.recurrence_coefficients() == want,
                               "1-dimensional recurrence coefficients"))
    return items


def suite_u_props(cfg: SuiteConfig) -> list[Item]:
    items = []
    for name, fam in _families(cfg.guard).items():
        for j in range(2, fam.k + 2):
            bad = {}
            for n in range(min(cfg.max_n, 10) + 1):
                U = fam.U_L_rec(j, n)
                ends = int(U(1) == 0) + int(U(-1) == 0)
                props = {
                    "degree": U.degree == n,
                    "parity": U.compose(UniPoly((0, -1))) * (-1) ** n == U,
                    "roots_in_closed_interval": sturm_distinct_roots(U) == (
                        sturm_distinct_roots(U, -1, 1) + ends if n else 0),
                    "direct_route": U == fam.U_L_direct(j, n),
                }
                failed = [key for key, ok in props.items() if not ok]
                if failed:
                    bad[n] = failed
            items.append(_item("higher-kind-properties", f"{name}/j={j}", not bad,
                               "deg U_n = n, parity, real roots in [-1,1], recurrence matches direct sum", bad))
            zero = all(fam.U_map(j, UniPoly.monomial(n)).is_zero() for n in range(j - 1))
            items.append(_item("normalization", f"{name}/j={j}", zero, "U^(j)(x^n) = 0 for n <= j-2"))
    return items


def suite_real_roots_1d(cfg: SuiteConfig) -> list[Item]:
    items = []
    for s in range(1, 6):
        fam = TchFamily(path(s), cfg.guard)
        bad_t = [n for n in range(1, cfg.max_n + 1) if sturm_distinct_roots(fam.T_L_rec(n), -1, 1) != n]
        bad_u = [n for n in range(1, cfg.max_n + 1) if sturm_distinct_roots(fam.U_L_rec(2, n), -1, 1) != n]
        items.append(_item("first-kind-real-rooted", f"path({s})", not bad_t,
                           "T_n has n distinct roots in (-1,1)", {"n": bad_t}))
        items.append(_item("second-kind-real-rooted", f"path({s})", not bad_u,
                           "U_n has n distinct roots in (-1,1)", {"n": bad_u}))
        if s <= 4:
            bad = [n for n in range(11) if T_closed_form_k1(s, n) != fam.T_L_rec(n)
                   or U_closed_form_k1(s, n) != fam.U_L_rec(2, n)]
            items.append(_item("closed-forms", f"path({s})", not bad,
                               "(x +/- sqrt(s(x^2-1)))^n expansions match the recurrences", {"n": bad}))
    return items


def suite_real_roots_2d(cfg: SuiteConfig) -> list[Item]:
    items = []
    for L in corpus_2d():
        fam = TchFamily(L, cfg.guard)
        bad = [n for n in range(1, cfg.max_n + 1) if not all_roots_real(fam.T_L_rec(n))]
        m, e = census_2d(L)
        items.append(_item("all-roots-real", f"{L.name}/(m,e)=({m},{e})", not bad,
                           "every T_n of a 2-dimensional template has only real roots", {"n": bad}))
    return items


COUNTEREXAMPLE = UniPoly([6, 0, -9, 0, -60, 0, 64])


def suite_counterexample_k3(cfg: SuiteConfig) -> list[Item]:
    fam = TchFamily(star_template(3), cfg.guard)
    T6 = fam.T_L_direct(6)
    return [
        _item("value", "star(3)/n=6", T6 == COUNTEREXAMPLE and fam.T_L_rec(6) == T6,
              "T_6 = 64x^6 - 60x^4 - 9x^2 + 6", {"got": str(T6)}),
        _item("four-real-roots", "star(3)/n=6",
              sturm_distinct_roots(T6) == 4 and sturm_distinct_roots(T6, -1, 1) == 4,
              "exactly 4 distinct real roots, all in (-1,1)"),
        _item("not-real-rooted", "star(3)/n=6", not all_roots_real(T6), "not every root is real"),
    ]


def suite_cross_polytope(cfg: SuiteConfig) -> list[Item]:
    items = []
    for name, fam in _families(cfg.guard).items():
        top = 6 if fam.k == 1 else (5 if fam.k == 2 else 4)
        top = min(top, cfg.max_d, cfg.guard)
        bad = [n for n in range(top + 1)
               if not fam.T_L_from_cross_polytope(n) == fam.T_L_rec(n) == fam.T_L_from_h_vector(n)]
        items.append(_item("first-kind-from-cross-polytope", name, not bad,
                           "F of the subdivided cross-polytope boundary is T_n, also via its h-vector",
                           {"n": bad}))
        bad = [(j, n) for j in range(2, fam.k + 2) for n in range(0, 5 - j + 2)
               if fam.U_L_from_cross_polytope(j, n) != fam.U_L_rec(j, n)]
        items.append(_item("higher-kind-from-cross-polytope", name, not bad,
                           "link sums over the subdivided cross-polytope give U^(j)_n", {"jn": bad}))
        bad = [d for d in range(1, min(5, cfg.max_d) + 1)
               if betti_numbers(fam.cross_polytope(d).complex) != sphere_betti(d - 1)]
        items.append(_item("sphere-homology", name, not bad,
                           "subdivided cross-polytope boundaries have sphere homology", {"d": bad}))
    for L in all_templates():
        items.append(_item("template-valid", L.name, not validate_template(L),
                           "built templates pass the validator", validate_template(L)))
    bad_template = Template(2, SimplicialComplex.from_facets([[0, 3, 2], [3, 1, 2]]), "vertex-on-edge")
    items.append(_item("template-rejected", bad_template.name, bool(validate_template(bad_template)),
                       "a new vertex on a boundary edge is rejected"))
    return items


def _cross_L(d: int, L: Template, seed: int | None = None) -> SimplicialComplex:
    K = cross_polytope_boundary(d)
    plan = None if seed is None else random_plan(K, L, seed)
    return tchebyshev_triangulation(K, L, plan).complex


def suite_g2_nonneg(cfg: SuiteConfig) -> list[Item]:
    items = []
    big = 6  # global homology of the largest complexes is skipped; they are spheres by construction
    for L in corpus_2d():
        for d in range(2, cfg.max_d + 1):
            K = _cross_L(d, L)
            member = gv.hs_membership(K, 2, d, global_homology=d < big)
            g = gv.g_vector_of(K, 2)
            items.append(_item("g2-nonnegative", f"{L.name}/d={d}", member["pass"] and g.nonnegative(),
                               "g^(2) of a subdivided cross-polytope boundary is nonnegative",
                               {"membership": member, "g": [str(c) for c in g.entries]}))
    for j in range(1, 4):
        for d in range(1, cfg.max_d + 1):
            K = _cross_L(d, star_template(j))
            for i in range(j, 4):
                member = gv.hs_membership(K, i, d, global_homology=d < big)
                g = gv.g_vector_of(K, i)
                items.append(_item("starred-nonnegative", f"star({j})/d={d}/i={i}",
                                   member["pass"] and g.nonnegative(),
                                   "g^(i) >= 0 after starring every j-face, j <= i",
                                   {"membership": member, "g": [str(c) for c in g.entries]}))
    for s in (1, 2, 3):
        for d in range(1, min(cfg.max_d, 5) + 1):
            g = gv.g_vector_of(_cross_L(d, path(s)), 1)
            items.append(_item("gamma-nonnegative", f"path({s})/d={d}", g.nonnegative(),
                               "edge subdivisions keep the gamma-vector nonnegative",
                               [str(c) for c in g.entries]))
    for i, (A, B) in enumerate([(cross_polytope_boundary(3), cross_polytope_boundary(2)),
                                (cross_polytope_boundary(2), cross_polytope_boundary(2)),
                                (simplex_boundary(3), cross_polytope_boundary(2))]):
        for level in (1, 2):
            try:
                rep = gv.verify_lemma_missing(A, B, level)
                items.append(_item("lemma-missing", f"pair{i}/i={level}", rep.passed,
                                   "g^(i) >= 0 lifts to g^(i+1) and survives joins", rep.witness))
            except gv.MembershipError:
                continue
    return items


def suite_delta_k(cfg: SuiteConfig) -> list[Item]:
    items = []
    for L in corpus_2d():
        for d in range(3, min(cfg.max_d, 5) + 1):
            for label, plan in (("default", None), ("random", random_plan(cross_polytope_boundary(d), L, cfg.seed))):
                rep = gv.verify_delta_k_recursion(d, L, plan, guard=cfg.max_d)
                items.append(_item("chain-identities", f"{L.name}/d={d}/{label}", rep.passed,
                                   "f- and h-increments of every step follow the interior face count; g^(2) >= 0",
                                   rep.witness))
    return items


def _corpus_spheres() -> dict[str, SimplicialComplex]:
    out = {f"cross({d})": cross_polytope_boundary(d) for d in range(1, 5)}
    out.update({f"simplex-boundary({n})": simplex_boundary(n) for n in range(3, 6)})
    out["cross(3)/path(1)"] = _cross_L(3, path(1))
    out["cross(3)/star(2)"] = _cross_L(3, star_template(2))
    out["cross(4)/star(2)"] = _cross_L(4, star_template(2))
    return out


def suite_fstable(cfg: SuiteConfig) -> list[Item]:
    items = []
    rng = random.Random(cfg.seed)
    bad = []
    for r in range(100):
        h, d = gv.random_symmetric_h(rng, 8)
        res = gv.fstable_transforms(h, d)
        if not (res["agree"] and res["transform_identity"] and res["g2_substitution_identity"]):
            bad.append({"h": [str(c) for c in h.coeffs], "result": res})
    items.append(_item("three-conditions-agree", "random-100", not bad,
                       "stable F, real-rooted h and g^(2) rooted in [-1,0) are equivalent", bad))
    spheres = _corpus_spheres()
    for L in corpus_2d():
        for d in range(2, 6):
            spheres[f"cross({d})/{L.name}"] = _cross_L(d, L)
    for name, K in spheres.items():
        res = gv.fstable_transforms(K)
        ok = res["agree"] and res["transform_identity"] and res["g2_substitution_identity"]
        items.append(_item("three-conditions-agree", name, ok,
                           "stable F, real-rooted h and g^(2) rooted in [-1,0) are equivalent", res))
    return items


def suite_stellar_identity(cfg: SuiteConfig) -> list[Item]:
    items = []
    for name, K in _corpus_spheres().items():
        bad_h, bad_g = [], []
        d = K.dim + 1
        faces = [f for f in K.faces if f]
        if len(faces) > 200:
            rng = random.Random(cfg.seed)
            faces = rng.sample(sorted(faces, key=sorted), 200)
        for F in sorted(faces, key=lambda f: (len(f), sorted(f))):
            for u in (sorted(F) if len(F) >= 2 else [None]):
                if not gv.stellar_h_identity(K, F, u):
                    bad_h.append([sorted(F), u])
            if len(F) >= 2:
                for i in range(len(F) - 1, d + 1):
                    if i >= 1 and not gv.stellar_g_identity(K, F, i):
                        bad_g.append([sorted(F), i])
        items.append(_item("stellar-h", name, not bad_h,
                           "h(K(F)) = h(K) + t h(link of u v_F)", bad_h))
        items.append(_item("stellar-g", name, not bad_g,
                           "the same increment holds for g^(i) when dim F <= i", bad_g))
        items.append(_item("dehn-sommerville", name, gv.dehn_sommerville(K), "h is symmetric"))
        pairs = [(F, T) for F in faces[:15] for T in faces[:15] if not T <= F and len(T) >= 2]
        bad = [[sorted(F), sorted(T)] for F, T in pairs if not gv.link_stellar_commutation(K, F, T)]
        items.append(_item("link-stellar-commute", name, not bad,
                           "link and stellar subdivision commute", bad))
    return items


SUITES: dict[str, Callable[[SuiteConfig], list[Item]]] = {
    "order-independence": suite_order_independence,
    "routes": suite_routes,
    "genfun": suite_genfun,
    "tch-props": suite_tch_props,
    "real-roots-1d": suite_real_roots_1d,
    "real-roots-2d": suite_real_roots_2d,
    "counterexample-k3": suite_counterexample_k3,
    "u-props": suite_u_props,
    "cross-polytope": suite_cross_polytope,
    "g2-nonneg": suite_g2_nonneg,
    "delta-k": suite_delta_k,
    "fstable": suite_fstable,
    "stellar-identity": suite_stellar_identity,
}


def run_suite(cfg: SuiteConfig) -> dict:
    if cfg.suite not in SUITES:
        raise KeyError(f"unknown suite {cfg.suite!r}; choose from {sorted(SUITES)}")
    items = sorted(SUITES[cfg.suite](cfg), key=lambda it: (it.check, it.instance))
    return {
        "suite": cfg.suite,
        "config": asdict(cfg),
        "pass": all(it.passed for it in items),
        "items": [it.to_json() for it in items],
    }
