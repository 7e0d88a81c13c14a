"""Templates: triangulations of the k-simplex with no new boundary vertices.

Boundary vertices are labelled 0..k; every other vertex is interior and has
a label of at least k+1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .polynomials import BiPoly
from .simplicial_core import (
    SimplicialComplex,
    betti_numbers,
    link,
    sphere_betti,
    stellar_subdivision,
)


class TemplateError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Template:
    k: int
    complex: SimplicialComplex
    name: str = field(default="")

    @property
    def boundary_vertices(self) -> list[int]:
        return list(range(self.k + 1))

    @property
    def interior_vertices(self) -> list[int]:
        return [v for v in self.complex.vertices if v > self.k]

    @cached_property
    def boundary_set(self) -> frozenset:
        return frozenset(range(self.k + 1))

    def is_boundary_face(self, face: frozenset) -> bool:
        return face <= self.boundary_set and face != self.boundary_set

    @cached_property
    def interior_faces(self) -> list[frozenset]:
        """Faces of L not in the boundary complex, in a stable order."""
        return sorted(
            (f for f in self.complex.faces if not self.is_boundary_face(f)),
            key=lambda f: (len(f), sorted(f)),
        )

    @cached_property
    def facets(self) -> list[frozenset]:
        return self.complex.facets

    def face_type(self, face: frozenset) -> tuple[int, int]:
        b = len(face & self.boundary_set)
        return b, len(face) - b

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "boundary": self.boundary_vertices,
            "facets": [sorted(f) for f in self.facets],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "Template":
        try:
            k = int(data["k"])
            facets = [[int(v) for v in f] for f in data["facets"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise TemplateError(f"malformed template JSON: {exc}") from None
        boundary = data.get("boundary", list(range(k + 1)))
        if sorted(boundary) != list(range(k + 1)):
            raise TemplateError(f"boundary vertices must be 0..{k}, got {boundary}")
        return cls(k, SimplicialComplex.from_facets(facets), name)


def validate_template(L: Template) -> list[str]:
    """All violated template conditions; an empty list means valid.

    The checks are necessary conditions for a triangulated simplex: boundary
    restriction, pseudomanifold structure, acyclicity of L, and the homology
    of every face link.
    """
    k, K = L.k, L.complex
    problems: list[str] = []
    if k < 1:
        return [f"dimension k={k} must be at least 1"]
    verts = set(K.vertices)
    missing = [v for v in L.boundary_vertices if v not in verts]
    if missing:
        problems.append(f"boundary vertices {missing} are absent")
    if not L.interior_vertices:
        problems.append("no interior vertex: the simplex is not subdivided")
    bad_labels = [v for v in verts if v < 0]
    if bad_labels:
        problems.append(f"negative vertex labels {bad_labels}")

    facet_sizes = {len(f) for f in K.facets}
    if facet_sizes != {k + 1}:
        problems.append(f"not pure of dimension {k}: facet sizes {sorted(facet_sizes)}")
        return problems

    ridge_count: Counter = Counter()
    for f in K.facets:
        for v in f:
            ridge_count[f - {v}] += 1
    simplex_ridges = {L.boundary_set - {v} for v in L.boundary_set}
    over = sorted(sorted(r) for r, c in ridge_count.items() if c > 2)
    if over:
        problems.append(f"ridges in more than two facets: {over}")
    free = {r for r, c in ridge_count.items() if c == 1}
    if free != simplex_ridges:
        extra = sorted(sorted(r) for r in free - simplex_ridges)
        lost = sorted(sorted(r) for r in simplex_ridges - free)
        problems.append(
            f"boundary faces differ from the boundary of the {k}-simplex "
            f"(unexpected free ridges {extra}, missing {lost})"
        )
    if L.boundary_set in K.faces:
        problems.append("the whole simplex is itself a face")

    if any(betti_numbers(K)):
        problems.append(f"L is not acyclic: reduced Betti numbers {betti_numbers(K)}")

    interior = set(L.interior_vertices)
    for sigma in K.faces:
        if not sigma:
            continue
        lk = link(K, sigma)
        b = betti_numbers(lk)
        if sigma & interior:
            want = sphere_betti(k - len(sigma))
            if b != want:
                problems.append(f"link of interior face {sorted(sigma)} is not a homology {k - len(sigma)}-sphere")
        elif any(b):
            problems.append(f"link of boundary face {sorted(sigma)} is not acyclic")
    return problems


def require_valid(L: Template) -> Template:
    problems = validate_template(L)
    if problems:
        raise TemplateError("invalid template: " + "; ".join(problems))
    return L


def census(L: Template) -> dict[tuple[int, int], int]:
    """Interior faces of L counted by (boundary vertices, interior vertices)."""
    return dict(sorted(Counter(L.face_type(f) for f in L.interior_faces).items()))


def magic_from_census(counts: dict[tuple[int, int], int], k: int) -> BiPoly:
    return BiPoly(dict(counts)) - BiPoly({(k + 1, 0): 1})


def magic_polynomial(L: Template) -> BiPoly:
    """Interior faces weighted u^(boundary count) v^(interior count), minus u^(k+1)."""
    r = BiPoly()
    for f in L.interior_faces:
        r = r + BiPoly({L.face_type(f): 1})
    return r - BiPoly({(L.k + 1, 0): 1})


def magic_2d(m: int, e: int) -> BiPoly:
    """Closed form of the magic polynomial of a 2-dimensional template."""
    return BiPoly({
        (0, 1): m, (1, 1): e, (0, 2): 3 * m - e, (2, 1): 3,
        (1, 2): e - 3, (0, 3): 2 * m + 1 - e, (3, 0): -1,
    })


def census_2d(L: Template) -> tuple[int, int]:
    """(number of interior vertices, number of edges joining boundary to interior)."""
    if L.k != 2:
        raise TemplateError(f"census_2d needs k=2, got k={L.k}")
    m = len(L.interior_vertices)
    e = census(L).get((1, 1), 0)
    f = L.complex.f_vector()
    if f[2] != 3 * (m + 1) or f[3] != 2 * m + 1:
        raise TemplateError(f"face counts {f} do not fit a triangle with {m} interior vertices")
    if e > min(2 * m + 1, 3 * m) or (e == 3 * m and (m, e) != (1, 3)):
        raise TemplateError(f"(m,e)=({m},{e}) violates e <= min(2m+1, 3m)")
    return m, e


# -- builders -----------------------------------------------------------------

def path(s: int) -> Template:
    """Edge 0-1 subdivided by s interior points 2..s+1, in order along the edge."""
    if s < 1:
        raise TemplateError("a path template needs at least one interior point")
    chain = [0] + list(range(2, s + 2)) + [1]
    return Template(1, SimplicialComplex.from_facets(zip(chain, chain[1:])), f"path({s})")


def star(k: int) -> Template:
    """The k-simplex coned from a single interior vertex k+1."""
    if k < 1:
        raise TemplateError("k must be at least 1")
    facets = [[v for v in range(k + 1) if v != i] + [k + 1] for i in range(k + 1)]
    return Template(k, SimplicialComplex.from_facets(facets), f"star({k})")


def iterated_stellar(k: int, steps: Sequence[Iterable[int]], name: str = "") -> Template:
    """Start from the solid k-simplex and star the given faces in turn.

    New vertices get ids k+1, k+2, ...; a step may not target a face of the
    boundary of the simplex.
    """
    if k < 1:
        raise TemplateError("k must be at least 1")
    K = SimplicialComplex.simplex(range(k + 1))
    boundary = frozenset(range(k + 1))
    for face in steps:
        face = frozenset(face)
        if len(face) < 2:
            raise TemplateError(f"stellar step {sorted(face)} must have dimension at least 1")
        if face <= boundary and face != boundary:
            raise TemplateError(f"stellar step {sorted(face)} targets a boundary face")
        if face not in K:
            raise TemplateError(f"stellar step {sorted(face)} is not a face")
        K, _ = stellar_subdivision(K, face)
    return Template(k, SimplicialComplex(K.faces), name or f"stellar({k},{[sorted(s) for s in steps]})")


def ring_3_6() -> Template:
    """Triangle with an interior triangle 3-4-5, each interior vertex seeing two corners."""
    facets = [[0, 1, 3], [1, 2, 4], [2, 0, 5], [1, 3, 4], [2, 4, 5], [0, 5, 3], [3, 4, 5]]
    return Template(2, SimplicialComplex.from_facets(facets), "ring(3,6)")


def build_template(kind: str, *args) -> Template:
    builders = {"path": path, "star": star, "iterated_stellar": iterated_stellar, "ring": ring_3_6}
    if kind not in builders:
        raise TemplateError(f"unknown template kind {kind!r}")
    return require_valid(builders[kind](*args))


def corpus_2d() -> list[Template]:
    """Two-dimensional templates covering (m,e) = (1,3), (2,5), (3,6), (3,7)."""
    return [
        star(2),
        iterated_stellar(2, [[0, 1, 2], [0, 1, 3]], "stellar(2,5)a"),
        iterated_stellar(2, [[0, 1, 2], [0, 3]], "stellar(2,5)b"),
        ring_3_6(),
        iterated_stellar(2, [[0, 1, 2], [0, 1, 3], [1, 2, 3]], "stellar(3,7)a"),
        iterated_stellar(2, [[0, 1, 2], [0, 1, 3], [0, 1, 4]], "stellar(3,7)b"),
    ]


def named_template(name: str) -> Template:
    """Look up templates such as 'path3', 'star2', 'm2e5', 'ring36'."""
    name = name.strip().lower()
    if name.startswith("path") and name[4:].isdigit():
        return path(int(name[4:]))
    if name.startswith("star") and name[4:].isdigit():
        return star(int(name[4:]))
    table = {
        "m2e5": corpus_2d()[1],
        "m2e5b": corpus_2d()[2],
        "ring36": ring_3_6(),
        "m3e6": ring_3_6(),
        "m3e7": corpus_2d()[4],
    }
    if name in table:
        return table[name]
    raise TemplateError(f"unknown template name {name!r}")

