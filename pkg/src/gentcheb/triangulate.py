"""Sequential replacement of every k-face of a complex by a copy of a template."""

from __future__ import annotations

import random
from itertools import combinations
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .polynomials import BiPoly
from .simplicial_core import SimplicialComplex
from .templates import Template, require_valid


class PlanError(ValueError):
    pass


@dataclass(frozen=True)
class SubdivisionPlan:
    """Order of the k-faces to subdivide and, per face, boundary label -> vertex."""

    order: tuple[frozenset, ...]
    bijections: tuple[dict, ...]

    @classmethod
    def default(cls, K: SimplicialComplex, k: int) -> "SubdivisionPlan":
        faces = tuple(K.faces_of_dim(k))
        return cls(faces, tuple(default_bijection(f) for f in faces))

    @classmethod
    def from_order(cls, order: Sequence, bijections: Sequence | None = None) -> "SubdivisionPlan":
        faces = tuple(frozenset(f) for f in order)
        if bijections is None:
            bijections = [None] * len(faces)
        if len(bijections) != len(faces):
            raise PlanError("need one bijection (or null) per listed face")
        maps = tuple(
            default_bijection(f) if b is None else {int(j): int(v) for j, v in (b.items() if isinstance(b, dict) else b)}
            for f, b in zip(faces, bijections)
        )
        return cls(faces, maps)

    def to_json(self) -> dict:
        return {
            "order": [sorted(f) for f in self.order],
            "bijections": [sorted([j, v] for j, v in b.items()) for b in self.bijections],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubdivisionPlan":
        if not isinstance(data, dict) or "order" not in data:
            raise PlanError("plan JSON needs an 'order' list")
        return cls.from_order(data["order"], data.get("bijections"))

    def restricted_to(self, H: SimplicialComplex) -> "SubdivisionPlan":
        keep = [i for i, f in enumerate(self.order) if f in H.faces]
        return SubdivisionPlan(tuple(self.order[i] for i in keep), tuple(self.bijections[i] for i in keep))


def default_bijection(face: frozenset) -> dict[int, int]:
    """Boundary label j goes to the j-th smallest vertex of the face."""
    return {j: v for j, v in enumerate(sorted(face))}


def validate_plan(K: SimplicialComplex, k: int, plan: SubdivisionPlan) -> None:
    targets = set(K.faces_of_dim(k))
    listed = list(plan.order)
    if len(set(listed)) != len(listed):
        raise PlanError("plan lists a face more than once")
    if set(listed) != targets:
        extra = sorted(sorted(f) for f in set(listed) - targets)
        lost = sorted(sorted(f) for f in targets - set(listed))
        raise PlanError(f"plan must list every {k}-face exactly once (not {k}-faces: {extra}; unlisted: {lost})")
    for face, b in zip(plan.order, plan.bijections):
        if sorted(b) != list(range(k + 1)) or set(b.values()) != face:
            raise PlanError(f"bijection {b} is not a bijection from 0..{k} onto {sorted(face)}")


def random_plan(K: SimplicialComplex, L: Template, seed: int) -> SubdivisionPlan:
    """Shuffled face order with uniformly random bijections, reproducible from seed."""
    rng = random.Random(seed)
    faces = list(K.faces_of_dim(L.k))
    rng.shuffle(faces)
    maps = []
    for f in faces:
        verts = sorted(f)
        rng.shuffle(verts)
        maps.append(dict(enumerate(verts)))
    return SubdivisionPlan(tuple(faces), tuple(maps))


@dataclass(frozen=True, eq=False)
class ColoredComplex:
    """Subdivided complex plus the original-vertex colouring.

    ``provenance`` sends each new vertex to (subdivided face, template vertex).
    """

    complex: SimplicialComplex
    old_vertices: frozenset
    provenance: dict = field(default_factory=dict)

    @property
    def new_vertices(self) -> frozenset:
        return frozenset(self.complex.origin) - self.old_vertices

    def carrier(self, face: frozenset) -> frozenset:
        """Smallest face of the unsubdivided complex containing the face."""
        out = set()
        for v in face:
            if v in self.old_vertices:
                out.add(v)
            else:
                out |= self.provenance[v][0]
        return frozenset(out)

    def canonical_faces(self) -> set[frozenset]:
        """Faces with new vertices named by provenance, so plans with different fresh ids compare."""
        def name(v):
            if v in self.old_vertices:
                return ("old", v)
            sigma, w = self.provenance[v]
            return ("new", tuple(sorted(sigma)), w)
        return {frozenset(name(v) for v in f) for f in self.complex.faces}


class _FaceStore:
    """Mutable face set with a vertex -> faces index, used while subdividing."""

    def __init__(self, faces):
        self.faces = set(faces)
        self.by_vertex: dict[int, set] = {}
        self.size_counts: dict[int, int] = {}
        for f in self.faces:
            self.size_counts[len(f)] = self.size_counts.get(len(f), 0) + 1
            for v in f:
                self.by_vertex.setdefault(v, set()).add(f)

    def f_vector(self) -> list[int]:
        top = max((s for s, c in self.size_counts.items() if c), default=0)
        return [self.size_counts.get(s, 0) for s in range(top + 1)]

    def containing(self, sigma: frozenset) -> list[frozenset]:
        pivot = min(sigma, key=lambda v: len(self.by_vertex.get(v, ())))
        return [f for f in self.by_vertex.get(pivot, ()) if sigma <= f]

    def remove(self, f):
        self.faces.remove(f)
        self.size_counts[len(f)] -= 1
        for v in f:
            self.by_vertex[v].discard(f)

    def add(self, f):
        if f in self.faces:
            return
        self.faces.add(f)
        self.size_counts[len(f)] = self.size_counts.get(len(f), 0) + 1
        for v in f:
            self.by_vertex.setdefault(v, set()).add(f)


@dataclass(frozen=True)
class Step:
    index: int
    face: frozenset
    new_vertices: dict  # template interior vertex -> fresh id
    link: tuple  # faces of the link of ``face`` just before this step
    f_vector: list  # face counts after this step
    complex: SimplicialComplex | None


class _Subdivider:
    """Runs the chain one face at a time on a mutable face store."""

    def __init__(self, K: SimplicialComplex, L: Template, plan: SubdivisionPlan | None):
        if plan is None:
            plan = SubdivisionPlan.default(K, L.k)
        validate_plan(K, L.k, plan)
        self.K, self.L, self.plan = K, L, plan
        self.store = _FaceStore(K.faces)
        self.origin = dict(K.origin)
        self.next_id = K.next_vertex_id()
        self.base_step = K.last_step()
        self.provenance: dict = {}

    def steps(self, materialize: bool) -> Iterator[Step]:
        interior = self.L.interior_vertices
        template_faces = self.L.complex.faces
        store = self.store
        for i, (sigma, bij) in enumerate(zip(self.plan.order, self.plan.bijections), start=1):
            if sigma not in store.faces:
                raise PlanError(f"{sorted(sigma)} is not a face of the current complex")
            fresh = {w: self.next_id + t for t, w in enumerate(interior)}
            self.next_id += len(interior)
            phi = {**bij, **fresh}
            for w, v in fresh.items():
                self.origin[v] = self.base_step + i
                self.provenance[v] = (sigma, w)
            star_faces = store.containing(sigma)
            lk = tuple(f - sigma for f in star_faces)
            for f in star_faces:
                store.remove(f)
            copies = [frozenset(phi[v] for v in f) for f in template_faces]
            for tau in lk:
                for c in copies:
                    store.add(c | tau)
            yield Step(i, sigma, fresh, lk, store.f_vector(), self.current() if materialize else None)

    def current(self) -> SimplicialComplex:
        return SimplicialComplex(self.store.faces, self.origin)

    def colored(self) -> "ColoredComplex":
        return ColoredComplex(self.current(), frozenset(self.K.origin), dict(self.provenance))


def triangulation_steps(K: SimplicialComplex, L: Template, plan: SubdivisionPlan | None = None,
                        materialize: bool = True) -> Iterator[Step]:
    """Yield the steps producing K_1, ..., K_m.

    With ``materialize`` each step carries the intermediate complex itself;
    otherwise only its face counts and the link that was replaced.
    """
    require_valid(L)
    yield from _Subdivider(K, L, plan).steps(materialize)


def tchebyshev_triangulation(K: SimplicialComplex, L: Template, plan: SubdivisionPlan | None = None,
                             check_template: bool = True) -> ColoredComplex:
    if check_template:
        require_valid(L)
    run = _Subdivider(K, L, plan)
    for _ in run.steps(materialize=False):
        pass
    return run.colored()


def flag_f_polynomial(C: ColoredComplex) -> BiPoly:
    """Sum over faces of x^(old vertices) y^(new vertices)."""
    counts: dict = {}
    old = C.old_vertices
    for f in C.complex.faces:
        a = len(f & old)
        key = (a, len(f) - a)
        counts[key] = counts.get(key, 0) + 1
    return BiPoly(counts)


def restriction_property(K: SimplicialComplex, H: SimplicialComplex, L: Template,
                         plan: SubdivisionPlan | None = None) -> bool:
    """Subdividing a subcomplex H with the induced plan gives the part of K' carried by H."""
    if plan is None:
        plan = SubdivisionPlan.default(K, L.k)
    whole = tchebyshev_triangulation(K, L, plan)
    part = tchebyshev_triangulation(H, L, plan.restricted_to(H))
    restricted = ColoredComplex(
        SimplicialComplex(f for f in whole.complex.faces if whole.carrier(f) in H.faces),
        whole.old_vertices,
        whole.provenance,
    )
    return restricted.canonical_faces() == part.canonical_faces()


def random_complex(n_vertices: int, seed: int, density: float = 0.3) -> SimplicialComplex:
    """Random 2-dimensional complex on vertices 0..n-1; every vertex is used."""
    rng = random.Random(seed)
    triangles = [t for t in combinations(range(n_vertices), 3) if rng.random() < density]
    if not triangles:
        triangles = [(0, 1, 2)]
    used = {v for t in triangles for v in t}
    extra = []
    for v in range(n_vertices):
        if v not in used:
            w = rng.choice(sorted(used))
            extra.append((v, w))
            used.add(v)
    return SimplicialComplex.from_facets(triangles + extra)
