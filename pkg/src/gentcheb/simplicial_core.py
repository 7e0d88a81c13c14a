"""Finite abstract simplicial complexes with every face stored explicitly."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Mapping

from .polynomials import UniPoly

Face = frozenset

ORIGINAL = 0


def origin_label(step: int) -> str:
    return "original" if step == ORIGINAL else f"sub:{step}"


def parse_origin(label: str) -> int:
    if label == "original":
        return ORIGINAL
    if isinstance(label, str) and label.startswith("sub:"):
        step = int(label[4:])
        if step < 1:
            raise ValueError(f"subdivision step must be positive: {label!r}")
        return step
    raise ValueError(f"unknown vertex origin {label!r}")


def _closure(facets: Iterable[frozenset]) -> set[frozenset]:
    faces: set[frozenset] = {frozenset()}
    for facet in facets:
        if facet in faces:
            continue
        items = sorted(facet)
        for r in range(1, len(items) + 1):
            faces.update(frozenset(c) for c in combinations(items, r))
    return faces


class SimplicialComplex:
    """Downward-closed family of vertex sets, including the empty face.

    ``origin`` maps each vertex id to 0 (original) or to the positive index
    of the subdivision step that created it.
    """

    def __init__(self, faces: Iterable[frozenset], origin: Mapping[int, int] | None = None):
        self.faces = frozenset(faces) | {frozenset()}
        verts = {v for f in self.faces if len(f) == 1 for v in f}
        origin = dict(origin or {})
        self.origin = {v: origin.get(v, ORIGINAL) for v in sorted(verts)}

    # -- construction ------------------------------------------------------

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], origin: Mapping[int, int] | None = None
                    ) -> "SimplicialComplex":
        sets = []
        for facet in facets:
            items = list(facet)
            s = frozenset(items)
            if len(s) != len(items):
                raise ValueError(f"facet {items} repeats a vertex")
            sets.append(s)
        return cls(_closure(sets), origin)

    @classmethod
    def simplex(cls, vertices: Iterable[int]) -> "SimplicialComplex":
        return cls.from_facets([list(vertices)])

    def with_faces(self, faces: Iterable[frozenset], extra_origin: Mapping[int, int] | None = None
                   ) -> "SimplicialComplex":
        origin = dict(self.origin)
        if extra_origin:
            origin.update(extra_origin)
        return SimplicialComplex(faces, origin)

    # -- basic structure ---------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return list(self.origin)

    @cached_property
    def dim(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def __contains__(self, face) -> bool:
        return frozenset(face) in self.faces

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.faces == other.faces

    def __hash__(self):
        return hash(self.faces)

    def __len__(self):
        return len(self.faces)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector()})"

    @cached_property
    def faces_by_size(self) -> dict[int, list[frozenset]]:
        out: dict[int, list[frozenset]] = {}
        for f in self.faces:
            out.setdefault(len(f), []).append(f)
        return out

    @cached_property
    def vertex_index(self) -> dict[int, list[frozenset]]:
        out: dict[int, list[frozenset]] = {v: [] for v in self.origin}
        for f in self.faces:
            for v in f:
                out[v].append(f)
        return out

    def faces_containing(self, sigma: frozenset) -> list[frozenset]:
        if not sigma:
            return list(self.faces)
        index = self.vertex_index
        pivot = min(sigma, key=lambda v: len(index.get(v, ())))
        return [f for f in index.get(pivot, ()) if sigma <= f]

    def faces_of_dim(self, d: int) -> list[frozenset]:
        """Faces of dimension d in lexicographic order of their sorted vertices."""
        return sorted(self.faces_by_size.get(d + 1, []), key=sorted)

    @cached_property
    def facets(self) -> list[frozenset]:
        maximal = set(self.faces)
        for f in self.faces:
            for v in f:
                maximal.discard(f - {v})
        return sorted(maximal, key=lambda f: (len(f), sorted(f)))

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def old_vertices(self) -> set[int]:
        return {v for v, s in self.origin.items() if s == ORIGINAL}

    def next_vertex_id(self) -> int:
        return max(self.origin, default=-1) + 1

    def last_step(self) -> int:
        return max(self.origin.values(), default=ORIGINAL)

    def is_downward_closed(self) -> bool:
        return all(f - {v} in self.faces for f in self.faces for v in f)

    # -- counting ----------------------------------------------------------

    def f_vector(self) -> list[int]:
        """[f_{-1}, f_0, ..., f_dim]."""
        return [len(self.faces_by_size.get(i, ())) for i in range(self.dim + 2)]

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** (i + 1) * c for i, c in enumerate(self.f_vector()))

    def degree(self, v: int) -> int:
        return sum(1 for f in self.faces_by_size.get(2, ()) if v in f)

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "origin": origin_label(s)} for v, s in sorted(self.origin.items())],
            "facets": [sorted(f) for f in self.facets if f],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        if not isinstance(data, dict) or "facets" not in data:
            raise ValueError("complex JSON needs a 'facets' list")
        origin = {}
        for entry in data.get("vertices", []):
            origin[int(entry["id"])] = parse_origin(entry.get("origin", "original"))
        K = cls.from_facets(([int(v) for v in f] for f in data["facets"]), origin)
        # isolated vertices may be listed without a facet
        missing = [v for v in origin if v not in K.origin]
        if missing:
            K = SimplicialComplex(K.faces | {frozenset([v]) for v in missing}, origin)
        return K


def f_vector(K: SimplicialComplex) -> list[int]:
    return K.f_vector()


def f_polynomial(K: SimplicialComplex) -> UniPoly:
    return UniPoly(K.f_vector())


def h_from_f(f: list[int]) -> list[int]:
    n = len(f) - 1
    return [sum((-1) ** (i - j) * comb(n - j, i - j) * f[j] for j in range(i + 1)) for i in range(n + 1)]


def f_from_h(h: list[int]) -> list[int]:
    n = len(h) - 1
    return [sum(comb(n - j, i - j) * h[j] for j in range(i + 1)) for i in range(n + 1)]


def h_polynomial(K: SimplicialComplex) -> UniPoly:
    return UniPoly(h_from_f(K.f_vector()))


def F_polynomial(K: SimplicialComplex) -> UniPoly:
    """f-polynomial evaluated at (x - 1)/2."""
    return f_polynomial(K).compose(UniPoly((Fraction(-1, 2), Fraction(1, 2))))


# -- operations ------------------------------------------------------------

def link(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    sigma = frozenset(sigma)
    if sigma not in K.faces:
        raise ValueError(f"{sorted(sigma)} is not a face")
    return SimplicialComplex((f - sigma for f in K.faces_containing(sigma)), K.origin)


def star(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """Closed star: faces whose union with sigma is a face."""
    sigma = frozenset(sigma)
    if sigma not in K.faces:
        raise ValueError(f"{sorted(sigma)} is not a face")
    return SimplicialComplex(_closure(K.faces_containing(sigma)), K.origin)


def join(K: SimplicialComplex, M: SimplicialComplex) -> SimplicialComplex:
    overlap = set(K.origin) & set(M.origin)
    if overlap:
        raise ValueError(f"join needs disjoint vertex sets; shared: {sorted(overlap)}")
    origin = {**K.origin, **M.origin}
    return SimplicialComplex((a | b for a in K.faces for b in M.faces), origin)


def two_points(a: int, b: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets([[a], [b]])


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    v = K.next_vertex_id()
    return join(K, two_points(v, v + 1))


def stellar_subdivision(K: SimplicialComplex, F: Iterable[int], step: int | None = None
                        ) -> tuple[SimplicialComplex, int]:
    """Star K at face F. Returns the new complex and the new apex id."""
    F = frozenset(F)
    if not F:
        raise ValueError("cannot star the empty face")
    if F not in K.faces:
        raise ValueError(f"{sorted(F)} is not a face")
    apex = K.next_vertex_id()
    if step is None:
        step = K.last_step() + 1
    lk = [f - F for f in K.faces_containing(F)]
    boundary = [frozenset(c) for r in range(len(F)) for c in combinations(sorted(F), r)]
    kept = {f for f in K.faces if not F <= f}
    kept.update(a | b | {apex} for a in boundary for b in lk)
    return K.with_faces(kept, {apex: step}), apex


def skeleton(K: SimplicialComplex, j: int) -> SimplicialComplex:
    if j < -1:
        raise ValueError("skeleton dimension must be at least -1")
    return SimplicialComplex((f for f in K.faces if len(f) <= j + 1), K.origin)


def induced_subcomplex(K: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    vs = frozenset(vertices)
    return SimplicialComplex((f for f in K.faces if f <= vs), {v: K.origin[v] for v in vs if v in K.origin})


def relabel(K: SimplicialComplex, mapping: Mapping[int, int]) -> SimplicialComplex:
    faces = [frozenset(mapping[v] for v in f) for f in K.faces]
    return SimplicialComplex(faces, {mapping[v]: s for v, s in K.origin.items()})


def cross_polytope_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-dimensional cross-polytope.

    Vertices 2i and 2i+1 are antipodal, so the complex for d sits inside the
    one for d+1.
    """
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    facets = []
    for bits in range(2 ** d):
        facets.append([2 * i + ((bits >> i) & 1) for i in range(d)])
    if d == 0:
        return SimplicialComplex([])
    return SimplicialComplex.from_facets(facets)


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the simplex on vertices 0..n-1."""
    return SimplicialComplex.from_facets(list(c) for c in combinations(range(n), n - 1))


def missing_faces(K: SimplicialComplex) -> list[frozenset]:
    """Non-faces all of whose proper subsets are faces, up to size dim + 2."""
    neighbours: dict[int, set[int]] = {v: set() for v in K.vertices}
    for a, b in (tuple(e) for e in K.faces_by_size.get(2, ())):
        neighbours[a].add(b)
        neighbours[b].add(a)
    out = [
        frozenset((a, b)) for a in K.vertices for b in K.vertices
        if a < b and b not in neighbours[a]
    ]
    for size in range(3, K.dim + 3):
        found = set()
        for g in K.faces_by_size.get(size - 1, ()):
            top = max(g)
            common = set.intersection(*(neighbours[u] for u in g))
            for v in common:
                if v <= top:
                    continue
                cand = g | {v}
                if cand not in K.faces and all(cand - {w} in K.faces for w in g):
                    found.add(cand)
        out.extend(sorted(found, key=sorted))
    return out


def max_missing_dimension(K: SimplicialComplex) -> int | None:
    """Largest dimension of a missing face; None when there are none."""
    mf = missing_faces(K)
    return max(len(f) - 1 for f in mf) if mf else None


# -- homology --------------------------------------------------------------

_PRIME = 2_147_483_647


def _reduce_boundary(rows: dict[tuple, int], cols: list[tuple], skip: set[int],
                     modulus: int | None) -> tuple[int, set[int]]:
    """Rank of the boundary map on ``cols`` and the set of pivot rows.

    Faces are sorted vertex tuples.  Column reduction on the lowest nonzero
    row, over GF(modulus) or, when modulus is None, fraction-free over the
    integers (each step replaces col by p_low*col - c_low*p, a nonzero
    rescaling, so the rank over Q is kept).  Columns in ``skip`` were pivots
    one dimension up and reduce to zero.
    """
    pivots: dict[int, dict[int, int]] = {}
    for idx, face in enumerate(cols):
        if idx in skip:
            continue
        col = {}
        sign = 1
        for k in range(len(face)):
            col[rows[face[:k] + face[k + 1:]]] = sign
            sign = -sign
        while col:
            low = max(col)
            p = pivots.get(low)
            if p is None:
                if modulus is not None and col[low] != 1:
                    inv = pow(col[low], -1, modulus)
                    col = {r: c * inv % modulus for r, c in col.items()}
                pivots[low] = col
                break
            if modulus is not None:
                b = col[low]  # pivot columns are normalised to 1 at their low
                for r, c in p.items():
                    nv = (col.get(r, 0) - b * c) % modulus
                    if nv:
                        col[r] = nv
                    else:
                        del col[r]
                continue
            a, b = p[low], col[low]
            new = {r: a * c for r, c in col.items()}
            for r, c in p.items():
                nv = new.get(r, 0) - b * c
                if nv:
                    new[r] = nv
                else:
                    new.pop(r, None)
            g = 0
            for c in new.values():
                g = gcd(g, c)
                if g == 1:
                    break
            col = {r: c // g for r, c in new.items()} if g > 1 else new
    return len(pivots), set(pivots)


def _betti(K: SimplicialComplex, modulus: int | None) -> list[int]:
    # lexicographic order keeps fill-in low during elimination
    by_size: dict[int, list[tuple]] = {}
    for f in K.faces:
        by_size.setdefault(len(f), []).append(tuple(sorted(f)))
    for lst in by_size.values():
        lst.sort()
    top = K.dim + 1
    index = {size: {f: i for i, f in enumerate(by_size.get(size, ()))} for size in range(top + 1)}
    ranks = [0] * (top + 2)  # ranks[s] = rank of the boundary out of size-s faces
    cleared: set[int] = set()
    for size in range(top, 0, -1):
        ranks[size], cleared = _reduce_boundary(index[size - 1], by_size.get(size, []), cleared, modulus)
    return [len(by_size.get(s, ())) - ranks[s] - ranks[s + 1] for s in range(top + 1)]


def betti_numbers(K: SimplicialComplex) -> list[int]:
    """Reduced Betti numbers over Q, indexed by dimension -1..dim K.

    A fast pass over GF(p) comes first.  Rational Betti numbers never exceed
    the mod-p ones and both have the same alternating sum, so when the mod-p
    numbers vanish outside a single degree they are already the rational
    answer.  Otherwise the exact rational elimination runs.
    """
    fast = _betti(K, _PRIME)
    if sum(1 for b in fast if b) <= 1:
        return fast
    return _betti(K, None)


def sphere_betti(dim: int) -> list[int]:
    """Reduced Betti numbers of S^dim, padded to indices -1..dim."""
    return [1 if i == dim else 0 for i in range(-1, dim + 1)]


def has_sphere_homology(K: SimplicialComplex, dim: int) -> bool:
    if K.dim != dim:
        return False
    return betti_numbers(K) == sphere_betti(dim)


def is_acyclic(K: SimplicialComplex) -> bool:
    return not any(betti_numbers(K))
