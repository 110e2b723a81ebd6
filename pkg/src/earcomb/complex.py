"""Finite simplicial complexes over integer vertices.

A complex is stored by its facets. Two degenerate cases are kept apart:
the *empty* complex has no faces at all, the *void* complex has only the
empty face. Face sets always include the empty face when nonempty.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import BadDimension, BadOrder, ImproperColoring, NotAShelling, NotPure

Face = frozenset


def _key(face) -> tuple:
    return (len(face), tuple(sorted(face)))


def sort_faces(faces: Iterable) -> list:
    return sorted((frozenset(f) for f in faces), key=_key)


def all_subfaces(face) -> list:
    items = sorted(face)
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]


class SimplicialComplex:
    """A complex given by generating faces; non-maximal generators are discarded."""

    def __init__(self, facets: Iterable[Iterable[int]] = (), vertices: Iterable[int] | None = None):
        gens = {frozenset(f) for f in facets}
        if vertices is not None:
            covered = set().union(*gens) if gens else set()
            gens |= {frozenset({v}) for v in set(vertices) - covered}
        by_size = sorted(gens, key=len, reverse=True)
        maximal = []
        for f in by_size:
            if not any(f < g for g in maximal):
                maximal.append(f)
        self.facets: tuple = tuple(sort_faces(maximal))
        self.vertices: frozenset = frozenset().union(*self.facets) if self.facets else frozenset()

    def __repr__(self):
        return f"SimplicialComplex({[sorted(f) for f in self.facets]})"

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __len__(self):
        return len(self.facets)

    @cached_property
    def faces(self) -> frozenset:
        out = set()
        for f in self.facets:
            out.update(all_subfaces(f))
        return frozenset(out)

    @property
    def is_empty(self) -> bool:
        return not self.facets

    @property
    def is_void(self) -> bool:
        return self.facets == (frozenset(),)

    @property
    def dim(self) -> int:
        if not self.facets:
            return -2
        return max(len(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def require_pure(self):
        if not self.is_pure:
            raise NotPure(f"complex with facet sizes {sorted({len(f) for f in self.facets})} is not pure")

    def faces_of_dim(self, k: int) -> list:
        return sort_faces(f for f in self.faces if len(f) == k + 1)

    def contains_face(self, face) -> bool:
        return frozenset(face) in self.faces

    def link(self, face) -> "SimplicialComplex":
        face = frozenset(face)
        return SimplicialComplex(f - face for f in self.facets if face <= f)

    def deletion(self, v: int) -> "SimplicialComplex":
        """Faces avoiding ``v``."""
        return SimplicialComplex(self.faces_avoiding(v))

    def faces_avoiding(self, v):
        return [f for f in self.faces if v not in f]

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(list(self.facets) + list(other.facets))


def f_vector(K: SimplicialComplex) -> tuple:
    """``(f_0, ..., f_d)`` where ``f_i`` counts faces with ``i`` vertices."""
    if K.is_empty:
        return ()
    K.require_pure()
    d = K.dim + 1
    counts = [0] * (d + 1)
    for f in K.faces:
        counts[len(f)] += 1
    return tuple(counts)


def h_from_f(f: Sequence[int]) -> tuple:
    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1)) for k in range(d + 1)
    )


def f_from_h(h: Sequence[int]) -> tuple:
    d = len(h) - 1
    return tuple(sum(comb(d - i, k - i) * h[i] for i in range(k + 1)) for k in range(d + 1))


def h_vector(K: SimplicialComplex) -> tuple:
    return h_from_f(f_vector(K))


@dataclass(frozen=True)
class ShellingCertificate:
    order: tuple
    restrictions: tuple

    def partition(self) -> list:
        """The intervals ``[r(F_i), F_i]`` as lists of faces."""
        return [
            [r | g for g in all_subfaces(F - r)] for F, r in zip(self.order, self.restrictions)
        ]


def verify_shelling(K: SimplicialComplex, order: Sequence[Iterable[int]]) -> ShellingCertificate:
    """Check that ``order`` is a shelling of ``K`` and return the restriction faces.

    Uses the pairwise form: for ``j < k`` some earlier ``F_j'`` meets ``F_k``
    in a codimension-one face of ``F_j'`` containing ``F_j & F_k``.
    """
    K.require_pure()
    order = tuple(frozenset(f) for f in order)
    if sorted(order, key=_key) != list(K.facets) or len(set(order)) != len(order):
        raise BadOrder("order is not a permutation of the facets")
    restrictions = []
    for k, Fk in enumerate(order):
        ridges = {Fk & Fj for Fj in order[:k] if len(Fk & Fj) == len(Fj) - 1}
        for j, Fj in enumerate(order[:k]):
            common = Fj & Fk
            if not any(common <= R for R in ridges):
                raise NotAShelling(k + 1, j + 1)
        restrictions.append(frozenset(v for v in Fk if Fk - {v} in ridges))
    return ShellingCertificate(order, tuple(restrictions))


def is_shelling(K, order) -> bool:
    """False for non-shellings and for orders that are not a permutation of the facets."""
    try:
        verify_shelling(K, order)
    except (NotAShelling, BadOrder):
        return False
    return True


def find_shelling(K: SimplicialComplex, candidates: Iterable[Sequence] = (), budget: int = 200_000):
    """Return a shelling order of ``K`` or ``None``.

    Candidate orders are tried first; then a depth-first search that only
    extends by facets meeting the current union in a pure codimension-one
    complex. The search gives up after ``budget`` extension attempts.
    """
    K.require_pure()
    for order in candidates:
        if is_shelling(K, order):
            return tuple(frozenset(f) for f in order)
    facets = list(K.facets)
    if not facets:
        return ()
    n = len(facets)
    steps = [0]

    def attachable(F, chosen):
        ridges = {F & G for G in chosen if len(F & G) == len(F) - 1}
        return all(any((F & G) <= R for R in ridges) for G in chosen)

    def dfs(chosen, remaining):
        if not remaining:
            return list(chosen)
        for F in list(remaining):
            steps[0] += 1
            if steps[0] > budget:
                return None
            if attachable(F, chosen):
                chosen.append(F)
                remaining.remove(F)
                res = dfs(chosen, remaining)
                if res is not None:
                    return res
                chosen.pop()
                remaining.insert(0, F)
        return None

    for start in range(n):
        res = dfs([facets[start]], facets[:start] + facets[start + 1:])
        if res is not None:
            return tuple(res)
        if steps[0] > budget:
            break
    return None


def skeleton(K: SimplicialComplex, r: int) -> SimplicialComplex:
    if not 0 <= r <= K.dim:
        raise BadDimension(f"skeleton dimension {r} outside [0, {K.dim}]")
    return SimplicialComplex(f for f in K.faces if len(f) <= r + 1)


def ridge_degrees(K: SimplicialComplex) -> dict:
    """Map each codimension-one face to the number of facets containing it."""
    K.require_pure()
    deg: dict = {}
    for F in K.facets:
        for v in F:
            R = F - {v}
            deg[R] = deg.get(R, 0) + 1
    return deg


def boundary_subcomplex(K: SimplicialComplex) -> SimplicialComplex:
    """Closure of the ridges lying in exactly one facet."""
    return SimplicialComplex(R for R, n in ridge_degrees(K).items() if n == 1)


def face_ids(K: SimplicialComplex) -> dict:
    """Stable integer id for every nonempty face (sorted by size, then vertices)."""
    return {f: i for i, f in enumerate(sort_faces(f for f in K.faces if f))}


def barycentric_subdivision(K: SimplicialComplex):
    """Order complex of the face poset of ``K``.

    Returns ``(sd, coloring, face_of)``: vertex ``i`` of ``sd`` stands for the
    face ``face_of[i]`` and is colored by that face's cardinality.
    """
    ids = face_ids(K)
    face_of = {i: f for f, i in ids.items()}
    chains = []

    def extend(chain, top):
        # grow downward: every maximal flag in F is F > F - v > ...
        if len(top) == 1:
            chains.append(chain)
            return
        for v in sorted(top):
            sub = top - {v}
            extend(chain + [ids[sub]], sub)

    for F in K.facets:
        if F:
            extend([ids[F]], F)
    coloring = {i: len(f) for i, f in face_of.items()}
    return SimplicialComplex(chains), coloring, face_of


def check_coloring(K: SimplicialComplex, coloring: Mapping[int, int]):
    for F in K.facets:
        colors = [coloring[v] for v in F]
        if len(set(colors)) != len(colors):
            raise ImproperColoring(f"face {sorted(F)} repeats a color")


def color_selected(K: SimplicialComplex, coloring: Mapping[int, int], S: Iterable[int]) -> SimplicialComplex:
    """Faces all of whose vertices have colors in ``S``.

    With ``S`` empty this is the void complex (only the empty face).
    """
    check_coloring(K, coloring)
    S = set(S)
    if K.is_empty:
        return K
    return SimplicialComplex(frozenset(v for v in F if coloring[v] in S) for F in K.facets)


def flag_f_of_colored(K: SimplicialComplex, coloring: Mapping[int, int], faces=None) -> dict:
    """Count faces by color set; ``faces`` restricts the count to a subset of faces."""
    out: dict = {}
    for f in K.faces if faces is None else faces:
        key = frozenset(coloring[v] for v in f)
        out[key] = out.get(key, 0) + 1
    return out
