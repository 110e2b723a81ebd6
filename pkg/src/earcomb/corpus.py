"""Named test complexes and matroids, plus seeded random shellable complexes."""

from __future__ import annotations

import random
from itertools import combinations, product

from .complex import SimplicialComplex, is_shelling
from .geomlat import K4_EDGES, Matroid, graphic_matroid, uniform_matroid


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the simplex on vertices ``1..n`` (dimension ``n - 2``)."""
    return SimplicialComplex(combinations(range(1, n + 1), n - 1))


def octahedron_boundary() -> SimplicialComplex:
    return SimplicialComplex(product((1, 2), (3, 4), (5, 6)))


def two_triangles() -> SimplicialComplex:
    return SimplicialComplex([(1, 2, 3), (1, 2, 4)])


def glued_simplices(dim: int) -> SimplicialComplex:
    """Two ``dim``-simplices sharing a facet."""
    base = list(range(1, dim + 1))
    return SimplicialComplex([base + [dim + 1], base + [dim + 2]])


def hexagon() -> SimplicialComplex:
    return SimplicialComplex([(i, i % 6 + 1) for i in range(1, 7)])


def hexagon_order() -> list:
    return [frozenset((i, i % 6 + 1)) for i in range(1, 7)]


def random_shellable(rng: random.Random, dim: int, max_facets: int = 10):
    """Grow a complex by shelling moves; returns ``(complex, shelling order)``.

    Each move replaces one vertex of an existing facet by a fresh or an
    existing vertex and keeps the new facet only if the order stays a shelling.
    """
    order = [frozenset(range(dim + 1))]
    target = rng.randint(3, max_facets)
    attempts = 0
    while len(order) < target and attempts < 500:
        attempts += 1
        F = rng.choice(order)
        v = rng.choice(sorted(F))
        verts = sorted(set().union(*order))
        pool = [w for w in verts if w not in F]
        w = max(verts) + 1 if not pool or rng.random() < 0.5 else rng.choice(pool)
        G = F - {v} | {w}
        if G in order:
            continue
        trial = order + [G]
        if is_shelling(SimplicialComplex(trial), trial):
            order = trial
    return SimplicialComplex(order), order


def random_corpus(count: int = 24, seed: int = 20240607, max_facets: int = 10) -> list:
    """``count`` random shellable 2- and 3-complexes with their shelling orders."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        out.append(random_shellable(rng, 2 + k % 2, max_facets))
    return out


def named_matroids() -> dict:
    return {
        "U23": uniform_matroid(2, 3),
        "U34": uniform_matroid(3, 4),
        "U35": uniform_matroid(3, 5),
        "K4": graphic_matroid(K4_EDGES),
    }


def free_matroid(n: int) -> Matroid:
    return Matroid(n, [range(1, n + 1)])
