"""Exact homology and the certificates built on it.

Ranks and torsion come from an integral Smith normal form of the
augmented boundary matrices. Unit pivots are eliminated sparsely first;
whatever is left is reduced densely.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Sequence

from .complex import SimplicialComplex, boundary_subcomplex, ridge_degrees, sort_faces, verify_shelling
from .errors import NotAShelling, TooLarge

DEFAULT_MAX_FACES = 10_000


def max_faces() -> int:
    return int(os.environ.get("EARCOMB_MAX_FACES", DEFAULT_MAX_FACES))


def _check_size(K: SimplicialComplex):
    n = len(K.faces)
    if n > max_faces():
        raise TooLarge(f"{n} faces exceeds EARCOMB_MAX_FACES={max_faces()}")


def _dense_snf_diagonal(rows: list[list[int]]) -> list[int]:
    """Invariant factors (positive, each dividing the next) of a dense integer matrix."""
    A = [r[:] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        clean = False
            if clean:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            # move the smallest remaining entry of row/col t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, pi, pj = min(cands)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


def smith_diagonal(columns: Sequence[dict]) -> list[int]:
    """Nonzero invariant factors of the matrix whose columns are ``{row: value}`` dicts."""
    cols = {c: dict(col) for c, col in enumerate(columns) if col}
    rows: dict = {}
    for c, col in cols.items():
        for r in col:
            rows.setdefault(r, set()).add(c)
    ones = 0
    while True:
        pivot = None
        for c in sorted(cols, key=lambda c: len(cols[c])):
            for r, v in cols[c].items():
                if v in (1, -1):
                    pivot = (r, c, v)
                    break
            if pivot:
                break
        if pivot is None:
            break
        r, c, v = pivot
        pcol = cols.pop(c)
        for r2 in pcol:
            rows[r2].discard(c)
        # column ops clear row r using column c; rows other than r unaffected after
        for c2 in list(rows.get(r, ())):
            col2 = cols[c2]
            factor = col2[r] * v
            for r2, val in pcol.items():
                new = col2.get(r2, 0) - factor * val
                if new:
                    if r2 not in col2:
                        rows.setdefault(r2, set()).add(c2)
                    col2[r2] = new
                elif r2 in col2:
                    del col2[r2]
                    rows[r2].discard(c2)
            if not col2:
                del cols[c2]
        rows.pop(r, None)
        ones += 1
    if not cols:
        return [1] * ones
    rlist = sorted({r for col in cols.values() for r in col})
    ridx = {r: i for i, r in enumerate(rlist)}
    dense = [[0] * len(cols) for _ in rlist]
    for j, c in enumerate(sorted(cols)):
        for r, v in cols[c].items():
            dense[ridx[r]][j] = v
    return [1] * ones + _dense_snf_diagonal(dense)


def boundary_columns(K: SimplicialComplex, k: int, index: dict) -> list[dict]:
    """Columns of the augmented boundary map from k-faces to (k-1)-faces."""
    cols = []
    for f in index[k]:
        verts = sorted(f)
        col = {}
        for i in range(len(verts)):
            sub = frozenset(verts[:i] + verts[i + 1:])
            col[index[k - 1][sub]] = (-1) ** i
        cols.append(col)
    return cols


def _face_index(K: SimplicialComplex) -> dict:
    index: dict = {}
    for f in sort_faces(K.faces):
        level = index.setdefault(len(f) - 1, {})
        level[f] = len(level)
    return index


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced homology by dimension ``0..dim``.

    ``betti[k]`` is the free rank of the k-th reduced homology group,
    ``torsion[k]`` its torsion coefficients. ``minus_one`` is the rank in
    degree -1, which is 1 only for the void complex.
    """

    betti: tuple
    torsion: tuple
    minus_one: int = 0

    @property
    def is_acyclic(self) -> bool:
        return self.minus_one == 0 and not any(self.betti) and not any(self.torsion)

    @property
    def reduced_euler(self) -> int:
        return -self.minus_one + sum((-1) ** k * b for k, b in enumerate(self.betti))

    def is_sphere_like(self) -> bool:
        if not self.betti:
            return False
        top = len(self.betti) - 1
        return (
            self.minus_one == 0
            and self.betti[top] == 1
            and not any(self.betti[:top])
            and not any(self.torsion)
        )


def reduced_homology(K: SimplicialComplex) -> HomologyProfile:
    """Reduced integral homology of ``K`` (ranks plus torsion), exact."""
    _check_size(K)
    if K.is_empty:
        return HomologyProfile((), ())
    if K.is_void:
        return HomologyProfile((), (), minus_one=1)
    index = _face_index(K)
    top = K.dim
    ranks = {}
    divisors = {}
    for k in range(0, top + 1):
        diag = smith_diagonal(boundary_columns(K, k, index))
        ranks[k] = len(diag)
        divisors[k] = tuple(sorted(x for x in diag if x > 1))
    ranks[top + 1] = 0
    betti = tuple(len(index[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1))
    torsion = tuple(divisors.get(k + 1, ()) for k in range(top + 1))
    return HomologyProfile(betti, torsion, minus_one=1 - ranks[0])


def rational_betti(K: SimplicialComplex, upto: int | None = None) -> list[int]:
    """Reduced rational Betti numbers in degrees ``0..upto`` (default ``dim``).

    Degree 0 uses connectivity; higher degrees use boundary ranks.
    """
    if K.is_empty or K.is_void:
        return []
    top = K.dim if upto is None else min(upto, K.dim)
    if top < 0:
        return []
    index = _face_index(K)
    need = range(1, top + 2)
    ranks = {k: len(smith_diagonal(boundary_columns(K, k, index))) if k in index else 0 for k in need}
    out = [_components(K) - 1]
    for k in range(1, top + 1):
        out.append(len(index[k]) - ranks[k] - ranks[k + 1])
    return out


def _components(K: SimplicialComplex) -> int:
    parent = {v: v for v in K.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for F in K.facets:
        vs = sorted(F)
        for v in vs[1:]:
            a, b = find(vs[0]), find(v)
            if a != b:
                parent[a] = b
    return len({find(v) for v in K.vertices})


class Certificate(str, enum.Enum):
    SPHERE = "Sphere"
    BALL = "Ball"
    UNKNOWN = "Unknown"


def certify_ball_or_sphere(K: SimplicialComplex, order) -> Certificate:
    """Sound ball/sphere recognition for shellable pseudomanifolds.

    A shellable complex whose ridges lie in at most two facets is a ball
    or a sphere; homology and the boundary decide which.
    """
    if K.is_empty or not K.is_pure:
        return Certificate.UNKNOWN
    try:
        verify_shelling(K, order)
    except (NotAShelling, ValueError):
        return Certificate.UNKNOWN
    degrees = ridge_degrees(K).values()
    if any(n > 2 for n in degrees):
        return Certificate.UNKNOWN
    try:
        H = reduced_homology(K)
    except TooLarge:
        return Certificate.UNKNOWN
    if all(n == 2 for n in degrees):
        return Certificate.SPHERE if H.is_sphere_like() else Certificate.UNKNOWN
    if H.is_acyclic and not boundary_subcomplex(K).is_empty:
        return Certificate.BALL
    return Certificate.UNKNOWN


def _link_ok(L: SimplicialComplex) -> bool:
    dim = L.dim
    if dim <= 0:
        # void link of a facet, or a nonempty set of points
        return not L.is_empty
    if not L.is_pure:
        return False
    return not any(rational_betti(L, dim - 1))


def is_cohen_macaulay(K: SimplicialComplex) -> bool:
    """Reisner's criterion over the rationals, every face including the empty one."""
    _check_size(K)
    if K.is_empty:
        return False
    if not K.is_pure:
        return False
    return all(_link_ok(K.link(F)) for F in sort_faces(K.faces))


def is_two_cm(K: SimplicialComplex) -> bool:
    """CM, and every vertex deletion is CM of the same dimension."""
    if not is_cohen_macaulay(K):
        return False
    for v in sorted(K.vertices):
        D = K.deletion(v)
        if D.dim != K.dim or not is_cohen_macaulay(D):
            return False
    return True
