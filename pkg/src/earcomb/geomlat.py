"""Matroids, lattices of flats, the minimal labeling and nbc-basis pieces."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotABasis, NotAMatroid, NotSimple
from .poset import RankedPoset, chain_label

MAX_GROUND = 12


class Matroid:
    """A matroid on ground set ``1..n`` given by its bases.

    The ground order is the atom order used by every labeling below.
    """

    def __init__(self, n: int, bases: Iterable[Iterable[int]]):
        if n > MAX_GROUND:
            raise NotAMatroid(f"ground sets above {MAX_GROUND} elements are not supported")
        self.n = n
        self.ground = tuple(range(1, n + 1))
        self.bases = tuple(sorted({frozenset(B) for B in bases}, key=lambda B: sorted(B)))
        if not self.bases:
            raise NotAMatroid("no bases given")
        sizes = {len(B) for B in self.bases}
        if len(sizes) != 1:
            raise NotAMatroid("bases of different sizes")
        self.r = sizes.pop()
        for B in self.bases:
            if not B <= set(self.ground):
                raise NotAMatroid(f"basis {sorted(B)} leaves the ground set")
        base_set = set(self.bases)
        for B1 in self.bases:
            for B2 in self.bases:
                for x in B1 - B2:
                    if not any((B1 - {x}) | {y} in base_set for y in B2 - B1):
                        raise NotAMatroid(f"exchange fails for {sorted(B1)}, {sorted(B2)} at {x}")

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.r}, {len(self.bases)} bases)"

    def rank_of(self, A: Iterable[int]) -> int:
        A = frozenset(A)
        return max(len(A & B) for B in self.bases)

    def is_independent(self, A) -> bool:
        A = frozenset(A)
        return any(A <= B for B in self.bases)

    def closure(self, A) -> frozenset:
        A = frozenset(A)
        r = self.rank_of(A)
        return frozenset(e for e in self.ground if e in A or self.rank_of(A | {e}) == r)

    @cached_property
    def circuits(self) -> tuple:
        """Minimal dependent sets, by brute force."""
        out = []
        for k in range(1, self.n + 1):
            for C in combinations(self.ground, k):
                C = frozenset(C)
                if self.is_independent(C) or any(D <= C for D in out):
                    continue
                out.append(C)
        return tuple(out)

    @property
    def is_simple(self) -> bool:
        return all(len(C) > 2 for C in self.circuits)

    @cached_property
    def broken_circuits(self) -> tuple:
        return tuple(C - {min(C)} for C in self.circuits)

    def nbc_bases(self) -> list:
        """Bases with no broken circuit, sorted by their increasing index words."""
        good = [B for B in self.bases if not any(bc <= B for bc in self.broken_circuits)]
        return sorted(good, key=lambda B: sorted(B))


def uniform_matroid(r: int, n: int) -> Matroid:
    return Matroid(n, combinations(range(1, n + 1), r))


def graphic_matroid(edges: Sequence[tuple[int, int]]) -> Matroid:
    """Matroid of a connected graph; element ``i`` is ``edges[i-1]``, bases are spanning trees."""
    verts = sorted({v for e in edges for v in e})
    r = len(verts) - 1
    bases = []
    for T in combinations(range(1, len(edges) + 1), r):
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for i in T:
            a, b = find(edges[i - 1][0]), find(edges[i - 1][1])
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            bases.append(T)
    return Matroid(len(edges), bases)


K4_EDGES = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


class FlatLattice:
    """Lattice of flats: ``poset`` has one id per flat, ``flats[id]`` is the flat."""

    def __init__(self, M: Matroid, poset: RankedPoset, flats: dict):
        self.M = M
        self.poset = poset
        self.flats = flats
        self.id_of = {F: i for i, F in flats.items()}
        self.atom = {e: self.id_of[M.closure({e})] for e in M.ground}

    def join(self, x: int, y: int) -> int:
        return self.id_of[self.M.closure(self.flats[x] | self.flats[y])]

    def meet(self, x: int, y: int) -> int:
        return self.id_of[self.flats[x] & self.flats[y]]

    def join_all(self, atoms: Iterable[int]) -> int:
        return self.id_of[self.M.closure(atoms)]


def lattice_of_flats(M: Matroid) -> FlatLattice:
    """All flats by inclusion, graded by rank; checks simplicity and geometricity."""
    if not M.is_simple:
        bad = next(C for C in M.circuits if len(C) <= 2)
        raise NotSimple(f"circuit {sorted(bad)} makes the matroid non-simple")
    flats = {M.closure(A) for k in range(M.n + 1) for A in combinations(M.ground, k)}
    ordered = sorted(flats, key=lambda F: (M.rank_of(F), sorted(F)))
    ids = {F: i for i, F in enumerate(ordered)}
    rank = {ids[F]: M.rank_of(F) for F in ordered}
    covers = [
        (ids[F], ids[G])
        for F in ordered
        for G in ordered
        if F < G and rank[ids[G]] == rank[ids[F]] + 1
    ]
    names = {ids[F]: F for F in ordered}
    L = FlatLattice(M, RankedPoset(rank, covers, names), {ids[F]: F for F in ordered})
    _check_geometric(L)
    return L


def _check_geometric(L: FlatLattice):
    for x, F in L.flats.items():
        if L.join_all(F) != x:
            raise NotAMatroid(f"flat {sorted(F)} is not the join of its atoms")
    ids = list(L.flats)
    rk = L.poset.rank
    for x, y in combinations(ids, 2):
        if rk[x] + rk[y] < rk[L.join(x, y)] + rk[L.meet(x, y)]:
            raise NotAMatroid("lattice of flats is not semimodular")


def minimal_labeling(L: FlatLattice) -> dict:
    """``nu(x, y) = min { i : x v a_i = y }``."""
    out = {}
    for x, y in L.poset.covers:
        out[(x, y)] = min(i for i in L.M.ground if L.join(x, L.atom[i]) == y)
    return out


def basis_subposet(L: FlatLattice, B: Iterable[int]):
    """Joins of subsets of ``B``, labeled by the index of the atom added.

    Returns ``(P_B, labeling)``; ``P_B`` is an induced subposet of ``L.poset``.
    """
    B = frozenset(B)
    M = L.M
    if len(B) != M.r or not M.is_independent(B):
        raise NotABasis(f"{sorted(B)} is not a basis")
    elems = {}
    for k in range(len(B) + 1):
        for A in combinations(sorted(B), k):
            elems[L.join_all(A)] = frozenset(A)
    labels = {}
    for x, A in elems.items():
        for a in B - A:
            labels[(x, L.join(x, L.atom[a]))] = a
    P = L.poset.induced(elems)
    if set(P.covers) != set(labels):
        raise NotABasis(f"joins of {sorted(B)} do not form a Boolean lattice")
    return P, labels


def nbc_pieces(L: FlatLattice) -> list:
    """``(P_j, lambda_j)`` for the nbc-bases in lexicographic order."""
    return [basis_subposet(L, B) for B in L.M.nbc_bases()]


def nu_words_in_nbc(L: FlatLattice, nu: dict) -> bool:
    """Every maximal chain's minimal label uses exactly the letters of some nbc-basis."""
    nbc = {frozenset(B) for B in L.M.nbc_bases()}
    return all(frozenset(chain_label(c, nu)) in nbc for c in L.poset.maximal_chains)


def check_labels_lemma(L: FlatLattice, pieces: Sequence, nu: dict, ears_by_piece: dict) -> bool:
    """Chain-for-chain: a maximal chain of ``P_i`` is a facet of ear ``i`` iff its basis label is its nu label.

    ``ears_by_piece`` maps a piece index (0-based) to the set of facets
    (proper parts of maximal chains) contributed by that piece.
    """
    return not labels_lemma_mismatches(L, pieces, nu, ears_by_piece)


def labels_lemma_mismatches(L, pieces, nu, ears_by_piece) -> list:
    bottom, top = L.poset.bottom, L.poset.top
    bad = []
    for i, (P, lam) in enumerate(pieces):
        facets = ears_by_piece.get(i, set())
        for c in P.maximal_chains:
            inner = frozenset(c) - {bottom, top}
            if (inner in facets) != (chain_label(c, lam) == chain_label(c, nu)):
                bad.append((i, c))
    return bad
