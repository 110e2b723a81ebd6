"""Face posets of shellable complexes with all facets identified to one top."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import SimplicialComplex, all_subfaces, sort_faces, verify_shelling
from .errors import BadRestriction, EarcombError, OutsideTheorem
from .poset import RankedPoset, all_chains


@dataclass
class IdentifiedFacePoset:
    """Faces of size ``< d`` plus one top element standing for every facet."""

    poset: RankedPoset
    complex: SimplicialComplex
    face_id: dict
    top: int

    @property
    def d(self) -> int:
        return self.poset.d

    def face(self, x):
        return None if x == self.top else self.poset.names[x]


def identified_face_poset(K: SimplicialComplex) -> IdentifiedFacePoset:
    K.require_pure()
    if K.is_empty or K.is_void:
        raise EarcombError("face poset needs at least one vertex")
    d = K.dim + 1
    faces = sort_faces(f for f in K.faces if len(f) < d)
    face_id = {f: i for i, f in enumerate(faces)}
    top = len(faces)
    rank = {i: len(f) for f, i in face_id.items()}
    rank[top] = d
    covers = []
    for f, i in face_id.items():
        if len(f) == d - 1:
            covers.append((i, top))
        for v in f:
            covers.append((face_id[f - {v}], i))
    names = {i: f for f, i in face_id.items()}
    names[top] = "top"
    return IdentifiedFacePoset(RankedPoset(rank, covers, names), K, face_id, top)


def vertex_order(F: Iterable[int], r: Iterable[int]) -> dict:
    """Bijection ``F -> 1..d`` putting ``F - r`` first and ``r`` last, each block ascending."""
    F, r = frozenset(F), frozenset(r)
    seq = sorted(F - r) + sorted(r)
    return {v: i + 1 for i, v in enumerate(seq)}


def facet_subposet(FP: IdentifiedFacePoset, F: Iterable[int], r: Iterable[int]):
    """The Boolean piece over facet ``F`` with the restriction-last vertex labeling.

    Returns ``(P_F, labeling, phi)``.
    """
    F, r = frozenset(F), frozenset(r)
    if F not in FP.complex.facets:
        raise BadRestriction(f"{sorted(F)} is not a facet")
    if not r <= F:
        raise BadRestriction(f"restriction {sorted(r)} is not inside {sorted(F)}")
    phi = vertex_order(F, r)
    d = len(F)
    elems = [FP.face_id[g] for g in all_subfaces(F) if len(g) < d] + [FP.top]
    labels = {}
    for g in all_subfaces(F):
        if len(g) >= d:
            continue
        x = FP.face_id[g]
        if len(g) == d - 1:
            (v,) = F - g
            labels[(x, FP.top)] = phi[v]
        else:
            for v in F - g:
                labels[(x, FP.face_id[g | {v}])] = phi[v]
    return FP.poset.induced(elems), labels, phi


def shelling_pieces(FP: IdentifiedFacePoset, order: Sequence[Iterable[int]]):
    """Verify ``order`` and build the Boolean pieces in shelling order.

    Returns ``(certificate, pieces)`` with ``pieces[i] = (P_i, labeling_i)``.
    """
    cert = verify_shelling(FP.complex, order)
    pieces = []
    for F, r in zip(cert.order, cert.restrictions):
        P, lab, _ = facet_subposet(FP, F, r)
        pieces.append((P, lab))
    return cert, pieces


def _top_face(FP: IdentifiedFacePoset, chain) -> frozenset:
    proper = [x for x in chain if x != FP.top]
    if not proper:
        return frozenset()
    return FP.poset.names[max(proper, key=lambda x: FP.poset.rank[x])]


def easyfact_violations(FP: IdentifiedFacePoset, cert, pieces) -> list:
    """Non-maximal chains where novelty disagrees with containing the restriction face."""
    bad = []
    element_sets = [set(P.rank) for P, _ in pieces]
    top_rank = FP.d - 1
    for i, ((P, _), r) in enumerate(zip(pieces, cert.restrictions)):
        for chain in all_chains(P):
            if len(chain) == top_rank:
                continue
            new = not any(set(chain) <= element_sets[j] for j in range(i))
            if new != (r <= _top_face(FP, chain)):
                bad.append((i, chain))
    return bad


def check_easyfact(FP: IdentifiedFacePoset, cert, pieces) -> bool:
    return not easyfact_violations(FP, cert, pieces)


def check_rank_set(FP: IdentifiedFacePoset, S: Iterable[int]):
    S = frozenset(S)
    if FP.d in S:
        raise OutsideTheorem(
            f"rank {FP.d} in S: no decomposition is constructed when the top rank is selected"
        )
    if not S or any(not 1 <= s < FP.d for s in S):
        raise EarcombError(f"rank set {sorted(S)} must be a nonempty subset of [1, {FP.d - 1}]")


def face_rank_selection(K: SimplicialComplex, S: Iterable[int]) -> SimplicialComplex:
    """Order complex of the (unidentified) face poset restricted to face sizes in ``S``.

    Sizes may include ``d``; vertex ids index the faces in canonical order.
    """
    S = sorted(set(S))
    faces = sort_faces(f for f in K.faces if len(f) in S)
    ids = {f: i for i, f in enumerate(faces)}
    chains = []

    def grow(chain, level):
        if level == len(S):
            chains.append([ids[f] for f in chain])
            return
        for f in faces:
            if len(f) == S[level] and (not chain or chain[-1] < f):
                grow(chain + [f], level + 1)

    grow([], 0)
    return SimplicialComplex(chains)
