"""End-to-end constructions: Boolean lattices, geometric lattices, face posets.

Each pipeline builds its pieces once and then decomposes any number of
rank selections; :func:`inequality_checks` collects the numeric
consequences of a decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ced import (
    BooleanPieceSequence,
    CEDReport,
    EarSequence,
    build_ears,
    check_flagstuff,
    delta_of,
    flag_recurrence_failures,
    piece_sequence,
    switch_lemma_failures,
)
from .combinat import is_m_vector
from .complex import SimplicialComplex, find_shelling, h_vector
from .errors import EarcombError
from .faceposet import IdentifiedFacePoset, check_easyfact, check_rank_set, identified_face_poset, shelling_pieces
from .geomlat import (
    FlatLattice,
    Matroid,
    labels_lemma_mismatches,
    lattice_of_flats,
    minimal_labeling,
    nbc_pieces,
    nu_words_in_nbc,
)
from .poset import boolean_lattice, flag_h, verify_el_labeling
from .report import g_vector
from .topology import TooLarge, is_two_cm

TWO_CM_FACE_LIMIT = 1000
SHELLING_SEARCH_LIMIT = 8


@dataclass
class Decomposition:
    pipeline: str
    seq: BooleanPieceSequence
    S: frozenset
    ears: EarSequence
    delta: SimplicialComplex
    report: CEDReport
    extras: dict = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.seq.d

    @property
    def passed(self) -> bool:
        return self.report.passed and all(v is True for v in self.extras.values() if isinstance(v, bool))


def decompose(seq: BooleanPieceSequence, S, pipeline: str) -> Decomposition:
    from .ced import verify_ced

    S = frozenset(S)
    ears = build_ears(seq, S)
    delta = delta_of(seq.ambient, S)
    return Decomposition(pipeline, seq, S, ears, delta, verify_ced(delta, ears.ears))


class BooleanPipeline:
    def __init__(self, d: int):
        self.d = d
        self.poset, self.labeling = boolean_lattice(d)
        self.seq = piece_sequence(self.poset, [(self.poset, self.labeling)])

    def run(self, S) -> Decomposition:
        return decompose(self.seq, S, "boolean")


class GeometricPipeline:
    def __init__(self, M: Matroid):
        self.M = M
        self.L: FlatLattice = lattice_of_flats(M)
        self.nu = minimal_labeling(self.L)
        self.pieces = nbc_pieces(self.L)
        self.seq = piece_sequence(self.L.poset, self.pieces)
        self.nu_is_el = verify_el_labeling(self.L.poset, self.nu)
        self.nu_words_nbc = nu_words_in_nbc(self.L, self.nu)

    def run(self, S) -> Decomposition:
        dec = decompose(self.seq, S, "geometric")
        dec.extras["nu_is_el"] = self.nu_is_el
        dec.extras["nu_words_in_nbc"] = self.nu_words_nbc
        if dec.S == frozenset(range(1, self.seq.d)):
            by_piece: dict = {}
            for e in dec.ears:
                by_piece.setdefault(e.piece, set()).update(e.facets)
            bad = labels_lemma_mismatches(self.L, self.pieces, self.nu, by_piece)
            dec.extras["labels_lemma"] = not bad
            if bad:
                dec.extras["labels_lemma_witness"] = [bad[0][0], list(bad[0][1])]
        return dec


class FacePosetPipeline:
    def __init__(self, K: SimplicialComplex, order=None):
        self.K = K
        if order is None:
            if len(K.facets) > SHELLING_SEARCH_LIMIT:
                raise EarcombError(
                    f"a shelling order is required above {SHELLING_SEARCH_LIMIT} facets"
                )
            order = find_shelling(K)
            if order is None:
                raise EarcombError("no shelling order found")
        self.FP: IdentifiedFacePoset = identified_face_poset(K)
        self.cert, self.pieces = shelling_pieces(self.FP, order)
        self.easyfact = check_easyfact(self.FP, self.cert, self.pieces)
        self.seq = piece_sequence(self.FP.poset, self.pieces)

    def run(self, S) -> Decomposition:
        check_rank_set(self.FP, S)
        dec = decompose(self.seq, S, "faceposet")
        dec.extras["easyfact"] = self.easyfact
        if dec.S == frozenset(range(1, self.seq.d)):
            dec.extras["flag_recurrence"] = not flag_recurrence_failures(dec.ears)
            dec.extras["switch_lemma"] = all(
                not switch_lemma_failures(e, self.seq.pieces[e.piece]) for e in dec.ears
            )
        return dec


def inequality_checks(dec: Decomposition, two_cm_limit: int = TWO_CM_FACE_LIMIT) -> dict:
    """Numeric consequences of a decomposition.

    h-vector rows and the g-vector test always; 2-CM when the union is
    small enough; the flag identity on every ball ear when all ranks are
    selected; and for face posets the flag h-vector of the union.
    """
    union = dec.ears.union
    h = list(h_vector(union))
    g = g_vector(h)
    out = {"h_vector": h, "g_vector": g, "m_vector": is_m_vector(g), "two_cm": None}
    if len(union.faces) <= two_cm_limit:
        try:
            out["two_cm"] = is_two_cm(union)
        except TooLarge:
            pass
    if dec.S == frozenset(range(1, dec.d)):
        colors = dec.ears.colors
        out["flagstuff"] = all(
            check_flagstuff(e.complex, colors, sorted(dec.S), e.facets)
            for e, cert in zip(dec.ears.ears, dec.report.certificates)
            if cert == "Ball"
        )
        if dec.pipeline == "faceposet":
            out["flag_h"] = flag_h(dec.seq.ambient)
    return out
