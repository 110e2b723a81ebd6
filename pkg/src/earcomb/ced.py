"""Convex-ear decompositions of rank selections of posets glued from Boolean pieces.

Given an ambient bounded poset ``P`` of rank ``d`` and pieces ``P_1..P_r``
(each a Boolean lattice with a permutation EL-labeling, covering every
chain of ``P``, and closed under increasing completion in the sense checked
by :func:`hypothesis_three_violation`), :func:`build_ears` produces ears for
``Delta(P_S)`` piece by piece, and :func:`verify_ced` checks the result
against the four defining properties independently of how it was built.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .combinat import descents, dominance_pairs, rank_subsets
from .complex import SimplicialComplex, boundary_subcomplex, find_shelling, sort_faces
from .errors import EarcombError, EmptyRankSet, HypothesisViolation, NotABall
from .poset import LabeledPoset, RankedPoset, all_chains, is_sd_el, order_complex, rank_select
from .topology import Certificate, certify_ball_or_sphere

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# pieces and hypotheses


def boolean_rank_violation(P: RankedPoset):
    """``None`` if ``P`` is isomorphic to a Boolean lattice, else a reason string.

    Each element is sent to the set of atoms below it; this must be a
    bijection onto all subsets that preserves and reflects order.
    """
    if not P.is_bounded:
        return "not bounded"
    atoms = P.at_rank(1)
    if len(atoms) != P.d:
        return f"{len(atoms)} atoms for rank {P.d}"
    below = {x: frozenset(a for a in atoms if P.leq(a, x)) for x in P.rank}
    if len(set(below.values())) != 1 << P.d or len(P.rank) != 1 << P.d:
        return "atom sets do not enumerate all subsets"
    for x in P.rank:
        if len(below[x]) != P.rank[x]:
            return f"element {x} has rank {P.rank[x]} but {len(below[x])} atoms below"
    for x, y in combinations(P.rank, 2):
        if P.leq(x, y) != (below[x] <= below[y]) or P.leq(y, x) != (below[y] <= below[x]):
            return f"order mismatch at ({x}, {y})"
    return None


def covers_every_chain(ambient: RankedPoset, pieces: Sequence[LabeledPoset]):
    """First maximal chain of the ambient poset lying in no piece, or ``None``."""
    sets = [set(p.P.rank) for p in pieces]
    for c in ambient.maximal_chains:
        if not any(set(c) <= s for s in sets):
            return c
    return None


def hypothesis_three_violation(pieces: Sequence[LabeledPoset]):
    """``(i, chain)`` where completion in piece ``i`` escapes all earlier pieces, or ``None``.

    For every chain of piece ``i`` that lies in some earlier piece, its
    increasing completion in piece ``i`` must lie in some earlier piece too.
    """
    sets = [set(p.P.rank) for p in pieces]
    for i, lp in enumerate(pieces):
        if i == 0:
            continue
        earlier = sets[:i]
        for e in all_chains(lp.P):
            if not any(set(e) <= s for s in earlier):
                continue
            c = lp.upsilon(e)
            if not any(set(c) <= s for s in earlier):
                return i, e
    return None


@dataclass
class BooleanPieceSequence:
    ambient: RankedPoset
    pieces: list
    hypotheses_checked: bool = False

    @property
    def d(self) -> int:
        return self.ambient.d

    @cached_property
    def element_sets(self) -> list:
        return [frozenset(p.P.rank) for p in self.pieces]


def piece_sequence(ambient: RankedPoset, pieces: Iterable, check: bool = True) -> BooleanPieceSequence:
    """Wrap ``(poset, labeling)`` pairs and check the three hypotheses.

    Raises :class:`HypothesisViolation` carrying the failing hypothesis and a witness.
    """
    ambient.require_bounded()
    lps = [p if isinstance(p, LabeledPoset) else LabeledPoset(*p) for p in pieces]
    if not check:
        return BooleanPieceSequence(ambient, lps)
    for q, lp in enumerate(lps):
        why = boolean_rank_violation(lp.P)
        if why or lp.P.d != ambient.d or not is_sd_el(lp.P, lp.labeling):
            raise HypothesisViolation(1, q, f"piece {q} is not a Boolean lattice with a permutation EL-labeling ({why or 'labeling'})")
    missed = covers_every_chain(ambient, lps)
    if missed is not None:
        raise HypothesisViolation(2, missed)
    bad = hypothesis_three_violation(lps)
    if bad is not None:
        raise HypothesisViolation(3, bad)
    return BooleanPieceSequence(ambient, lps, hypotheses_checked=True)


# --------------------------------------------------------------------------
# one piece


def _check_S(S, d) -> frozenset:
    S = frozenset(S)
    if any(not 1 <= s <= d - 1 for s in S):
        raise EarcombError(f"rank set {sorted(S)} not inside [1, {d - 1}]")
    return S


def restrict(chain: Iterable[int], P: RankedPoset, ranks: Iterable[int]) -> tuple:
    """The elements of ``chain`` whose ranks lie in ``ranks``."""
    ranks = set(ranks)
    return tuple(x for x in P.sort_chain(chain) if P.rank[x] in ranks)


def descent_chains(lp: LabeledPoset, S: Iterable[int]) -> list:
    """Maximal chains whose labels have descent set ``S``, by label in lex order."""
    S = _check_S(S, lp.P.d)
    found = [(lp.label(c), c) for c in lp.P.maximal_chains if descents(lp.label(c)) == S]
    found.sort()
    labels = [w for w, _ in found]
    assert len(set(labels)) == len(labels), "two descent chains share a label"
    return [c for _, c in found]


def _complement(S, d) -> frozenset:
    return frozenset(range(1, d)) - frozenset(S)


def L_facets(lp: LabeledPoset, S, d_i) -> frozenset:
    """Maximal chains (restricted to ranks ``S``) agreeing with ``d_i`` off ``S``."""
    P = lp.P
    comp = _complement(S, P.d)
    target = restrict(d_i, P, comp)
    return frozenset(
        frozenset(restrict(c, P, S)) for c in P.maximal_chains if restrict(c, P, comp) == target
    )


def build_L(lp: LabeledPoset, S, d_i) -> RankedPoset:
    """Subposet of ``(P_q)_S`` generated by the chains of :func:`L_facets`."""
    P = lp.P
    S = _check_S(S, P.d)
    if not S:
        raise EmptyRankSet("rank selection needs a nonempty rank set")
    elems = set().union(*L_facets(lp, S, d_i)) | {P.bottom, P.top}
    return rank_select(P, S).induced(elems)


def gamma_facets(lp: LabeledPoset, S, i: int, chains=None, method: str = "upsilon") -> frozenset:
    """Facets of the ``i``-th (0-based) Boolean ear of a single piece.

    ``method="upsilon"`` keeps facets ``e`` of ``L_i`` whose increasing
    completion agrees with ``d_i`` off ``S``; ``method="definition"`` keeps
    facets of ``L_i`` not lying inside any earlier ``L_j``.
    """
    P = lp.P
    S = frozenset(S)
    chains = descent_chains(lp, S) if chains is None else chains
    mine = L_facets(lp, S, chains[i])
    if method == "upsilon":
        comp = _complement(S, P.d)
        target = restrict(chains[i], P, comp)
        return frozenset(e for e in mine if restrict(lp.upsilon(e), P, comp) == target)
    if method == "definition":
        earlier = [set().union(*L_facets(lp, S, chains[j])) for j in range(i)]
        return frozenset(e for e in mine if not any(e <= s for s in earlier))
    raise ValueError(f"unknown method {method!r}")


# --------------------------------------------------------------------------
# ears


@dataclass
class Ear:
    """One ear with provenance.

    ``facets`` is the stored shelling order; ``labels[f]`` is the label of
    the increasing completion of facet ``f`` in its piece; ``sphere`` is the
    order complex of ``L_i``, the sphere the ear sits in.
    """

    facets: tuple
    piece: int
    index: int
    descent_chain: tuple
    labels: dict
    sphere: SimplicialComplex | None = None

    @cached_property
    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.facets)


@dataclass
class EarSequence:
    ears: list
    S: frozenset
    d: int
    colors: dict
    dropped: list = field(default_factory=list)

    def __len__(self):
        return len(self.ears)

    def __iter__(self):
        return iter(self.ears)

    @property
    def union(self) -> SimplicialComplex:
        return SimplicialComplex(f for e in self.ears for f in e.facets)


def build_ears(seq: BooleanPieceSequence, S: Iterable[int]) -> EarSequence:
    """Iterate the Boolean decomposition over the pieces.

    In piece ``q`` the ``i``-th ear keeps the facets of the Boolean ear
    ``Gamma_i`` that are not chains of any earlier piece. Empty ears are
    dropped (and logged). Facets of each ear are ordered by decreasing label
    of their increasing completion.
    """
    S = _check_S(S, seq.d)
    if not S:
        raise EmptyRankSet("rank selection needs a nonempty rank set")
    ears = []
    dropped = []
    for q, lp in enumerate(seq.pieces):
        earlier = seq.element_sets[:q]
        chains = descent_chains(lp, S)
        for i, d_i in enumerate(chains):
            gamma = gamma_facets(lp, S, i, chains)
            sigma = [e for e in gamma if not any(e <= s for s in earlier)]
            if not sigma:
                log.info("dropping empty ear: piece %d, descent chain %d", q, i)
                dropped.append((q, i))
                continue
            labels = {e: lp.label(lp.upsilon(e)) for e in sigma}
            order = tuple(sorted(sigma, key=lambda e: labels[e], reverse=True))
            sphere = SimplicialComplex(L_facets(lp, S, d_i))
            ears.append(Ear(order, q, i, d_i, labels, sphere))
    colors = {x: r for x, r in seq.ambient.rank.items()}
    return EarSequence(ears, S, seq.d, colors, dropped)


# --------------------------------------------------------------------------
# verification


@dataclass
class CEDReport:
    union_ok: bool
    sphere_ok: bool
    ball_ok: bool
    boundary_ok: bool
    certificates: list
    polytopality: str = "certified-by-paper"
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.union_ok and self.sphere_ok and self.ball_ok and self.boundary_ok


def _sphere_candidates(ear: Ear):
    # shelling candidates for the ambient sphere of an ear: its own order first
    facets = ear.sphere.facets
    mine = set(ear.facets)
    rest = [f for f in facets if f not in mine]
    yield list(ear.facets) + rest
    yield list(facets)


def verify_ced(delta: SimplicialComplex, ears: Sequence[Ear]) -> CEDReport:
    """Check the four ear-decomposition properties of ``ears`` against ``delta``."""
    ears = list(ears)
    failures = []
    certs = []
    if not ears:
        return CEDReport(False, False, False, False, [], failures=["no ears"])
    dims = {e.complex.dim for e in ears}
    if dims != {delta.dim} or not all(e.complex.is_pure for e in ears):
        failures.append(("purity", sorted(dims)))

    union = {f for e in ears for f in e.facets}
    union_ok = union == set(delta.facets)
    if not union_ok:
        diff = sort_faces(union ^ set(delta.facets))
        failures.append(("i", sorted(diff[0])))

    sphere_ok = True
    ball_ok = True
    boundary_ok = True
    seen: set = set()
    for k, ear in enumerate(ears):
        K = ear.complex
        cert = certify_ball_or_sphere(K, ear.facets)
        certs.append(cert.value)
        if k == 0:
            if cert is not Certificate.SPHERE:
                sphere_ok = False
                failures.append(("ii", k, cert.value))
        else:
            sph = ear.sphere
            if sph is None or not set(K.facets) < set(sph.facets):
                sphere_ok = False
                failures.append(("ii", k, "not a proper subcomplex of its sphere"))
            else:
                order = find_shelling(sph, _sphere_candidates(ear))
                if order is None or certify_ball_or_sphere(sph, order) is not Certificate.SPHERE:
                    sphere_ok = False
                    failures.append(("ii", k, "ambient sphere not certified"))
            if cert is not Certificate.BALL:
                ball_ok = False
                failures.append(("iii", k, cert.value))
            meet = K.faces & seen
            bd = boundary_subcomplex(K).faces
            if meet != bd:
                boundary_ok = False
                witness = sort_faces(meet ^ bd)[0]
                failures.append(("iv", k, sorted(witness)))
        seen |= K.faces
    return CEDReport(union_ok and not any(f[0] == "purity" for f in failures), sphere_ok, ball_ok, boundary_ok, certs, failures=failures)


# --------------------------------------------------------------------------
# flag vectors of colored complexes


def colored_flag_f(K: SimplicialComplex, colors: Mapping, alphabet: Iterable[int], faces=None) -> dict:
    """Faces counted by color set, for every subset of ``alphabet``."""
    alphabet = sorted(alphabet)
    out = {frozenset(T): 0 for k in range(len(alphabet) + 1) for T in combinations(alphabet, k)}
    for f in K.faces if faces is None else faces:
        out[frozenset(colors[v] for v in f)] += 1
    return out


def colored_flag_h(K: SimplicialComplex, colors: Mapping, alphabet: Iterable[int]) -> dict:
    f = colored_flag_f(K, colors, alphabet)
    return {S: sum((-1) ** (len(S) - len(T)) * f[T] for T in f if T <= S) for S in f}


def _ball_order(K, order):
    if order is None:
        order = find_shelling(K)
    if order is None or certify_ball_or_sphere(K, order) is not Certificate.BALL:
        raise NotABall("complex is not certified as a ball")
    return order


def interior_flag_f(K: SimplicialComplex, colors: Mapping, alphabet=None, order=None) -> dict:
    """Flag f-vector of the faces off the boundary, the empty face excluded."""
    _ball_order(K, order)
    alphabet = sorted(set(colors[v] for v in K.vertices)) if alphabet is None else alphabet
    bd = boundary_subcomplex(K).faces
    interior = [f for f in K.faces if f and f not in bd]
    return colored_flag_f(K, colors, alphabet, interior)


def _expand_product_minus_one(U: frozenset) -> dict:
    """``prod_{i in U} (v_i - 1)`` as a map monomial -> coefficient."""
    return {
        frozenset(W): (-1) ** (len(U) - len(W))
        for k in range(len(U) + 1)
        for W in combinations(sorted(U), k)
    }


def _add(poly: dict, other: dict, scale: int = 1):
    for m, c in other.items():
        poly[m] = poly.get(m, 0) + scale * c


def _clean(poly: dict) -> dict:
    return {m: c for m, c in poly.items() if c}


def flagstuff_sides(K: SimplicialComplex, colors: Mapping, alphabet=None, order=None):
    """Both sides of the interior/flag-h identity of a ball as multilinear polynomials."""
    alphabet = frozenset(sorted(set(colors[v] for v in K.vertices)) if alphabet is None else alphabet)
    fprime = interior_flag_f(K, colors, sorted(alphabet), order)
    h = colored_flag_h(K, colors, alphabet)
    lhs: dict = {}
    for S, n in fprime.items():
        if n:
            _add(lhs, _expand_product_minus_one(alphabet - S), n)
    rhs = {alphabet - S: h[alphabet - S] for S in h}
    return _clean(lhs), _clean(rhs)


def check_flagstuff(K: SimplicialComplex, colors: Mapping, alphabet=None, order=None) -> bool:
    lhs, rhs = flagstuff_sides(K, colors, alphabet, order)
    return lhs == rhs


def flag_recurrence_failures(seq: EarSequence, with_labels: bool = True) -> list:
    """Steps ``k`` and subsets ``T`` where the accretion recurrence fails.

    Checks ``h_T(Omega + ear_k) = h_T(Omega) + h_{A-T}(ear_k)`` with ``A``
    the selected ranks, and (when the selection is all ranks and
    ``with_labels``) that ``h_{A-T}(ear_k)`` counts the ear's facets whose
    stored labels have descent set ``T``.
    """
    A = frozenset(seq.S)
    full = A == frozenset(range(1, seq.d))
    bad = []
    omega = SimplicialComplex()
    h_prev = None
    for k, ear in enumerate(seq.ears):
        new = omega.union(ear.complex) if k else ear.complex
        h_new = colored_flag_h(new, seq.colors, A)
        if k:
            h_ear = colored_flag_h(ear.complex, seq.colors, A)
            for T in h_new:
                if h_new[T] != h_prev[T] + h_ear[A - T]:
                    bad.append((k, sorted(T), "recurrence"))
                if with_labels and full:
                    count = sum(1 for f in ear.facets if descents(ear.labels[f]) == T)
                    if count != h_ear[A - T]:
                        bad.append((k, sorted(T), "descent count"))
        omega, h_prev = new, h_new
    return bad


def check_flag_recurrence(seq: EarSequence) -> bool:
    return not flag_recurrence_failures(seq)


def switch_lemma_failures(ear: Ear, lp: LabeledPoset) -> list:
    """Check up-closure of an ear's labels under switches, and the dominance counts.

    Only meaningful when all ranks are selected, so facets are maximal
    chains of the piece.
    """
    P = lp.P
    facets = set(ear.facets)
    bad = []
    counts: dict = {}
    for f in ear.facets:
        c = (P.bottom,) + P.sort_chain(f) + (P.top,)
        w = lp.label(c)
        counts[descents(w)] = counts.get(descents(w), 0) + 1
        for j in range(1, len(w)):
            if w[j - 1] < w[j]:
                others = [z for z in P.up[c[j - 1]] if z != c[j] and P.leq(z, c[j + 1])]
                if len(others) != 1:
                    bad.append(("interval", c, j))
                    continue
                swapped = frozenset(f - {c[j]} | {others[0]})
                if swapped not in facets:
                    bad.append(("closure", c, j))
    for T, S in dominance_pairs(P.d):
        if counts.get(T, 0) > counts.get(S, 0):
            bad.append(("dominance", sorted(T), sorted(S)))
    return bad


def check_switch_lemma(ear: Ear, lp: LabeledPoset) -> bool:
    return not switch_lemma_failures(ear, lp)


def flag_inequality_failures(h: Mapping, d: int) -> list:
    """Pairs ``(T, S)`` with ``S`` dominating ``T`` but ``h_T > h_S``."""
    return [(sorted(T), sorted(S)) for T, S in dominance_pairs(d) if h[T] > h[S]]


def all_rank_sets(d: int) -> list:
    return rank_subsets(d - 1, nonempty=True)


def delta_of(ambient: RankedPoset, S) -> SimplicialComplex:
    return order_complex(rank_select(ambient, S))
