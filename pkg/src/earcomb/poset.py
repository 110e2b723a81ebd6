"""Ranked posets with edge labelings.

Elements are integer ids. A labeling is a plain dict from cover pairs
``(x, y)`` to integers. Subposets keep the ids of their ambient poset, so a
chain means the same thing in every poset it lies in.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .combinat import descents, rank_subsets
from .complex import SimplicialComplex
from .errors import EarcombError, EmptyRankSet, NotELLabeling


class RankedPoset:
    """A graded poset given by ranks and cover pairs.

    ``names`` optionally maps ids to human-readable objects (sets, faces,
    flats) used only for reporting.
    """

    def __init__(self, rank: Mapping[int, int], covers: Iterable[tuple[int, int]], names=None):
        self.rank = dict(sorted(rank.items()))
        self.covers = frozenset((int(x), int(y)) for x, y in covers)
        self.names = dict(names) if names is not None else {}
        up = {x: [] for x in self.rank}
        down = {x: [] for x in self.rank}
        for x, y in self.covers:
            if x not in self.rank or y not in self.rank:
                raise EarcombError(f"cover ({x}, {y}) mentions an unknown element")
            if self.rank[y] != self.rank[x] + 1:
                raise EarcombError(f"cover ({x}, {y}) does not raise rank by one")
            up[x].append(y)
            down[y].append(x)
        self.up = {x: tuple(sorted(v)) for x, v in up.items()}
        self.down = {x: tuple(sorted(v)) for x, v in down.items()}
        self.d = max(self.rank.values()) if self.rank else 0
        for x, r in self.rank.items():
            if r > 0 and not self.down[x]:
                raise EarcombError(f"element {x} of rank {r} covers nothing; poset is not graded")
            if r < self.d and not self.up[x]:
                raise EarcombError(f"element {x} of rank {r} is maximal below the top rank")

    def __repr__(self):
        return f"RankedPoset({len(self.rank)} elements, rank {self.d})"

    def __len__(self):
        return len(self.rank)

    def __contains__(self, x):
        return x in self.rank

    @property
    def elements(self) -> tuple:
        return tuple(self.rank)

    def at_rank(self, r: int) -> tuple:
        return tuple(x for x, s in self.rank.items() if s == r)

    @cached_property
    def bottom(self):
        low = self.at_rank(0)
        return low[0] if len(low) == 1 else None

    @cached_property
    def top(self):
        high = self.at_rank(self.d)
        return high[0] if len(high) == 1 else None

    @property
    def is_bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    def require_bounded(self):
        if not self.is_bounded:
            raise EarcombError("poset needs a unique minimum and maximum")

    @cached_property
    def upset(self) -> dict:
        out: dict = {}
        for x in sorted(self.rank, key=lambda z: -self.rank[z]):
            s = {x}
            for y in self.up[x]:
                s |= out[y]
            out[x] = frozenset(s)
        return out

    def leq(self, x, y) -> bool:
        return y in self.upset[x]

    def is_chain(self, elements: Iterable[int]) -> bool:
        es = sorted(elements, key=lambda z: self.rank[z])
        return all(self.leq(a, b) and a != b for a, b in zip(es, es[1:]))

    def sort_chain(self, elements: Iterable[int]) -> tuple:
        return tuple(sorted(elements, key=lambda z: self.rank[z]))

    def saturated_chains(self, x, y):
        """All saturated chains from ``x`` to ``y`` as tuples."""
        if x == y:
            yield (x,)
            return
        for z in self.up[x]:
            if self.leq(z, y):
                for rest in self.saturated_chains(z, y):
                    yield (x,) + rest

    @cached_property
    def maximal_chains(self) -> tuple:
        out = []
        minimal = [x for x in self.rank if not self.down[x]]

        def walk(chain):
            nxt = self.up[chain[-1]]
            if not nxt:
                out.append(tuple(chain))
                return
            for z in nxt:
                walk(chain + [z])

        for m in minimal:
            walk([m])
        return tuple(out)

    def induced(self, elements: Iterable[int]) -> "RankedPoset":
        """Subposet on ``elements`` whose covers are covers of this poset."""
        keep = set(elements)
        return RankedPoset(
            {x: self.rank[x] for x in keep},
            [(x, y) for x, y in self.covers if x in keep and y in keep],
            {x: self.names[x] for x in keep if x in self.names},
        )

    def name(self, x):
        return self.names.get(x, x)


def all_chains(P: RankedPoset, proper: bool = True):
    """Every chain (including the empty one) as a rank-sorted tuple.

    With ``proper`` the bottom and top are left out.
    """
    skip = {P.bottom, P.top} - {None} if proper else set()
    elems = [x for x in P.rank if x not in skip]
    yield ()
    stack = [(x,) for x in reversed(elems)]
    while stack:
        c = stack.pop()
        yield c
        last = c[-1]
        for y in reversed(elems):
            if P.rank[y] > P.rank[last] and P.leq(last, y):
                stack.append(c + (y,))


def chain_label(chain: Sequence[int], labeling: Mapping) -> tuple:
    return tuple(labeling[(a, b)] for a, b in zip(chain, chain[1:]))


def boolean_lattice(d: int):
    """``B_d`` on bitmask ids with the labeling ``x < x + {i}`` labeled ``i``."""
    if d < 1:
        raise EarcombError("Boolean lattice needs d >= 1")
    rank = {m: bin(m).count("1") for m in range(1 << d)}
    covers = []
    labels = {}
    for m in range(1 << d):
        for i in range(d):
            if not m >> i & 1:
                y = m | 1 << i
                covers.append((m, y))
                labels[(m, y)] = i + 1
    names = {m: frozenset(i + 1 for i in range(d) if m >> i & 1) for m in range(1 << d)}
    return RankedPoset(rank, covers, names), labels


def rank_select(P: RankedPoset, S: Iterable[int]) -> RankedPoset:
    """Restriction of ``P`` to ranks in ``S | {0, d}``, re-graded to rank ``|S| + 1``."""
    P.require_bounded()
    S = frozenset(S)
    if not S:
        raise EmptyRankSet("rank selection needs a nonempty rank set")
    if any(not 1 <= s <= P.d - 1 for s in S):
        raise EarcombError(f"rank set {sorted(S)} not inside [1, {P.d - 1}]")
    levels = sorted(S | {0, P.d})
    pos = {r: i for i, r in enumerate(levels)}
    keep = [x for x in P.rank if P.rank[x] in pos]
    covers = [
        (x, y)
        for a, b in zip(levels, levels[1:])
        for x in P.at_rank(a)
        for y in P.at_rank(b)
        if P.leq(x, y)
    ]
    return RankedPoset(
        {x: pos[P.rank[x]] for x in keep}, covers, {x: P.names[x] for x in keep if x in P.names}
    )


def order_complex(P: RankedPoset) -> SimplicialComplex:
    """Chains of ``P`` minus its bottom and top (when present)."""
    ends = {P.bottom, P.top} - {None}
    return SimplicialComplex(
        [x for x in c if x not in ends] for c in P.maximal_chains
    )


def _interval_chains(P: RankedPoset, x):
    """Map ``y`` to all saturated chains from ``x`` up to ``y``."""
    out: dict = {}
    stack = [(x,)]
    while stack:
        c = stack.pop()
        out.setdefault(c[-1], []).append(c)
        for z in P.up[c[-1]]:
            stack.append(c + (z,))
    return out


def el_violation(P: RankedPoset, labeling: Mapping):
    """First interval ``(x, y)`` breaking the EL conditions, or ``None``."""
    for x in P.rank:
        for y, chains in sorted(_interval_chains(P, x).items()):
            if y == x:
                continue
            labels = sorted(chain_label(c, labeling) for c in chains)
            inc = [w for w in labels if all(a < b for a, b in zip(w, w[1:]))]
            if len(inc) != 1 or labels[0] != inc[0] or (len(labels) > 1 and labels[1] == labels[0]):
                return (x, y)
    return None


def verify_el_labeling(P: RankedPoset, labeling: Mapping) -> bool:
    P.require_bounded()
    if set(labeling) != set(P.covers):
        return False
    return el_violation(P, labeling) is None


def is_sd_el(P: RankedPoset, labeling: Mapping) -> bool:
    """EL, and every maximal chain reads a permutation of one common alphabet."""
    if not verify_el_labeling(P, labeling):
        return False
    alphabet = None
    for c in P.maximal_chains:
        w = chain_label(c, labeling)
        if len(set(w)) != len(w):
            return False
        if alphabet is None:
            alphabet = frozenset(w)
        elif frozenset(w) != alphabet:
            return False
    return True


class LabeledPoset:
    """A bounded poset with an EL-labeling, caching increasing chains.

    The labeling is trusted here; callers verify it first.
    """

    def __init__(self, P: RankedPoset, labeling: Mapping):
        P.require_bounded()
        self.P = P
        self.labeling = dict(labeling)
        self._inc: dict = {}

    def label(self, chain: Sequence[int]) -> tuple:
        return chain_label(chain, self.labeling)

    def increasing_chain(self, x, y) -> tuple:
        key = (x, y)
        if key not in self._inc:
            found = []
            stack = [((x,), None)]
            while stack:
                c, last = stack.pop()
                if c[-1] == y:
                    found.append(c)
                    continue
                for z in self.P.up[c[-1]]:
                    lab = self.labeling[(c[-1], z)]
                    if (last is None or lab > last) and self.P.leq(z, y):
                        stack.append((c + (z,), lab))
            if len(found) != 1:
                raise NotELLabeling(f"interval ({x}, {y}) has {len(found)} increasing chains")
            self._inc[key] = found[0]
        return self._inc[key]

    def upsilon(self, chain: Iterable[int]) -> tuple:
        """Fill every gap of ``chain`` (closed up with bottom and top) increasingly."""
        P = self.P
        es = set(chain) | {P.bottom, P.top}
        es = P.sort_chain(es)
        if not P.is_chain(es):
            raise EarcombError(f"{es} is not a chain")
        out = [es[0]]
        for a, b in zip(es, es[1:]):
            out.extend(self.increasing_chain(a, b)[1:])
        return tuple(out)

    @cached_property
    def maximal_chains_by_label(self) -> dict:
        return {self.label(c): c for c in self.P.maximal_chains}


def upsilon(P: RankedPoset, labeling: Mapping, chain: Iterable[int]) -> tuple:
    return LabeledPoset(P, labeling).upsilon(chain)


def flag_f(P: RankedPoset) -> dict:
    """``f_S`` for every ``S`` in ``[d-1]``: the number of maximal chains of ``P_S``."""
    P.require_bounded()
    out = {}
    for S in rank_subsets(P.d - 1):
        levels = sorted(S)
        counts = {P.bottom: 1}
        frontier = [P.bottom]
        for r in levels:
            layer = P.at_rank(r)
            new = {y: sum(counts[x] for x in frontier if P.leq(x, y)) for y in layer}
            counts = new
            frontier = layer
        out[S] = sum(counts.values())
    return out


def flag_h_from_f(f: Mapping) -> dict:
    return {
        S: sum((-1) ** (len(S) - len(T)) * f[T] for T in f if T <= S)
        for S in f
    }


def flag_f_from_h(h: Mapping) -> dict:
    return {T: sum(h[S] for S in h if S <= T) for T in h}


def flag_h(P: RankedPoset) -> dict:
    return flag_h_from_f(flag_f(P))


def flag_h_by_descents(P: RankedPoset, labeling: Mapping) -> dict:
    """Count maximal chains by the descent set of their labels."""
    if not verify_el_labeling(P, labeling):
        raise NotELLabeling("labeling is not an EL-labeling")
    out = {S: 0 for S in rank_subsets(P.d - 1)}
    for c in P.maximal_chains:
        out[descents(chain_label(c, labeling))] += 1
    return out


def refine_sums(flag: Mapping, n: int) -> tuple:
    """``(sum over |S| = i of flag[S])`` for ``i = 0..n``."""
    return tuple(sum(v for S, v in flag.items() if len(S) == i) for i in range(n + 1))


def restrict_flag(flag: Mapping, S: Iterable[int]) -> dict:
    """Flag vector of the rank selection ``P_S``, indexed by subsets of positions in ``S``."""
    levels = sorted(S)
    pos = {r: i + 1 for i, r in enumerate(levels)}
    return {
        frozenset(pos[r] for r in T): flag[frozenset(T)]
        for k in range(len(levels) + 1)
        for T in combinations(levels, k)
    }
