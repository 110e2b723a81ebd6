"""Permutations, descent classes, weak order, dominance and M-vectors.

Permutations are tuples in one-line notation over ``1..d``; rank sets are
frozensets of positions in ``1..d-1``.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms import bipartite

Perm = tuple  # tuple[int, ...]
RankSet = frozenset  # frozenset[int]

FAST_PATH_VERIFY_UPTO = 5


def rank_subsets(n: int, nonempty: bool = False) -> list[frozenset]:
    """All subsets of ``1..n``, by size then lexicographically."""
    start = 1 if nonempty else 0
    return [frozenset(c) for k in range(start, n + 1) for c in combinations(range(1, n + 1), k)]


def fmt_set(S: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(S)) + "}"


def descents(word: Sequence[int]) -> frozenset:
    """Positions ``i`` (1-based) with ``word[i] > word[i+1]``; works on any integer word."""
    return frozenset(i + 1 for i in range(len(word) - 1) if word[i] > word[i + 1])


def descent_set(p: Perm) -> frozenset:
    return descents(p)


@lru_cache(maxsize=None)
def _classes(d: int) -> dict:
    out: dict = {}
    for p in permutations(range(1, d + 1)):
        out.setdefault(descents(p), []).append(p)
    return {S: tuple(ps) for S, ps in out.items()}


def descent_class(S: Iterable[int], d: int) -> tuple:
    """The permutations of ``1..d`` whose descent set is exactly ``S``, in lex order."""
    S = frozenset(S)
    if any(not 1 <= i <= d - 1 for i in S):
        raise ValueError(f"rank set {fmt_set(S)} not inside [1,{d - 1}]")
    return _classes(d).get(S, ())


def switches(p: Perm):
    """Yield every permutation one switch above ``p`` (adjacent ascent interchanged)."""
    for i in range(len(p) - 1):
        if p[i] < p[i + 1]:
            yield p[:i] + (p[i + 1], p[i]) + p[i + 2:]


def switch_closure(p: Perm) -> frozenset:
    """Everything reachable from ``p`` by zero or more switches (BFS)."""
    seen = {p}
    queue = deque([p])
    while queue:
        for q in switches(queue.popleft()):
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return frozenset(seen)


def inversions(p: Perm) -> frozenset:
    """Value pairs ``(a, b)``, ``a < b``, with ``b`` appearing before ``a``."""
    return frozenset(
        (p[j], p[i]) for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )


@lru_cache(maxsize=None)
def fast_path_verified(upto: int = FAST_PATH_VERIFY_UPTO) -> bool:
    """Exhaustively check that inversion containment equals switch reachability for d <= upto."""
    for d in range(1, upto + 1):
        perms = list(permutations(range(1, d + 1)))
        inv = {p: inversions(p) for p in perms}
        for p in perms:
            up = switch_closure(p)
            for q in perms:
                if (q in up) != (inv[p] <= inv[q]):
                    return False
    return True


def weak_leq(p: Perm, q: Perm) -> bool:
    """True iff ``q`` is reachable from ``p`` by switches."""
    if len(p) != len(q):
        raise ValueError("permutations of different length")
    if fast_path_verified():
        return inversions(p) <= inversions(q)
    return q in switch_closure(p)


def weak_less(p: Perm, q: Perm) -> bool:
    return p != q and weak_leq(p, q)


def _matching(T, S, d):
    left = descent_class(T, d)
    right = descent_class(S, d)
    G = nx.Graph()
    G.add_nodes_from(((0, p) for p in left), bipartite=0)
    G.add_nodes_from(((1, q) for q in right), bipartite=1)
    for p in left:
        for q in right:
            if weak_less(p, q):
                G.add_edge((0, p), (1, q))
    M = bipartite.hopcroft_karp_matching(G, top_nodes=[(0, p) for p in left])
    phi = {p: M[(0, p)][1] for p in left if (0, p) in M}
    return left, right, phi


def dominates(T: Iterable[int], S: Iterable[int], d: int):
    """Does ``S`` dominate ``T`` in the symmetric group on ``d`` letters?

    Returns ``(flag, witness)`` where ``witness`` maps each permutation with
    descent set ``T`` injectively to a strictly weak-order-larger permutation
    with descent set ``S`` (``None`` when no such injection exists). The
    relation is strict, so ``dominates(S, S, d)`` is always false unless the
    class is empty.
    """
    T, S = frozenset(T), frozenset(S)
    left, _, phi = _matching(T, S, d)
    if len(phi) < len(left):
        return False, None
    return True, dict(sorted(phi.items()))


def dominates_or_equal(T, S, d: int) -> bool:
    return frozenset(T) == frozenset(S) or dominates(T, S, d)[0]


@lru_cache(maxsize=None)
def dominance_pairs(d: int) -> tuple:
    """All ``(T, S)`` with ``S`` dominating ``T`` over ``[d-1]``."""
    subsets = rank_subsets(d - 1)
    return tuple((T, S) for T in subsets for S in subsets if dominates(T, S, d)[0])


def check_witness(T, S, d, phi) -> bool:
    left = set(descent_class(T, d))
    right = set(descent_class(S, d))
    if set(phi) != left or len(set(phi.values())) != len(phi):
        return False
    return all(q in right and weak_less(p, q) for p, q in phi.items())


def w_set(S: Iterable[int], n: int) -> frozenset:
    """Positions ``i`` in ``1..n`` such that exactly one of ``i, i+1`` lies in ``S``."""
    S = frozenset(S)
    return frozenset(i for i in range(1, n + 1) if (i in S) != (i + 1 in S))


def binomial_expansion(n: int, i: int) -> list[tuple[int, int]]:
    """The ``i``-binomial (Macaulay) representation of ``n`` as ``[(a_i, i), (a_{i-1}, i-1), ...]``."""
    terms = []
    k = i
    while n > 0 and k > 0:
        a = k
        while comb(a + 1, k) <= n:
            a += 1
        terms.append((a, k))
        n -= comb(a, k)
        k -= 1
    return terms


def pseudopower(n: int, i: int) -> int:
    """Macaulay's ``n^<i>``."""
    return sum(comb(a + 1, k + 1) for a, k in binomial_expansion(n, i))


def is_m_vector(v: Sequence[int]) -> bool:
    """Is ``v`` the degree sequence of an order ideal of monomials?"""
    v = list(v)
    if not v:
        return True
    if v[0] != 1 or any(x < 0 for x in v):
        return False
    for i in range(1, len(v) - 1):
        if v[i + 1] > pseudopower(v[i], i):
            return False
    return True
