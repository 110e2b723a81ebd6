from collections import deque
from itertools import combinations, combinations_with_replacement, permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from earcomb.combinat import (
    binomial_expansion,
    check_witness,
    descent_class,
    descents,
    dominance_pairs,
    dominates,
    fast_path_verified,
    is_m_vector,
    pseudopower,
    rank_subsets,
    switch_closure,
    w_set,
    weak_leq,
)


def brute_descents(p):
    return {i for i in range(1, len(p)) if p[i - 1] > p[i]}


def bfs_above(p):
    # independent of the library: adjacent swaps that add exactly one inversion
    def inv(q):
        return sum(1 for i in range(len(q)) for j in range(i + 1, len(q)) if q[i] > q[j])

    seen = {p}
    todo = deque([p])
    while todo:
        q = todo.popleft()
        for i in range(len(q) - 1):
            r = list(q)
            r[i], r[i + 1] = r[i + 1], r[i]
            r = tuple(r)
            if inv(r) == inv(q) + 1 and r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_descent_classes_match_enumeration(d):
    for S in rank_subsets(d - 1):
        expected = sorted(p for p in permutations(range(1, d + 1)) if brute_descents(p) == set(S))
        assert list(descent_class(S, d)) == expected


def test_descent_class_examples():
    assert len(descent_class({1, 3}, 4)) == 5
    assert descent_class({1, 2}, 3) == ((3, 2, 1),)
    assert descent_class(set(), 4) == ((1, 2, 3, 4),)
    with pytest.raises(ValueError):
        descent_class({4}, 4)


def test_descents_on_words():
    assert descents((2, 1, 3)) == {1}
    assert descents((5, 9, 2, 7)) == {2}
    assert descents(()) == frozenset()


@pytest.mark.parametrize("d", [2, 3, 4])
def test_weak_order_matches_bfs(d):
    perms = list(permutations(range(1, d + 1)))
    for p in perms:
        up = bfs_above(p)
        assert switch_closure(p) == up
        for q in perms:
            assert weak_leq(p, q) == (q in up)


def test_fast_path_was_checked():
    assert fast_path_verified()


def test_weak_order_small_examples():
    assert weak_leq((1, 2, 3), (3, 2, 1))
    assert weak_leq((2, 1, 3), (2, 3, 1))
    assert not weak_leq((2, 1, 3), (1, 3, 2))
    with pytest.raises(ValueError):
        weak_leq((1, 2), (1, 2, 3))


def hall_dominates(T, S, d):
    # Hall's condition checked subset by subset, no matching code involved
    left = [p for p in permutations(range(1, d + 1)) if brute_descents(p) == set(T)]
    right = [q for q in permutations(range(1, d + 1)) if brute_descents(q) == set(S)]
    nbrs = {p: {q for q in right if q != p and q in bfs_above(p)} for p in left}
    for k in range(1, len(left) + 1):
        for A in combinations(left, k):
            if len(set().union(*(nbrs[p] for p in A))) < k:
                return False
    return True


@pytest.mark.parametrize("d", [2, 3, 4])
def test_dominance_matches_hall_condition(d):
    for T in rank_subsets(d - 1):
        for S in rank_subsets(d - 1):
            ok, witness = dominates(T, S, d)
            assert ok == hall_dominates(T, S, d), (T, S)
            if ok:
                assert check_witness(T, S, d, witness)


def test_dominance_examples():
    ok, witness = dominates({1}, {1, 3}, 4)
    assert ok
    for p, q in witness.items():
        assert brute_descents(p) == {1} and brute_descents(q) == {1, 3}
        assert q in bfs_above(p) and p != q
    assert len(set(witness.values())) == len(witness) == 3
    assert dominates({1}, {1, 2}, 5)[0]
    assert not dominates({1}, {2}, 3)[0]
    assert not dominates({2}, {1}, 3)[0]
    assert not dominates({1}, {1}, 4)[0]
    assert (frozenset({1}), frozenset({1, 3})) in dominance_pairs(4)


def test_check_witness_rejects_bad_maps():
    ok, witness = dominates({1}, {1, 3}, 4)
    bad = dict(witness)
    k = next(iter(bad))
    bad[k] = k
    assert not check_witness({1}, {1, 3}, 4, bad)
    assert not check_witness({1}, {1, 3}, 4, {})


def test_w_set_values():
    assert w_set({2, 3}, 4) == {1, 3}
    assert w_set({1, 2}, 4) == {2}
    assert w_set({1}, 4) == {1}
    assert w_set(set(), 4) == frozenset()


def test_binomial_expansion_and_pseudopower():
    assert binomial_expansion(3, 2) == [(3, 2)]
    assert pseudopower(3, 2) == 4
    assert binomial_expansion(5, 2) == [(3, 2), (2, 1)]
    assert pseudopower(5, 2) == 4 + 3
    assert pseudopower(0, 3) == 0
    assert pseudopower(4, 1) == 10


def monomials(n, deg):
    return list(combinations_with_replacement(range(n), deg))


def divisors_one_down(m):
    return {m[:i] + m[i + 1:] for i in range(len(m))}


def brute_m_vector(v):
    """Search for an order ideal of monomials with degree counts ``v`` (length <= 4)."""
    if not v:
        return True
    if v[0] != 1 or any(x < 0 for x in v):
        return False
    if len(v) == 1:
        return True
    n = v[1]
    levels = [{()}, set(monomials(n, 1))]
    if len(v) == 2:
        return True

    def allowed(prev, deg):
        return [m for m in monomials(n, deg) if divisors_one_down(m) <= prev]

    cand2 = allowed(levels[1], 2)
    if len(v) == 3:
        return v[2] <= len(cand2)
    for chosen in combinations(cand2, v[2]):
        if len(allowed(set(chosen), 3)) >= v[3]:
            return True
    return False


def test_m_vector_matches_monomial_search():
    for length in range(1, 5):
        for tail in product(range(5), repeat=length - 1):
            v = (1,) + tail
            assert is_m_vector(v) == brute_m_vector(v), v


def test_m_vector_examples():
    assert is_m_vector((1, 3))
    assert is_m_vector((1, 3, 6, 10))
    assert not is_m_vector((1, 2, 4))
    assert not is_m_vector((2, 1))
    assert not is_m_vector((1, -1))
    assert is_m_vector(())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 200), st.integers(1, 6))
def test_binomial_expansion_reconstructs(n, i):
    from math import comb

    terms = binomial_expansion(n, i)
    assert sum(comb(a, k) for a, k in terms) == n
    tops = [a for a, _ in terms]
    assert all(x > y for x, y in zip(tops, tops[1:]))
    assert all(a >= k for a, k in terms)
