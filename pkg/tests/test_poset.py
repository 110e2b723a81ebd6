from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from earcomb.combinat import rank_subsets
from earcomb.complex import h_vector
from earcomb.corpus import hexagon
from earcomb.errors import EarcombError, EmptyRankSet, NotELLabeling
from earcomb.poset import (
    LabeledPoset,
    RankedPoset,
    all_chains,
    boolean_lattice,
    flag_f,
    flag_f_from_h,
    flag_h,
    flag_h_by_descents,
    flag_h_from_f,
    is_sd_el,
    order_complex,
    rank_select,
    refine_sums,
    restrict_flag,
    verify_el_labeling,
)


def multinomial_f(S, d):
    # chains through ranks S of B_d: choose a subset, then a superset, ...
    cuts = [0] + sorted(S) + [d]
    out = factorial(d)
    for a, b in zip(cuts, cuts[1:]):
        out //= factorial(b - a)
    return out


def diamond():
    # rank 2 with two atoms; labels 1/2 give an EL-labeling
    return RankedPoset({0: 0, 1: 1, 2: 1, 3: 2}, [(0, 1), (0, 2), (1, 3), (2, 3)])


def test_graded_validation():
    with pytest.raises(EarcombError):
        RankedPoset({0: 0, 1: 2}, [(0, 1)])
    with pytest.raises(EarcombError):
        RankedPoset({0: 0, 1: 1, 2: 2}, [(0, 2)])
    with pytest.raises(EarcombError):
        RankedPoset({0: 0, 1: 1}, [(0, 5)])
    P = RankedPoset({0: 0, 1: 0, 2: 1}, [(0, 2), (1, 2)])
    assert not P.is_bounded
    with pytest.raises(EarcombError):
        P.require_bounded()


def test_boolean_lattice_shape():
    P, lab = boolean_lattice(3)
    assert len(P) == 8 and P.d == 3
    assert len(P.maximal_chains) == 6
    assert P.name(0b101) == {1, 3}
    assert verify_el_labeling(P, lab) and is_sd_el(P, lab)
    with pytest.raises(EarcombError):
        boolean_lattice(0)


def test_order_complex_of_b3_is_hexagon():
    P, _ = boolean_lattice(3)
    K = order_complex(P)
    assert len(K.facets) == 6 and h_vector(K) == h_vector(hexagon())


def test_rank_select():
    P, _ = boolean_lattice(4)
    Q = rank_select(P, {1, 3})
    assert Q.d == 3
    assert len(Q.at_rank(1)) == 4 and len(Q.at_rank(2)) == 4
    assert len(Q.maximal_chains) == 12
    with pytest.raises(EmptyRankSet):
        rank_select(P, set())
    with pytest.raises(EarcombError):
        rank_select(P, {4})


def test_el_rejections():
    Q = diamond()
    assert verify_el_labeling(Q, {(0, 1): 1, (1, 3): 2, (0, 2): 2, (2, 3): 1})
    # two increasing chains
    assert not verify_el_labeling(Q, {(0, 1): 1, (1, 3): 2, (0, 2): 1, (2, 3): 3})
    # missing label
    assert not verify_el_labeling(Q, {(0, 1): 1, (1, 3): 2, (0, 2): 2})
    # increasing chain not lexicographically first
    assert not verify_el_labeling(Q, {(0, 1): 2, (1, 3): 3, (0, 2): 1, (2, 3): 1})
    P, lab = boolean_lattice(3)
    bad = dict(lab)
    bad[(0, 1)] = 3
    assert not verify_el_labeling(P, bad)


def test_sd_el_needs_common_alphabet():
    Q = diamond()
    lab = {(0, 1): 1, (1, 3): 2, (0, 2): 3, (2, 3): 1}
    assert verify_el_labeling(Q, lab)
    assert not is_sd_el(Q, lab)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_flag_f_of_boolean_is_multinomial(d):
    P, _ = boolean_lattice(d)
    f = flag_f(P)
    for S in rank_subsets(d - 1):
        assert f[S] == multinomial_f(S, d)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_flag_h_by_two_routes(d):
    P, lab = boolean_lattice(d)
    h = flag_h(P)
    assert h == flag_h_by_descents(P, lab)
    assert h[frozenset(range(1, d))] == 1
    assert sum(h.values()) == factorial(d)


def test_flag_h_example_values():
    P, _ = boolean_lattice(4)
    assert flag_h(P)[frozenset({1, 3})] == 5


def test_flag_h_by_descents_rejects_non_el():
    Q = diamond()
    with pytest.raises(NotELLabeling):
        flag_h_by_descents(Q, {(0, 1): 1, (1, 3): 2, (0, 2): 1, (2, 3): 3})


def test_refinement_matches_order_complex():
    for d in range(2, 6):
        P, _ = boolean_lattice(d)
        assert refine_sums(flag_h(P), d - 1) == h_vector(order_complex(P))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.integers(-9, 9), min_size=2 ** n, max_size=2 ** n)))
def test_flag_transforms_inverse(values):
    n = len(values).bit_length() - 1
    subsets = rank_subsets(n)
    h = dict(zip(subsets, values))
    assert flag_h_from_f(flag_f_from_h(h)) == h


def test_restrict_flag():
    P, _ = boolean_lattice(4)
    f = flag_f(P)
    g = restrict_flag(f, {1, 3})
    Q = rank_select(P, {1, 3})
    assert g == flag_f(Q)


def test_upsilon_and_increasing_chains():
    P, lab = boolean_lattice(3)
    lp = LabeledPoset(P, lab)
    assert lp.increasing_chain(0, 7) == (0, 1, 3, 7)
    # the chain through {2} is completed as {} < {2} < {1,2} < {1,2,3}
    assert lp.upsilon([2]) == (0, 2, 3, 7)
    assert lp.upsilon([]) == (0, 1, 3, 7)
    assert lp.label(lp.upsilon([6])) == (2, 3, 1)
    with pytest.raises(EarcombError):
        lp.upsilon([1, 2])


def test_all_chains_counts():
    P, _ = boolean_lattice(3)
    chains = list(all_chains(P))
    # empty chain + 6 vertices + 6 edges of the hexagon
    assert len(chains) == 13
    assert len(list(all_chains(P, proper=False))) == 1 + 8 + 19 + 18 + 6


def test_maximal_chain_labels_are_permutations():
    P, lab = boolean_lattice(4)
    lp = LabeledPoset(P, lab)
    assert set(lp.maximal_chains_by_label) == set(permutations(range(1, 5)))
