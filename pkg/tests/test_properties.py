"""Randomized invariants over generated shellable complexes and rank sets."""

import random

from hypothesis import HealthCheck, given, settings, strategies as st

from earcomb.ced import all_rank_sets, flag_recurrence_failures, gamma_facets, descent_chains
from earcomb.combinat import check_witness, dominates, rank_subsets
from earcomb.complex import f_vector, h_vector, verify_shelling
from earcomb.corpus import random_shellable
from earcomb.pipelines import FacePosetPipeline, inequality_checks
from earcomb.poset import LabeledPoset, boolean_lattice, flag_h, refine_sums
from earcomb.topology import reduced_homology

SLOW = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SLOW
@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3]), st.integers(3, 7))
def test_random_shellable_decomposes(seed, dim, n):
    K, order = random_shellable(random.Random(seed), dim, n)
    verify_shelling(K, order)
    pipe = FacePosetPipeline(K, order)
    d = dim + 1
    assert pipe.easyfact
    for S in all_rank_sets(d):
        dec = pipe.run(S)
        assert dec.report.passed, dec.report.failures
        assert sum(len(e.facets) for e in dec.ears) == len(dec.delta.facets)
    full = pipe.run(range(1, d))
    assert not flag_recurrence_failures(full.ears)


@SLOW
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_union_inequalities(seed, dim):
    K, order = random_shellable(random.Random(seed), dim, 6)
    pipe = FacePosetPipeline(K, order)
    dec = pipe.run(range(1, dim + 1))
    checks = inequality_checks(dec, two_cm_limit=400)
    h = checks["h_vector"]
    d = len(h) - 1
    for i in range(d + 1):
        if 2 * i < d:
            assert h[i] <= h[i + 1] and h[i] <= h[d - i]
    assert checks["m_vector"]
    assert checks["two_cm"] is not False


@SLOW
@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3]))
def test_euler_characteristic(seed, dim):
    K, _ = random_shellable(random.Random(seed), dim, 8)
    f = f_vector(K)
    assert reduced_homology(K).reduced_euler == sum((-1) ** (i + 1) * n for i, n in enumerate(f))


@SLOW
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_flag_refines_h(seed, dim):
    K, order = random_shellable(random.Random(seed), dim, 6)
    pipe = FacePosetPipeline(K, order)
    d = dim + 1
    dec = pipe.run(range(1, d))
    assert refine_sums(flag_h(pipe.FP.poset), d - 1) == h_vector(dec.delta)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4, 5]), st.data())
def test_dominance_witnesses_are_valid(d, data):
    subsets = rank_subsets(d - 1)
    T = data.draw(st.sampled_from(subsets))
    S = data.draw(st.sampled_from(subsets))
    ok, witness = dominates(T, S, d)
    if ok:
        assert check_witness(T, S, d, witness)
    else:
        assert witness is None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 4, 5]), st.data())
def test_gamma_routes_random(d, data):
    lp = LabeledPoset(*boolean_lattice(d))
    S = data.draw(st.sampled_from(all_rank_sets(d)))
    chains = descent_chains(lp, S)
    i = data.draw(st.integers(0, len(chains) - 1))
    assert gamma_facets(lp, S, i, chains) == gamma_facets(lp, S, i, chains, method="definition")
