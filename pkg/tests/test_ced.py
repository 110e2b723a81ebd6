import pytest

from earcomb.ced import (
    Ear,
    all_rank_sets,
    build_ears,
    build_L,
    check_flag_recurrence,
    check_flagstuff,
    check_switch_lemma,
    colored_flag_h,
    delta_of,
    descent_chains,
    flag_recurrence_failures,
    flagstuff_sides,
    gamma_facets,
    interior_flag_f,
    piece_sequence,
    verify_ced,
)
from earcomb.combinat import descent_class, descents
from earcomb.complex import SimplicialComplex, verify_shelling
from earcomb.corpus import hexagon, hexagon_order, octahedron_boundary, two_triangles
from earcomb.errors import EmptyRankSet, HypothesisViolation, NotABall
from earcomb.faceposet import facet_subposet, identified_face_poset
from earcomb.pipelines import BooleanPipeline, FacePosetPipeline
from earcomb.poset import LabeledPoset, boolean_lattice, flag_f


def lp_boolean(d):
    return LabeledPoset(*boolean_lattice(d))


def names(lp, chain):
    return [lp.P.name(x) for x in chain]


def test_descent_chains_examples():
    lp = lp_boolean(3)
    (c,) = descent_chains(lp, {1, 2})
    assert lp.label(c) == (3, 2, 1)
    assert len(descent_chains(lp_boolean(4), {1, 3})) == 5
    assert [lp.label(c) for c in descent_chains(lp, {1})] == [(2, 1, 3), (3, 1, 2)]
    # the empty descent set picks the increasing chain
    assert [lp.label(c) for c in descent_chains(lp, set())] == [(1, 2, 3)]


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_descent_chain_count_is_class_size(d):
    lp = lp_boolean(d)
    for S in all_rank_sets(d):
        assert len(descent_chains(lp, S)) == len(descent_class(S, d))


def test_build_L_examples():
    lp = lp_boolean(3)
    d1 = descent_chains(lp, {1})[0]
    L = build_L(lp, {1}, d1)
    assert sorted(names(lp, L.rank), key=lambda s: (len(s), sorted(s))) == [
        frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2, 3})
    ]
    (d1,) = descent_chains(lp, {1, 2})
    assert len(build_L(lp, {1, 2}, d1)) == 8
    with pytest.raises(EmptyRankSet):
        build_L(lp, set(), d1)


def test_gamma_examples():
    lp = lp_boolean(3)
    g1 = gamma_facets(lp, {1}, 0)
    g2 = gamma_facets(lp, {1}, 1)
    assert {frozenset(names(lp, e)[0]) for e in g1} == {frozenset({1}), frozenset({2})}
    assert [names(lp, e) for e in g2] == [[frozenset({3})]]
    assert len(gamma_facets(lp, {1, 2}, 0)) == 6


@pytest.mark.parametrize("d", [2, 3, 4])
def test_gamma_two_routes_agree(d):
    lp = lp_boolean(d)
    for S in all_rank_sets(d):
        chains = descent_chains(lp, S)
        for i in range(len(chains)):
            assert gamma_facets(lp, S, i, chains) == gamma_facets(lp, S, i, chains, method="definition")


def test_first_ear_contains_increasing_completion():
    lp = lp_boolean(4)
    P = lp.P
    for S in all_rank_sets(4):
        inc = lp.upsilon([])
        e = frozenset(x for x in inc if P.rank[x] in S)
        assert e in gamma_facets(lp, S, 0)


def test_build_ears_b3():
    pipe = BooleanPipeline(3)
    ears = build_ears(pipe.seq, {1})
    assert [len(e.facets) for e in ears] == [2, 1]
    dec = pipe.run({1})
    assert dec.report.passed
    assert dec.report.certificates == ["Sphere", "Ball"]
    with pytest.raises(EmptyRankSet):
        build_ears(pipe.seq, set())


def test_ear_orders_are_shellings():
    pipe = BooleanPipeline(4)
    for S in all_rank_sets(4):
        for e in build_ears(pipe.seq, S):
            verify_shelling(e.complex, e.facets)
            labels = [e.labels[f] for f in e.facets]
            assert labels == sorted(labels, reverse=True)


def test_two_triangles_full_rank_set():
    pipe = FacePosetPipeline(two_triangles(), two_triangles().facets)
    dec = pipe.run({1, 2})
    assert dec.report.passed
    assert len(dec.ears.ears[0].facets) == 6
    total = sum(len(e.facets) for e in dec.ears)
    assert total == flag_f(pipe.FP.poset)[frozenset({1, 2})] == 10
    assert check_flag_recurrence(dec.ears)
    for e in dec.ears:
        assert check_switch_lemma(e, pipe.seq.pieces[e.piece])


def test_verify_ced_negative_reordered():
    pipe = BooleanPipeline(3)
    ears = build_ears(pipe.seq, {1}).ears
    rep = verify_ced(delta_of(pipe.poset, {1}), list(reversed(ears)))
    assert not rep.sphere_ok
    assert not rep.boundary_ok
    assert not rep.passed


def test_verify_ced_negative_missing_ear():
    pipe = BooleanPipeline(4)
    ears = build_ears(pipe.seq, {1, 3}).ears
    rep = verify_ced(delta_of(pipe.poset, {1, 3}), ears[:-1])
    assert not rep.union_ok and rep.failures[0][0] == "i"


def test_verify_ced_hexagon_split_wrongly():
    # the hexagon as two paths: the first ear is not a sphere
    K = hexagon()
    sphere = SimplicialComplex(hexagon_order())
    first = Ear(tuple(hexagon_order()), 0, 0, (), {}, sphere)
    rep = verify_ced(K, [first])
    assert rep.passed
    a = [frozenset(e) for e in [(1, 2), (2, 3), (3, 4)]]
    b = [frozenset(e) for e in [(5, 6), (4, 5), (1, 6)]]
    big = SimplicialComplex(a + b)
    rep = verify_ced(big, [Ear(tuple(a), 0, 0, (), {}, sphere), Ear(tuple(b), 0, 1, (), {}, sphere)])
    assert not rep.sphere_ok


def test_single_ear_sphere_vacuous():
    pipe = BooleanPipeline(3)
    dec = pipe.run({1, 2})
    assert len(dec.ears) == 1 and dec.report.passed


def test_interior_flag_f_examples():
    point = SimplicialComplex([[7]])
    f = interior_flag_f(point, {7: 1}, [1], [[7]])
    assert f[frozenset({1})] == 1 and f[frozenset()] == 0
    path = SimplicialComplex([[1, 2], [2, 3]])
    colors = {1: 1, 2: 2, 3: 1}
    f = interior_flag_f(path, colors, [1, 2], path.facets)
    assert f[frozenset({2})] == 1
    assert f[frozenset({1, 2})] == 2
    assert f[frozenset({1})] == 0
    assert f[frozenset()] == 0
    with pytest.raises(NotABall):
        interior_flag_f(hexagon(), {v: 1 + v % 2 for v in range(1, 7)}, [1, 2], hexagon_order())


def test_flagstuff_small():
    point = SimplicialComplex([[7]])
    lhs, rhs = flagstuff_sides(point, {7: 1}, [1], [[7]])
    assert lhs == rhs == {frozenset(): 1}
    path = SimplicialComplex([[1, 2], [2, 3]])
    assert check_flagstuff(path, {1: 1, 2: 2, 3: 1}, [1, 2], path.facets)
    with pytest.raises(NotABall):
        check_flagstuff(hexagon(), {v: 1 + v % 2 for v in range(1, 7)}, [1, 2], hexagon_order())


def test_flagstuff_on_two_triangle_ears():
    pipe = FacePosetPipeline(two_triangles(), two_triangles().facets)
    dec = pipe.run({1, 2})
    for e, cert in zip(dec.ears.ears, dec.report.certificates):
        if cert == "Ball":
            assert check_flagstuff(e.complex, dec.ears.colors, [1, 2], e.facets)


def test_flag_recurrence_octahedron():
    pipe = FacePosetPipeline(octahedron_boundary())
    dec = pipe.run({1, 2})
    assert dec.report.passed
    assert flag_recurrence_failures(dec.ears) == []


def test_flag_recurrence_detects_tampering():
    pipe = FacePosetPipeline(two_triangles(), two_triangles().facets)
    dec = pipe.run({1, 2})
    ear = dec.ears.ears[1]
    f = ear.facets[0]
    ear.labels[f] = tuple(reversed(ear.labels[f]))
    assert flag_recurrence_failures(dec.ears)


def test_switch_closure_and_counts_on_full_boolean_ear():
    pipe = BooleanPipeline(4)
    dec = pipe.run({1, 2, 3})
    (ear,) = dec.ears.ears
    assert check_switch_lemma(ear, pipe.seq.pieces[0])
    counts = {}
    for f in ear.facets:
        T = descents(ear.labels[f])
        counts[T] = counts.get(T, 0) + 1
    assert counts[frozenset({1, 3})] == 5


def test_colored_flag_h_of_hexagon():
    colors = {v: 1 + v % 2 for v in range(1, 7)}
    h = colored_flag_h(hexagon(), colors, [1, 2])
    assert h == {frozenset(): 1, frozenset({1}): 2, frozenset({2}): 2, frozenset({1, 2}): 1}


def test_hypothesis_two_violation():
    K = two_triangles()
    FP = identified_face_poset(K)
    P, lab, _ = facet_subposet(FP, {1, 2, 3}, set())
    with pytest.raises(HypothesisViolation) as info:
        piece_sequence(FP.poset, [(P, lab)])
    assert info.value.which == 2


def test_hypothesis_three_violation():
    # second piece labeled with the wrong vertex last
    K = two_triangles()
    FP = identified_face_poset(K)
    p1 = facet_subposet(FP, {1, 2, 3}, set())[:2]
    p2 = facet_subposet(FP, {1, 2, 4}, {1})[:2]
    with pytest.raises(HypothesisViolation) as info:
        piece_sequence(FP.poset, [p1, p2])
    assert info.value.which == 3


def test_hypothesis_one_violation():
    P, lab = boolean_lattice(3)
    bad = dict(lab)
    bad[(0, 1)] = 9
    with pytest.raises(HypothesisViolation) as info:
        piece_sequence(P, [(P, bad)])
    assert info.value.which == 1
