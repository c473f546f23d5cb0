import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from groupdiam import constructions as C
from groupdiam.checks import lemma_groups, lemma_instance
from groupdiam.diametry import LengthCertificate, diameter, length_bfs
from groupdiam.errors import DomainError
from groupdiam.group import PermGroup, derived_series, normal_closure, verbal_subgroup
from groupdiam.perm import GenSet, Permutation, Word, evaluate, parse_cycles
from groupdiam.synth import (CertifiedGenSet, abelian_solve, cascade_bound, commutator_generators,
                             compose_certificates, derived_tower, direct_product_solve, lam,
                             milnor_stabilize, schreier_generators, socle_cascade, soluble_solve)

import oracles


def gs(*cycles, n, labels=None):
    return GenSet.from_list([parse_cycles(c, n) for c in cycles], labels)


S4X = gs("(0 1)", "(0 1 2 3)", n=4)
S4 = PermGroup(S4X)
A4 = normal_closure(S4, [parse_cycles("(0 1 2)", 4)])


def test_lam_is_floor_log2():
    assert [lam(k) for k in (1, 2, 3, 4, 12, 60, 2 ** 42)] == [0, 1, 1, 2, 3, 5, 42]


def test_schreier_s4_mod_a4():
    Y = schreier_generators(S4X, A4)
    assert Y.validate()
    assert Y.bound == 3 and Y.max_length <= 3
    assert Y.subgroup.order() == 12


def test_schreier_whole_group():
    Y = schreier_generators(S4X, S4)
    assert Y.bound == 1 and Y.validate()


def test_schreier_c6_mod_c3():
    X = gs("(0 1 2 3 4 5)", n=6, labels=["x"])
    G = PermGroup(X)
    N = normal_closure(G, [parse_cycles("(0 2 4)(1 3 5)", 6)])
    Y = schreier_generators(X, N)
    assert Y.bound == 3 and Y.validate() and Y.subgroup.order() == 3


def test_schreier_rejects_non_normal():
    with pytest.raises(DomainError):
        schreier_generators(S4X, PermGroup([parse_cycles("(0 1)", 4)], 4))


def test_milnor_s4_three_cycle():
    M = milnor_stabilize(S4X, [length_bfs(S4X, parse_cycles("(0 1 2)", 4)).word])
    assert M.subgroup.order() == 12
    assert M.details["iterations"] <= 3
    assert M.validate()


def test_milnor_already_normal():
    # the whole group is normal in itself, so nothing is added
    M = milnor_stabilize(S4X, [Word.letter("a"), Word.letter("b")])
    assert M.details["iterations"] == 0
    assert M.subgroup.order() == 24


def test_milnor_a5():
    X = C.alternating(5).genset
    w = length_bfs(X, parse_cycles("(0 1 2)", 5)).word
    assert milnor_stabilize(X, [w]).subgroup.order() == 60


def test_commutator_s4():
    Y = CertifiedGenSet(S4, {"a": Word.letter("a"), "b": Word.letter("b")}, S4X, 1, "given")
    D = commutator_generators(S4X, Y, "derived")
    assert D.subgroup.order() == 12
    assert D.bound == 10 and D.max_length <= 10
    assert D.validate()


def test_commutator_abelian_is_trivial():
    X = gs("(0 1 2 3 4 5)", n=6)
    Y = CertifiedGenSet(PermGroup(X), {"a": Word.letter("a")}, X, 1, "given")
    assert commutator_generators(X, Y, "derived").subgroup.is_trivial()


def test_gamma3_of_d4():
    X = gs("(0 1 2 3)", "(0 2)", n=4)
    Y = CertifiedGenSet(PermGroup(X), {"a": Word.letter("a"), "b": Word.letter("b")}, X, 1, "given")
    assert commutator_generators(X, Y, "gamma3").subgroup.is_trivial()


def test_tower_s4():
    tower = derived_tower(S4X)
    assert [t.subgroup.order() for t in tower] == [24, 12, 4, 1]
    log_g = math.log2(24)
    for i, t in enumerate(tower):
        assert t.validate()
        assert t.max_length <= 4 ** i * log_g


def test_tower_abelian_stops_at_one():
    tower = derived_tower(gs("(0 1)", "(2 3 4)", n=5))
    assert len(tower) == 2 and tower[1].subgroup.is_trivial()


def test_tower_sl23():
    G = C.sl23()
    tower = derived_tower(G.genset)
    assert len(tower) - 1 == 3 == derived_series(G).length
    assert [t.subgroup.order() for t in tower] == derived_series(G).orders()
    assert all(t.validate() for t in tower)


def test_abelian_solve_c6():
    X = gs("(0 1 2 3 4 5)", n=6, labels=["x"])
    Y = CertifiedGenSet(PermGroup(X), {"x": Word.letter("x")}, X, 1, "given")
    x = X["x"]
    c = abelian_solve(Y, x ** 4)
    assert c.length == 2 and evaluate(c.word, X) == x ** 4
    assert c.length <= 6
    assert abelian_solve(Y, Permutation.identity(6)).length == 0


def test_abelian_solve_c2_c4():
    X = gs("(0 1)", "(2 3 4 5)", n=6)
    Y = CertifiedGenSet(PermGroup(X), {"a": Word.letter("a"), "b": Word.letter("b")}, X, 1, "given")
    target = X["a"] * X["b"] ** 2
    c = abelian_solve(Y, target)
    assert c.length == 3 and c.length <= 4 * 2
    assert evaluate(c.word, X) == target


def test_soluble_solve_s4_every_element():
    bound = 3 * 4 ** 2 * math.log2(24) ** 2
    dist = oracles.distances([g.images for g in S4X.perms], 4)
    for g in S4.elements():
        c = soluble_solve(S4X, g)
        assert c.validate(S4X)
        assert dist[g.images] <= c.length <= bound
        assert c.bound == pytest.approx(bound)


def test_soluble_solve_abelian_and_identity():
    X = gs("(0 1 2 3 4 5)", n=6)
    g = X["a"] ** 3
    c = soluble_solve(X, g)
    assert c.validate(X) and c.length == 3
    assert soluble_solve(S4X, Permutation.identity(4)).length == 0


def test_soluble_solve_rejects_insoluble():
    X = C.alternating(5).genset
    with pytest.raises(DomainError):
        soluble_solve(X, parse_cycles("(0 1 2)", 5))


def test_compose_lengths():
    X = gs("(0 1 2 3 4)", n=5)
    inner = CertifiedGenSet(PermGroup(X), {"y": Word.power("a", 4)}, X, 4, "given")
    outer = LengthCertificate(X["a"] ** 12, Word.power("y", 3), "Y")
    comp = compose_certificates(outer, inner)
    assert comp.length <= 12 and comp.validate(X)
    single = CertifiedGenSet(PermGroup(X), {"y": Word.letter("a")}, X, 1, "given")
    outer = LengthCertificate(X["a"] ** 3, Word.power("y", 3), "Y")
    assert compose_certificates(outer, single).length == 3


def test_compose_schreier_s4():
    Y = schreier_generators(S4X, A4)
    t = parse_cycles("(0 1 2)", 4)
    outer = length_bfs(Y.genset(), t, name="Y")
    comp = compose_certificates(outer, Y)
    assert evaluate(comp.word, S4X) == t
    assert comp.length <= outer.length * 3


def test_cascade_recurrence():
    assert cascade_bound(1, 3, 5) == 3
    assert cascade_bound(2, 3, 5) == 4 * 3 + 20
    for k in range(1, 9):
        for r in (1, 2, 5):
            assert cascade_bound(k, r, 5) <= 4 * k * k * (r + 2 * 5)


def _a5_socles(k):
    return [C.alternating(5)] * k


def test_cascade_single_factor():
    G = C.alternating(5)
    res = socle_cascade(G.genset, [tuple(range(5))], _a5_socles(1), 1, 5)
    assert res.certificate.length <= 1 and not res.element.is_identity()


def test_cascade_diagonal_pair():
    G = C.diagonal_a5(2)
    res = socle_cascade(G.genset, [tuple(range(5)), tuple(range(5, 10))], _a5_socles(2), 1, 5)
    assert res.certificate.validate(G.genset)
    assert res.certificate.length <= 4 * 4 * (1 + 2 * 5)
    assert not res.element.is_identity()


def test_cascade_full_pair_uses_commutators():
    # S5 x S5 generated diagonally-twisted, with socle A5 in each factor
    t, c = parse_cycles("(0 1)", 5), parse_cycles("(0 1 2 3 4)", 5)

    def pair(x, y):
        return Permutation(list(x.images) + [5 + i for i in y.images])

    X = GenSet.from_list([pair(c, t), pair(t, c)])
    res = socle_cascade(X, [tuple(range(5)), tuple(range(5, 10))], _a5_socles(2), 1, 5)
    assert res.certificate.validate(X)
    assert res.certificate.length <= cascade_bound(2, 1, 5)
    left = res.element.restrict(range(5))
    right = res.element.restrict(range(5, 10))
    A5 = C.alternating(5)
    assert A5.contains(left) and A5.contains(right)
    assert not left.is_identity() and not right.is_identity()


def test_direct_product_single_factor():
    G = C.alternating(5)
    g = parse_cycles("(0 2 4)", 5)
    c = direct_product_solve(G.genset, g)
    assert c.validate(G.genset)
    assert c.length == length_bfs(G.genset, g).length


def test_direct_product_a5_squared():
    a, b = parse_cycles("(0 1 2 3 4)", 5), parse_cycles("(0 1 2)", 5)
    a2, b2 = parse_cycles("(0 1 2)", 5), parse_cycles("(0 1 2 3 4)", 5)

    def pair(x, y):
        return Permutation(list(x.images) + [5 + i for i in y.images])

    X = GenSet.from_list([pair(a, a2), pair(b, b2)])
    assert PermGroup(X).order() == 3600
    rng = random.Random(2)
    for _ in range(3):
        g = Permutation(PermGroup(X).chain.random_element(rng))
        c = direct_product_solve(X, g)
        assert c.validate(X) and evaluate(c.word, X) == g
    assert direct_product_solve(X, Permutation.identity(10)).length == 0


@pytest.mark.parametrize("label", ["symmetric:4", "sl23", "agl1:7", "wreath:S3:C2:imprimitive", "grigorchuk:h=3"])
def test_certified_sets_generate_claimed_subgroups(label):
    X = C.construct(label).genset
    for t in derived_tower(X):
        elems = [g.images for g in t.elements().values()]
        assert len(oracles.elements(elems, X.degree)) == t.subgroup.order()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([lab for lab, _ in lemma_groups(2000)]))
def test_lemma_instances(seed, label):
    G = C.construct(label)
    for r in lemma_instance(G, random.Random(seed), label):
        assert r.ok, r.detail


def test_gamma3_generation_matches_verbal():
    G = C.construct("wreath:C2^3:imprimitive")
    X = G.genset
    Y = CertifiedGenSet(G, {k: Word.letter(k) for k in X.labels}, X, 1, "given")
    T = commutator_generators(X, Y, "gamma3")
    assert T.subgroup.order() == verbal_subgroup(G, "gamma3").order()
    assert T.max_length <= 10 + 2 * lam(T.subgroup.order())


def test_soluble_sandwich_against_bfs():
    G = C.construct("agl1:7")
    X = G.genset
    dist = oracles.distances([g.images for g in X.perms], 7)
    for g in G.elements():
        c = soluble_solve(X, g)
        assert dist[g.images] <= c.length <= c.bound


def test_diameter_within_soluble_bound():
    G = C.construct("symmetric:4")
    assert diameter(G.genset).diameter <= 3 * 16 * math.log2(24) ** 2
