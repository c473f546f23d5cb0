import random

import pytest
from hypothesis import given, settings, strategies as st

from groupdiam import config
from groupdiam import constructions as C
from groupdiam.diametry import (LengthCertificate, diameter, genset_diameters, growth,
                                irredundant_generating_sets, length_bfs, relative_length,
                                worst_case_diameter)
from groupdiam.errors import CapacityError, DomainError
from groupdiam.group import PermGroup, normal_closure, normal_lattice
from groupdiam.perm import GenSet, Permutation, evaluate, parse_cycles

import oracles


def gs(*cycles, n):
    return GenSet.from_list([parse_cycles(c, n) for c in cycles])


def test_length_of_inverse_generator():
    c = length_bfs(gs("(0 1 2 3 4)", n=5), parse_cycles("(0 4 3 2 1)", 5))
    assert c.length == 1 and c.word.letters == (("a", -1),)


def test_length_of_square():
    assert length_bfs(gs("(0 1 2 3 4)", n=5), parse_cycles("(0 2 4 1 3)", 5)).length == 2


def test_length_in_s3():
    X = gs("(0 1)", "(1 2)", n=3)
    c = length_bfs(X, parse_cycles("(0 2)", 3))
    assert c.length == 3
    assert evaluate(c.word, X) == parse_cycles("(0 2)", 3)


def test_length_of_non_member_is_infinite():
    c = length_bfs(gs("(0 1 2)", n=4), parse_cycles("(0 1)", 4))
    assert c.word is None and c.length == float("inf")


def test_cyclic_diameter():
    assert diameter(gs("(0 1 2 3 4 5)", n=6)).diameter == 3


def test_diameter_with_all_elements_is_one():
    G = C.symmetric(3)
    X = GenSet.from_list([g for g in G.elements() if not g.is_identity()])
    assert diameter(X).diameter == 1


def test_s3_diameter_and_witness():
    res = diameter(gs("(0 1)", "(1 2)", n=3))
    assert res.diameter == 3
    assert str(res.witness) == "(0 2)"
    assert evaluate(res.word, gs("(0 1)", "(1 2)", n=3)) == res.witness
    assert sum(res.sphere_sizes) == res.order == 6


def test_relative_length_examples():
    S4 = C.symmetric(4)
    X = gs("(0 1)", "(0 1 2 3)", n=4)
    A4 = normal_closure(S4, [parse_cycles("(0 1 2)", 4)])
    assert relative_length(X, S4, A4) == 1
    assert relative_length(X, A4, A4) == 0
    trivial = PermGroup.trivial(4)
    assert relative_length(X, S4, trivial) == diameter(X).diameter
    # l_X(A4) over X is the largest length of an element of A4
    dist = oracles.distances([g.images for g in X.perms], 4)
    A4e = oracles.elements([g.images for g in A4.gens], 4)
    assert relative_length(X, A4, trivial) == max(dist[g] for g in A4e)


def test_worst_case_examples():
    assert worst_case_diameter(C.cyclic(5)).diameter == 2
    wc = worst_case_diameter(C.symmetric(3))
    assert wc.diameter == 3
    assert diameter(wc.genset).diameter == 3


@pytest.mark.parametrize("label", ["cyclic:4", "symmetric:3", "elementary:2^2", "cyclic:6", "dihedral:4"])
def test_worst_case_matches_subset_enumeration(label):
    G = C.construct(label)
    want = oracles.worst_case([g.images for g in G.gens], G.degree)
    assert worst_case_diameter(G).diameter == want


def test_irredundant_sets_are_irredundant_and_generate():
    G = C.construct("dihedral:4")
    S, pairs = genset_diameters(G)
    E = S.table
    for s, d in pairs:
        gens = [E.perm(i).images for i in s]
        assert len(oracles.elements(gens, 4)) == 8
        for k in range(len(gens)):
            assert len(oracles.elements(gens[:k] + gens[k + 1:], 4)) < 8
        assert d == oracles.diameter(gens, 4)


def test_genset_budget_raises():
    with pytest.raises(CapacityError):
        list(irredundant_generating_sets(C.symmetric(4), budget=5))


def test_state_budget_raises():
    with pytest.raises(CapacityError):
        diameter(C.grigorchuk_level(5).genset, budget=1000)


def test_growth_of_transposition():
    prof = growth(gs("(0 1)", n=2), 3)
    assert prof.sizes == (1, 2, 2, 2)
    assert prof.saturated and prof.diameter == 1


def test_growth_grigorchuk_saturates_at_order():
    G = C.grigorchuk_level(3)
    prof = growth(G.genset, 40)
    assert prof.saturated and prof.sizes[-1] == 128
    assert prof.diameter == diameter(G.genset).diameter


def test_growth_first_ball_of_involutions():
    X = gs("(0 1)", "(2 3)", "(1 2)", n=4)
    assert growth(X, 1).sizes[1] == len(X) + 1


def test_negative_radius_rejected():
    with pytest.raises(DomainError):
        growth(gs("(0 1)", n=2), -1)


def test_certificate_round_trip():
    X = gs("(0 1)", "(1 2)", n=3)
    c = length_bfs(X, parse_cycles("(0 2)", 3)).with_bound(3, "test")
    back = LengthCertificate.from_dict(c.to_dict())
    assert back == c and back.validate(X)
    bad = LengthCertificate(c.element, c.word, "X", 2, "test")
    assert not bad.validate(X)


@pytest.mark.parametrize("label", ["symmetric:4", "sl23", "agl1:7", "wreath:C2^3:imprimitive", "alternating:5"])
def test_diameter_equals_saturation_radius(label):
    X = C.construct(label).genset
    prof = growth(X, 60)
    assert prof.saturated
    assert prof.diameter == diameter(X).diameter == oracles.diameter([g.images for g in X.perms], X.degree)


def test_monotone_under_adding_generators():
    G = C.symmetric(4)
    rng = random.Random(5)
    elems = [g for g in G.elements() if not g.is_identity()]
    for _ in range(20):
        X = GenSet.from_list(list(G.gens))
        extra = rng.sample(elems, 2)
        Y = GenSet.from_list(list(G.gens) + extra)
        assert diameter(Y).diameter <= diameter(X).diameter


def test_abelian_formula_small():
    for e in C.abelian_corpus(16):
        d = [int(x) for x in e.label.split(":")[1].split(",")]
        assert worst_case_diameter(e.group).diameter == sum(x // 2 for x in d), e.label


@st.composite
def group_x_g(draw):
    labels = ["symmetric:4", "sl23", "agl1:7", "dihedral:6", "psl2:7", "wreath:S3:C2:imprimitive"]
    G = C.construct(draw(st.sampled_from(labels)))
    seed = draw(st.integers(0, 10 ** 6))
    return G, random.Random(seed)


@settings(max_examples=100, deadline=None)
@given(group_x_g())
def test_length_matches_reference_search(case):
    G, rng = case
    E = sorted(oracles.elements([g.images for g in G.gens], G.degree))
    gens = rng.sample(E, 2)
    X = GenSet.from_list([Permutation(g) for g in gens])
    ref = oracles.distances(gens, G.degree)
    g = rng.choice(E)
    c = length_bfs(X, Permutation(g))
    if g in ref:
        assert c.length == ref[g]
        assert evaluate(c.word, X).images == g
    else:
        assert c.word is None


@settings(max_examples=30, deadline=None)
@given(group_x_g())
def test_extension_rule(case):
    G, rng = case
    lattice = normal_lattice(G)
    L, K = sorted(rng.sample(lattice, 2), key=lambda N: N.order()) if len(lattice) > 1 else (lattice[0], lattice[0])
    if not K.is_subgroup_of(G) or not L.is_subgroup_of(K):
        L, K = PermGroup.trivial(G.degree), K
    X = G.genset
    assert relative_length(X, G, L) <= relative_length(X, G, K) + relative_length(X, K, L)


def test_config_env_override(monkeypatch):
    monkeypatch.setenv("GROUPDIAM_STATE_BUDGET", "123")
    import importlib
    fresh = importlib.reload(config)
    try:
        assert fresh.STATE_BUDGET == 123
    finally:
        monkeypatch.delenv("GROUPDIAM_STATE_BUDGET")
        importlib.reload(config)
