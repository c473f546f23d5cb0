import pytest
from hypothesis import given, settings, strategies as st

from groupdiam.errors import EvaluationError, ParseError
from groupdiam.perm import (GenSet, Permutation, Word, classify_action, evaluate,
                            orbit_partition, parse_cycles, block_system)

import oracles


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


@st.composite
def perm_pair(draw):
    n = draw(st.integers(1, 9))
    return draw(perms(n)), draw(perms(n))


def test_parse_five_cycle():
    assert parse_cycles("(0 1 2 3 4)", 5).images == (1, 2, 3, 4, 0)


def test_parse_empty_is_identity():
    assert parse_cycles("", 3).images == (0, 1, 2)
    assert parse_cycles("()", 3).is_identity()


def test_parse_repeated_point_names_it():
    with pytest.raises(ParseError, match="1"):
        parse_cycles("(0 1)(1 2)", 3)


@pytest.mark.parametrize("text", ["(0 5)", "(0 1", "0 1)", "(0 x)", "((0 1))"])
def test_parse_rejects_bad_text(text):
    with pytest.raises(ParseError):
        parse_cycles(text, 3)


def test_evaluate_cancellation():
    X = GenSet(5, {"a": parse_cycles("(0 1 2 3 4)", 5)})
    assert evaluate(Word((("a", 1), ("a", -1))), X).is_identity()


def test_evaluate_single_letter():
    X = GenSet(3, {"a": parse_cycles("(0 1 2)", 3)})
    assert str(evaluate(Word.letter("a"), X)) == "(0 1 2)"


def test_evaluate_square_of_five_cycle():
    X = GenSet(5, {"a": parse_cycles("(0 1 2 3 4)", 5)})
    assert str(evaluate(Word.power("a", 2), X)) == "(0 2 4 1 3)"


def test_evaluate_unknown_label():
    X = GenSet(3, {"a": parse_cycles("(0 1 2)", 3)})
    with pytest.raises(EvaluationError):
        evaluate(Word.letter("b"), X)


def test_right_action_convention():
    p = parse_cycles("(0 1)", 3)
    q = parse_cycles("(1 2)", 3)
    # 0 -> 1 under p, then 1 -> 2 under q
    assert (p * q)(0) == 2
    assert (p * q).images == oracles.mul(p.images, q.images)


def test_conjugate_and_commutator():
    x = parse_cycles("(0 1 2)", 4)
    y = parse_cycles("(2 3)", 4)
    assert x.conjugate(y) == y.inverse() * x * y
    assert x.commutator(y) == x.inverse() * y.inverse() * x * y


def test_orbit_examples():
    assert orbit_partition([parse_cycles("(0 1 2 3 4)", 5)]) == [[0, 1, 2, 3, 4]]
    assert orbit_partition([Permutation.identity(3)]) == [[0], [1], [2]]
    assert orbit_partition([parse_cycles("(0 1)", 4), parse_cycles("(2 3)", 4)]) == [[0, 1], [2, 3]]


def test_classify_cyclic_four():
    a = classify_action([parse_cycles("(0 1 2 3)", 4)])
    assert a.kind == "imprimitive"
    assert a.blocks == ((0, 2), (1, 3))


def test_classify_a5_primitive():
    a = classify_action([parse_cycles("(0 1 2 3 4)", 5), parse_cycles("(0 1 2)", 5)])
    assert a.kind == "primitive"


def test_classify_intransitive():
    assert classify_action([parse_cycles("(0 1)", 3)]).kind == "intransitive"


def test_classify_picks_least_minimal_system():
    # C6 has minimal systems with blocks of size 2 and of size 3; both are minimal
    a = classify_action([parse_cycles("(0 1 2 3 4 5)", 6)])
    assert a.blocks == ((0, 2, 4), (1, 3, 5))


def test_word_text_round_trip():
    w = Word.parse("a b^-1 c^3")
    assert str(Word.parse(str(w))) == str(w)
    assert len(w) == 5


@given(perm_pair())
def test_inverse_of_product(pq):
    p, q = pq
    assert (p * q).inverse() == q.inverse() * p.inverse()


@given(st.integers(1, 10).flatmap(perms))
def test_render_parse_round_trip(p):
    text = str(p)
    q = parse_cycles(text, p.degree)
    assert q == p
    assert str(q) == text


@given(st.integers(2, 8).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=4)))
def test_orbits_refine_under_generator_removal(gens):
    full = orbit_partition(gens)
    where = {x: i for i, o in enumerate(full) for x in o}
    for k in range(len(gens)):
        for orb in orbit_partition(gens[:k] + gens[k + 1:], gens[0].degree):
            assert len({where[x] for x in orb}) == 1


@settings(max_examples=60)
@given(st.integers(3, 8).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=3)))
def test_primitive_only_if_every_seed_is_trivial(gens):
    n = gens[0].degree
    a = classify_action(gens)
    transitive = len(orbit_partition(gens)) == 1
    trivial = all(len(block_system(gens, n, 0, x)) == 1 for x in range(1, n))
    assert (a.kind == "primitive") == (transitive and trivial)
    if a.kind == "imprimitive":
        blocks = a.blocks
        assert sorted(x for b in blocks for x in b) == list(range(n))
        where = {x: i for i, b in enumerate(blocks) for x in b}
        for g in gens:
            for b in blocks:
                assert len({where[g(x)] for x in b}) == 1
