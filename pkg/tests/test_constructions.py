import pytest

from groupdiam import constructions as C
from groupdiam.diametry import length_bfs
from groupdiam.errors import CapacityError, DomainError, ParseError
from groupdiam.group import composition_series
from groupdiam.invariants import mu_profile
from groupdiam.perm import Permutation, classify_action, parse_cycles


def test_classic_examples():
    assert [str(g) for g in C.classic("cyclic", 6).gens] == ["(0 1 2 3 4 5)"]
    D = C.classic("dihedral", 4)
    assert [str(g) for g in D.gens] == ["(0 1 2 3)", "(0 3)(1 2)"]
    assert D.order() == 8
    assert C.classic("alternating", 5).order() == 60


def test_classic_capacity():
    with pytest.raises(CapacityError):
        C.classic("symmetric", 1 << 17)


def test_wreath_a5_a5():
    W = C.wreath(C.alternating(5), C.alternating(5))
    assert W.degree == 25 and W.order() == 60 ** 6


def test_wreath_c2_c2_is_d4():
    W = C.wreath(C.cyclic(2), C.cyclic(2))
    assert (W.degree, W.order()) == (4, 8)
    assert not W.is_abelian()
    # D4 has exactly two elements of order 4 and five involutions
    orders = sorted(g.order() for g in W.elements())
    assert orders == [1, 2, 2, 2, 2, 2, 4, 4]


def test_wreath_blocks():
    W = C.wreath(C.symmetric(3), C.cyclic(2))
    a = classify_action(W.genset)
    assert a.kind == "imprimitive"
    assert a.blocks == ((0, 1, 2), (3, 4, 5))


def test_wreath_orders_and_degrees():
    for B, T in [(C.cyclic(3), C.symmetric(3)), (C.symmetric(3), C.cyclic(2)), (C.cyclic(2), C.cyclic(3))]:
        W = C.wreath(B, T)
        assert W.order() == B.order() ** T.degree * T.order()
        P = C.wreath(B, T, "product")
        assert P.degree == B.degree ** T.degree


def test_iterated_wreath():
    A = C.iterated_wreath_a5(1)
    assert A.order() == 60 and mu_profile(A).mu_na == 5
    W = C.iterated_wreath_a5(2)
    assert W.degree == 25 and mu_profile(W).mu_na == 5 ** 6
    P = C.iterated_wreath_a5(2, "product")
    assert P.degree == 3125
    assert P.action().kind == "primitive"


def test_affine_examples():
    G = C.affine_deleted_module(4, 3)
    assert (G.degree, G.order()) == (27, 27 * 12)
    G = C.affine_deleted_module(5, 2)
    assert (G.degree, G.order()) == (16, 16 * 60)
    with pytest.raises(DomainError):
        C.affine_deleted_module(4, 2)


def test_affine_transitive_and_point_stabilizer():
    G = C.affine_deleted_module(4, 3)
    assert G.is_transitive()
    stab = G.chain_with_base([0])
    # the stabilizer of the zero vector has order |A4|
    assert stab.order() // len(stab.orbit(0)) == 12


def test_affine_probe_grows_with_p():
    lengths = []
    for p in (3, 5, 7):
        G = C.affine_deleted_module(4, p)
        v = G.genset["v"]
        lengths.append(length_bfs(G.genset, v ** (p - 1) if p > 2 else v).length)
    assert lengths == sorted(lengths)


def test_grigorchuk_level_one():
    G = C.grigorchuk_level(1)
    assert str(G.genset["a"]) == "(0 1)"
    assert all(G.genset[x].is_identity() for x in "bcd")
    assert G.order() == 2


@pytest.mark.parametrize("h", [3, 4])
def test_grigorchuk_orders(h):
    assert C.grigorchuk_level(h).order() == 2 ** (5 * 2 ** h // 8 + 2)


@pytest.mark.parametrize("h", range(1, 8))
def test_grigorchuk_generators(h):
    X = C.grigorchuk_level(h).genset
    for x in "abcd":
        assert (X[x] * X[x]).is_identity()
    assert X["d"] == X["b"] * X["c"]


@pytest.mark.parametrize("h", range(1, 7))
def test_grigorchuk_levels_consistent(h):
    deep = C.grigorchuk_level(h + 1).genset
    shallow = C.grigorchuk_level(h).genset
    for x in "abcd":
        # the first letter is the most significant digit, so the prefix is x // 2
        images = [deep[x](2 * i) // 2 for i in range(2 ** h)]
        assert images == list(shallow[x].images)


@pytest.mark.parametrize("h", [1, 2, 3, 4, 5])
def test_spinal_matches_grigorchuk(h):
    a = C.spinal_level(C.grigorchuk_spec(), h).genset
    b = C.grigorchuk_level(h).genset
    assert all(a[x] == b[x] for x in "abcd")


def test_spinal_level_one_is_rooted_only():
    G = C.spinal_level(C.illustrative_spec(), 1)
    assert G.order() == 2 and G.degree == 2


def test_illustrative_spinal_factors():
    G = C.spinal_level(C.illustrative_spec(), 2)
    assert G.degree == 10 and G.is_transitive()
    names = {str(f) for f in composition_series(G)[1]}
    assert {"C2", "A5"} <= names


def test_spinal_rejects_intransitive_level():
    spec = C.SpinalSpec((2, 2), {"a": Permutation.identity(2)}, {}, "bad")
    with pytest.raises(DomainError):
        C.spinal_level(spec, 2)


def test_primitive_corpus_ten():
    labels = {e.label for e in C.primitive_corpus(10)}
    for want in ["cyclic:5", "cyclic:7", "agl1:5", "agl1:7", "psl2:7"]:
        assert want in labels
    for n in range(5, 11):
        assert f"alternating:{n}" in labels and f"symmetric:{n}" in labels


def test_primitive_corpus_is_primitive():
    for e in C.primitive_corpus(30):
        assert e.group.action().kind == "primitive", e.label


def test_psl27_mu():
    m = mu_profile(C.psl2(7))
    assert m.mu_cf == 7 < 8 ** 5


def test_labels_round_trip():
    for e in C.soluble_corpus(200) + C.transitive_corpus() + C.primitive_corpus(30) + C.abelian_corpus(12):
        G = C.construct(e.label)
        assert (G.order(), G.degree) == (e.group.order(), e.degree), e.label


@pytest.mark.parametrize("bad", ["", "nosuch:3", "cyclic:x", "wreath:A5", "grigorchuk:h="])
def test_bad_labels(bad):
    with pytest.raises((ParseError, DomainError)):
        C.construct(bad)


def test_diagonal_and_full():
    assert C.diagonal_a5(3).order() == 60
    assert C.diagonal_a5(2, full=True).order() == 3600
    assert C.construct("diagonal-a5:k=2").degree == 10


def test_s_on_pairs():
    G = C.sym_on_pairs(5)
    assert (G.degree, G.order()) == (10, 120)
    assert G.action().kind == "primitive"


def test_cycle_of_every_point():
    g = parse_cycles("(0 1 2)", 3)
    assert C.cyclic(3).contains(g)
