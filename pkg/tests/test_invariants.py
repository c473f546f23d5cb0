import math

import pytest

from groupdiam import constructions as C
from groupdiam.group import composition_series, derived_series, normal_lattice, quotient_action
from groupdiam.invariants import (B1, C1, C_PYBER, bound_report, epsilon, is_nilpotent,
                                  mu_profile, theta, transitive_checks)

import oracles


def test_constants():
    assert B1 == pytest.approx(5 ** 0.25)
    assert C1 == pytest.approx(math.log(7 * B1, 8))
    assert C_PYBER == pytest.approx(3.24399, abs=1e-5)


@pytest.mark.parametrize("label", ["symmetric:4", "sl23", "agl1:7", "grigorchuk:h=3", "dihedral:6"])
def test_mu_cf_of_soluble_is_order(label):
    G = C.construct(label)
    assert mu_profile(G).mu_cf == G.order()


def test_mu_s5():
    m = mu_profile(C.symmetric(5))
    assert (m.mu_cf, m.mu_ab, m.mu_na) == (10, 2, 5)


def test_mu_wreath():
    assert mu_profile(C.iterated_wreath_a5(2)).mu_na == 5 ** 6
    assert mu_profile(C.iterated_wreath_a5(1)).mu_na == 5


@pytest.mark.parametrize("label", ["symmetric:5", "psl2:7", "product-a5:k=2",
                                   "spinal:illustrative:h=2", "agl1:11", "pairs:5"])
def test_mu_cf_splits(label):
    m = mu_profile(C.construct(label))
    assert m.mu_cf == m.mu_ab * m.mu_na


@pytest.mark.parametrize("label", ["symmetric:5", "product-a5:k=2", "wreath:S3:C2:imprimitive", "symmetric:4"])
def test_mu_na_multiplicative(label):
    G = C.construct(label)
    whole = mu_profile(G).mu_na
    for N in normal_lattice(G)[1:]:  # N = 1 gives G/N = G back
        Q = quotient_action(G, N).group
        assert whole == mu_profile(N).mu_na * mu_profile(Q).mu_na


def test_mu_na_subdirect():
    assert mu_profile(C.diagonal_a5(3)).mu_na <= 5 ** 3
    assert mu_profile(C.diagonal_a5(3, full=True)).mu_na == 5 ** 3


def test_theta_soluble_is_one():
    t = theta(C.symmetric(4))
    assert (t.theta1, t.theta2) == (1.0, 1.0)


def test_theta_a5():
    t = theta(C.alternating(5))
    assert t.theta1 == pytest.approx(math.log(10) / math.log(5))
    assert t.theta2 == pytest.approx(math.log(10) / math.log(math.log(60)))
    assert t.theta1 == pytest.approx(1.431, abs=1e-3)


def test_theta_exact_policy_matches_table():
    t = theta(C.symmetric(5), policy="exact")
    assert t.exactness == "exact"
    assert t.diameters["A5"] == 10
    assert t.theta1 <= 2 * t.theta2


def test_epsilon_examples():
    e = epsilon(C.symmetric(4))
    assert (e["epsilon"], e["epsilon0"]) == (3, 3)
    A = C.abelian([2, 6])
    assert epsilon(A)["epsilon"] == epsilon(A)["exponent"] == 6
    assert epsilon(C.alternating(5))["epsilon"] == 1


@pytest.mark.parametrize("label", ["symmetric:4", "sl23", "agl1:7", "dihedral:6", "symmetric:5",
                                   "wreath:S3:C2:imprimitive", "grigorchuk:h=3"])
def test_epsilon_chain(label):
    e = epsilon(C.construct(label))
    assert e["epsilon0"] <= e["epsilon"] <= e["exponent"]


def test_epsilon_against_enumeration():
    G = C.symmetric(4)
    E = oracles.elements([g.images for g in G.gens], 4)
    best = 1
    for N in normal_lattice(G):
        NE = oracles.elements([g.images for g in N.gens], 4) if N.gens else {oracles.ident(4)}
        D = oracles.derived(NE, 4)
        # exponent of N/N': least e with x^e in N' for every x
        for x in NE:
            e, y = 1, x
            while y not in D:
                y = oracles.mul(y, x)
                e += 1
            best = max(best, e)
    assert len(E) == 24
    assert epsilon(G)["epsilon"] == best


def test_nilpotent():
    assert is_nilpotent(C.dihedral(4))
    assert is_nilpotent(C.grigorchuk_level(3))
    assert not is_nilpotent(C.symmetric(3))


def test_transitive_checks_examples():
    assert transitive_checks(C.cyclic(6)).ok
    chk = transitive_checks(C.symmetric(4))
    assert (4, 4, 2) in chk.normal_checks
    assert chk.ok


def test_wreath_factor_degrees():
    _, factors = composition_series(C.iterated_wreath_a5(2))
    assert all(f.mu == 5 <= 25 for f in factors)


def test_glasby_on_soluble_corpus():
    for e in C.soluble_corpus(200):
        L = derived_series(e.group).length
        assert L < 3 * math.log2(math.log2(e.group.order())) + 9


def test_report_s4_soluble():
    rep = bound_report(C.symmetric(4), "soluble")
    entry = rep.entry("soluble-diameter")
    assert entry.verdict == "holds"
    assert entry.lhs == 6
    assert entry.rhs == pytest.approx(3 * 16 * math.log2(24) ** 2)


def test_report_s5_primitive():
    rep = bound_report(C.symmetric(5), "primitive")
    e = rep.entry("palfy-wolf-general")
    assert (e.lhs, e.rhs, e.verdict) == (10, 5 ** 5, "holds")
    assert all(x.verdict != "fails" for x in rep.entries)


def test_report_wreath_sharp():
    rep = bound_report(C.iterated_wreath_a5(2), "transitive")
    e = rep.entry("mu-na-degree")
    assert e.lhs == 5 ** 6
    assert e.rhs == pytest.approx(B1 ** 24)
    assert e.verdict == "holds"


def test_report_contexts_run():
    G = C.construct("dihedral:4")
    for ctx in ("abstract", "transitive", "soluble", "nilpotent"):
        rep = bound_report(G, ctx)
        assert rep.entries
        assert all(x.verdict != "fails" for x in rep.entries)
        assert rep.to_dict()["context"] == ctx
