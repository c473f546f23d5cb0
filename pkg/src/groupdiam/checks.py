"""Verification runs shared by the command line and the acceptance tests.

Each check returns :class:`CheckResult` records; ``ok`` is computed by
comparing library output with an independent computation (breadth-first
search, chain orders, closed-form values) wherever one is affordable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import constructions as C
from .diametry import _search, length_bfs, relative_length, worst_case_diameter
from .group import PermGroup, normal_closure, verbal_subgroup
from .invariants import B1, mu_profile, transitive_checks
from .perm import GenSet, Permutation, default_labels
from .synth import (commutator_generators, compose_certificates, derived_tower, lam,
                    milnor_stabilize, schreier_generators)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def random_element(G: PermGroup, rng: random.Random) -> Permutation:
    return Permutation(G.chain.random_element(rng), check=False)


def random_generating_set(G: PermGroup, rng: random.Random, size: int = 2) -> GenSet:
    """Random elements of ``G`` until they generate it (at least ``size`` of them)."""
    target = G.order()
    gens = [random_element(G, rng) for _ in range(size)]
    while PermGroup(gens, G.degree).order() != target:
        gens.append(random_element(G, rng))
    return GenSet.from_list(gens, default_labels(len(gens)), degree=G.degree)


def _max_length_in(X: GenSet, N: PermGroup) -> int:
    """Largest ``l_X(n)`` over ``n`` in ``N``, from one full breadth-first search."""
    layers = _search(X)
    best = 0
    for r in range(len(layers.keys)):
        if N.chain.contains_batch(layers.rows(r)).any():
            best = r
    return best


def lemma_instance(G: PermGroup, rng: random.Random, label: str = "G") -> list[CheckResult]:
    """One randomized instance of every generation and length rule.

    A random generating set ``X`` and the normal closure ``N`` of a random
    nontrivial element are drawn; every rule is then checked on them.
    """
    X = random_generating_set(G, rng)
    order = G.order()
    g = random_element(G, rng)
    while g.is_identity() and order > 1:
        g = random_element(G, rng)
    N = normal_closure(G, [g])
    tag = f"{label}|X={X}|N={N.order()}"
    out = []

    qd = relative_length(X, G, N)
    S = schreier_generators(X, N)
    out.append(CheckResult("schreier", S.validate() and S.bound == 2 * qd + 1
                           and S.max_length <= 2 * qd + 1,
                           f"{tag} max={S.max_length} quotient_diam={qd}"))

    seed = length_bfs(X, g).word
    M = milnor_stabilize(X, [seed])
    ok = (M.validate() and M.subgroup.order() == N.order()
          and M.details["iterations"] <= lam(N.order())
          and M.max_length <= len(seed) + 2 * lam(N.order()))
    out.append(CheckResult("milnor", ok, f"{tag} k={M.details['iterations']} max={M.max_length}"))

    ell = M.max_length
    D = commutator_generators(X, M, "derived")
    ok = (D.validate() and D.subgroup.order() == verbal_subgroup(N, "derived").order()
          and D.max_length <= 4 * ell + 2 * lam(D.subgroup.order()))
    out.append(CheckResult("commutator-derived", ok, f"{tag} max={D.max_length} bound={D.bound}"))
    T = commutator_generators(X, M, "gamma3")
    ok = (T.validate() and T.subgroup.order() == verbal_subgroup(N, "gamma3").order()
          and T.max_length <= 10 * ell + 2 * lam(T.subgroup.order()))
    out.append(CheckResult("commutator-gamma3", ok, f"{tag} max={T.max_length} bound={T.bound}"))

    tower = derived_tower(X)
    log_g = math.log2(order) if order > 1 else 0.0
    ok = all(t.validate() and t.max_length <= 4 ** i * max(log_g, 1.0) + 1e-9
             for i, t in enumerate(tower))
    out.append(CheckResult("derived-tower", ok, f"{tag} orders={[t.subgroup.order() for t in tower]}"))

    h = random_element(N, rng)
    outer = length_bfs(S.genset(), h, name="Y")
    comp = compose_certificates(outer, S)
    ok = comp.validate(X) and comp.length <= outer.length * S.max_length
    out.append(CheckResult("chain-rule", ok, f"{tag} outer={outer.length} composed={comp.length}"))

    diam = len(_search(X).keys) - 1
    inner = _max_length_in(X, N)
    out.append(CheckResult("extension-rule", diam <= qd + inner,
                           f"{tag} diam={diam} quotient={qd} normal={inner}"))
    return out


def lemma_groups(max_order: int = 10 ** 4) -> list[tuple[str, PermGroup]]:
    """Corpus groups used for randomized lemma instances."""
    labels = ["symmetric:4", "alternating:5", "symmetric:5", "dihedral:6", "sl23", "agl1:7",
              "abelian:2,4", "wreath:C2^3:imprimitive", "grigorchuk:h=3", "affine:n=4,p=3",
              "psl2:7", "wreath:S3:C2:imprimitive", "diagonal-a5:k=2", "symmetric:6",
              "psl2:11", "product-a5:k=2", "wreath:S3:S3:imprimitive"]
    out = []
    for lab in labels:
        G = C.construct(lab)
        if G.order() <= max_order:
            out.append((lab, G))
    return out


def lemma_suite(instances: int = 40, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    groups = lemma_groups()
    results = []
    for i in range(instances):
        label, G = groups[i % len(groups)]
        results += lemma_instance(G, rng, label)
    return results


def grigorchuk_order_formula(h: int) -> int:
    return 2 ** (5 * 2 ** h // 8 + 2)


def paper_numbers() -> list[CheckResult]:
    """Fixed numerical values: worst-case diameter of A5, level orders, mu_na sharpness."""
    out = []
    wc = worst_case_diameter(C.alternating(5))
    out.append(CheckResult("diam-A5", wc.diameter == 10, f"diameter={wc.diameter} sets={wc.sets_examined}"))
    for h in (3, 4, 5, 6):
        got = C.grigorchuk_level(h).order()
        want = grigorchuk_order_formula(h)
        out.append(CheckResult(f"grigorchuk-order-h{h}", got == want, f"order={got} formula={want}"))
    mu = mu_profile(C.alternating(5)).mu_na
    rhs = 5 ** 1.25 / B1
    out.append(CheckResult("mu-na-sharp-A5", math.isclose(mu, rhs, rel_tol=1e-9), f"mu_na={mu} bound={rhs!r}"))
    mu = mu_profile(C.iterated_wreath_a5(2)).mu_na
    rhs = B1 ** 24
    out.append(CheckResult("mu-na-sharp-A5wrA5", mu == 5 ** 6 and math.isclose(mu, rhs, rel_tol=1e-9),
                           f"mu_na={mu} bound={rhs!r}"))
    return out


def abelian_formula(max_order: int = 24) -> list[CheckResult]:
    """Worst-case diameter of each abelian group against the sum of floor(d_i / 2)."""
    out = []
    for entry in C.abelian_corpus(max_order):
        d = [int(x) for x in entry.label.split(":")[1].split(",")]
        want = sum(x // 2 for x in d)
        got = worst_case_diameter(entry.group).diameter
        out.append(CheckResult(f"abelian-{entry.label}", got == want, f"diameter={got} formula={want}"))
    return out


def palfy_wolf(max_degree: int = 100) -> list[CheckResult]:
    out = []
    for entry in C.primitive_corpus(max_degree):
        mu = mu_profile(entry.group).mu_cf
        n = entry.degree
        out.append(CheckResult(f"palfy-wolf-{entry.label}", mu is not None and mu < n ** 5,
                               f"mu_cf={mu} n^5={n ** 5}"))
    return out


def guralnick(max_order: int = 10 ** 4) -> list[CheckResult]:
    out = []
    for entry in C.transitive_corpus(max_order):
        chk = transitive_checks(entry.group)
        out.append(CheckResult(f"guralnick-{entry.label}", chk.ok,
                               f"normal={len(chk.normal_checks)} factors={[f for f, _ in chk.factor_checks]}"))
    return out


def corpus_suite(max_degree: int = 100, abelian_order: int = 24) -> list[CheckResult]:
    return abelian_formula(abelian_order) + palfy_wolf(max_degree) + guralnick()


SUITES = {
    "lemmas": lemma_suite,
    "corpus": corpus_suite,
    "paper-numbers": paper_numbers,
}

