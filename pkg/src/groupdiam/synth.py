"""Constructive word synthesis with certified length bounds.

Each routine builds words over an ambient generating set ``X`` and records the
bound it promises next to the length it achieved.  Bounds use the subgroup
length instantiated as ``floor(log2 |N|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ._arrays import dtype_for, keys
from .chain import StabChain
from .diametry import LengthCertificate, _search, diameter, length_bfs
from .errors import DomainError
from .group import PermGroup, _ActionHom, coset_canonizer, identify_factor, verbal_subgroup
from .perm import GenSet, Permutation, Word, evaluate

__all__ = [
    "CertifiedGenSet",
    "CascadeResult",
    "lam",
    "schreier_generators",
    "milnor_stabilize",
    "commutator_generators",
    "derived_tower",
    "abelian_solve",
    "soluble_solve",
    "socle_cascade",
    "cascade_bound",
    "direct_product_solve",
    "compose_certificates",
]


def lam(order: int) -> int:
    """Subgroup-length stand-in: ``floor(log2 order)``, exact for integers."""
    return order.bit_length() - 1 if order >= 1 else 0


@dataclass
class CertifiedGenSet:
    """Words over ``ambient`` whose values generate ``subgroup``, with a length bound."""

    subgroup: PermGroup
    words: dict[str, Word]
    ambient: GenSet
    bound: float
    bound_source: str
    details: dict = field(default_factory=dict)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.words.values()), default=0)

    def elements(self) -> dict[str, Permutation]:
        return {label: evaluate(w, self.ambient) for label, w in self.words.items()}

    def genset(self) -> GenSet:
        """The evaluated words as a labelled generating set of their own."""
        return GenSet(self.ambient.degree, self.elements())

    def validate(self) -> bool:
        """Words land in the subgroup, generate it, and respect the bound."""
        elems = list(self.elements().values())
        if any(not self.subgroup.contains(e) for e in elems):
            return False
        gens = [e for e in elems if not e.is_identity()]
        order = PermGroup(gens, self.ambient.degree).order() if gens else 1
        if order != self.subgroup.order():
            return False
        return self.max_length <= self.bound + 1e-9

    def to_dict(self) -> dict:
        return {
            "order": self.subgroup.order(),
            "words": {label: w.to_list() for label, w in self.words.items()},
            "max_length": self.max_length,
            "bound": self.bound,
            "bound_source": self.bound_source,
            **{k: v for k, v in self.details.items() if isinstance(v, (int, float, str))},
        }


def _labelled(words: Sequence[Word], prefix: str) -> dict[str, Word]:
    return {f"{prefix}{i}": w for i, w in enumerate(words)}


def _word_list(Y) -> list[Word]:
    if isinstance(Y, CertifiedGenSet):
        return list(Y.words.values())
    if isinstance(Y, Mapping):
        return list(Y.values())
    return [w if isinstance(w, Word) else Word.parse(w) for w in Y]


def _coset_layers(X: GenSet, N: PermGroup):
    canon = coset_canonizer(N)
    layers = _search(X, canon=canon, budget=None)
    dt = dtype_for(X.degree)

    def locate(p: Permutation):
        row = canon(p.to_array()[None, :].astype(dt))
        return layers.find(keys(np.ascontiguousarray(row, dtype=dt))[0])

    return layers, locate


# ---------------------------------------------------------------------------
# generating sets of subgroups


def schreier_generators(X: GenSet, N: PermGroup) -> CertifiedGenSet:
    """Schreier generators of a normal subgroup from a shortest coset transversal.

    The transversal is read off a breadth-first search on the cosets of ``N``,
    so every representative has length at most ``diam(G/N)`` and each
    generator ``t x s^-1`` has length at most ``2 diam(G/N) + 1``.
    """
    G = PermGroup(X)
    if N.degree != X.degree or not N.is_normal_in(G):
        raise DomainError("subgroup is not normal in the group generated by X")
    if N.order() == G.order():
        words = {label: Word.letter(label) for label, p in X.generators.items() if not p.is_identity()}
        return CertifiedGenSet(N, words, X, 1, "schreier", {"quotient_diameter": 0})
    layers, locate = _coset_layers(X, N)
    diam = len(layers.keys) - 1
    chain = StabChain(X.degree)
    found: list[Word] = []
    for r in range(len(layers.keys)):
        for pos in range(len(layers.keys[r])):
            w_t = layers.word(r, pos)
            t = evaluate(w_t, X)
            for label, x in X.generators.items():
                tx = t * x
                hit = locate(tx)
                w_s = layers.word(*hit)
                y = tx * evaluate(w_s, X).inverse()
                if y.is_identity() or not chain.add(y.images):
                    continue
                found.append((w_t + Word.letter(label) + w_s.inverse()).reduced())
    cert = CertifiedGenSet(N, _labelled(found, "y"), X, 2 * diam + 1, "schreier",
                           {"quotient_diameter": diam})
    if chain.order() != N.order():
        raise AssertionError("Schreier generators do not generate the subgroup")
    return cert


def milnor_stabilize(X: GenSet, Y, prefix: str = "z") -> CertifiedGenSet:
    """Generators of the normal closure of ``<Y>`` by conjugating over growing balls.

    ``Z_i`` collects ``y^g`` for ``g`` in the ball of radius ``i``; the loop stops
    at the first ``k`` with ``<Z_k> = <Z_(k+1)>``, which forces normality.  Only
    conjugates that enlarge the current subgroup are kept.
    """
    words = _word_list(Y)
    G = PermGroup(X)
    elems = [evaluate(w, X) for w in words]
    for e in elems:
        if not G.contains(e):
            raise DomainError("a word of Y does not evaluate inside <X>")
    ell = max((len(w) for w in words), default=0)
    chain = StabChain(X.degree)
    kept: list[Word] = []
    seeds = [(w, e) for w, e in zip(words, elems) if not e.is_identity()]
    for w, e in seeds:
        if chain.add(e.images):
            kept.append(w)
    k = 0
    if seeds:
        radius = 0
        while True:
            radius += 1
            layers = _search(X, max_radius=radius)
            if len(layers.keys) <= radius:  # the ball has stopped growing
                break
            grew = False
            rows = layers.rows(radius)
            for pos in range(len(rows)):
                g = Permutation(rows[pos].tolist(), check=False)
                gi = g.inverse()
                w_g = None
                for w, e in seeds:
                    c = gi * e * g
                    if chain.add(c.images):
                        if w_g is None:
                            w_g = layers.word(radius, pos)
                        kept.append(w.conjugate(w_g))
                        grew = True
            if not grew:
                break
            k = radius
    order = chain.order()
    N = PermGroup([evaluate(w, X) for w in kept], X.degree) if kept else PermGroup.trivial(X.degree)
    if not N.is_normal_in(G):
        raise AssertionError("stabilized subgroup is not normal")
    bound = ell + 2 * lam(order)
    return CertifiedGenSet(N, _labelled(kept, prefix), X, bound, "milnor",
                           {"iterations": k, "input_length": ell, "lambda": lam(order)})


def commutator_generators(X: GenSet, Y: CertifiedGenSet, kind: str = "derived") -> CertifiedGenSet:
    """Generators of ``N'`` (``kind="derived"``) or ``gamma_3(N)`` (``kind="gamma3"``).

    Seeds are commutators of the words of ``Y``, which normally generate the
    target subgroup, and are then stabilized under conjugation.
    """
    items = [w for w in Y.words.values() if not evaluate(w, X).is_identity()]
    ell = max((len(w) for w in Y.words.values()), default=0)
    if kind == "derived":
        seeds = [a.commutator(b) for i, a in enumerate(items) for b in items[i + 1:]]
        factor = 4
    elif kind == "gamma3":
        seeds = [a.commutator(b).commutator(c) for a in items for b in items for c in items]
        factor = 10
    else:
        raise DomainError(f"unknown commutator kind {kind!r}")
    out = milnor_stabilize(X, seeds, prefix="c" if kind == "derived" else "t")
    expected = verbal_subgroup(Y.subgroup, kind)
    if expected.order() != out.subgroup.order():
        raise AssertionError(f"{kind} generators produced the wrong subgroup")
    out.bound = factor * ell + 2 * lam(out.subgroup.order())
    out.bound_source = "commutator-" + kind
    out.details["input_length"] = ell
    return out


def derived_tower(X: GenSet) -> list[CertifiedGenSet]:
    """Certified generating sets for ``G, G', G'', ...``.

    Term ``i`` is bounded by ``4^i log2 |G|``.  The tower ends at the trivial
    group, or at the first perfect term for an insoluble group.
    """
    G = PermGroup(X)
    log_g = math.log2(G.order())
    words = {label: Word.letter(label) for label, p in X.generators.items() if not p.is_identity()}
    current = CertifiedGenSet(G, words, X, max(log_g, 1.0) if words else 0, "derived-tower",
                              {"level": 0, "step_bound": 1})
    tower = [current]
    while not current.subgroup.is_trivial():
        nxt = commutator_generators(X, current, "derived")
        if nxt.subgroup.order() == current.subgroup.order():
            break
        level = len(tower)
        nxt.details["step_bound"] = nxt.bound
        nxt.details["level"] = level
        nxt.bound = 4 ** level * log_g
        nxt.bound_source = "derived-tower"
        tower.append(nxt)
        current = nxt
    return tower


# ---------------------------------------------------------------------------
# solving for words


def _order_modulo(y: Permutation, K: PermGroup) -> int:
    p = y
    k = 1
    while not K.contains(p):
        p = p * y
        k += 1
    return k


def abelian_solve(Y: CertifiedGenSet, a: Permutation, modulo: PermGroup | None = None) -> LengthCertificate:
    """Word over the labels of ``Y`` for ``a`` in the abelian group ``<Y>`` (or ``<Y>K/K``).

    ``Y`` is first pruned greedily, in input order, to an irredundant subset.
    Exponent vectors are then found by meeting in the middle, choosing the
    signed exponents of least total length.
    """
    A = Y.subgroup
    n = Y.ambient.degree
    K = modulo if modulo is not None else PermGroup.trivial(n)
    elems = Y.elements()
    if not A.contains(a):
        raise DomainError("element is not in the subgroup")
    labels = [lab for lab, e in elems.items() if not K.contains(e)]
    for i, x in enumerate(labels):
        for z in labels[i + 1:]:
            if not K.contains(elems[x].commutator(elems[z])):
                raise DomainError("generated group is not abelian modulo the given subgroup")
    kgens = K.nontrivial_gens()
    target = StabChain(n, [g.images for g in kgens] + [elems[x].images for x in labels]).order()
    index = target // K.order()
    chosen = list(labels)
    for x in list(labels):
        rest = [elems[z].images for z in chosen if z != x]
        if StabChain(n, [g.images for g in kgens] + rest).order() == target:
            chosen.remove(x)
    orders = {x: _order_modulo(elems[x], K) for x in chosen}
    exp = math.lcm(*orders.values()) if orders else 1
    canon = coset_canonizer(K)
    dt = dtype_for(n)

    def half(labs):
        rows = np.arange(n, dtype=dt)[None, :]
        cost = np.zeros(1, dtype=np.int64)
        expo = np.zeros((1, 0), dtype=np.int64)
        for x in labs:
            o = orders[x]
            xr = elems[x].to_array().astype(np.intp)
            powers = [np.arange(n, dtype=np.intp)]
            for _ in range(o - 1):
                powers.append(xr[powers[-1]])
            new_rows, new_cost, new_exp = [], [], []
            for e, p in enumerate(powers):
                new_rows.append(p[rows].astype(dt))  # rows * x^e
                new_cost.append(cost + min(e, o - e))
                new_exp.append(np.hstack([expo, np.full((len(expo), 1), e)]))
            rows = np.concatenate(new_rows)
            cost = np.concatenate(new_cost)
            expo = np.concatenate(new_exp)
        return rows, cost, expo

    first, second = chosen[: len(chosen) // 2], chosen[len(chosen) // 2:]
    r1, c1, e1 = half(first)
    r2, c2, e2 = half(second)
    k1 = keys(np.ascontiguousarray(canon(r1), dtype=dt))
    # keep the cheapest exponent vector per coset of the first half
    order1 = np.lexsort((c1, k1))
    k1s, pos = np.unique(k1[order1], return_index=True)
    best1 = order1[pos]
    # need b1 = a * b2^-1 modulo K
    inv2 = np.empty_like(r2)
    np.put_along_axis(inv2, r2.astype(np.intp), np.arange(n, dtype=dt)[None, :].repeat(len(r2), 0), axis=1)
    arow = a.to_array().astype(np.intp)
    need = np.take_along_axis(inv2, np.broadcast_to(arow, inv2.shape), axis=1)  # a * b2^-1
    kq = keys(np.ascontiguousarray(canon(need), dtype=dt))
    hit = np.searchsorted(k1s, kq)
    hit = np.minimum(hit, len(k1s) - 1)
    ok = k1s[hit] == kq
    if not ok.any():
        raise AssertionError("meet in the middle found no solution")
    total = np.where(ok, c1[best1[hit]] + c2, np.iinfo(np.int64).max)
    j = int(np.argmin(total))
    i = int(best1[hit[j]])
    letters: list[tuple[str, int]] = []
    for lab, e in list(zip(first, e1[i])) + list(zip(second, e2[j])):
        o = orders[lab]
        e = int(e)
        power = e if e <= o - e else e - o
        letters.extend(Word.power(lab, power).letters)
    word = Word(tuple(letters))
    bound = exp * lam(index)
    cert = LengthCertificate(a, word, "Y", bound, "abelian-diameter")
    value = evaluate(word, Y.genset()) if word.letters else Permutation.identity(n)
    if not K.contains(value.inverse() * a):
        raise AssertionError("abelian solution does not match the target")
    return cert


def compose_certificates(outer: LengthCertificate, inner: CertifiedGenSet) -> LengthCertificate:
    """Rewrite a word over the labels of ``inner`` as a word over its ambient set."""
    if outer.word is None:
        raise DomainError("cannot compose an unreachable certificate")
    missing = outer.word.labels() - set(inner.words)
    if missing:
        raise DomainError(f"labels {sorted(missing)} are not defined by the inner generating set")
    word = outer.word.substitute(inner.words)
    bound = len(outer.word) * inner.max_length
    return LengthCertificate(outer.element, word, "X", bound, "chain-rule")


def soluble_solve(X: GenSet, g: Permutation) -> LengthCertificate:
    """Word for ``g`` in a soluble group by peeling the derived series.

    At each level the current element is matched modulo the next derived
    term by :func:`abelian_solve`, and the matching word is stripped off.
    """
    G = PermGroup(X)
    if g.degree != X.degree or not G.contains(g):
        raise DomainError("element is not in the group generated by X")
    tower = derived_tower(X)
    last = tower[-1].subgroup
    if not last.is_trivial():
        raise DomainError(f"group is insoluble: derived series stabilizes at a perfect subgroup of order {last.order()}")
    L = len(tower) - 1
    eps0 = 1
    word = Word()
    h = g
    for i in range(L):
        K = tower[i + 1].subgroup
        level = tower[i]
        elems = level.elements()
        exps = [_order_modulo(e, K) for e in elems.values() if not K.contains(e)]
        eps0 = max(eps0, math.lcm(*exps) if exps else 1)
        cert = abelian_solve(level, h, modulo=K)
        piece = compose_certificates(cert, level).word
        word = word + piece
        h = evaluate(piece, X).inverse() * h
    if not h.is_identity():
        raise AssertionError("peeling the derived series left a nontrivial remainder")
    word = word.reduced()
    log_g = math.log2(G.order())
    bound = eps0 * 4 ** (L - 1) * log_g ** 2 if L >= 1 else 0
    if evaluate(word, X) != g:
        raise AssertionError("soluble solution does not evaluate to the target")
    return LengthCertificate(g, word, "X", bound, "soluble-diameter")


# ---------------------------------------------------------------------------
# products of groups with nonabelian factors


def _project(X: GenSet, points: Sequence[int]) -> GenSet:
    return GenSet(len(points), {lab: p.restrict(points) for lab, p in X.generators.items()})


def cascade_bound(k: int, r: int, m: int) -> int:
    """The recurrence ``a_1 = r``, ``a_k = 4 a_ceil(k/2) + 4m``."""
    if k <= 1:
        return r
    return 4 * cascade_bound((k + 1) // 2, r, m) + 4 * m


@dataclass(frozen=True)
class CascadeResult:
    element: Permutation
    certificate: LengthCertificate
    recurrence_bound: int


def _is_minimal_normal(N: PermGroup, M: PermGroup) -> bool:
    if N.is_trivial() or not N.is_normal_in(M):
        return False
    from .group import ElementTable, _closure_group
    table = ElementTable(N)
    seen = np.zeros(table.size, dtype=bool)
    seen[table.identity_index] = True
    conj = [table.conj_map(g) for g in M.nontrivial_gens()]
    for i in range(table.size):
        if seen[i]:
            continue
        # class of element i under M, then its normal closure
        cls = {i}
        stack = [i]
        while stack:
            x = stack.pop()
            for cm in conj:
                y = int(cm[x])
                if y not in cls:
                    cls.add(y)
                    stack.append(y)
        seen[list(cls)] = True
        if _closure_group(M, [table.perm(i)]).order() != N.order():
            return False
    return True


def _centralizer_inside(N: PermGroup, M: PermGroup) -> bool:
    """True when every element of ``M`` centralizing ``N`` lies in ``N``."""
    from .group import ElementTable
    table = ElementTable(M)
    E = table.elements.astype(np.intp)
    central = np.ones(table.size, dtype=bool)
    for g in N.nontrivial_gens():
        gr = g.to_array().astype(np.intp)
        # e*g == g*e  <=>  g[e[x]] == e[g[x]]
        central &= np.all(gr[E] == E[:, gr], axis=1)
    return all(N.contains(table.perm(i)) for i in np.flatnonzero(central))


def socle_cascade(X: GenSet, domains: Sequence[Sequence[int]], socles: Sequence[PermGroup],
                  r: int, m: int) -> CascadeResult:
    """Short nontrivial element of ``N_1 x ... x N_k`` inside a subdirect product.

    ``X`` acts on the disjoint union of ``domains``; coordinate ``i`` is the
    restriction to ``domains[i]`` and ``socles[i]`` is the chosen minimal
    normal subgroup of that projection, written on ``0..len(domains[i])-1``.
    Seeds are found by searching each projection up to radius ``r``; the
    halving recursion then combines them with commutators.
    """
    k = len(domains)
    if k == 0 or len(socles) != k:
        raise DomainError("need one socle subgroup per domain")
    proj = [_project(X, d) for d in domains]
    for i in range(k):
        Mi = PermGroup(proj[i])
        Ni = socles[i]
        if Ni.degree != len(domains[i]):
            raise DomainError(f"factor {i}: socle degree does not match its domain")
        if not _is_minimal_normal(Ni, Mi):
            raise DomainError(f"factor {i}: subgroup is not minimal normal in the projection")
        if not _centralizer_inside(Ni, Mi):
            raise DomainError(f"factor {i}: subgroup is not self-centralizing")
        if lam(Ni.order()) > m:
            raise DomainError(f"factor {i}: floor(log2 |N|) = {lam(Ni.order())} exceeds m = {m}")

    def in_socle(i, g: Permutation) -> bool:
        return socles[i].contains(g.restrict(domains[i]))

    seeds: dict[int, Word] = {}
    for i in range(k):
        layers = _search(proj[i], max_radius=r)
        hit = None
        for rad in range(1, len(layers.keys)):
            rows = layers.rows(rad)
            inside = [socles[i].contains(Permutation(row.tolist(), check=False)) for row in rows]
            if any(inside):
                hit = layers.word(rad, inside.index(True))
                break
        if hit is None:
            raise DomainError(f"factor {i}: no nontrivial socle element within radius {r}")
        seeds[i] = hit

    def conjugator(j: int, x: Permutation, y: Permutation) -> Word:
        xj, yj = x.restrict(domains[j]), y.restrict(domains[j])
        layers = _search(proj[j], max_radius=m)
        for rad in range(len(layers.keys)):
            for pos, row in enumerate(layers.rows(rad)):
                h = Permutation(row.tolist(), check=False)
                if not xj.commutator(yj.conjugate(h)).is_identity():
                    return layers.word(rad, pos)
        raise AssertionError(f"factor {j}: no conjugator found within radius {m}")

    def solve(S: list[int]) -> Word:
        if len(S) == 1:
            return seeds[S[0]]
        half = (len(S) + 1) // 2
        w_x = solve(S[:half])
        x = evaluate(w_x, X)
        J = [j for j in S if not in_socle(j, x)]
        if not J:
            return w_x
        w_y = solve(J)
        y = evaluate(w_y, X)
        j = next(j for j in J if not y.restrict(domains[j]).is_identity())
        w_h = conjugator(j, x, y)
        return w_x.commutator(w_y.conjugate(w_h))

    word = solve(list(range(k)))
    g = evaluate(word, X)
    if g.is_identity() or not all(in_socle(i, g) for i in range(k)):
        raise AssertionError("cascade produced an element outside the socle product")
    cert = LengthCertificate(g, word, "X", 4 * k * k * (r + 2 * m), "socle-cascade")
    return CascadeResult(g, cert, cascade_bound(k, r, m))


def _factor_domains(G: PermGroup, domains):
    if domains is None:
        domains = [tuple(o) for o in G.orbits() if len(o) > 1]
    return [tuple(d) for d in domains]


def direct_product_solve(X: GenSet, target: Permutation,
                         domains: Sequence[Sequence[int]] | None = None) -> LengthCertificate:
    """Word for ``target`` in a direct product of nonabelian simple groups.

    Factors live on disjoint ``domains`` (the nontrivial orbits by default).
    For each factor an element trivial on every other factor is built from
    Schreier elements and doubling commutators; its conjugacy class then
    serves as a generating set for a breadth-first search inside the factor.
    The bound reported is ``2000 n^3 r d`` with ``d`` the largest exact factor
    diameter and ``r`` the largest rank.
    """
    G = PermGroup(X)
    if target.degree != X.degree or not G.contains(target):
        raise DomainError("target is not in the group generated by X")
    doms = _factor_domains(G, domains)
    projs = [_project(X, d) for d in doms]
    factors = [PermGroup(p) for p in projs]
    infos = []
    for i, T in enumerate(factors):
        info = identify_factor(T)
        if info.abelian or info.kind != "nonabelian":
            raise DomainError(f"factor {i} of order {T.order()} is not a recognized nonabelian simple group")
        infos.append(info)
    if math.prod(T.order() for T in factors) != G.order():
        raise DomainError("the group is not the direct product of its factor projections")
    n = len(doms)
    d = max(diameter(p).diameter for p in projs)
    rank = max(info.rank or 1 for info in infos)
    bound = 2000 * n ** 3 * rank * d
    if target.is_identity():
        return LengthCertificate(target, Word(), "X", bound, "direct-product")
    if n == 1:
        return length_bfs(X, target).with_bound(bound, "direct-product")

    def killer(i: int, j: int) -> Word:
        """Shortest Schreier word nontrivial on factor ``i`` and trivial on ``j``."""
        pts = doms[i] + doms[j]
        pair = _project(X, pts)
        P = PermGroup(pair)
        off = len(doms[i])
        images = [p.restrict(range(off, len(pts))) for p in P.gens]
        K = _ActionHom(P, images, len(doms[j])).kernel()
        Y = schreier_generators(pair, K)
        return min(Y.words.values(), key=lambda w: (len(w), str(w)))

    def conj_noncommuting(i: int, a: Permutation, b: Permutation) -> Word:
        ai, bi = a.restrict(doms[i]), b.restrict(doms[i])
        layers = _search(projs[i])
        for rad in range(len(layers.keys)):
            for pos, row in enumerate(layers.rows(rad)):
                h = Permutation(row.tolist(), check=False)
                if not ai.commutator(bi.conjugate(h)).is_identity():
                    return layers.word(rad, pos)
        raise AssertionError(f"factor {i} is abelian")

    def isolate(i: int, J: list[int]) -> Word:
        if len(J) == 1:
            return killer(i, J[0])
        half = (len(J) + 1) // 2
        w1, w2 = isolate(i, J[:half]), isolate(i, J[half:])
        a, b = evaluate(w1, X), evaluate(w2, X)
        w_h = conj_noncommuting(i, a, b)
        return w1.commutator(w2.conjugate(w_h))

    word = Word()
    for i in range(n):
        ti = target.restrict(doms[i])
        if ti.is_identity():
            continue
        w_z = isolate(i, [j for j in range(n) if j != i])
        z = evaluate(w_z, X)
        zi = z.restrict(doms[i])
        if zi.is_identity() or any(not z.restrict(doms[j]).is_identity() for j in range(n) if j != i):
            raise AssertionError("isolated element is not supported on one factor")
        # conjugacy class of z inside the factor, each member with a conjugator word
        layers = _search(projs[i])
        members: dict[Permutation, Word] = {}
        for rad in range(len(layers.keys)):
            for pos, row in enumerate(layers.rows(rad)):
                h = Permutation(row.tolist(), check=False)
                c = zi.conjugate(h)
                if c not in members:
                    members[c] = w_z.conjugate(layers.word(rad, pos))
        labels = [f"k{t}" for t in range(len(members))]
        class_set = GenSet(len(doms[i]), dict(zip(labels, members)))
        inner = CertifiedGenSet(factors[i], dict(zip(labels, members.values())), X, math.inf, "class")
        outer = length_bfs(class_set, ti, name="class")
        word = word + compose_certificates(outer, inner).word
    word = word.reduced()
    if evaluate(word, X) != target:
        raise AssertionError("direct product solution does not evaluate to the target")
    return LengthCertificate(target, word, "X", bound, "direct-product")
