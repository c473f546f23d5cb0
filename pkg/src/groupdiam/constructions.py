"""Example groups as explicit permutation groups with named generating sets.

Tree vertices at depth ``h`` are numbered by reading the string
``w1 w2 ... wh`` (letters ``0..d_i-1``) as a mixed-radix integer with ``w1``
most significant.  Wreath products use points ``j*d + i`` (block ``j``) for the
imprimitive action and ``sum f(j) d^j`` for the product action on functions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import prod
from typing import Callable, Mapping, Sequence

from .config import MAX_DEGREE
from .errors import CapacityError, DomainError, ParseError
from .group import PermGroup
from .perm import GenSet, Permutation, _is_prime, orbit_partition

__all__ = [
    "classic",
    "cyclic",
    "dihedral",
    "symmetric",
    "alternating",
    "elementary_abelian",
    "abelian",
    "direct_product",
    "wreath",
    "iterated_wreath_a5",
    "affine_deleted_module",
    "grigorchuk_level",
    "SpinalSpec",
    "grigorchuk_spec",
    "illustrative_spec",
    "spinal_level",
    "sl23",
    "agl1",
    "psl2",
    "sym_on_pairs",
    "diagonal_a5",
    "CorpusEntry",
    "primitive_corpus",
    "abelian_corpus",
    "soluble_corpus",
    "transitive_corpus",
    "construct",
    "CORPUS_LABELS",
]


def _check_degree(n: int):
    if n < 1:
        raise DomainError("degree must be positive")
    if n > MAX_DEGREE:
        raise CapacityError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")


def _group(perms: Sequence[Permutation], labels: Sequence[str], degree: int, name: str) -> PermGroup:
    return PermGroup(GenSet.from_list(list(perms), list(labels), degree), name=name)


def _cycle(points, n) -> Permutation:
    return Permutation.from_cycles([tuple(points)], n)


# ---------------------------------------------------------------------------
# classical families


def cyclic(n: int) -> PermGroup:
    _check_degree(n)
    return _group([_cycle(range(n), n)], ["a"], n, f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Symmetries of an ``n``-gon: rotation and the reflection ``i -> n-1-i``."""
    if n < 3:
        raise DomainError("dihedral groups need n >= 3")
    _check_degree(n)
    flip = Permutation([n - 1 - i for i in range(n)])
    return _group([_cycle(range(n), n), flip], ["r", "s"], n, f"D{n}")


def symmetric(n: int) -> PermGroup:
    _check_degree(n)
    if n == 1:
        return _group([Permutation.identity(1)], ["a"], 1, "S1")
    if n == 2:
        return _group([_cycle((0, 1), 2)], ["a"], 2, "S2")
    return _group([_cycle((0, 1), n), _cycle(range(n), n)], ["a", "b"], n, f"S{n}")


def alternating(n: int) -> PermGroup:
    if n < 3:
        raise DomainError("alternating groups are built for n >= 3")
    _check_degree(n)
    if n == 3:
        return _group([_cycle((0, 1, 2), 3)], ["a"], 3, "A3")
    long = _cycle(range(n), n) if n % 2 else _cycle(range(1, n), n)
    return _group([long, _cycle((0, 1, 2), n)], ["a", "b"], n, f"A{n}")


def abelian(orders: Sequence[int]) -> PermGroup:
    """Direct product of cyclic groups acting on disjoint cycles."""
    orders = [int(d) for d in orders if int(d) > 1]
    n = max(1, sum(orders))
    _check_degree(n)
    perms, start = [], 0
    for d in orders:
        perms.append(_cycle(range(start, start + d), n))
        start += d
    if not perms:
        return _group([Permutation.identity(1)], ["a"], 1, "C1")
    labels = [f"g{i}" for i in range(len(perms))]
    return _group(perms, labels, n, "x".join(f"C{d}" for d in orders))


def elementary_abelian(p: int, k: int) -> PermGroup:
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    G = abelian([p] * k)
    G.name = f"C{p}^{k}"
    return G


def direct_product(groups: Sequence[PermGroup], name: str | None = None) -> PermGroup:
    """External direct product on the disjoint union of the domains."""
    n = sum(G.degree for G in groups)
    _check_degree(n)
    perms, labels, offset = [], [], 0
    for i, G in enumerate(groups):
        for label, g in G.genset.generators.items():
            perms.append(g.extend(n, offset))
            labels.append(f"{label}{i}")
        offset += G.degree
    return _group(perms, labels, n, name or " x ".join(str(G) for G in groups))


def classic(kind: str, *args: int) -> PermGroup:
    """Dispatch by family name: cyclic, dihedral, symmetric, alternating, elementary, abelian."""
    table: dict[str, Callable] = {
        "cyclic": cyclic,
        "dihedral": dihedral,
        "symmetric": symmetric,
        "alternating": alternating,
        "elementary": elementary_abelian,
        "abelian": lambda *ds: abelian(ds),
    }
    if kind not in table:
        raise DomainError(f"unknown family {kind!r}")
    return table[kind](*args)


def sl23() -> PermGroup:
    """SL(2,3) acting on the eight nonzero vectors of F_3^2."""
    vecs = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def mat(a, b, c, d):
        return Permutation([pos[((a * x + c * y) % 3, (b * x + d * y) % 3)] for x, y in vecs])

    return _group([mat(1, 1, 0, 1), mat(1, 0, 1, 1)], ["u", "l"], 8, "SL(2,3)")


def agl1(p: int) -> PermGroup:
    """Affine group ``x -> ax + b`` over F_p."""
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    root = _primitive_root(p)
    shift = Permutation([(x + 1) % p for x in range(p)])
    scale = Permutation([(root * x) % p for x in range(p)])
    return _group([shift, scale], ["t", "m"], p, f"AGL(1,{p})")


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = {q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)}
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in factors))


def psl2(p: int) -> PermGroup:
    """PSL(2,p) on the projective line ``{0..p-1, inf=p}``, generated by ``x+1`` and ``-1/x``."""
    if not _is_prime(p) or p < 5:
        raise DomainError("psl2 is built for primes p >= 5")
    inf = p
    shift = [(x + 1) % p for x in range(p)] + [inf]
    inv = []
    for x in range(p):
        inv.append(inf if x == 0 else (-pow(x, p - 2, p)) % p)
    inv.append(0)
    return _group([Permutation(shift), Permutation(inv)], ["t", "s"], p + 1, f"PSL(2,{p})")


def sym_on_pairs(n: int) -> PermGroup:
    """S_n acting on the 2-subsets of ``{0..n-1}``."""
    pairs = list(itertools.combinations(range(n), 2))
    pos = {pr: i for i, pr in enumerate(pairs)}

    def induced(g: Permutation):
        return Permutation([pos[tuple(sorted((g(a), g(b))))] for a, b in pairs])

    S = symmetric(n)
    return _group([induced(g) for g in S.gens], S.genset.labels, len(pairs), f"S{n} on pairs")


def diagonal_a5(k: int, full: bool = False) -> PermGroup:
    """Diagonal copy of A5 in ``A5^k`` on ``k`` disjoint 5-point domains, or all of ``A5^k``."""
    A = alternating(5)
    n = 5 * k
    if full:
        return direct_product([A] * k, name=f"A5^{k}")
    perms = []
    for g in A.gens:
        images = []
        for j in range(k):
            images += [5 * j + g(i) for i in range(5)]
        perms.append(Permutation(images))
    return _group(perms, ["a", "b"], n, f"diag(A5^{k})")


# ---------------------------------------------------------------------------
# wreath products


def wreath(bottom: PermGroup, top: PermGroup, action: str = "imprimitive") -> PermGroup:
    """``bottom wr top`` in the imprimitive or product action."""
    d, e = bottom.degree, top.degree
    if action == "imprimitive":
        n = d * e
        _check_degree(n)
        perms, labels = [], []
        for orbit in orbit_partition(top.gens, e):
            j = orbit[0]
            for label, g in bottom.genset.generators.items():
                images = list(range(n))
                for i in range(d):
                    images[j * d + i] = j * d + g(i)
                perms.append(Permutation(images, check=False))
                labels.append(f"{label}@{j}")
        for label, t in top.genset.generators.items():
            perms.append(Permutation([t(p // d) * d + p % d for p in range(n)], check=False))
            labels.append(f"{label}^top")
    elif action == "product":
        if d ** e > MAX_DEGREE:
            raise CapacityError(f"product action degree {d}^{e} exceeds {MAX_DEGREE}")
        n = d ** e
        funcs = list(itertools.product(range(d), repeat=e))  # funcs[x][j] = f(j)
        pos = {f: sum(v * d ** j for j, v in enumerate(f)) for f in funcs}
        perms, labels = [], []
        for label, g in bottom.genset.generators.items():
            images = [0] * n
            for f in funcs:
                images[pos[f]] = pos[(g(f[0]),) + f[1:]]
            perms.append(Permutation(images, check=False))
            labels.append(f"{label}@0")
        for label, t in top.genset.generators.items():
            images = [0] * n
            for f in funcs:
                moved = [0] * e
                for j in range(e):
                    moved[t(j)] = f[j]
                images[pos[f]] = pos[tuple(moved)]
            perms.append(Permutation(images, check=False))
            labels.append(f"{label}^top")
        if orbit_partition(top.gens, e) != [list(range(e))]:
            raise DomainError("the product action needs a transitive top group")
    else:
        raise DomainError(f"unknown wreath action {action!r}")
    name = f"{bottom} wr {top}"
    return _group(perms, labels, n, name)


def iterated_wreath_a5(h: int, action: str = "imprimitive") -> PermGroup:
    """``A5 wr ... wr A5`` with ``h`` factors; the product action is applied at the top level."""
    if h < 1:
        raise DomainError("h must be at least 1")
    if action == "product" and h > 2:
        raise CapacityError("product action beyond h = 2 has degree 5^25")
    if action == "imprimitive" and 5 ** h > MAX_DEGREE:
        raise CapacityError(f"degree 5^{h} exceeds {MAX_DEGREE}")
    A = alternating(5)
    if h == 1:
        G = A
    else:
        G = wreath(A, iterated_wreath_a5(h - 1, "imprimitive"), action)
    G.name = f"wreath:A5^{h}:{action}" if h > 1 else "A5"
    return G


# ---------------------------------------------------------------------------
# affine example


def affine_deleted_module(n: int, p: int, full: bool = True) -> PermGroup:
    """``V : A_n`` with ``V`` the zero-sum vectors of ``F_p^n``, acting on ``V`` by affine maps.

    The generating set is translation by ``v = (1, -1, 0, ..., 0)`` (label
    ``v``) together with every nontrivial element of ``A_n`` (``full=True``)
    or just two standard generators of ``A_n``.
    """
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n % p == 0:
        raise DomainError(f"p = {p} divides n = {n}")
    if n < 3:
        raise DomainError("n must be at least 3")
    degree = p ** (n - 1)
    _check_degree(degree)
    vectors = []
    for free in itertools.product(range(p), repeat=n - 1):
        coords = list(reversed(free))  # coordinate 0 least significant
        vectors.append(tuple(coords + [(-sum(coords)) % p]))
    pos = {v: i for i, v in enumerate(vectors)}
    shift = (1, p - 1) + (0,) * (n - 2)
    perms = [Permutation([pos[tuple((a + b) % p for a, b in zip(v, shift))] for v in vectors])]
    labels = ["v"]
    A = alternating(n)
    if full:
        coord_perms = [g for g in A.elements() if not g.is_identity()]
        coord_labels = [f"s{i}" for i in range(len(coord_perms))]
    else:
        coord_perms = A.gens
        coord_labels = A.genset.labels
    for g in coord_perms:
        images = []
        for v in vectors:
            moved = [0] * n
            for i in range(n):
                moved[g(i)] = v[i]
            images.append(pos[tuple(moved)])
        perms.append(Permutation(images))
    labels += coord_labels
    return _group(perms, labels, degree, f"affine:n={n},p={p}")


# ---------------------------------------------------------------------------
# Grigorchuk group and spinal groups


def _grigorchuk_act(gen: str, word: tuple[int, ...]) -> tuple[int, ...]:
    if not word:
        return word
    head, rest = word[0], word[1:]
    if gen == "a":
        return (1 - head,) + rest
    if gen == "1":
        return word
    rule = {"b": ("a", "c"), "c": ("a", "d"), "d": ("1", "b")}[gen]
    return (head,) + _grigorchuk_act(rule[head], rest)


def _encode(word, degrees) -> int:
    x = 0
    for w, d in zip(word, degrees):
        x = x * d + w
    return x


def grigorchuk_level(h: int) -> PermGroup:
    """Action of the first Grigorchuk group on the binary strings of length ``h``."""
    if h < 1:
        raise DomainError("h must be at least 1")
    n = 2 ** h
    _check_degree(n)
    words = list(itertools.product((0, 1), repeat=h))
    degrees = [2] * h
    perms = []
    for gen in "abcd":
        images = [0] * n
        for w in words:
            images[_encode(w, degrees)] = _encode(_grigorchuk_act(gen, w), degrees)
        perms.append(Permutation(images))
    return _group(perms, list("abcd"), n, f"grigorchuk:h={h}")


@dataclass(frozen=True)
class SpinalSpec:
    """Finite-prefix data of a spinal group.

    ``degrees[i-1]`` is ``d_i``.  ``rooted`` maps labels to permutations of
    degree ``d_1``.  ``directed`` maps labels to dictionaries sending
    ``(i, j)`` (tree level ``i >= 2``, off-spine letter ``j < d_{i-1} - 1``,
    0-based) to a permutation of degree ``d_i``; missing keys mean identity.
    ``directed_order`` is the order of the abstract directed group ``B``;
    when given, ``B`` must embed in the product of its level images.
    """

    degrees: tuple[int, ...]
    rooted: Mapping[str, Permutation]
    directed: Mapping[str, Mapping[tuple[int, int], Permutation]]
    name: str = "spinal"
    directed_order: int | None = None

    def alpha(self, label: str, i: int, j: int) -> Permutation:
        return self.directed[label].get((i, j), Permutation.identity(self.degrees[i - 1]))

    def validate(self) -> None:
        """Spherical transitivity on every level, and faithfulness of the directed part."""
        d = self.degrees
        if any(x < 2 for x in d):
            raise DomainError("tree degrees must be at least 2")
        if any(g.degree != d[0] for g in self.rooted.values()):
            raise DomainError("rooted generators must have degree d_1")
        if len(orbit_partition(list(self.rooted.values()), d[0])) != 1:
            raise DomainError("level 1 group is not transitive")
        for i in range(2, len(d) + 1):
            level = [self.alpha(b, i, j) for b in self.directed for j in range(d[i - 2] - 1)]
            if any(g.degree != d[i - 1] for g in level):
                raise DomainError(f"directed images at level {i} must have degree {d[i - 1]}")
            if len(orbit_partition(level, d[i - 1])) != 1:
                raise DomainError(f"level {i} group is not transitive")
        coords = [(i, j) for i in range(2, len(d) + 1) for j in range(d[i - 2] - 1)]
        if self.directed_order is not None and self.directed and coords:
            image = _product_group([[self.alpha(b, i, j) for (i, j) in coords] for b in self.directed],
                                   [d[i - 1] for i, _ in coords])
            if image.order() != self.directed_order:
                raise DomainError("directed part is not faithful on the supplied levels")


def _product_group(tuples, degrees) -> PermGroup:
    n = sum(degrees)
    perms = []
    for parts in tuples:
        images, offset = [], 0
        for g, dd in zip(parts, degrees):
            images += [offset + g(x) for x in range(dd)]
            offset += dd
        perms.append(Permutation(images))
    return PermGroup(perms, n)


def spinal_level(spec: SpinalSpec, h: int, check: bool = True) -> PermGroup:
    """Level-``h`` congruence quotient: rooted plus directed generators on ``d_1...d_h`` points."""
    if h < 1 or h > len(spec.degrees):
        raise DomainError(f"h must lie in 1..{len(spec.degrees)}")
    if check:
        spec.validate()
    degs = spec.degrees[:h]
    n = prod(degs)
    _check_degree(n)
    words = list(itertools.product(*[range(x) for x in degs]))
    perms, labels = [], []
    for label, a in spec.rooted.items():
        images = [0] * n
        for w in words:
            images[_encode(w, degs)] = _encode((a(w[0]),) + w[1:], degs)
        perms.append(Permutation(images))
        labels.append(label)
    for label in spec.directed:
        images = [0] * n
        for w in words:
            target = w
            p = next((t for t in range(h) if w[t] != degs[t] - 1), None)
            if p is not None and p + 1 < h:
                i = p + 2  # 1-based level whose letter moves
                g = spec.alpha(label, i, w[p])
                target = w[: p + 1] + (g(w[p + 1]),) + w[p + 2:]
            images[_encode(w, degs)] = _encode(target, degs)
        perms.append(Permutation(images))
        labels.append(label)
    return _group(perms, labels, n, f"{spec.name}:h={h}")


_SWAP = Permutation([1, 0])
_ID2 = Permutation([0, 1])
# images of b, c, d on the levels 2, 3, 4, then repeating with period 3
_GRIG_PATTERN = [(_SWAP, _SWAP, _ID2), (_SWAP, _ID2, _SWAP), (_ID2, _SWAP, _SWAP)]


def grigorchuk_spec(levels: int = 6) -> SpinalSpec:
    """The first Grigorchuk group as a spinal group: ``A = C2``, ``B = C2 x C2``."""
    levels = max(levels, 4)
    directed: dict[str, dict] = {"b": {}, "c": {}, "d": {}}
    for i in range(2, levels + 1):
        images = _GRIG_PATTERN[(i - 2) % 3]
        for label, g in zip("bcd", images):
            directed[label][(i, 0)] = g
    return SpinalSpec((2,) * levels, {"a": _SWAP}, directed, "spinal:grigorchuk", 4)


def illustrative_spec(degrees: Sequence[int] = (2, 5, 2, 2, 2)) -> SpinalSpec:
    """``A = C2``, ``B = C2 x C2 x A5`` over a 2/5 degree sequence.

    Levels of degree 2 take the three maps ``B -> C2 x C2 -> Sym(2)`` in
    turn; levels of degree 5 take the natural map ``B -> A5``.
    """
    degrees = tuple(int(x) for x in degrees)
    if degrees[0] != 2 or any(x not in (2, 5) for x in degrees):
        raise DomainError("degree sequence must start with 2 and use only 2 and 5")
    for i in range(1, len(degrees)):
        if degrees[i] == 5 and any(x == 5 for x in degrees[i + 1:i + 4]):
            raise DomainError("a degree-5 level must be followed by three degree-2 levels")
    a5 = alternating(5)
    s5, t5 = a5.gens
    id5 = Permutation.identity(5)
    directed: dict[str, dict] = {"b": {}, "c": {}, "d": {}, "x": {}, "y": {}}
    twos = 0
    for i in range(2, len(degrees) + 1):
        if degrees[i - 1] == 2:
            images = _GRIG_PATTERN[twos % 3]
            twos += 1
            for label, g in zip("bcd", images):
                directed[label][(i, 0)] = g
            directed["x"][(i, 0)] = _ID2
            directed["y"][(i, 0)] = _ID2
        else:
            for label in "bcd":
                directed[label][(i, 0)] = id5
            directed["x"][(i, 0)] = s5
            directed["y"][(i, 0)] = t5
    return SpinalSpec(degrees, {"a": _SWAP}, directed, "spinal:illustrative", 4 * 60)


# ---------------------------------------------------------------------------
# corpora


@dataclass(frozen=True)
class CorpusEntry:
    group: PermGroup
    degree: int
    label: str


def primitive_corpus(max_degree: int) -> list[CorpusEntry]:
    """Primitive groups of degree at most ``max_degree``, in a fixed order."""
    out: list[CorpusEntry] = []

    def add(G, label):
        G.name = label
        out.append(CorpusEntry(G, G.degree, label))

    for p in range(2, max_degree + 1):
        if _is_prime(p):
            add(cyclic(p), f"cyclic:{p}")
            if p >= 3:
                add(agl1(p), f"agl1:{p}")
    for n in range(5, max_degree + 1):
        add(alternating(n), f"alternating:{n}")
        add(symmetric(n), f"symmetric:{n}")
    for p in (5, 7, 11, 13, 17, 19, 23):
        if p + 1 <= max_degree:
            add(psl2(p), f"psl2:{p}")
    for n in (5, 6, 7):
        if n * (n - 1) // 2 <= max_degree:
            add(sym_on_pairs(n), f"pairs:{n}")
    if 5 ** 5 <= max_degree:
        add(iterated_wreath_a5(2, "product"), "wreath:A5^2:product")
    return out


def _abelian_types(order: int) -> list[list[int]]:
    """Invariant factor lists ``d_1 | d_2 | ...`` with product ``order``."""
    out = []

    def rec(remaining, prev, acc):
        if remaining == 1:
            out.append(list(reversed(acc)))
            return
        for d in range(2, remaining + 1):
            if remaining % d == 0 and (prev is None or prev % d == 0):
                rec(remaining // d, d, acc + [d])

    rec(order, None, [])
    # rec builds chains from the largest factor down, so reversing gives d_1 | d_2 | ...
    return sorted(out)


def abelian_corpus(max_order: int = 48) -> list[CorpusEntry]:
    """Every abelian group of order ``2..max_order`` as a product of disjoint cycles."""
    out = []
    for order in range(2, max_order + 1):
        for ds in _abelian_types(order):
            G = abelian(ds)
            label = "abelian:" + ",".join(map(str, ds))
            G.name = label
            out.append(CorpusEntry(G, G.degree, label))
    return out


def soluble_corpus(max_order: int = 200) -> list[CorpusEntry]:
    """Soluble groups used for the diameter sandwich checks."""
    makers = [
        ("cyclic:6", lambda: cyclic(6)),
        ("abelian:2,4", lambda: abelian([2, 4])),
        ("elementary:2^2", lambda: elementary_abelian(2, 2)),
        ("symmetric:3", lambda: symmetric(3)),
        ("dihedral:4", lambda: dihedral(4)),
        ("dihedral:5", lambda: dihedral(5)),
        ("dihedral:6", lambda: dihedral(6)),
        ("alternating:4", lambda: alternating(4)),
        ("symmetric:4", lambda: symmetric(4)),
        ("sl23", sl23),
        ("agl1:5", lambda: agl1(5)),
        ("agl1:7", lambda: agl1(7)),
        ("wreath:C2^2:imprimitive", lambda: _iterated_c2(2)),
        ("wreath:C2^3:imprimitive", lambda: _iterated_c2(3)),
        ("wreath:S3:C2:imprimitive", lambda: wreath(symmetric(3), cyclic(2))),
        ("grigorchuk:h=3", lambda: grigorchuk_level(3)),
    ]
    out = []
    for label, make in makers:
        G = make()
        if G.order() <= max_order:
            G.name = label
            out.append(CorpusEntry(G, G.degree, label))
    return out


def transitive_corpus(max_order: int = 10 ** 4) -> list[CorpusEntry]:
    """Transitive groups of moderate order for the normal-subgroup exponent checks."""
    makers = [
        ("cyclic:6", lambda: cyclic(6)),
        ("cyclic:8", lambda: cyclic(8)),
        ("dihedral:4", lambda: dihedral(4)),
        ("dihedral:6", lambda: dihedral(6)),
        ("symmetric:4", lambda: symmetric(4)),
        ("alternating:4", lambda: alternating(4)),
        ("symmetric:5", lambda: symmetric(5)),
        ("alternating:5", lambda: alternating(5)),
        ("symmetric:6", lambda: symmetric(6)),
        ("alternating:6", lambda: alternating(6)),
        ("sl23", sl23),
        ("agl1:7", lambda: agl1(7)),
        ("agl1:11", lambda: agl1(11)),
        ("psl2:7", lambda: psl2(7)),
        ("psl2:11", lambda: psl2(11)),
        ("pairs:5", lambda: sym_on_pairs(5)),
        ("wreath:C2^3:imprimitive", lambda: _iterated_c2(3)),
        ("wreath:S3:C2:imprimitive", lambda: wreath(symmetric(3), cyclic(2))),
        ("wreath:C3:S3:imprimitive", lambda: wreath(cyclic(3), symmetric(3))),
        ("grigorchuk:h=3", lambda: grigorchuk_level(3)),
        ("grigorchuk:h=4", lambda: grigorchuk_level(4)),
        ("affine:n=4,p=3:standard", lambda: affine_deleted_module(4, 3, full=False)),
        ("spinal:illustrative:h=2", lambda: spinal_level(illustrative_spec((2, 5, 2, 2, 2)), 2)),
    ]
    out = []
    for label, make in makers:
        G = make()
        if G.order() <= max_order:
            G.name = label
            out.append(CorpusEntry(G, G.degree, label))
    return out


def _iterated_c2(h: int) -> PermGroup:
    G = cyclic(2)
    for _ in range(h - 1):
        G = wreath(cyclic(2), G)
    G.name = f"wreath:C2^{h}:imprimitive"
    return G


# ---------------------------------------------------------------------------
# labels


CORPUS_LABELS = [
    "cyclic:N", "dihedral:N", "symmetric:N", "alternating:N", "elementary:P^K",
    "abelian:D1,D2,...", "agl1:P", "psl2:P", "pairs:N", "sl23",
    "grigorchuk:h=H", "spinal:grigorchuk:h=H", "spinal:illustrative:h=H[:degrees=2,5,2,...]",
    "wreath:A5^H:imprimitive", "wreath:A5^H:product", "wreath:C2^H:imprimitive",
    "wreath:B:T[:imprimitive|product] with B, T in CN, SN, AN, DN",
    "affine:n=N,p=P[:standard]", "diagonal-a5:k=K", "product-a5:k=K",
]


def construct(label: str) -> PermGroup:
    """Build a corpus group from its label, e.g. ``grigorchuk:h=4``."""
    text = label.strip()
    try:
        G = _construct(text)
    except (ValueError, IndexError, KeyError) as exc:
        if isinstance(exc, (DomainError, ParseError)):
            raise
        raise ParseError(f"cannot parse corpus label {label!r}") from None
    G.name = text
    return G


def _ints(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x]


def _kv(s: str) -> dict[str, str]:
    out = {}
    for part in s.split(","):
        k, _, v = part.partition("=")
        out[k.strip()] = v.strip()
    return out


def _small(code: str) -> PermGroup:
    kinds = {"C": "cyclic", "S": "symmetric", "A": "alternating", "D": "dihedral"}
    return classic(kinds[code[0]], int(code[1:]))


def _construct(text: str) -> PermGroup:
    kind, _, rest = text.partition(":")
    if kind in ("cyclic", "dihedral", "symmetric", "alternating"):
        return classic(kind, int(rest))
    if kind == "elementary":
        p, k = rest.split("^")
        return elementary_abelian(int(p), int(k))
    if kind == "abelian":
        return abelian(_ints(rest))
    if kind == "agl1":
        return agl1(int(rest))
    if kind == "psl2":
        return psl2(int(rest))
    if kind == "pairs":
        return sym_on_pairs(int(rest))
    if kind == "sl23" and not rest:
        return sl23()
    if kind == "grigorchuk":
        return grigorchuk_level(int(_kv(rest)["h"]))
    if kind == "spinal":
        which, _, params = rest.partition(":")
        parts = params.split(":")
        h = int(_kv(parts[0])["h"])
        if which == "grigorchuk":
            return spinal_level(grigorchuk_spec(max(h, 4)), h)
        if which == "illustrative":
            degrees = (2, 5, 2, 2, 2)
            if len(parts) > 1:
                degrees = tuple(_ints(parts[1].partition("=")[2]))
            return spinal_level(illustrative_spec(degrees), h)
        raise ParseError(f"unknown spinal family {which!r}")
    if kind == "wreath":
        pair = re.fullmatch(r"([CSAD]\d+):([CSAD]\d+)(?::(imprimitive|product))?", rest)
        if pair is not None:
            return wreath(_small(pair.group(1)), _small(pair.group(2)), pair.group(3) or "imprimitive")
        m = re.fullmatch(r"(A5|C2)\^(\d+)(?::(imprimitive|product))?", rest)
        if m is None:
            raise ParseError(f"unknown wreath label {text!r}")
        base, h, action = m.group(1), int(m.group(2)), m.group(3) or "imprimitive"
        if base == "A5":
            return iterated_wreath_a5(h, action)
        if action != "imprimitive":
            raise ParseError("iterated C2 wreath products use the imprimitive action")
        return _iterated_c2(h)
    if kind == "affine":
        params, _, flag = rest.partition(":")
        kv = _kv(params)
        return affine_deleted_module(int(kv["n"]), int(kv["p"]), full=(flag != "standard"))
    if kind == "diagonal-a5":
        return diagonal_a5(int(_kv(rest)["k"]))
    if kind == "product-a5":
        return diagonal_a5(int(_kv(rest)["k"]), full=True)
    raise ParseError(f"unknown corpus label {text!r}")
