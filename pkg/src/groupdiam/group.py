"""Permutation groups: order, membership, closures, series and simple factors.

Order and membership come from a stabilizer chain (:mod:`groupdiam.chain`).
Operations that need every element (conjugacy classes, the normal lattice,
exponents) go through :class:`ElementTable`, which refuses groups above the
enumeration cap.  Primitive groups containing a short prime cycle are known
to be alternating or symmetric and skip the chain altogether.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd, log2
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import config
from ._arrays import as_array, compose, dtype_for, keys, lookup
from .chain import StabChain
from .errors import CapacityError, DomainError
from .perm import ActionClass, GenSet, Permutation, _is_prime, classify_action, orbit_partition

__all__ = [
    "PermGroup",
    "ElementTable",
    "ConjugacyClass",
    "QuotientAction",
    "Series",
    "FactorDescriptor",
    "normal_closure",
    "verbal_subgroup",
    "derived_series",
    "conjugacy_classes",
    "normal_lattice",
    "quotient_action",
    "composition_series",
    "identify_factor",
    "abelian_invariants",
    "exponent",
    "element_orders",
    "SIMPLE_GROUPS",
]


class PermGroup:
    """A group given by generators, with a lazily built stabilizer chain."""

    def __init__(self, gens: GenSet | Sequence[Permutation], degree: int | None = None,
                 name: str | None = None, _chain: StabChain | None = None):
        if isinstance(gens, GenSet):
            genset = gens
        else:
            gens = list(gens)
            if degree is None:
                if not gens:
                    raise DomainError("degree required for a group without generators")
                degree = gens[0].degree
            genset = GenSet.from_list(gens, degree=degree)
        if degree is not None and degree != genset.degree:
            raise DomainError("generator degree does not match the requested degree")
        self.genset = genset
        self.degree = genset.degree
        self.name = name
        self._chain = _chain
        self._giant: str | None | bool = False  # False = not yet decided
        self._action: ActionClass | None = None
        self._derived: PermGroup | None = None

    # construction helpers
    @classmethod
    def from_cycles(cls, cycle_texts: Iterable[str], degree: int, name: str | None = None):
        from .perm import parse_cycles
        return cls([parse_cycles(t, degree) for t in cycle_texts], degree, name=name)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls([], degree)

    @property
    def gens(self) -> list[Permutation]:
        return self.genset.perms

    def nontrivial_gens(self) -> list[Permutation]:
        return [g for g in self.gens if not g.is_identity()]

    # chain and giant recognition
    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            gens = [g.images for g in self.nontrivial_gens()]
            prefix = [0] if any(g[0] != 0 for g in gens) else []
            self._chain = StabChain(self.degree, gens, base_prefix=prefix)
        return self._chain

    def chain_with_base(self, prefix: Sequence[int]) -> StabChain:
        return StabChain(self.degree, [g.images for g in self.nontrivial_gens()], base_prefix=prefix)

    def action(self) -> ActionClass:
        if self._action is None:
            stab = None
            if self.degree > 512 and len(orbit_partition(self.gens, self.degree)) == 1:
                chain = self.chain
                assert chain.base[0] == 0
                stab_gens = [Permutation(s, check=False)
                             for s, lvl in chain.strong_generators() if lvl >= 1]
                stab = orbit_partition(stab_gens, self.degree)
            self._action = classify_action(self.gens, self.degree, stabilizer_orbits=stab)
        return self._action

    def giant(self) -> str | None:
        """``"S"`` or ``"A"`` if this is the full symmetric or alternating group of its degree."""
        if self._giant is False:
            self._giant = _detect_giant(self)
        return self._giant

    def order(self) -> int:
        g = self.giant()
        if g == "S":
            return factorial(self.degree)
        if g == "A":
            return factorial(self.degree) // 2
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        if not isinstance(p, Permutation):
            raise DomainError("membership needs a Permutation")
        if p.degree != self.degree:
            raise DomainError(f"degree {p.degree} does not match group degree {self.degree}")
        g = self.giant()
        if g == "S":
            return True
        if g == "A":
            return p.sign() == 1
        return self.chain.contains(p.images)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return not self.nontrivial_gens()

    def is_abelian(self) -> bool:
        gens = self.nontrivial_gens()
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.nontrivial_gens())

    def same_as(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other) and self.order() == other.order()

    def is_normal_in(self, other: "PermGroup") -> bool:
        if not self.is_subgroup_of(other):
            return False
        return all(self.contains(x.conjugate(g)) for x in self.nontrivial_gens() for g in other.gens)

    def orbits(self) -> list[tuple[int, ...]]:
        if self._action is not None:
            return list(self._action.orbits)
        return [tuple(o) for o in orbit_partition(self.gens, self.degree)]

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_primitive(self) -> bool:
        return self.action().primitive

    def derived_subgroup(self) -> "PermGroup":
        if self._derived is None:
            self._derived = verbal_subgroup(self, "derived")
        return self._derived

    def is_soluble(self) -> bool:
        return derived_series(self).terms[-1].is_trivial()

    def elements(self) -> list[Permutation]:
        return [Permutation(r.tolist(), check=False) for r in ElementTable(self).elements]

    def table(self) -> "ElementTable":
        return ElementTable(self)

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"PermGroup({label}, degree={self.degree}, gens={len(self.genset)})"

    def __str__(self) -> str:
        return self.name or str(self.genset)


def _detect_giant(G: PermGroup) -> str | None:
    n = G.degree
    if n < 9:
        return None  # small degrees are cheap for the chain
    gens = G.nontrivial_gens()
    if not gens or len(G.orbits()) > 1:
        return None
    if not _has_jordan_element(gens, n):
        return None
    if not G.action().primitive:
        return None
    return "S" if any(g.sign() == -1 for g in gens) else "A"


def _has_jordan_element(gens, n) -> bool:
    """Some power of a generator or of a product of two is a prime cycle of length <= n-3."""
    candidates = list(gens)
    for i, a in enumerate(gens):
        for b in gens[i:]:
            candidates.append(a * b)
            candidates.append(a * b.inverse())
    for c in candidates:
        lengths = [len(cyc) for cyc in c.cycles()]
        for p in set(lengths):
            if not _is_prime(p) or p > n - 3 or lengths.count(p) != 1:
                continue
            if all(length % p != 0 for length in lengths if length != p):
                return True
    return False


# ---------------------------------------------------------------------------
# element tables


class ElementTable:
    """All elements of a group, sorted by image tuple, with index lookups."""

    def __init__(self, G: PermGroup):
        order = G.order()
        if order > config.ENUMERATION_CAP:
            raise CapacityError(
                f"group order {order} exceeds the enumeration cap {config.ENUMERATION_CAP}"
            )
        self.group = G
        self.degree = G.degree
        E = G.chain.elements_array()
        k = keys(E)
        idx = np.argsort(k, kind="stable")
        self.elements = np.ascontiguousarray(E[idx])
        self.keys = k[idx]
        self.size = len(self.elements)
        self.identity_index = int(self.index_of(np.arange(self.degree, dtype=E.dtype)[None, :])[0])
        self._right: dict[int, np.ndarray] = {}

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows, dtype=self.elements.dtype)
        pos, found = lookup(self.keys, keys(rows))
        if not found.all():
            raise DomainError("element is not in the group")
        return pos

    def index(self, p: Permutation) -> int:
        return int(self.index_of(p.to_array()[None, :].astype(self.elements.dtype))[0])

    def perm(self, i: int) -> Permutation:
        return Permutation(self.elements[i].tolist(), check=False)

    def right_map(self, g) -> np.ndarray:
        """Index map ``i -> index(e_i * g)``."""
        row = self._row(g)
        return self.index_of(row[self.elements])

    def right_map_of_index(self, i: int) -> np.ndarray:
        m = self._right.get(i)
        if m is None:
            m = self.right_map(self.elements[i])
            self._right[i] = m
        return m

    def conj_map(self, g) -> np.ndarray:
        """Index map ``i -> index(g^-1 e_i g)``."""
        row = self._row(g)
        inv = np.argsort(row).astype(row.dtype)
        return self.index_of(row[self.elements[:, inv]])

    def _row(self, g):
        if isinstance(g, Permutation):
            return g.to_array().astype(self.elements.dtype)
        return np.asarray(g, dtype=self.elements.dtype)

    def closure(self, gen_indices: Sequence[int]) -> np.ndarray:
        """Boolean mask of the subgroup generated by the given element indices."""
        mask = np.zeros(self.size, dtype=bool)
        mask[self.identity_index] = True
        maps = [self.right_map_of_index(i) for i in gen_indices if i != self.identity_index]
        frontier = np.array([self.identity_index])
        while frontier.size and maps:
            nxt = np.unique(np.concatenate([m[frontier] for m in maps]))
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = nxt
        return mask

    def closure_of_set(self, members: np.ndarray, start=None):
        """Subgroup mask generated by ``members`` plus the chosen generator indices."""
        gens = list(start or [])
        mask = self.closure(gens)
        for c in members:
            if not mask[c]:
                gens.append(int(c))
                mask = self.closure(gens)
        return mask, gens

    def orders(self) -> np.ndarray:
        return element_orders(self.elements)


def element_orders(E: np.ndarray) -> np.ndarray:
    """Order of each row, computed by iterating powers on the whole batch."""
    m, n = E.shape
    orders = np.zeros(m, dtype=np.int64)
    ident = np.arange(n, dtype=E.dtype)
    cur = E.copy()
    k = 1
    pending = np.arange(m)
    while pending.size:
        done = np.all(cur == ident, axis=1)
        orders[pending[done]] = k
        pending = pending[~done]
        cur = compose(cur[~done], E[pending])
        k += 1
    return orders


# ---------------------------------------------------------------------------
# closures and verbal subgroups


def _closure_group(G: PermGroup, seeds: Iterable[Permutation], name=None) -> PermGroup:
    """Normal closure in ``G`` of the subgroup generated by ``seeds``."""
    seeds = [s for s in seeds if not s.is_identity()]
    chain = StabChain(G.degree)
    gens: list[Permutation] = []
    queue: list[Permutation] = []
    for s in seeds:
        if chain.add(s.images):
            gens.append(s)
            queue.append(s)
    conj_by = [(g.inverse(), g) for g in G.nontrivial_gens()]
    while queue:
        x = queue.pop()
        for gi, g in conj_by:
            c = gi * x * g
            if chain.add(c.images):
                gens.append(c)
                queue.append(c)
    return PermGroup(gens, G.degree, name=name, _chain=chain)


def normal_closure(G: PermGroup, S: Iterable[Permutation]) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    S = list(S)
    for s in S:
        if not G.contains(s):
            raise DomainError(f"{s} is not an element of the group")
    return _closure_group(G, S)


def verbal_subgroup(G: PermGroup, kind: str = "derived") -> PermGroup:
    """Derived subgroup or third term of the lower central series."""
    gens = G.nontrivial_gens()
    if kind == "derived":
        seeds = [x.commutator(y) for i, x in enumerate(gens) for y in gens[i + 1:]]
    elif kind == "gamma3":
        seeds = [x.commutator(y).commutator(z) for x in gens for y in gens for z in gens]
    else:
        raise DomainError(f"unknown verbal subgroup kind {kind!r}")
    return _closure_group(G, seeds)


@dataclass
class Series:
    """Descending chain of subgroups ending in the trivial group."""

    terms: list[PermGroup]
    kind: str

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def orders(self) -> list[int]:
        return [t.order() for t in self.terms]


def derived_series(G: PermGroup) -> Series:
    """``G > G' > G'' > ...`` down to the trivial group or a perfect term."""
    terms = [G]
    while not terms[-1].is_trivial():
        D = terms[-1].derived_subgroup()
        if D.order() == terms[-1].order():
            break
        terms.append(D)
    return Series(terms, "derived")


# ---------------------------------------------------------------------------
# classes, lattice, quotients


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int


def _class_labels(table: ElementTable, G: PermGroup):
    n = table.size
    maps = [table.conj_map(g) for g in G.nontrivial_gens()]
    if not maps:
        return n, np.arange(n)
    rows = np.concatenate([np.arange(n)] * len(maps))
    cols = np.concatenate(maps)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    return connected_components(graph, directed=True, connection="weak")


def conjugacy_classes(G: PermGroup, table: ElementTable | None = None) -> list[ConjugacyClass]:
    """Classes with their least element as representative, sorted by representative."""
    table = table or ElementTable(G)
    _, labels = _class_labels(table, G)
    return [ConjugacyClass(table.perm(i), size) for i, size in _class_reps(labels)]


def _class_reps(labels):
    counts = np.bincount(labels)
    first = np.full(len(counts), len(labels))
    np.minimum.at(first, labels, np.arange(len(labels)))
    return sorted((int(first[c]), int(counts[c])) for c in range(len(counts)))


def normal_lattice(G: PermGroup, table: ElementTable | None = None) -> list[PermGroup]:
    """Every normal subgroup, sorted by order and then by element set."""
    return [N for N, _ in _normal_lattice_masks(G, table)]


def _normal_lattice_masks(G: PermGroup, table: ElementTable | None = None):
    table = table or ElementTable(G)
    _, labels = _class_labels(table, G)
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    classes = np.split(order, bounds)
    found: dict[bytes, tuple[np.ndarray, list[int]]] = {}

    def add(mask, gens):
        key = np.packbits(mask).tobytes()
        if key in found:
            return False
        found[key] = (mask, gens)
        return True

    add(table.closure([]), [])
    for members in classes:
        if table.identity_index in members:
            continue
        mask, gens = table.closure_of_set(np.sort(members))
        add(mask, gens)
    pending = list(found.values())
    done: list[tuple[np.ndarray, list[int]]] = []
    while pending:
        a_mask, a_gens = pending.pop()
        for b_mask, b_gens in done:
            if (a_mask <= b_mask).all() or (b_mask <= a_mask).all():
                continue
            gens = a_gens + b_gens
            mask = table.closure(gens)
            if add(mask, gens):
                pending.append((mask, gens))
        done.append((a_mask, a_gens))
    out = []
    for mask, gens in found.values():
        sub = PermGroup([table.perm(i) for i in gens], G.degree)
        if not sub.is_normal_in(G):
            raise AssertionError("join closure produced a non-normal subgroup")
        out.append((sub, mask))
    out.sort(key=lambda item: (int(item[1].sum()), tuple(np.flatnonzero(item[1]))))
    return out


@dataclass
class QuotientAction:
    """``G/N`` acting on right cosets, with a section choosing one element per coset."""

    group: PermGroup
    coset_reps: list[Permutation]
    canon: object  # batch -> canonical rows of the cosets
    _rep_keys: np.ndarray
    _rep_order: np.ndarray

    @property
    def index(self) -> int:
        return len(self.coset_reps)

    def label(self, g: Permutation) -> int:
        """Index of the coset ``N g``."""
        row = g.to_array()[None, :].astype(dtype_for(g.degree))
        pos, found = lookup(self._rep_keys, keys(self.canon(row)))
        if not found[0]:
            raise DomainError("element does not lie in the group")
        return int(self._rep_order[pos[0]])


def coset_canonizer(N: PermGroup):
    """Canonical (lexicographically least) representative of each right coset ``N g``."""
    n = N.degree
    if N.is_trivial():
        return lambda batch: batch
    chain = N.chain_with_base(range(n))
    return chain.canonizer()


def quotient_action(G: PermGroup, N: PermGroup) -> QuotientAction:
    """Permutation action of ``G`` on the right cosets of a normal subgroup ``N``."""
    if not N.is_normal_in(G):
        raise DomainError("subgroup is not normal")
    index = G.order() // N.order()
    if index > config.ENUMERATION_CAP:
        raise CapacityError(f"index {index} exceeds the enumeration cap {config.ENUMERATION_CAP}")
    n = G.degree
    canon = coset_canonizer(N)
    dt = dtype_for(n)
    gens = G.nontrivial_gens()
    garr = as_array(gens, n)
    reps = np.arange(n, dtype=dt)[None, :]
    seen = keys(reps).copy()
    frontier = reps
    all_reps = [reps]
    while frontier.size and len(gens):
        nxt = np.concatenate([compose(frontier, g) for g in garr])
        nxt = canon(nxt)
        k = keys(nxt)
        k, first = np.unique(k, return_index=True)
        nxt = nxt[first]
        fresh = ~np.isin(k, seen)
        frontier = nxt[fresh]
        seen = np.concatenate([seen, k[fresh]])
        all_reps.append(frontier)
    R = np.concatenate(all_reps)
    if len(R) != index:
        raise AssertionError("coset enumeration disagrees with the index")
    rk = keys(R)
    order = np.argsort(rk, kind="stable")
    sorted_keys = rk[order]
    images = []
    for g in garr:
        moved = canon(compose(R, g))
        pos, _ = lookup(sorted_keys, keys(moved))
        images.append(Permutation(order[pos].tolist(), check=False))
    if not images:
        images = [Permutation.identity(index)]
    labels = GenSet.from_list(images, labels=_gen_labels(G, gens)) if gens else None
    Q = PermGroup(labels if labels is not None else images, index)
    reps_p = [Permutation(r.tolist(), check=False) for r in R]
    qa = QuotientAction(Q, reps_p, canon, sorted_keys, order)
    return qa


def _gen_labels(G: PermGroup, gens):
    inv = {p: label for label, p in G.genset.generators.items()}
    labels = [inv.get(g) for g in gens]
    if None in labels or len(set(labels)) != len(labels):
        return None
    return labels


# ---------------------------------------------------------------------------
# simple factors


@dataclass(frozen=True)
class SimpleGroupInfo:
    name: str
    order: int
    mu: int
    rank: int


def _psl2_order(q):
    return q * (q * q - 1) // gcd(2, q - 1)


def _prime_powers(limit):
    out = []
    for q in range(2, limit + 1):
        p = next(d for d in range(2, q + 1) if q % d == 0)
        m = q
        while m % p == 0:
            m //= p
        if m == 1:
            out.append(q)
    return out


def _build_table():
    entries = [SimpleGroupInfo(f"A{n}", factorial(n) // 2, n, n) for n in range(7, 11) if n != 8]
    entries += [
        SimpleGroupInfo("A5", 60, 5, 1),
        SimpleGroupInfo("A6", 360, 6, 1),
        SimpleGroupInfo("A8", 20160, 8, 3),
        SimpleGroupInfo("PSL(3,3)", 5616, 13, 2),
        SimpleGroupInfo("PSL(3,4)", 20160, 21, 2),
        SimpleGroupInfo("PSL(3,5)", 372000, 31, 2),
        SimpleGroupInfo("PSL(3,7)", 1876896, 57, 2),
        SimpleGroupInfo("PSL(4,3)", 6065280, 40, 3),
        SimpleGroupInfo("PSU(3,3)", 6048, 28, 1),
        SimpleGroupInfo("PSU(3,4)", 62400, 65, 1),
        SimpleGroupInfo("PSU(3,5)", 126000, 50, 1),
        SimpleGroupInfo("PSU(3,7)", 5663616, 344, 1),
        SimpleGroupInfo("PSU(3,8)", 5515776, 513, 1),
        SimpleGroupInfo("PSU(4,3)", 3265920, 112, 2),
        SimpleGroupInfo("PSp(4,3)", 25920, 27, 2),
        SimpleGroupInfo("PSp(4,4)", 979200, 85, 2),
        SimpleGroupInfo("PSp(4,5)", 4680000, 156, 2),
        SimpleGroupInfo("PSp(6,2)", 1451520, 28, 3),
        SimpleGroupInfo("G2(3)", 4245696, 351, 2),
        SimpleGroupInfo("Sz(8)", 29120, 65, 1),
        SimpleGroupInfo("M11", 7920, 11, 1),
        SimpleGroupInfo("M12", 95040, 12, 1),
        SimpleGroupInfo("M22", 443520, 22, 1),
        SimpleGroupInfo("J1", 175560, 266, 1),
        SimpleGroupInfo("J2", 604800, 100, 1),
    ]
    special_mu = {7: 7, 11: 11}
    for q in _prime_powers(271):
        if q in (2, 3, 4, 5, 9):  # not simple, or isomorphic to A5 / A6
            continue
        order = _psl2_order(q)
        if order > 10**7:
            continue
        entries.append(SimpleGroupInfo(f"PSL(2,{q})", order, special_mu.get(q, q + 1), 1))
    table: dict[int, list[SimpleGroupInfo]] = {}
    for e in entries:
        table.setdefault(e.order, []).append(e)
    ambiguous = {o for o, es in table.items() if len(es) > 1}
    if ambiguous != {20160}:
        raise AssertionError(f"unexpected order coincidences {sorted(ambiguous)}")
    return table


SIMPLE_GROUPS: dict[int, list[SimpleGroupInfo]] = _build_table()


@dataclass(frozen=True)
class FactorDescriptor:
    """Isomorphism type of a composition factor, as far as the table can tell."""

    order: int
    kind: str  # "cyclic" | "nonabelian" | "unrecognized"
    name: str
    mu: int | None
    rank: int | None = None

    @property
    def abelian(self) -> bool:
        return self.kind == "cyclic"

    def __str__(self) -> str:
        return self.name


def _cyclic(p: int) -> FactorDescriptor:
    return FactorDescriptor(p, "cyclic", f"C{p}", p, None)


def _from_info(info: SimpleGroupInfo) -> FactorDescriptor:
    return FactorDescriptor(info.order, "nonabelian", info.name, info.mu, info.rank)


def _alternating(m: int) -> FactorDescriptor:
    infos = SIMPLE_GROUPS.get(factorial(m) // 2, [])
    for info in infos:
        if info.name == f"A{m}":
            return _from_info(info)
    return FactorDescriptor(factorial(m) // 2, "nonabelian", f"A{m}", m, m)


def _natural_alternating_degree(T: PermGroup) -> int | None:
    """``m`` if ``T`` is the alternating group on its support of size ``m >= 5``."""
    support = sorted({i for g in T.gens for i in g.support()})
    m = len(support)
    if m < 5:
        return None
    if any(g.sign() == -1 for g in T.gens):
        return None
    R = PermGroup([g.restrict(support) for g in T.nontrivial_gens()], m)
    if len(R.orbits()) != 1:
        return None
    if R.order() == factorial(m) // 2:
        return m
    return None


def identify_factor(T: PermGroup, check: bool = True) -> FactorDescriptor:
    """Name a simple group: cyclic of prime order, a table entry, or unrecognized."""
    order = T.order()
    if order == 1:
        raise DomainError("the trivial group is not simple")
    if _is_prime(order):
        return _cyclic(order)
    m = _natural_alternating_degree(T)
    if m is not None:
        return _alternating(m)
    if check:
        _check_simple(T, order)
    infos = SIMPLE_GROUPS.get(order)
    if not infos:
        return FactorDescriptor(order, "unrecognized", f"simple group of order {order}", None, None)
    if len(infos) == 1:
        return _from_info(infos[0])
    # order 20160: A8 has elements of order 15, PSL(3,4) does not
    has15 = bool((ElementTable(T).orders() == 15).any())
    pick = "A8" if has15 else "PSL(3,4)"
    return _from_info(next(i for i in infos if i.name == pick))


def _check_simple(T: PermGroup, order: int) -> None:
    """Simple iff every nontrivial class has the whole group as normal closure."""
    if T.is_abelian():
        raise DomainError(f"abelian group of composite order {order} is not simple")
    if T.derived_subgroup().order() != order:
        raise DomainError("group is not perfect, hence not simple")
    for cls in conjugacy_classes(T)[1:]:
        if _closure_group(T, [cls.representative]).order() != order:
            raise DomainError(f"the normal closure of {cls.representative} is proper")


# ---------------------------------------------------------------------------
# composition series


def composition_series(G: PermGroup, method: str = "auto", choice: str = "largest"):
    """Composition series and its factors, top factor first.

    ``method="lattice"`` repeatedly passes to a maximal normal subgroup found
    in the normal lattice (``choice`` selects the largest or the smallest
    maximal one).  ``method="auto"`` first refines the derived series, which
    handles soluble layers of any size, and uses the lattice (or, beyond the
    lattice cap, reduction through orbit and block actions) on perfect terms.
    """
    if method not in ("auto", "lattice"):
        raise DomainError(f"unknown method {method!r}")
    if choice not in ("largest", "smallest"):
        raise DomainError(f"unknown choice {choice!r}")
    if method == "lattice":
        if G.order() > config.ENUMERATION_CAP:
            raise CapacityError(f"order {G.order()} exceeds the enumeration cap")
        terms, factors = _lattice_series(G, choice)
    else:
        terms, factors = _structural_series(G, choice)
    return Series(terms, "composition"), factors


def _subgroup_key(mask: np.ndarray):
    return tuple(np.flatnonzero(mask))


def _lattice_series(G: PermGroup, choice="largest"):
    terms = [G]
    factors = []
    H = G
    while not H.is_trivial() and H.order() > 1:
        lattice = _normal_lattice_masks(H)
        proper = lattice[:-1]  # sorted by order, so the last entry is H
        maximal = [
            (N, m) for N, m in proper
            if not any(int(m2.sum()) > int(m.sum()) and (m <= m2).all() for _, m2 in proper)
        ]
        if choice == "largest":
            M, _ = min(maximal, key=lambda it: (-int(it[1].sum()), _subgroup_key(it[1])))
        else:
            M, _ = max(maximal, key=lambda it: (-int(it[1].sum()), _subgroup_key(it[1])))
        index = H.order() // M.order()
        if _is_prime(index):
            factors.append(_cyclic(index))
        else:
            # a trivial M means H itself is simple, so skip the regular action
            Q = H if M.order() == 1 else quotient_action(H, M).group
            factors.append(identify_factor(Q, check=False))
        terms.append(M)
        H = M
    return terms, factors


def _structural_series(G: PermGroup, choice="largest"):
    if G.order() == 1:
        return [G], []
    giant = G.giant()
    if giant is not None:
        return _giant_series(G, giant)
    terms = [G]
    factors: list[FactorDescriptor] = []
    H = G
    while H.order() > 1:
        D = H.derived_subgroup()
        if D.order() == H.order():
            break
        sub_terms, sub_factors = _refine_abelian_layer(H, D)
        terms += sub_terms
        factors += sub_factors
        H = D
    if H.order() == 1:
        return terms, factors
    rest_terms, rest_factors = _perfect_series(H, choice)
    return terms + rest_terms[1:], factors + rest_factors


def _giant_series(G: PermGroup, giant: str):
    n = G.degree
    alt = _alternating(n)
    if giant == "S":
        A = _alternating_group(n)
        return [G, A, PermGroup.trivial(n)], [_cyclic(2), alt]
    return [G, PermGroup.trivial(n)], [alt]


def _alternating_group(n: int) -> PermGroup:
    # (0 1 2) together with an even long cycle
    three = Permutation.from_cycles([(0, 1, 2)], n)
    if n % 2:
        long = Permutation.from_cycles([tuple(range(n))], n)
    else:
        long = Permutation.from_cycles([tuple(range(1, n))], n)
    return PermGroup([three, long], n, name=f"A{n}")


def _refine_abelian_layer(H: PermGroup, D: PermGroup):
    """Prime-index steps from ``H`` down to ``D`` where ``H/D`` is abelian."""
    n = H.degree
    chain = StabChain(n, [g.images for g in D.nontrivial_gens()])
    current = list(D.nontrivial_gens())
    ascending: list[tuple[PermGroup, int]] = []  # (group above, prime step into it)
    for g in H.nontrivial_gens():
        if chain.contains(g.images):
            continue
        before = chain.order()
        trial = StabChain(n, [x.images for x in current] + [g.images])
        m = trial.order() // before
        primes = _prime_factors(m)
        power = m
        for p in primes:
            power //= p
            x = g ** power
            current.append(x)
            chain = StabChain(n, [y.images for y in current])
            ascending.append((PermGroup(list(current), n, _chain=chain), p))
    terms = []
    factors = []
    for grp, p in reversed(ascending):
        factors.append(_cyclic(p))
        terms.append(grp)
    # the top of the ascending chain is H itself; replace it by the given object
    terms = terms[1:] + [D]
    return terms, factors


def _prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        while m % p == 0:
            out.append(p)
            m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _perfect_series(P: PermGroup, choice="largest"):
    order = P.order()
    m = _natural_alternating_degree(P)
    if m is not None:
        return [P, PermGroup.trivial(P.degree)], [_alternating(m)]
    if order <= config.LATTICE_ORDER_CAP:
        return _lattice_series(P, choice)
    giant = P.giant()
    if giant is not None:
        return _giant_series(P, giant)
    action = P.action()
    if action.kind == "intransitive":
        orbit = next(o for o in action.orbits if len(o) > 1)
        images = [g.restrict(orbit) for g in P.gens]
        image_degree = len(orbit)
    elif action.kind == "imprimitive":
        blocks = action.blocks
        where = {x: i for i, b in enumerate(blocks) for x in b}
        images = [Permutation([where[g(b[0])] for b in blocks], check=False) for g in P.gens]
        image_degree = len(blocks)
    else:
        raise CapacityError(
            f"primitive group of degree {P.degree} and order {order} is beyond the "
            f"lattice cap {config.LATTICE_ORDER_CAP} and not recognised as alternating"
        )
    hom = _ActionHom(P, images, image_degree)
    image = PermGroup(images, image_degree)
    image_terms, image_factors = _structural_series(image, choice)
    kernel = hom.kernel()
    kernel_terms, kernel_factors = _structural_series(kernel, choice)
    lifted = [hom.preimage(T) for T in image_terms[:-1]]
    lifted[0] = P
    return lifted + kernel_terms, image_factors + kernel_factors


class _ActionHom:
    """Homomorphism given by images of generators, realised on the disjoint union of domains."""

    def __init__(self, G: PermGroup, images: Sequence[Permutation], image_degree: int):
        self.G = G
        n = G.degree
        self.n = n
        self.m = image_degree
        combined = []
        for g, h in zip(G.gens, images):
            combined.append(g.images + tuple(n + j for j in h.images))
        self.chain = StabChain(n + image_degree, combined, base_prefix=range(n, n + image_degree))

    def kernel(self) -> PermGroup:
        gens = [
            Permutation(s[: self.n], check=False)
            for s, lvl in zip(self.chain.strong, self.chain.levels) if lvl >= self.m
        ]
        gens = [g for g in gens if not g.is_identity()]
        return PermGroup(gens, self.n)

    def lift(self, t: Permutation) -> Permutation:
        x = list(t.images)
        us = []
        for i in range(self.m):
            b = self.chain.base[i] - self.n
            beta = x[b]
            u = self.chain.rep(i, self.n + beta)
            if u is None:
                raise DomainError("element is not in the image")
            us.append(u)
            uim = [u[self.n + j] - self.n for j in range(self.m)]
            uinv = [0] * self.m
            for a, c in enumerate(uim):
                uinv[c] = a
            x = [uinv[v] for v in x]
        # t = phi(u_k) ... phi(u_1) phi(u_0), so the lift is u_k * ... * u_0
        result = tuple(range(self.n + self.m))
        for u in reversed(us):
            result = tuple(map(u.__getitem__, result))
        return Permutation(result[: self.n], check=False)

    def preimage(self, T: PermGroup) -> PermGroup:
        gens = self.kernel().nontrivial_gens() + [self.lift(t) for t in T.nontrivial_gens()]
        return PermGroup(gens, self.n)


# ---------------------------------------------------------------------------
# abelian invariants and exponents


def abelian_invariants(A: PermGroup) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ... | d_k`` of an abelian group."""
    if not A.is_abelian():
        raise DomainError("group is not abelian")
    order = A.order()
    if order == 1:
        return []
    orders = ElementTable(A).orders()
    primary: list[list[int]] = []
    for p in sorted(set(_prime_factors(order))):
        ranks = []
        prev = 1
        k = 1
        while True:
            count = int(np.sum(((p ** k) % orders) == 0))
            if count == prev:
                break
            r = round(np.log(count / prev) / np.log(p))
            ranks.append(r)
            prev = count
            k += 1
        # ranks[k-1] = number of cyclic factors of order >= p^k
        exps = []
        for k in range(len(ranks), 0, -1):
            exact = ranks[k - 1] - (ranks[k] if k < len(ranks) else 0)
            exps += [k] * exact
        primary.append([p ** e for e in exps])  # descending
    width = max(len(x) for x in primary)
    factors = []
    for i in range(width):
        d = 1
        for powers in primary:
            if i < len(powers):
                d *= powers[i]
        factors.append(d)
    return sorted(factors)


def exponent(G: PermGroup) -> int:
    """Least common multiple of the element orders."""
    if G.order() == 1:
        return 1
    table = ElementTable(G)
    _, labels = _class_labels(table, G)
    reps = [i for i, _ in _class_reps(labels)]
    result = 1
    for o in element_orders(table.elements[reps]).tolist():
        result = result * o // gcd(result, o)
    return result


def log2_order(G: PermGroup) -> float:
    return log2(G.order())
