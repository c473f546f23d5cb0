"""Exact word lengths, diameters, growth and worst-case diameters by breadth-first search.

Searches keep one sorted array of fixed-width byte keys per radius together
with the parent position and letter that first reached each state, so a
witness word can be rebuilt without storing words.  Since the letter set is
closed under inverses the Cayley graph is undirected, and a new state only
has to be checked against the current and previous spheres.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import config
from ._arrays import as_array, dtype_for, keys, lookup
from .errors import CapacityError, DomainError
from .group import ElementTable, PermGroup, coset_canonizer
from .perm import GenSet, Permutation, Word, evaluate

__all__ = [
    "LengthCertificate",
    "BallProfile",
    "DiameterResult",
    "WorstCase",
    "length_bfs",
    "diameter",
    "relative_length",
    "growth",
    "worst_case_diameter",
    "irredundant_generating_sets",
    "genset_diameters",
]

_CHUNK = 1 << 16


@dataclass
class _Layers:
    """Spheres of a breadth-first search, radius by radius."""

    n: int
    dtype: np.dtype
    labels: list[tuple[str, int]]
    keys: list[np.ndarray] = field(default_factory=list)
    parent: list[np.ndarray] = field(default_factory=list)
    letter: list[np.ndarray] = field(default_factory=list)
    saturated: bool = False

    def rows(self, r: int) -> np.ndarray:
        k = self.keys[r]
        return np.frombuffer(k.tobytes(), dtype=self.dtype).reshape(len(k), self.n)

    def sizes(self) -> list[int]:
        return [len(k) for k in self.keys]

    def word(self, r: int, pos: int) -> Word:
        letters = []
        while r > 0:
            letters.append(self.labels[int(self.letter[r][pos])])
            pos = int(self.parent[r][pos])
            r -= 1
        return Word(tuple(reversed(letters)))

    def find(self, key) -> tuple[int, int] | None:
        for r, k in enumerate(self.keys):
            pos, found = lookup(k, np.asarray([key], dtype=k.dtype))
            if found[0]:
                return r, int(pos[0])
        return None


def _in_sorted(sorted_keys, query):
    if len(sorted_keys) == 0:
        return np.zeros(len(query), dtype=bool)
    return lookup(sorted_keys, query)[1]


def _search(genset: GenSet, canon: Callable | None = None, budget: int | None = None,
            max_radius: int | None = None, target: bytes | None = None,
            stop: Callable[[np.ndarray], bool] | None = None) -> _Layers:
    """Layered search from the identity (or its coset) under right multiplication."""
    n = genset.degree
    budget = config.STATE_BUDGET if budget is None else budget
    dt = dtype_for(n)
    letters = genset.letters()
    labels = [lab for lab, _ in letters]
    L = as_array([p for _, p in letters], n)
    layers = _Layers(n, np.dtype(dt), labels)
    start = np.arange(n, dtype=dt)[None, :]
    if canon is not None:
        start = canon(start).astype(dt)
    layers.keys.append(keys(start).copy())
    layers.parent.append(np.array([-1]))
    layers.letter.append(np.array([-1]))
    total = 1
    prev = layers.keys[0][:0]
    while True:
        cur = layers.keys[-1]
        if target is not None and _in_sorted(cur, np.asarray([target], dtype=cur.dtype))[0]:
            return layers
        if stop is not None and stop(layers.rows(len(layers.keys) - 1)):
            return layers
        if max_radius is not None and len(layers.keys) - 1 >= max_radius:
            return layers
        rows = layers.rows(len(layers.keys) - 1)
        m = len(rows)
        found_keys, found_first = [], []
        for lo in range(0, m, _CHUNK):
            chunk = rows[lo:lo + _CHUNK]
            c = len(chunk)
            cand = L[:, chunk].reshape(-1, n)  # letter-major: entry j*c + a is chunk[a] * L[j]
            if canon is not None:
                cand = canon(cand).astype(dt)
            ck = keys(cand)
            uk, first = np.unique(ck, return_index=True)
            fresh = ~(_in_sorted(cur, uk) | _in_sorted(prev, uk))
            uk, first = uk[fresh], first[fresh]
            letter_idx = first // c
            parent_idx = first % c + lo
            found_keys.append(uk)
            found_first.append(np.stack([letter_idx, parent_idx]))
        if found_keys:
            allk = np.concatenate(found_keys)
            meta = np.concatenate(found_first, axis=1)
            uk, first = np.unique(allk, return_index=True)
            meta = meta[:, first]
        else:
            uk = cur[:0]
        if len(uk) == 0:
            layers.saturated = True
            return layers
        total += len(uk)
        if total > budget:
            raise CapacityError(
                f"search exceeded the state budget {budget} at radius {len(layers.keys)} "
                f"(frontier {len(uk)}, {total} states)"
            )
        layers.keys.append(uk)
        layers.letter.append(meta[0])
        layers.parent.append(meta[1])
        prev = cur


# ---------------------------------------------------------------------------
# certificates and single-generating-set searches


@dataclass(frozen=True)
class LengthCertificate:
    """A word over a named generating set claimed to evaluate to ``element``.

    ``word`` is None when the element is not in the generated group, in which
    case the length is infinite.
    """

    element: Permutation
    word: Word | None
    genset_name: str = "X"
    bound: float | None = None
    bound_source: str | None = None

    @property
    def length(self):
        return math.inf if self.word is None else len(self.word)

    @property
    def reachable(self) -> bool:
        return self.word is not None

    def validate(self, genset: GenSet) -> bool:
        """Re-evaluate the word and compare element and bound."""
        if self.word is None:
            return not PermGroup(genset).contains(self.element)
        if evaluate(self.word, genset) != self.element:
            return False
        return self.bound is None or len(self.word) <= self.bound + 1e-9

    def with_bound(self, bound, source) -> "LengthCertificate":
        return LengthCertificate(self.element, self.word, self.genset_name, bound, source)

    def to_dict(self) -> dict:
        return {
            "element": list(self.element.images),
            "element_cycles": str(self.element),
            "genset": self.genset_name,
            "word": None if self.word is None else self.word.to_list(),
            "length": None if self.word is None else len(self.word),
            "bound": self.bound,
            "bound_source": self.bound_source,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LengthCertificate":
        word = None if data.get("word") is None else Word.from_list(data["word"])
        return cls(Permutation(data["element"]), word, data.get("genset", "X"),
                   data.get("bound"), data.get("bound_source"))


def _check_degree(genset: GenSet, g: Permutation):
    if g.degree != genset.degree:
        raise DomainError(f"element degree {g.degree} differs from generating set degree {genset.degree}")


def length_bfs(X: GenSet, g: Permutation, budget: int | None = None, name: str = "X") -> LengthCertificate:
    """Exact length of ``g`` over ``X`` with a shortest witness word."""
    _check_degree(X, g)
    if not PermGroup(X).contains(g):
        return LengthCertificate(g, None, name)
    target = keys(g.to_array()[None, :].astype(dtype_for(X.degree)))[0]
    layers = _search(X, budget=budget, target=target)
    hit = layers.find(target)
    if hit is None:
        raise AssertionError("member of the group was not reached")
    return LengthCertificate(g, layers.word(*hit), name)


@dataclass(frozen=True)
class DiameterResult:
    diameter: int
    witness: Permutation
    word: Word
    order: int
    sphere_sizes: tuple[int, ...]


def diameter(X: GenSet, budget: int | None = None) -> DiameterResult:
    """Diameter of the Cayley graph of ``<X>`` with an element at maximal distance."""
    layers = _search(X, budget=budget)
    r = len(layers.keys) - 1
    witness = Permutation(layers.rows(r)[0].tolist(), check=False)
    sizes = tuple(layers.sizes())
    return DiameterResult(r, witness, layers.word(r, 0), sum(sizes), sizes)


@dataclass(frozen=True)
class BallProfile:
    """Ball sizes ``gamma(0..R)``; ``diameter`` is set once the ball stops growing."""

    sizes: tuple[int, ...]
    saturated: bool
    diameter: int | None

    @property
    def radius(self) -> int:
        return len(self.sizes) - 1

    def __getitem__(self, r: int) -> int:
        return self.sizes[r]


def growth(X: GenSet, R: int, budget: int | None = None) -> BallProfile:
    """Growth function of ``X`` up to radius ``R``."""
    if R < 0:
        raise DomainError("radius must be non-negative")
    layers = _search(X, budget=budget, max_radius=R)
    order = PermGroup(X).order()
    balls = np.cumsum(layers.sizes()).tolist()
    balls += [balls[-1]] * (R + 1 - len(balls))
    saturated = balls[-1] == order
    diam = balls.index(order) if saturated else None
    return BallProfile(tuple(int(b) for b in balls), saturated, diam)


def relative_length(X: GenSet, H: PermGroup, K: PermGroup, budget: int | None = None) -> int:
    """Least ``r`` with ``H`` contained in ``B_X(r) K``.

    Since balls are inverse-closed this equals the least ``r`` with
    ``H`` inside ``K B_X(r)``, so the search runs over right cosets ``K b``.
    """
    G = PermGroup(X)
    if not K.is_subgroup_of(H):
        raise DomainError("K is not contained in H")
    if not H.is_subgroup_of(G):
        raise DomainError("H is not contained in the group generated by X")
    need = H.order() // K.order()
    if need == 1:
        return 0
    n = X.degree
    canon_k = coset_canonizer(K)
    canon_h = coset_canonizer(H)
    ident = np.arange(n)
    count = [0]

    def stop(rows):
        inside = np.all(canon_h(rows) == ident, axis=1)
        count[0] += int(inside.sum())
        return count[0] >= need

    layers = _search(X, canon=canon_k, budget=budget, stop=stop)
    if count[0] < need:
        raise AssertionError("coset search ended before covering H")
    return len(layers.keys) - 1


# ---------------------------------------------------------------------------
# worst case over generating sets


class _SmallGroup:
    """Element indices, multiplication columns and inverses for a small group."""

    def __init__(self, G: PermGroup):
        order = G.order()
        if order > 5000:
            raise CapacityError(f"worst-case search needs a multiplication table; order {order} > 5000")
        self.table = ElementTable(G)
        N = self.table.size
        self.N = N
        self.e = self.table.identity_index
        # right[s][x] = index of x * s
        self.right = np.stack([self.table.right_map_of_index(s) for s in range(N)])
        self.right_lists = [row.tolist() for row in self.right]
        # x * s = e exactly when x = s^-1
        self.inv = np.argmax(self.right == self.e, axis=1)
        self._closures: dict[tuple[int, ...], bytearray] = {}

    def closure(self, gens: tuple[int, ...]) -> bytearray:
        got = self._closures.get(gens)
        if got is not None:
            return got
        seen = bytearray(self.N)
        seen[self.e] = 1
        stack = [self.e]
        maps = [self.right_lists[s] for s in gens]
        while stack:
            x = stack.pop()
            for m in maps:
                y = m[x]
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
        if len(self._closures) < 2_000_000:
            self._closures[gens] = seen
        return seen


def irredundant_generating_sets(G: PermGroup, budget: int | None = None,
                                _small: _SmallGroup | None = None) -> Iterator[tuple[int, ...]]:
    """Every irredundant generating set, up to replacing elements by their inverses.

    Sets are yielded as increasing tuples of element indices into the group's
    :class:`ElementTable`.  Each candidate is the smaller index of ``{x, x^-1}``;
    a branch is cut as soon as a chosen element becomes redundant.
    """
    S = _small or _SmallGroup(G)
    budget = config.GENSET_BUDGET if budget is None else budget
    N = S.N
    cands = [x for x in range(N) if x != S.e and x <= S.inv[x]]
    count = 0
    if N == 1:
        yield ()
        return

    def dfs(chosen, clos, start):
        nonlocal count
        for idx in range(start, len(cands)):
            c = cands[idx]
            if clos[c]:
                continue
            new = chosen + (c,)
            if any(S.closure(new[:i] + new[i + 1:])[new[i]] for i in range(len(chosen))):
                continue
            newclos = S.closure(new)
            if sum(newclos) == N:
                count += 1
                if count > budget:
                    raise CapacityError(
                        f"more than {budget} irredundant generating sets; examined {count - 1}"
                    )
                yield new
            else:
                yield from dfs(new, newclos, idx + 1)

    yield from dfs((), S.closure(()), 0)


def _batch_diameters(S: _SmallGroup, sets: np.ndarray) -> np.ndarray:
    """Cayley-graph diameters for a batch of equal-size generating sets."""
    B, k = sets.shape
    N = S.N
    moves = np.concatenate([sets, S.inv[sets]], axis=1)
    out = np.empty(B, dtype=np.int64)
    step = max(1, 4_000_000 // (N * moves.shape[1]))
    for lo in range(0, B, step):
        mv = moves[lo:lo + step]
        b = len(mv)
        maps = S.right[mv]  # (b, 2k, N): maps[i, j, x] = x * mv[i, j]
        visited = np.zeros((b, N), dtype=bool)
        visited[:, S.e] = True
        frontier = visited.copy()
        radius = np.zeros(b, dtype=np.int64)
        r = 0
        while frontier.any():
            r += 1
            nxt = np.zeros_like(frontier)
            for j in range(maps.shape[1]):
                # x is reached when x * t lies in the frontier; the move set is inverse-closed
                nxt |= np.take_along_axis(frontier, maps[:, j, :], axis=1)
            nxt &= ~visited
            visited |= nxt
            grew = nxt.any(axis=1)
            radius[grew] = r
            frontier = nxt
        out[lo:lo + b] = radius
    return out


@dataclass(frozen=True)
class WorstCase:
    diameter: int
    genset: GenSet
    sets_examined: int


def genset_diameters(G: PermGroup, budget: int | None = None):
    """All irredundant generating sets (as GenSets) paired with their diameters."""
    S = _SmallGroup(G)
    sets = list(irredundant_generating_sets(G, budget, S))
    result = []
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for s in sets:
        by_size.setdefault(len(s), []).append(s)
    for k in sorted(by_size):
        group = by_size[k]
        if k == 0:
            result += [(s, 0) for s in group]
            continue
        d = _batch_diameters(S, np.asarray(group, dtype=np.int64))
        result += list(zip(group, d.tolist()))
    return S, result


def worst_case_diameter(G: PermGroup, budget: int | None = None) -> WorstCase:
    """Maximum of ``diam(G, X)`` over all generating sets ``X``.

    Adding generators only adds edges, so the maximum is attained on an
    irredundant set and only those are examined.
    """
    S, pairs = genset_diameters(G, budget)
    best_set, best = max(pairs, key=lambda item: (item[1], tuple(-i for i in item[0])))
    gens = [S.table.perm(i) for i in best_set]
    genset = GenSet.from_list(gens, degree=G.degree) if gens else GenSet(G.degree, {})
    return WorstCase(int(best), genset, len(pairs))
