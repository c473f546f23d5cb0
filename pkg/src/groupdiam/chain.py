"""Deterministic Schreier-Sims stabilizer chains with batched sifting.

Permutations are numpy rows.  Schreier generators of a level are formed and
sifted in batches, which keeps degrees in the thousands practical.  A chain
may be given a base prefix (points that must come first, in order, even if
their basic orbits are trivial); kernels of actions and canonical coset
representatives are built that way.
"""

from __future__ import annotations

import numpy as np

from ._arrays import dtype_for

_BATCH_CELLS = 1 << 22  # rows * degree per sifting batch


def _inverse(row):
    inv = np.empty_like(row)
    inv[row] = np.arange(len(row), dtype=row.dtype)
    return inv


class StabChain:
    """Base, basic transversals and strong generators for a permutation group.

    The representative for point ``q`` of the ``i``-th basic orbit maps
    ``base[i]`` to ``q``.  A strong generator's level is the index of the
    first base point it moves; level ``i`` is generated by the strong
    generators of level ``>= i``.
    """

    def __init__(self, degree: int, gens=(), base_prefix=()):
        self.degree = degree
        self.dtype = dtype_for(degree)
        self.ident = np.arange(degree, dtype=self.dtype)
        self.base: list[int] = []
        self._pos: list[np.ndarray] = []  # point -> row in the level's transversal, or -1
        self._points: list[list[int]] = []
        self._reps: list[list[np.ndarray]] = []
        self._invs: list[list[np.ndarray]] = []
        self._stack_cache: dict[tuple[str, int], tuple[int, np.ndarray]] = {}
        self._strong: list[np.ndarray] = []
        self.levels: list[int] = []
        self._checked: list[set] = []
        for b in base_prefix:
            if b not in self.base:
                self._new_level(int(b))
        for g in gens:
            self.add(g)

    # structure
    def _new_level(self, point):
        self.base.append(point)
        pos = np.full(self.degree, -1, dtype=np.int64)
        pos[point] = 0
        self._pos.append(pos)
        self._points.append([point])
        self._reps.append([self.ident])
        self._invs.append([self.ident])
        self._checked.append(set())

    def _stack(self, kind, i):
        rows = self._reps[i] if kind == "rep" else self._invs[i]
        hit = self._stack_cache.get((kind, i))
        if hit is None or hit[0] != len(rows):
            hit = (len(rows), np.stack(rows))
            self._stack_cache[(kind, i)] = hit
        return hit[1]

    def _strong_stack(self):
        hit = self._stack_cache.get(("strong", 0))
        if hit is None or hit[0] != len(self._strong):
            hit = (len(self._strong), np.stack(self._strong))
            self._stack_cache[("strong", 0)] = hit
        return hit[1]

    @property
    def strong(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in s) for s in self._strong]

    def rep(self, i: int, point: int):
        """Transversal element sending ``base[i]`` to ``point`` (a tuple), or None."""
        k = self._pos[i][point]
        return None if k < 0 else tuple(int(x) for x in self._reps[i][k])

    def orbit(self, i: int) -> list[int]:
        return list(self._points[i])

    def transversal(self, i: int) -> dict[int, tuple[int, ...]]:
        return {p: tuple(int(x) for x in r) for p, r in zip(self._points[i], self._reps[i])}

    # sifting
    def _sift_batch(self, B: np.ndarray, start: int):
        """Sift rows from level ``start``; return residues and the level each stopped at."""
        L = len(self.base)
        m = len(B)
        stop = np.full(m, L, dtype=np.int64)
        active = np.arange(m)
        for j in range(start, L):
            if not active.size:
                break
            idx = self._pos[j][B[active, self.base[j]]]
            bad = idx < 0
            if bad.any():
                stop[active[bad]] = j
                active = active[~bad]
                idx = idx[~bad]
            if len(self._points[j]) == 1 or not active.size:
                continue
            moving = idx > 0
            if not moving.any():
                continue
            rows = active[moving]
            inv = self._stack("inv", j)[idx[moving]]
            B[rows] = np.take_along_axis(inv, B[rows].astype(np.intp), axis=1)
        return B, stop

    def _as_row(self, g):
        return np.asarray(g, dtype=self.dtype)

    def sift(self, g, start=0):
        B, stop = self._sift_batch(self._as_row(g)[None, :].copy(), start)
        return B[0], int(stop[0])

    def contains(self, g) -> bool:
        row = self._as_row(g)
        if row.shape != (self.degree,):
            return False
        residue, stop = self.sift(row)
        return stop == len(self.base) and bool((residue == self.ident).all())

    def contains_batch(self, B) -> np.ndarray:
        B = np.array(B, dtype=self.dtype)
        R, stop = self._sift_batch(B, 0)
        return (stop == len(self.base)) & (R == self.ident).all(axis=1)

    def _insert(self, g, level):
        if level == len(self.base):
            moved = np.flatnonzero(g != self.ident)
            self._new_level(int(moved[0]))
        self._strong.append(g.astype(self.dtype))
        self.levels.append(level)

    def add(self, g) -> bool:
        """Extend the group by ``g``; returns False if ``g`` was already a member."""
        residue, level = self.sift(self._as_row(g))
        if level == len(self.base) and (residue == self.ident).all():
            return False
        self._insert(residue, level)
        self._close(level)
        return True

    def _grow_orbit(self, i, gens):
        pos, points, reps, invs = self._pos[i], self._points[i], self._reps[i], self._invs[i]
        strong = [self._strong[k] for k in gens]
        head = 0
        while head < len(points):
            p = points[head]
            rp = reps[head]
            head += 1
            for s in strong:
                q = int(s[p])
                if pos[q] < 0:
                    pos[q] = len(points)
                    points.append(q)
                    r = s[rp]
                    reps.append(r)
                    invs.append(_inverse(r))

    def _close(self, i):
        n = self.degree
        while i >= 0:
            gens = [k for k, lvl in enumerate(self.levels) if lvl >= i]
            self._grow_orbit(i, gens)
            checked = self._checked[i]
            pairs = [(p, k) for p in self._points[i] for k in gens if (p, k) not in checked]
            restart = None
            step = max(1, _BATCH_CELLS // max(n, 1))
            for lo in range(0, len(pairs), step):
                chunk = pairs[lo:lo + step]
                P = np.fromiter((p for p, _ in chunk), dtype=np.int64, count=len(chunk))
                K = np.fromiter((k for _, k in chunk), dtype=np.int64, count=len(chunk))
                S = self._strong_stack()[K]
                R = self._stack("rep", i)[self._pos[i][P]]
                H = np.take_along_axis(S, R.astype(np.intp), axis=1)  # rep_p * s
                Q = S[np.arange(len(chunk)), P]
                inv = self._stack("inv", i)[self._pos[i][Q]]
                H = np.take_along_axis(inv, H.astype(np.intp), axis=1)  # * rep_q^-1
                H, stop = self._sift_batch(H, i + 1)
                nonid = (stop < len(self.base)) | (H != self.ident).any(axis=1)
                if nonid.any():
                    first = int(np.argmax(nonid))
                    checked.update(chunk[:first])
                    self._insert(H[first], int(stop[first]))
                    restart = int(stop[first])
                    break
                checked.update(chunk)
            if restart is not None:
                i = restart
            else:
                i -= 1

    # queries
    def order(self) -> int:
        result = 1
        for pts in self._points:
            result *= len(pts)
        return result

    def orbit_sizes(self) -> list[int]:
        return [len(p) for p in self._points]

    def strong_generators(self) -> list[tuple[tuple[int, ...], int]]:
        return list(zip(self.strong, self.levels))

    def random_element(self, rng) -> tuple[int, ...]:
        """Uniform element: one random transversal representative per level."""
        g = self.ident
        for i in reversed(range(len(self.base))):
            if len(self._points[i]) > 1:
                u = self._reps[i][rng.randrange(len(self._points[i]))]
                g = u[g]
        return tuple(int(x) for x in g)

    def elements_array(self) -> np.ndarray:
        """All group elements as an ``(order, degree)`` array (callers enforce caps)."""
        batch = self.ident[None, :]
        for i in reversed(range(len(self.base))):
            if len(self._points[i]) == 1:
                continue
            reps = self._stack("rep", i)
            # rows x * u for every current x and every representative u
            batch = reps[:, batch].reshape(-1, self.degree)
        return batch

    def canonizer(self):
        """Map a batch of rows ``g`` to the least element of each coset ``K g``.

        Requires the full base prefix ``0..n-1``; choosing the point of least
        image level by level then yields the lexicographically least element.
        """
        if self.base[: self.degree] != list(range(self.degree)):
            raise ValueError("canonizer needs the base prefix 0..n-1")
        levels = []
        for i in range(len(self.base)):
            if len(self._points[i]) > 1:
                pts = np.asarray(self._points[i], dtype=np.intp)
                levels.append((pts, self._stack("rep", i).astype(np.intp)))

        def canon(batch):
            if not levels:
                return batch
            g = batch.astype(np.intp, copy=False)
            for pts, reps in levels:
                choice = np.argmin(g[:, pts], axis=1)
                g = np.take_along_axis(g, reps[choice], axis=1)
            return g.astype(batch.dtype)

        return canon
