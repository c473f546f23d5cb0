"""Permutations, words, labelled generating sets, orbits and block systems.

Permutations act on the right: ``p * q`` applies ``p`` first and then ``q``,
so ``(p * q)(i) == q(p(i))``.  Words are evaluated left to right in the same
convention, which is the one used for ``g^h = h^-1 g h`` and
``[x, y] = x^-1 y^-1 x y`` throughout the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .config import MAX_DEGREE
from .errors import CapacityError, DomainError, EvaluationError, ParseError

__all__ = [
    "Permutation",
    "Word",
    "GenSet",
    "parse_cycles",
    "evaluate",
    "orbit_partition",
    "classify_action",
    "block_system",
    "ActionClass",
]


class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(int(i) for i in images) if check else tuple(images)
        if check:
            n = len(images)
            if n < 1:
                raise DomainError("permutation degree must be positive")
            if n > MAX_DEGREE:
                raise CapacityError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
            if sorted(images) != list(range(n)):
                raise DomainError(f"images {images!r} do not form a bijection of 0..{n - 1}")
        self.images = images
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1 or degree > MAX_DEGREE:
            raise CapacityError(f"degree {degree} outside 1..{MAX_DEGREE}")
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen:
                    raise ParseError(f"point {a} repeated")
                if not 0 <= a < degree:
                    raise ParseError(f"point {a} out of range for degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[a] = b
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other.images) != len(self.images):
            raise DomainError("cannot compose permutations of different degree")
        return Permutation(map(other.images.__getitem__, self.images), check=False)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, h: "Permutation") -> "Permutation":
        """``h^-1 * self * h``."""
        return h.inverse() * self * h

    def commutator(self, other: "Permutation") -> "Permutation":
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        result = 1
        for c in self.cycles():
            result = result * len(c) // gcd(result, len(c))
        return result

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def restrict(self, points: Sequence[int]) -> "Permutation":
        """Action on an invariant subset, relabelled ``0..len(points)-1`` in the given order."""
        pos = {p: i for i, p in enumerate(points)}
        try:
            return Permutation([pos[self.images[p]] for p in points], check=False)
        except KeyError:
            raise DomainError("point set is not invariant under the permutation") from None

    def extend(self, degree: int, offset: int = 0) -> "Permutation":
        """Embed into a larger degree, shifting the moved points by ``offset``."""
        n = len(self.images)
        if offset + n > degree:
            raise DomainError("embedding does not fit in the requested degree")
        images = list(range(degree))
        for i, j in enumerate(self.images):
            images[offset + i] = offset + j
        return Permutation(images, check=False)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=_dtype_for(len(self.images)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self!s}, degree={self.degree})"


def _dtype_for(n: int):
    return np.uint8 if n <= 256 else np.uint16


_TOKEN = re.compile(r"\s*(\(|\)|-?\d+|\S)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(0 1 2)(3 4)"``.

    The empty string and ``"()"`` both denote the identity.  Points not
    mentioned are fixed.
    """
    cycles: list[list[int]] = []
    current: list[int] | None = None
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1)
        pos = m.end()
        if tok == "(":
            if current is not None:
                raise ParseError(f"nested '(' at offset {m.start(1)}")
            current = []
        elif tok == ")":
            if current is None:
                raise ParseError(f"unbalanced ')' at offset {m.start(1)}")
            if current:
                cycles.append(current)
            current = None
        elif tok.lstrip("-").isdigit():
            if current is None:
                raise ParseError(f"point {tok!r} outside parentheses")
            current.append(int(tok))
        else:
            raise ParseError(f"unexpected token {tok!r}")
    if current is not None:
        raise ParseError("unclosed '('")
    seen = set()
    for cyc in cycles:
        for a in cyc:
            if a < 0 or a >= degree:
                raise ParseError(f"point {a} out of range for degree {degree}")
            if a in seen:
                raise ParseError(f"point {a} repeated")
            seen.add(a)
    return Permutation.from_cycles(cycles, degree)


@dataclass(frozen=True)
class Word:
    """A product of signed generator labels, read left to right."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for label, sign in self.letters:
            if sign not in (1, -1):
                raise DomainError(f"letter sign must be +1 or -1, got {sign!r}")

    @classmethod
    def letter(cls, label: str, sign: int = 1) -> "Word":
        return cls(((label, sign),))

    @classmethod
    def power(cls, label: str, exponent: int) -> "Word":
        sign = 1 if exponent >= 0 else -1
        return cls(((label, sign),) * abs(exponent))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((label, -sign) for label, sign in reversed(self.letters)))

    def reduced(self) -> "Word":
        """Freely reduce by cancelling adjacent ``x x^-1`` pairs."""
        out: list[tuple[str, int]] = []
        for letter in self.letters:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return Word(tuple(out))

    def conjugate(self, h: "Word") -> "Word":
        """Word for ``h^-1 self h``."""
        return (h.inverse() + self + h).reduced()

    def commutator(self, other: "Word") -> "Word":
        return (self.inverse() + other.inverse() + self + other).reduced()

    def labels(self) -> set[str]:
        return {label for label, _ in self.letters}

    def substitute(self, words: Mapping[str, "Word"]) -> "Word":
        out: list[tuple[str, int]] = []
        for label, sign in self.letters:
            try:
                w = words[label]
            except KeyError:
                raise DomainError(f"no substitution for label {label!r}") from None
            out.extend(w.letters if sign == 1 else w.inverse().letters)
        return Word(tuple(out))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(label if sign == 1 else f"{label}^-1" for label, sign in self.letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Read space-separated letters, each ``label`` or ``label^k`` with ``k`` a nonzero integer."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        letters = []
        for tok in text.split():
            label, caret, exp = tok.partition("^")
            try:
                k = int(exp) if caret else 1
            except ValueError:
                raise ParseError(f"bad exponent in {tok!r}") from None
            if not label or k == 0:
                raise ParseError(f"bad letter {tok!r}")
            letters += [(label, 1 if k > 0 else -1)] * abs(k)
        return cls(tuple(letters))

    def to_list(self) -> list[list]:
        return [[label, sign] for label, sign in self.letters]

    @classmethod
    def from_list(cls, items) -> "Word":
        return cls(tuple((str(label), int(sign)) for label, sign in items))


@dataclass(frozen=True)
class GenSet:
    """An ordered, labelled generating set of permutations of one degree."""

    degree: int
    generators: Mapping[str, Permutation] = field(default_factory=dict)

    def __post_init__(self):
        gens = dict(self.generators)
        for label, p in gens.items():
            if not isinstance(p, Permutation):
                raise DomainError(f"generator {label!r} is not a Permutation")
            if p.degree != self.degree:
                raise DomainError(
                    f"generator {label!r} has degree {p.degree}, expected {self.degree}"
                )
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_list(cls, perms: Sequence[Permutation], labels: Sequence[str] | None = None,
                  degree: int | None = None) -> "GenSet":
        if degree is None:
            if not perms:
                raise DomainError("degree required for an empty generating set")
            degree = perms[0].degree
        if labels is None:
            labels = default_labels(len(perms))
        if len(labels) != len(perms) or len(set(labels)) != len(labels):
            raise DomainError("labels must be unique and match the generators")
        return cls(degree, dict(zip(labels, perms)))

    @property
    def labels(self) -> list[str]:
        return list(self.generators)

    @property
    def perms(self) -> list[Permutation]:
        return list(self.generators.values())

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, label: str) -> Permutation:
        return self.generators[label]

    def __contains__(self, label: str) -> bool:
        return label in self.generators

    def letters(self) -> list[tuple[tuple[str, int], Permutation]]:
        """Signed letters of ``X ∪ X^-1``; involutions contribute one letter."""
        out = []
        for label, p in self.generators.items():
            out.append(((label, 1), p))
            q = p.inverse()
            if q != p:
                out.append(((label, -1), q))
        return out

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def evaluate(self, word: Word) -> Permutation:
        return evaluate(word, self)

    def __str__(self) -> str:
        return ",".join(f"{label}={p}" for label, p in self.generators.items())


def default_labels(k: int) -> list[str]:
    if k <= 26:
        return [chr(ord("a") + i) for i in range(k)]
    return [f"x{i}" for i in range(k)]


def evaluate(word: Word, genset: GenSet) -> Permutation:
    """Left-to-right product of the signed generators named by ``word``."""
    images = list(range(genset.degree))
    inverses: dict[str, tuple[int, ...]] = {}
    for label, sign in word.letters:
        try:
            p = genset.generators[label]
        except KeyError:
            raise EvaluationError(f"unknown generator label {label!r}") from None
        if sign == 1:
            g = p.images
        else:
            if label not in inverses:
                inverses[label] = p.inverse().images
            g = inverses[label]
        images = [g[i] for i in images]
    return Permutation(images, check=False)


def orbit_partition(genset: GenSet | Sequence[Permutation], degree: int | None = None) -> list[list[int]]:
    """Orbits of the generated group, each sorted, ordered by least point."""
    perms, n = _perms_and_degree(genset, degree)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, j in enumerate(p.images):
            a, b = find(i), find(j)
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _perms_and_degree(genset, degree):
    if isinstance(genset, GenSet):
        return genset.perms, genset.degree
    perms = list(genset)
    if degree is None:
        if not perms:
            raise DomainError("degree required for an empty generator list")
        degree = perms[0].degree
    return perms, degree


def block_system(perms: Sequence[Permutation], degree: int, a: int, b: int) -> list[list[int]]:
    """Finest block system in which ``a`` and ``b`` share a block (union-find closure)."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    images = [p.images for p in perms]
    queue = []
    ra, rb = find(a), find(b)
    if ra != rb:
        parent[max(ra, rb)] = min(ra, rb)
        queue.append((a, b))
    while queue:
        x, y = queue.pop()
        for g in images:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[max(u, v)] = min(u, v)
                queue.append((u, v))
    groups: dict[int, list[int]] = {}
    for i in range(degree):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


@dataclass(frozen=True)
class ActionClass:
    """Verdict of :func:`classify_action`."""

    kind: str  # "intransitive" | "imprimitive" | "primitive"
    orbits: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...] | None = None

    @property
    def transitive(self) -> bool:
        return self.kind != "intransitive"

    @property
    def primitive(self) -> bool:
        return self.kind == "primitive"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def classify_action(genset: GenSet | Sequence[Permutation], degree: int | None = None,
                    stabilizer_orbits: Sequence[Sequence[int]] | None = None) -> ActionClass:
    """Intransitive, imprimitive (with a minimal block system) or primitive.

    Each seed pair ``{0, x}`` is closed into its finest block system and the
    lexicographically least inclusion-minimal nontrivial system is reported.
    Passing the orbits of the stabilizer of 0 restricts the seeds to one point
    per orbit, since conjugate seeds give conjugate systems.
    """
    perms, n = _perms_and_degree(genset, degree)
    orbits = orbit_partition(perms, n)
    orbit_t = tuple(tuple(o) for o in orbits)
    if len(orbits) > 1:
        return ActionClass("intransitive", orbit_t)
    if n <= 2 or _is_prime(n):
        return ActionClass("primitive", orbit_t)
    if stabilizer_orbits is None:
        reps = list(range(1, n))
        rep_of = list(range(n))
    else:
        rep_of = list(range(n))
        reps = []
        for orb in stabilizer_orbits:
            if 0 in orb:
                continue
            r = min(orb)
            reps.append(r)
            for y in orb:
                rep_of[y] = r
    systems: dict[int, list[list[int]]] = {}
    size: dict[int, int] = {}
    for x in reps:
        system = block_system(perms, n, 0, x)
        systems[x] = system
        size[x] = len(system[0])
    minimal = [
        systems[x] for x in reps
        if size[x] < n and all(size[rep_of[y]] == size[x] for y in systems[x][0] if y != 0)
    ]
    if not minimal:
        return ActionClass("primitive", orbit_t)
    if stabilizer_orbits is not None:
        # conjugate seeds give conjugate minimal systems; scan them for the least
        for x in reps:
            if any(systems[x] is m for m in minimal):
                for y in range(1, n):
                    if rep_of[y] == x and y != x:
                        minimal.append(block_system(perms, n, 0, y))
    best = min(minimal)
    return ActionClass("imprimitive", orbit_t, tuple(tuple(b) for b in best))
