"""Brute-force reference computations on plain tuples.

Nothing here touches the library's chains, tables or batched searches, so
agreement with it is an independent check.
"""

from collections import deque
from itertools import combinations


def mul(p, q):
    """Right action: apply p first, then q."""
    return tuple(q[i] for i in p)


def inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def ident(n):
    return tuple(range(n))


def comm(x, y):
    return mul(mul(inv(x), inv(y)), mul(x, y))


def elements(gens, n):
    """All elements of <gens> by closure under right multiplication."""
    e = ident(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def distances(gens, n):
    """Word length of every element over gens and their inverses."""
    moves = set(gens) | {inv(g) for g in gens}
    e = ident(n)
    dist = {e: 0}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in moves:
            y = mul(x, g)
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def diameter(gens, n):
    return max(distances(gens, n).values())


def worst_case(gens, n):
    """Maximum diameter over every generating subset of the element set (tiny groups only)."""
    G = elements(gens, n)
    order = len(G)
    best = 0
    elems = sorted(G - {ident(n)})
    for k in range(1, len(elems) + 1):
        found = False
        for X in combinations(elems, k):
            if len(elements(X, n)) == order:
                found = True
                best = max(best, diameter(X, n))
        if not found and k > 3:
            break
    return best


def normal_closure(G_elems, seeds, n):
    conj = {mul(mul(inv(g), s), g) for s in seeds for g in G_elems}
    return elements(conj, n) if conj else {ident(n)}


def derived(G_elems, n):
    return elements({comm(x, y) for x in G_elems for y in G_elems}, n)


def is_normal(N, G_elems):
    return all(mul(mul(inv(g), x), g) in N for x in N for g in G_elems)


def element_order(p):
    k, q, e = 1, p, ident(len(p))
    while q != e:
        q = mul(q, p)
        k += 1
    return k
