"""Group invariants and the evaluation of explicit diameter and degree bounds.

Invariants: products of minimal degrees over composition factors, the theta
exponents measuring factor diameters, abelianization exponents over normal
subgroups and over the derived series.  A :class:`BoundReport` pairs them
with every bound that applies in a given context and a verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import config
from .diametry import worst_case_diameter
from .errors import CapacityError, DomainError
from .group import (
    FactorDescriptor,
    PermGroup,
    _closure_group,
    composition_series,
    derived_series,
    exponent,
    normal_lattice,
    quotient_action,
)

__all__ = [
    "B1",
    "C1",
    "C_PYBER",
    "DIAMETER_TABLE",
    "MuProfile",
    "ThetaPair",
    "BoundEntry",
    "BoundReport",
    "TransitiveCheck",
    "mu_profile",
    "theta",
    "epsilon",
    "quotient_exponent",
    "is_nilpotent",
    "transitive_checks",
    "bound_report",
]

B1 = 5 ** 0.25
C1 = math.log(7 * B1, 8)
C_PYBER = 1 + math.log(48 * 24 ** (1 / 3), 9)

# worst-case diameters of simple groups that are cheap to confirm by enumeration
DIAMETER_TABLE = {"A5": 10}

VERDICTS = ("holds", "fails", "holds-up-to-constant", "not-applicable", "unavailable")


def _leq(lhs, rhs, strict=False) -> bool:
    """Compare with relative tolerance when floats are involved."""
    if isinstance(lhs, int) and isinstance(rhs, int):
        return lhs < rhs if strict else lhs <= rhs
    tol = config.REL_TOL * max(abs(lhs), abs(rhs), 1.0)
    return lhs < rhs - tol if strict else lhs <= rhs + tol


# ---------------------------------------------------------------------------
# mu


@dataclass(frozen=True)
class MuProfile:
    """Products of minimal faithful degrees over the composition factors."""

    mu_cf: int | None
    mu_ab: int
    mu_na: int | None
    factors: tuple[FactorDescriptor, ...]

    @property
    def available(self) -> bool:
        return self.mu_na is not None

    def to_dict(self) -> dict:
        return {
            "mu_cf": self.mu_cf,
            "mu_ab": self.mu_ab,
            "mu_na": self.mu_na,
            "factors": [str(f) for f in self.factors],
        }


def mu_profile(G: PermGroup, factors=None) -> MuProfile:
    """``mu_cf``, ``mu_ab`` and ``mu_na``; ``None`` where a factor is unrecognized."""
    if factors is None:
        _, factors = composition_series(G)
    mu_ab = 1
    mu_na: int | None = 1
    for f in factors:
        if f.abelian:
            mu_ab *= f.order
        elif f.mu is None:
            mu_na = None
        elif mu_na is not None:
            mu_na *= f.mu
    mu_cf = None if mu_na is None else mu_ab * mu_na
    return MuProfile(mu_cf, mu_ab, mu_na, tuple(factors))


# ---------------------------------------------------------------------------
# theta


@dataclass(frozen=True)
class ThetaPair:
    """``theta1 = max log diam(T) / log mu(T)`` and ``theta2 = max log diam(T) / log log |T|``.

    Both are floored at 1.  ``exactness`` is ``exact`` when every factor
    diameter was enumerated, ``table-diam`` when some came from the table,
    and ``unavailable`` when some factor diameter is unknown.
    """

    theta1: float
    theta2: float
    witness1: str | None
    witness2: str | None
    exactness: str
    diameters: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "theta1": self.theta1,
            "theta2": self.theta2,
            "witness1": self.witness1,
            "witness2": self.witness2,
            "exactness": self.exactness,
            "factor_diameters": dict(self.diameters),
        }


_EXACT_CACHE: dict[str, int] = {}


def _exact_factor_diameter(name, G, terms, i):
    if name in _EXACT_CACHE:
        return _EXACT_CACHE[name]
    top, below = terms[i], terms[i + 1]
    Q = quotient_action(top, below).group if not below.is_trivial() else top
    d = worst_case_diameter(Q).diameter
    _EXACT_CACHE[name] = d
    return d


def theta(G: PermGroup, policy: str = "table", series=None) -> ThetaPair:
    """Theta exponents with factor diameters taken from the table or enumerated.

    ``policy="exact"`` enumerates worst-case diameters of nonabelian factors
    of order at most 5000 and falls back to the table otherwise.
    """
    if policy not in ("table", "exact"):
        raise DomainError(f"unknown diameter policy {policy!r}")
    if series is None:
        series = composition_series(G)
    terms, factors = series[0].terms, series[1]
    best1, best2 = 1.0, 1.0
    w1 = w2 = None
    kinds = set()
    diameters = {}
    for i, f in enumerate(factors):
        if f.abelian:
            continue
        d = None
        if policy == "exact" and f.order <= 5000:
            try:
                d = _exact_factor_diameter(f.name, G, terms, i)
                kinds.add("exact")
            except CapacityError:
                d = None
        if d is None and f.name in DIAMETER_TABLE:
            d = DIAMETER_TABLE[f.name]
            kinds.add("table-diam")
        if d is None or f.mu is None:
            kinds.add("unavailable")
            continue
        diameters[f.name] = d
        t1 = math.log(d) / math.log(f.mu)
        t2 = math.log(d) / math.log(math.log(f.order))
        if t1 > best1:
            best1, w1 = t1, f.name
        if t2 > best2:
            best2, w2 = t2, f.name
    if "unavailable" in kinds:
        exactness = "unavailable"
    elif "table-diam" in kinds:
        exactness = "table-diam"
    else:
        exactness = "exact"
    return ThetaPair(best1, best2, w1, w2, exactness, diameters)


# ---------------------------------------------------------------------------
# epsilon


def quotient_exponent(N: PermGroup, K: PermGroup) -> int:
    """Exponent of the abelian quotient ``N/K`` (lcm of generator orders modulo ``K``)."""
    result = 1
    for g in N.nontrivial_gens():
        p, k = g, 1
        while not K.contains(p):
            p = p * g
            k += 1
        result = math.lcm(result, k)
    return result


def epsilon(G: PermGroup) -> dict:
    """``epsilon`` over all normal subgroups and ``epsilon0`` over the derived series.

    ``epsilon`` is None when the normal lattice is beyond the lattice cap.
    """
    ds = derived_series(G)
    eps0 = 1
    for top, below in zip(ds.terms, ds.terms[1:]):
        eps0 = max(eps0, quotient_exponent(top, below))
    eps = None
    exp_g = None
    if G.order() <= config.LATTICE_ORDER_CAP:
        eps = 1
        for N in normal_lattice(G):
            eps = max(eps, quotient_exponent(N, N.derived_subgroup()))
        exp_g = exponent(G)
        if not (eps0 <= eps <= exp_g):
            raise AssertionError("epsilon0 <= epsilon <= exp(G) violated")
    return {"epsilon": eps, "epsilon0": eps0, "exponent": exp_g}


def is_nilpotent(G: PermGroup) -> bool:
    """Lower central series reaches the trivial group."""
    H = G
    while not H.is_trivial():
        seeds = [h.commutator(g) for h in H.nontrivial_gens() for g in G.nontrivial_gens()]
        K = _closure_group(G, seeds)
        if K.order() == H.order():
            return False
        H = K
    return True


# ---------------------------------------------------------------------------
# transitive groups


@dataclass(frozen=True)
class TransitiveCheck:
    """Results of the exponent and minimal-degree checks for a transitive group."""

    degree: int
    normal_checks: tuple[tuple[int, int, int], ...]  # (|N|, orbit length, exp(N/N'))
    factor_checks: tuple[tuple[str, int | None], ...]  # (factor, mu)
    epsilon: int

    @property
    def ok(self) -> bool:
        return (all(e <= m for _, m, e in self.normal_checks)
                and all(mu is not None and mu <= self.degree for _, mu in self.factor_checks)
                and self.epsilon <= self.degree)


def transitive_checks(G: PermGroup, factors=None) -> TransitiveCheck:
    """Abelianization exponents against orbit lengths, and factor degrees against ``n``."""
    if not G.is_transitive():
        raise DomainError("group is not transitive")
    if G.order() > config.LATTICE_ORDER_CAP:
        raise CapacityError(f"order {G.order()} exceeds the lattice cap {config.LATTICE_ORDER_CAP}")
    rows = []
    eps = 1
    for N in normal_lattice(G):
        m = len(N.orbits()[0]) if not N.is_trivial() else 1
        e = quotient_exponent(N, N.derived_subgroup())
        eps = max(eps, e)
        rows.append((N.order(), m, e))
    if factors is None:
        _, factors = composition_series(G)
    return TransitiveCheck(G.degree, tuple(rows), tuple((str(f), f.mu) for f in factors), eps)


# ---------------------------------------------------------------------------
# bound report


@dataclass(frozen=True)
class BoundEntry:
    bound_id: str
    statement: str
    lhs: float | int | None
    rhs: float | int | None
    verdict: str
    note: str = ""

    def to_dict(self) -> dict:
        return {"id": self.bound_id, "statement": self.statement, "lhs": self.lhs,
                "rhs": self.rhs, "verdict": self.verdict, "note": self.note}


@dataclass
class BoundReport:
    group: str
    context: str
    degree: int
    invariants: dict
    entries: list[BoundEntry]

    def entry(self, bound_id: str) -> BoundEntry:
        for e in self.entries:
            if e.bound_id == bound_id:
                return e
        raise KeyError(bound_id)

    def to_dict(self) -> dict:
        return {"group": self.group, "context": self.context, "degree": self.degree,
                "invariants": self.invariants, "entries": [e.to_dict() for e in self.entries]}


CONTEXTS = ("abstract", "transitive", "primitive", "soluble", "nilpotent")


def _exact_entry(bound_id, statement, lhs, rhs, strict=False, note=""):
    if lhs is None:
        return BoundEntry(bound_id, statement, None, rhs, "unavailable", note)
    verdict = "holds" if _leq(lhs, rhs, strict) else "fails"
    return BoundEntry(bound_id, statement, lhs, rhs, verdict, note)


def _constant_entry(bound_id, statement, value, lhs=None):
    if value is None:
        return BoundEntry(bound_id, statement, lhs, None, "unavailable", "an input invariant is unavailable")
    return BoundEntry(bound_id, statement, lhs, value, "holds-up-to-constant",
                      "only the variable part is evaluated; the implied constant is unspecified")


def bound_report(G: PermGroup, context: str = "abstract", label: str | None = None,
                 diameter_cap: int = 120, theta_policy: str = "table") -> BoundReport:
    """Evaluate every bound applicable in ``context``.

    The worst-case diameter is enumerated when ``|G| <= diameter_cap``; bounds
    on ``diam(G)`` are otherwise reported as unavailable.
    """
    if context not in CONTEXTS:
        raise DomainError(f"unknown context {context!r}; expected one of {', '.join(CONTEXTS)}")
    n = G.degree
    order = G.order()
    soluble = G.is_soluble()
    transitive = G.is_transitive()
    if context == "soluble" and not soluble:
        raise DomainError("context 'soluble' needs a soluble group")
    if context == "nilpotent" and not is_nilpotent(G):
        raise DomainError("context 'nilpotent' needs a nilpotent group")
    if context == "transitive" and not transitive:
        raise DomainError("context 'transitive' needs a transitive group")
    if context == "primitive" and not G.is_primitive():
        raise DomainError("context 'primitive' needs a primitive group")

    series = composition_series(G)
    mu = mu_profile(G, series[1])
    th = theta(G, theta_policy, series)
    eps = epsilon(G)
    L = derived_series(G).length if soluble else None
    diam = worst_case_diameter(G).diameter if order <= diameter_cap and order <= 5000 else None
    log2g = math.log2(order) if order > 1 else 0.0
    invariants = {
        "order": order,
        "derived_length": L,
        "epsilon": eps["epsilon"],
        "epsilon0": eps["epsilon0"],
        "exponent": eps["exponent"],
        **mu.to_dict(),
        **th.to_dict(),
        "worst_case_diameter": diam,
        "constants": {"b1": B1, "c1": C1, "c": C_PYBER},
    }
    entries: list[BoundEntry] = []

    # abstract bounds, always evaluated
    max_diam = max(th.diameters.values(), default=1)
    if eps["epsilon"] is None or th.exactness == "unavailable":
        main = None
    else:
        main = eps["epsilon"] * math.log(order) ** (31 + 5 * th.theta1) * max_diam if order > 1 else 0.0
    entries.append(_constant_entry("main-theorem", "diam(G) << eps(G) (log|G|)^(31+5 theta1) max diam(T)",
                                   main, diam))
    if soluble:
        rhs = eps["epsilon0"] * 4 ** (L - 1) * log2g ** 2 if L >= 1 else 0
        entries.append(_exact_entry("soluble-diameter", "diam(G) <= eps0 4^(L-1) (log2|G|)^2", diam, rhs))
        if order >= 2:
            entries.append(_exact_entry("glasby-derived-length", "L < 3 log2 log2|G| + 9", L,
                                        3 * math.log2(log2g) + 9, strict=True))
        else:
            entries.append(BoundEntry("glasby-derived-length", "L < 3 log2 log2|G| + 9", L, None,
                                      "not-applicable", "log2 log2|G| is not positive"))
    entries.append(_exact_entry("mu-na-degree", "mu_na(G) <= b1^(n-1)", mu.mu_na, B1 ** (n - 1)))

    if context in ("transitive", "primitive") or (context == "nilpotent" and transitive):
        entries.append(_exact_entry("guralnick-epsilon", "eps(G) <= n", eps["epsilon"], n))
        tp = None if th.exactness == "unavailable" else n ** (32 + 7 * th.theta1)
        entries.append(_constant_entry("transitive-polynomial", "diam(G) << n^(32+7 theta1)", tp, diam))
        if soluble:
            entries.append(_constant_entry("soluble-transitive", "diam(G) << n^5", n ** 5, diam))
        if context == "nilpotent" or is_nilpotent(G):
            entries.append(_exact_entry("nilpotent-transitive", "diam(G) <= n^4", diam, n ** 4))

    if context == "primitive":
        entries.append(_exact_entry("palfy-wolf-general", "mu_cf(G) < n^5", mu.mu_cf, n ** 5, strict=True))
        entries.append(_exact_entry("mu-na-primitive", "mu_na(G) <= b1^-1 n^(5/4)", mu.mu_na,
                                    n ** 1.25 / B1))
        entries.append(_exact_entry("pyber-abelian", "mu_ab(G) <= 24^(-1/3) n^c", mu.mu_ab,
                                    24 ** (-1 / 3) * n ** C_PYBER))
        pd = None if th.exactness == "unavailable" else 0.25 * n ** (10 + 5 * th.theta1)
        if pd is None:
            entries.append(BoundEntry("primitive-diameter", "diam(G) < n^(10+5 theta1) / 4", diam, None,
                                      "unavailable", "theta1 unavailable"))
        else:
            entries.append(_exact_entry("primitive-diameter", "diam(G) < n^(10+5 theta1) / 4", diam, pd,
                                        strict=True))
        if soluble:
            ps = n * math.log(n) ** 8 if n > 1 else 0.0
            entries.append(_constant_entry("primitive-soluble", "diam(G) << n (log n)^8", ps, diam))

    name = label or G.name or f"degree-{n} group of order {order}"
    return BoundReport(name, context, n, invariants, entries)
