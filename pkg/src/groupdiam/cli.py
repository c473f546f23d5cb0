"""Command-line interface.

Groups are given inline as ``name@degree:a=(0 1 2),b=(0 1)`` (name, degree
and labels optional) or by corpus label, optionally prefixed ``label:``.
Without ``--group`` (or with ``--group -``) the description is read from
standard input, so ``construct`` output can be piped into other commands.

Exit codes: 0 success, 1 a verification failed, 2 parse or domain error,
3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import re
import signal
import sys

from . import config
from .checks import SUITES
from .constructions import CORPUS_LABELS, construct
from .diametry import LengthCertificate, diameter, growth, length_bfs, worst_case_diameter
from .errors import CapacityError, DomainError, GroupDiamError, ParseError
from .group import PermGroup, composition_series, derived_series, normal_closure
from .invariants import CONTEXTS, bound_report, epsilon, is_nilpotent, mu_profile, theta
from .perm import GenSet, default_labels, parse_cycles
from .synth import (compose_certificates, direct_product_solve, milnor_stabilize,
                    schreier_generators, soluble_solve)


# ---------------------------------------------------------------------------
# group descriptions


def parse_group(text: str) -> PermGroup:
    """Build a group from an inline description or a corpus label."""
    text = text.strip()
    if not text:
        raise ParseError("empty group description")
    if text.startswith("label:"):
        return construct(text[len("label:"):])
    paren = text.find("(")
    if paren < 0:
        return construct(text)
    cut = text.rfind(":", 0, paren)
    head, body = (text[:cut], text[cut + 1:]) if cut >= 0 else ("", text)
    name, _, deg = head.rpartition("@") if "@" in head else (head, "", "")
    items = [item.strip() for item in body.split(",")]
    labels, cycles = [], []
    for item in items:
        label, eq, cyc = item.partition("=")
        if not eq:
            label, cyc = "", item
        labels.append(label.strip())
        cycles.append(cyc.strip())
    if deg:
        try:
            degree = int(deg)
        except ValueError:
            raise ParseError(f"bad degree {deg!r}") from None
    else:
        points = [int(x) for c in cycles for x in re.findall(r"\d+", c)]
        degree = max(points, default=0) + 1
    defaults = default_labels(len(items))
    labels = [lab or defaults[i] for i, lab in enumerate(labels)]
    if len(set(labels)) != len(labels):
        raise ParseError(f"repeated generator label in {labels}")
    perms = [parse_cycles(c, degree) for c in cycles]
    return PermGroup(GenSet.from_list(perms, labels, degree=degree), name=name.strip() or None)


def describe(G: PermGroup) -> str:
    """Inline description that :func:`parse_group` reads back to the same generators."""
    gens = ",".join(f"{lab}={p}" for lab, p in G.genset.generators.items()) or "()"
    return f"{G.name or ''}@{G.degree}:{gens}"


def _read_group(args) -> PermGroup:
    text = args.group
    if text is None or text == "-":
        text = next((line for line in sys.stdin if line.strip()), "")
    return parse_group(text)


def _parse_element(text: str, degree: int):
    return parse_cycles(text.strip(), degree)


# ---------------------------------------------------------------------------
# output


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, (list, tuple)) and any(isinstance(v, (dict, list, tuple)) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}.{i}", v, out)
    elif isinstance(value, (list, tuple)):
        out.append((prefix, " ".join(_scalar(v) for v in value)))
    else:
        out.append((prefix, _scalar(value)))


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit(args, record: dict) -> None:
    if args.json:
        print(json.dumps(record, indent=2))
        return
    lines: list[tuple[str, str]] = []
    _flatten("", record, lines)
    for key, value in lines:
        print(f"{key}={value}")


# ---------------------------------------------------------------------------
# commands


def cmd_info(args) -> int:
    G = _read_group(args)
    action = G.action()
    _, factors = composition_series(G)
    record = {
        "name": G.name,
        "degree": G.degree,
        "generators": len(G.genset),
        "order": G.order(),
        "orbit_sizes": [len(o) for o in G.orbits()],
        "action": action.kind,
    }
    if action.blocks:
        record["blocks"] = "|".join(" ".join(map(str, b)) for b in action.blocks)
    record["soluble"] = G.is_soluble()
    if G.is_soluble():
        record["derived_length"] = derived_series(G).length
    record["composition_factors"] = [str(f) for f in factors]
    emit(args, record)
    return 0


def cmd_diameter(args) -> int:
    G = _read_group(args)
    res = diameter(G.genset, budget=args.budget)
    emit(args, {
        "diameter": res.diameter,
        "order": res.order,
        "witness": str(res.witness),
        "word": str(res.word),
        "sphere_sizes": list(res.sphere_sizes),
    })
    return 0


def cmd_worst_diameter(args) -> int:
    G = _read_group(args)
    res = worst_case_diameter(G, budget=args.genset_budget)
    emit(args, {
        "worst_diameter": res.diameter,
        "genset": str(res.genset),
        "sets_examined": res.sets_examined,
    })
    return 0


def cmd_growth(args) -> int:
    G = _read_group(args)
    prof = growth(G.genset, args.radius, budget=args.budget)
    emit(args, {
        "radius": prof.radius,
        "ball_sizes": list(prof.sizes),
        "saturated": prof.saturated,
        "diameter": prof.diameter,
    })
    return 0


def _solve_in_subgroup(X: GenSet, target, Y) -> LengthCertificate:
    outer = length_bfs(Y.genset(), target, budget=None, name="Y")
    if outer.word is None:
        raise DomainError("target is not in the synthesized subgroup")
    cert = compose_certificates(outer, Y)
    return cert.with_bound(len(outer.word) * Y.bound, f"{Y.bound_source}+chain-rule")


def synthesize(G: PermGroup, target, method: str, normal=None) -> LengthCertificate:
    """Length certificate for ``target`` over the generators of ``G``."""
    X = G.genset
    if not G.contains(target):
        raise DomainError("target is not in the group")
    if method == "soluble":
        return soluble_solve(X, target)
    if method == "direct-product":
        return direct_product_solve(X, target)
    if method == "schreier":
        N = normal if normal is not None else normal_closure(G, [target])
        if not N.contains(target):
            raise DomainError("target is not in the given normal subgroup")
        return _solve_in_subgroup(X, target, schreier_generators(X, N))
    if method == "milnor":
        seed = length_bfs(X, target).word
        return _solve_in_subgroup(X, target, milnor_stabilize(X, [seed]))
    raise DomainError(f"unknown method {method!r}")


def cmd_synthesize(args) -> int:
    G = _read_group(args)
    target = _parse_element(args.target, G.degree)
    normal = None
    if args.normal:
        gens = [_parse_element(c, G.degree) for c in args.normal.split(",")]
        normal = PermGroup(gens, G.degree)
    cert = synthesize(G, target, args.method, normal)
    valid = cert.validate(G.genset)
    doc = {"group": describe(G), "method": args.method, "valid": valid, "certificate": cert.to_dict()}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2)
    if not args.json:
        doc["certificate"]["word"] = str(cert.word)
    emit(args, doc)
    return 0 if valid else 1


def cmd_invariants(args) -> int:
    G = _read_group(args)
    series, factors = composition_series(G)
    record = {"order": G.order(), "mu": mu_profile(G, factors).to_dict()}
    record["theta"] = theta(G, policy=args.theta_policy, series=(series, factors)).to_dict()
    eps = epsilon(G)
    record["epsilon"] = eps["epsilon"]
    record["epsilon0"] = eps["epsilon0"]
    record["exponent"] = eps["exponent"]
    record["soluble"] = G.is_soluble()
    record["nilpotent"] = is_nilpotent(G)
    emit(args, record)
    return 0


def cmd_bounds(args) -> int:
    G = _read_group(args)
    rep = bound_report(G, args.context, label=G.name, diameter_cap=args.diameter_cap,
                       theta_policy=args.theta_policy)
    emit(args, rep.to_dict())
    return 0


def cmd_construct(args) -> int:
    G = construct(args.label)
    if args.json:
        emit(args, {"label": args.label, "degree": G.degree, "description": describe(G)})
    else:
        print(describe(G))
    return 0


def load_certificate(path: str):
    """Read a certificate document; returns the group and the certificate."""
    with open(path) as fh:
        doc = json.load(fh)
    try:
        G = parse_group(doc["group"])
        cert = LengthCertificate.from_dict(doc["certificate"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed certificate file: {exc}") from None
    return G, cert


def cmd_verify(args) -> int:
    if args.certificate:
        G, cert = load_certificate(args.certificate)
        valid = cert.validate(G.genset)
        emit(args, {"certificate": args.certificate, "length": cert.length,
                    "bound": cert.bound, "valid": valid})
        return 0 if valid else 1
    if not args.suite:
        raise ParseError("verify needs --suite or --certificate")
    if args.suite == "lemmas":
        results = SUITES["lemmas"](instances=args.instances, seed=args.seed)
    else:
        results = SUITES[args.suite]()
    failed = [r for r in results if not r.ok]
    if args.json:
        emit(args, {"suite": args.suite, "checks": [r.to_dict() for r in results],
                    "passed": len(results) - len(failed), "failed": len(failed)})
    else:
        for r in results:
            print(f"{r.name}={'pass' if r.ok else 'FAIL'} {r.detail}")
        print(f"summary=passed {len(results) - len(failed)} failed {len(failed)}")
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--budget", type=int, default=None,
                        help=f"states per breadth-first search (default {config.STATE_BUDGET})")
    common.add_argument("--genset-budget", type=int, default=None,
                        help=f"generating sets examined (default {config.GENSET_BUDGET})")
    common.add_argument("--time-limit", type=float, default=None, help="wall-clock limit in seconds")

    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", "-g", default=None,
                     help="inline description or corpus label; '-' or omitted reads stdin")

    p = argparse.ArgumentParser(prog="groupdiam", description="Diameters and word lengths in permutation groups.",
                                epilog="corpus labels: " + "; ".join(CORPUS_LABELS))
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common, grp], help="order, orbits, primitivity, composition factors")
    s.set_defaults(func=cmd_info)
    s = sub.add_parser("diameter", parents=[common, grp], help="exact diameter for the given generators")
    s.add_argument("--gens", action="store_true", help="use the generators of the description (default)")
    s.set_defaults(func=cmd_diameter)
    s = sub.add_parser("worst-diameter", parents=[common, grp], help="maximum diameter over generating sets")
    s.set_defaults(func=cmd_worst_diameter)
    s = sub.add_parser("growth", parents=[common, grp], help="ball sizes up to a radius")
    s.add_argument("--radius", "-r", type=int, required=True)
    s.set_defaults(func=cmd_growth)
    s = sub.add_parser("synthesize", parents=[common, grp], help="certified word for an element")
    s.add_argument("--target", "-t", required=True, help="element in cycle notation")
    s.add_argument("--method", "-m", required=True,
                   choices=["schreier", "milnor", "soluble", "direct-product"])
    s.add_argument("--normal", default=None,
                   help="comma-separated generators of the normal subgroup (schreier)")
    s.add_argument("--out", "-o", default=None, help="write the certificate document here")
    s.set_defaults(func=cmd_synthesize)
    s = sub.add_parser("invariants", parents=[common, grp], help="mu profile, theta, epsilon")
    s.add_argument("--theta-policy", choices=["table", "exact"], default="table")
    s.set_defaults(func=cmd_invariants)
    s = sub.add_parser("bounds", parents=[common, grp], help="evaluate diameter bounds")
    s.add_argument("--context", "-c", choices=list(CONTEXTS), default="abstract")
    s.add_argument("--diameter-cap", type=int, default=120,
                   help="enumerate the worst-case diameter up to this order")
    s.add_argument("--theta-policy", choices=["table", "exact"], default="table")
    s.set_defaults(func=cmd_bounds)
    s = sub.add_parser("construct", parents=[common], help="print the description of a corpus group")
    s.add_argument("--label", "-l", required=True)
    s.set_defaults(func=cmd_construct)
    s = sub.add_parser("verify", parents=[common], help="run a check suite or re-validate a certificate")
    s.add_argument("--suite", choices=sorted(SUITES), default=None)
    s.add_argument("--certificate", default=None, help="certificate document written by synthesize")
    s.add_argument("--instances", type=int, default=40, help="random instances (lemmas suite)")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def _on_alarm(signum, frame):
    raise CapacityError("wall-clock limit reached")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.genset_budget is not None:
        config.GENSET_BUDGET = args.genset_budget
    if args.budget is not None:
        config.STATE_BUDGET = args.budget
    if args.time_limit:
        signal.signal(signal.SIGALRM, _on_alarm)
        signal.setitimer(signal.ITIMER_REAL, args.time_limit)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"groupdiam: capacity: {exc}", file=sys.stderr)
        return 3
    except (GroupDiamError, ValueError) as exc:
        print(f"groupdiam: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"groupdiam: error: {exc}", file=sys.stderr)
        return 2
    finally:
        if args.time_limit:
            signal.setitimer(signal.ITIMER_REAL, 0)


if __name__ == "__main__":
    sys.exit(main())
