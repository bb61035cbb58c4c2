"""Command-line front end.

Exit status: 0 success or valid, 1 counterexample found, 2 usage or input
error, 3 resource guard, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .errors import (
    ArgumentError, ConsistencyError, ParseError, ResourceError, SizeLimitError, StructureError,
    WorkbenchError,
)
from .filters import generated_filter, prime_representation
from .lattice import HeytingAlgebra, chain_algebra, lattice_dot, lattice_from_json, quotient_by_filter
from .logic.families import FAMILIES, family_check
from .logic.ipc import ipc_decide
from .logic.positive import positivize
from .logic.semantics import evaluate, validity
from .logic.syntax import parse
from .morphisms import cc_power, cc_punctured, is_cone_cover, posetmap_from_json, posetmap_to_json
from .omega import (
    FinCofin, OmegaElem, default_enumeration, omega_impl, omega_join, omega_meet, star_normalize,
    theorem_k_check,
)
from .order import (
    Poset, antichain_poset, chain_poset, fork_poset, hasse_dot, open_algebra, poset_from_json,
    power_poset,
)

EXIT_OK, EXIT_COUNTER, EXIT_USAGE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(WorkbenchError):
    pass


def _emit(args, payload: dict, text: list[str]):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print("\n".join(text))


# -- specifiers -------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def parse_poset(text: str) -> Poset:
    """``chain:k``, ``antichain:k``, ``fork``, ``diamond``, ``power:n``, ``powerminus:n``, ``file:path``."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "fork":
            return fork_poset()
        if kind == "diamond":
            return Poset.from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)], labels=["0", "a", "b", "z"], name="diamond")
        if kind == "file":
            return poset_from_json(_read(arg), name=Path(arg).stem)
        k = int(arg)
    except ValueError as exc:
        if isinstance(exc, WorkbenchError):
            raise
        raise UsageError(f"bad poset specifier {text!r}") from exc
    if k < 1:
        raise UsageError(f"bad poset specifier {text!r}")
    if kind == "chain":
        return chain_poset(k)
    if kind == "antichain":
        return antichain_poset(k)
    if kind == "power":
        return power_poset(k)
    if kind == "powerminus":
        return power_poset(k, punctured=True)
    raise UsageError(f"unknown poset specifier {text!r}")


def parse_algebra(text: str) -> HeytingAlgebra:
    """``on:n``, ``onminus:n``, ``chain:k``, ``fork``, ``file:path`` (lattice JSON)."""
    kind, _, arg = text.partition(":")
    if kind == "fork":
        return open_algebra(fork_poset())
    if kind == "file":
        try:
            return lattice_from_json(_read(arg), name=Path(arg).stem)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{arg}: invalid JSON ({exc.msg})") from exc
    try:
        k = int(arg)
    except ValueError as exc:
        raise UsageError(f"bad algebra specifier {text!r}") from exc
    if kind == "on":
        return open_algebra(power_poset(k))
    if kind == "onminus":
        return open_algebra(power_poset(k, punctured=True))
    if kind == "chain":
        return chain_algebra(k)
    raise UsageError(f"unknown algebra specifier {text!r}")


def _element(H: HeytingAlgebra, token: str) -> int:
    if token in H.labels:
        return H.labels.index(token)
    try:
        i = int(token)
    except ValueError as exc:
        raise UsageError(f"{token!r} is neither an element label nor an index") from exc
    if not 0 <= i < H.size:
        raise UsageError(f"element index {i} out of range")
    return i


_GEN = re.compile(r"\s*(fin|cof)\{([0-9,\s]*)\}\s*")


def parse_omega(text: str) -> OmegaElem:
    """JSON ``{"generators": [...]}`` or a list like ``fin{0,1} cof{2}``; ``bot`` is empty."""
    text = text.strip()
    if text.startswith("{") and '"' in text:
        try:
            return OmegaElem.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON: {exc.msg}") from exc
    if text in ("", "bot", "⊥"):
        return star_normalize([])
    gens = []
    pos = 0
    while pos < len(text):
        m = _GEN.match(text, pos)
        if not m:
            raise UsageError(f"cannot read an O_ω generator at {text[pos:]!r}")
        support = [int(x) for x in m.group(2).replace(" ", "").split(",") if x]
        gens.append(FinCofin("finite" if m.group(1) == "fin" else "cofinite", tuple(support)))
        pos = m.end()
    return star_normalize(gens)


# -- subcommands -------------------------------------------------------------


def cmd_check(args) -> int:
    H = parse_algebra(args.algebra)
    phi = parse(args.formula)
    verdict = validity(H, phi, bound=args.bound) if args.bound else validity(H, phi)
    payload = {"algebra": H.name, "formula": str(phi), **verdict.to_dict()}
    if verdict.valid:
        _emit(args, payload, [f"valid: {phi} holds in {H.name} ({H.size} elements)"])
        return EXIT_OK
    value = evaluate(H, verdict.counter, phi)
    if value == H.top:
        raise ConsistencyError("countervaluation does not refute the formula")
    payload["value"] = H.labels[value]
    _emit(args, payload, [
        f"counterexample: {phi} fails in {H.name}",
        f"  valuation: {verdict.counter.describe()}",
        f"  value: {H.labels[value]}",
    ])
    return EXIT_COUNTER


def cmd_prove(args) -> int:
    phi = parse(args.formula)
    r = ipc_decide(phi)
    payload = {"formula": str(phi), **r.to_dict()}
    if r.theorem:
        _emit(args, payload, [f"theorem: {phi}"] + r.proof.lines(1))
        return EXIT_OK
    if r.countermodel.forces(0, phi):
        raise ConsistencyError("countermodel forces the formula at its root")
    note = "" if r.minimal else " (search budget exhausted, not necessarily minimal)"
    _emit(args, payload, [f"not a theorem: {phi}", f"Kripke countermodel{note}, root w0 does not force it:"]
          + ["  " + line for line in r.countermodel.describe()])
    return EXIT_COUNTER


def cmd_family(args) -> int:
    phi = parse(args.formula)
    rep = family_check(phi, args.family, args.max_n, stop_at_first=not args.all)
    c = rep.counterexample
    lines = [rep.summary()]
    if args.all:
        lines += [f"  n={e.n}" + (f" D={e.D_label}" if e.D is not None else "")
                  + f" size={e.size}: {'valid' if e.verdict.valid else 'counter'}" for e in rep.entries]
    _emit(args, rep.to_dict(), lines)
    return EXIT_OK if c is None else EXIT_COUNTER


def cmd_positivize(args) -> int:
    phi = parse(args.formula)
    plus = positivize(phi)
    _emit(args, {"formula": str(phi), "positive": str(plus)}, [str(plus)])
    return EXIT_OK


def cmd_represent(args) -> int:
    H = parse_algebra(args.algebra)
    rep = prime_representation(H)
    lines = [f"{len(rep.primes)} prime filters of {H.name}:"]
    lines += [f"  F{i} = {{{', '.join(F.labels())}}}" for i, F in enumerate(rep.primes)]
    lines.append("embedding into the upsets of the primes:")
    for a, t in enumerate(rep.eta):
        lines.append(f"  {H.labels[a]} -> {rep.target.labels[t]}")
    lines.append("verified: " + ("yes" if rep.report.ok else "NO"))
    _emit(args, json.loads(rep.to_json()), lines)
    return EXIT_OK


def _map_lines(f) -> list[str]:
    return ["  " + row for row in f.table()]


def cmd_cone(args) -> int:
    if args.cone_kind == "punctured":
        f = cc_punctured(args.n)
        check = is_cone_cover(f)
        lines = [f"cone-cover P{args.n + 1}- -> P{args.n}:"] + _map_lines(f)
        if args.verify:
            lines.append("verified: " + ("yes" if check else f"NO {check.witness}"))
        _emit(args, {"map": json.loads(posetmap_to_json(f)), "check": check.to_dict()}, lines)
        return EXIT_OK if check else EXIT_COUNTER
    if args.cone_kind == "power":
        Q = parse_poset(args.poset)
        m, f = cc_power(Q)
        check = is_cone_cover(f)
        lines = [f"cone-cover P{m} -> {Q.name or 'Q'} (m = {m}):"] + _map_lines(f)
        lines.append("verified: " + ("yes" if check else f"NO {check.witness}"))
        _emit(args, {"m": m, "map": json.loads(posetmap_to_json(f)), "check": check.to_dict()}, lines)
        return EXIT_OK if check else EXIT_COUNTER
    f = posetmap_from_json(_read(args.file))
    check = is_cone_cover(f)
    text = ["cone-cover: yes"] if check else [f"cone-cover: no ({check.reason}, witness {check.witness})"]
    _emit(args, check.to_dict(), text)
    return EXIT_OK if check else EXIT_COUNTER


def cmd_omega(args) -> int:
    if args.op == "theoremk":
        report = theorem_k_check(default_enumeration(args.max_n or 3))
        lines = [f"{k}: {v['pass']} pass, {v['fail']} fail" for k, v in report.counts().items()]
        lines.append("all identities hold" if report.ok else "SOME IDENTITIES FAIL")
        if args.json:
            print(report.to_json())
        else:
            print("\n".join(lines))
        return EXIT_OK if report.ok else EXIT_COUNTER
    if len(args.operands) != 2:
        raise UsageError(f"omega {args.op} takes two operands")
    A, B = (parse_omega(x) for x in args.operands)
    op = {"impl": omega_impl, "meet": omega_meet, "join": omega_join}[args.op]
    C = op(A, B)
    _emit(args, C.to_dict(), [repr(C)])
    return EXIT_OK


def cmd_quotient(args) -> int:
    H = parse_algebra(args.algebra)
    F = generated_filter(H, [_element(H, t.strip()) for t in args.filter.split(",")])
    q = quotient_by_filter(H, F)
    lines = [f"{H.name} / {F}: {q.lattice.size} classes"]
    for i, cls in enumerate(q.classes):
        lines.append(f"  [{', '.join(H.labels[a] for a in cls)}] ~ {q.segment.labels[q.iso[i]]}")
    lines.append(f"isomorphic to the segment [{H.labels[H.bot]}, {H.labels[q.generator]}]")
    payload = {
        "classes": [[H.labels[a] for a in cls] for cls in q.classes],
        "generator": H.labels[q.generator],
        "iso": [q.segment.labels[j] for j in q.iso],
    }
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_dot(args) -> int:
    if args.poset:
        print(hasse_dot(parse_poset(args.poset)))
    elif args.algebra:
        print(lattice_dot(parse_algebra(args.algebra)))
    else:
        raise UsageError("dot needs --poset or --algebra")
    return EXIT_OK


def cmd_suite(args) -> int:
    from .acceptance import run_acceptance, scoreboard

    only = None
    if args.only:
        try:
            only = [int(x) for x in args.only.split(",")]
        except ValueError as exc:
            raise UsageError("--only takes a comma separated list of criterion numbers") from exc
    results = run_acceptance(only=only, seed=args.seed or 0)
    if args.json:
        print(json.dumps([{
            "criterion": r.number, "title": r.title, "passed": r.passed,
            "seconds": round(r.seconds, 3), "limit": r.limit,
            "details": r.details, "failures": r.failures,
        } for r in results], ensure_ascii=False))
    else:
        print(scoreboard(results, verbose=args.verbose))
    return EXIT_OK if all(r.passed for r in results) else EXIT_COUNTER


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--max-n", type=int, default=argparse.SUPPRESS, help="size bound for family scans")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled checks")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="valuation-count guard")

    p = argparse.ArgumentParser(prog="heytingkit", description="Finite Heyting algebra workbench.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="validity of a formula in an algebra")
    s.add_argument("--algebra", required=True)
    s.add_argument("formula")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("prove", parents=[common], help="intuitionistic proof or Kripke countermodel")
    s.add_argument("formula")
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("family", parents=[common], help="validity across O_n style families")
    s.add_argument("formula")
    s.add_argument("--family", choices=FAMILIES, default="O_n")
    s.add_argument("--all", action="store_true", help="keep going after the first counterexample")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("positivize", parents=[common], help="negation-free translation")
    s.add_argument("formula")
    s.set_defaults(func=cmd_positivize)

    s = sub.add_parser("represent", parents=[common], help="prime-filter representation")
    s.add_argument("--algebra", required=True)
    s.set_defaults(func=cmd_represent)

    s = sub.add_parser("cone", parents=[common], help="cone-cover constructions")
    cone = s.add_subparsers(dest="cone_kind", required=True)
    c = cone.add_parser("punctured", parents=[common])
    c.add_argument("n", type=int)
    c.add_argument("--verify", action="store_true")
    c = cone.add_parser("power", parents=[common])
    c.add_argument("poset")
    c = cone.add_parser("verify", parents=[common])
    c.add_argument("file", help="poset map JSON")
    s.set_defaults(func=cmd_cone)

    s = sub.add_parser("omega", parents=[common], help="operations in O_ω")
    s.add_argument("op", choices=("impl", "meet", "join", "theoremk"))
    s.add_argument("operands", nargs="*")
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("quotient", parents=[common], help="quotient by a filter")
    s.add_argument("--algebra", required=True)
    s.add_argument("--filter", required=True, help="comma separated element labels or indices")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("dot", parents=[common], help="Hasse diagram in DOT")
    s.add_argument("--poset")
    s.add_argument("--algebra")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("suite", parents=[common], help="run the acceptance suite")
    s.add_argument("name", choices=("acceptance",))
    s.add_argument("--only", help="comma separated criterion numbers")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_suite)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("json", False), ("max_n", None), ("seed", None), ("bound", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.command == "family" and args.max_n is None:
        args.max_n = 3
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SizeLimitError, ResourceError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, ArgumentError, StructureError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
