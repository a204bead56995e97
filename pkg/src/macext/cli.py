"""Command-line interface.

Every subcommand writes a JSON report to stdout and a one-line summary to
stderr.  Exit codes: 0 ok, 2 usage or malformed input, 3 nothing found
(no kernel up to the bound), 4 a verification check failed, 5 budget or cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from ._config import BudgetExceeded, CapExceeded
from .characters import duality_check
from .construction import (AlphabetSpec, Certificate, ConstructionInapplicable, NoKernelFound,
                           construct_counterexample, lower_bound_n, min_m_search)
from .gf import FieldSpec, field_for_q, field_make
from .isometry import (AutGroup, closure, general_linear, generate, g_pseudo_injective,
                       hamming_weight_fn, load_weight, trivial_group, unextendable_for_weight)
from .lattice import Subspace, count_complement_avoiding, enumerate_subspaces, lattice_stats
from .multiplicity import avoids
from .verify import MalformedCertificate, verify_certificate

EXIT_OK, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_FAILED, EXIT_BUDGET = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def parse_count(text: str) -> int:
    """Integers written as 12345, 10^7 or 1e7."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", text)
    if m:
        return int(m.group(1)) ** int(m.group(2) or 1)
    m = re.fullmatch(r"\s*(\d+)[eE](\d+)\s*", text)
    if m:
        return int(m.group(1)) * 10 ** int(m.group(2))
    raise argparse.ArgumentTypeError(f"not a count: {text!r}")


def _field(args: argparse.Namespace) -> FieldSpec:
    try:
        if args.p is not None:
            modulus = [int(c) for c in args.modulus.split(",")] if args.modulus else None
            return field_make(args.p, args.e or 1, modulus)
        return field_for_q(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _alphabet(args: argparse.Namespace) -> AlphabetSpec:
    try:
        return AlphabetSpec(_field(args), args.k, args.ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _group(spec: str, F: FieldSpec, ell: int) -> AutGroup:
    if spec == "trivial":
        return trivial_group(F, ell)
    if spec == "full":
        return general_linear(F, ell)
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"group must be 'trivial', 'full' or a JSON file, got {spec!r}")
    data = json.loads(path.read_text())
    try:
        if "generators" in data:
            return generate(F, ell, data["generators"])
        elems = [tuple(tuple(r) for r in g) for g in data["elements"]]
        G = generate(F, ell, elems)
        if G.order != len(set(elems)):
            raise UsageError("group file 'elements' are not closed under multiplication")
        return G
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad group file: {exc}") from None


def _emit(report: dict, summary: str) -> None:
    print(json.dumps(report, indent=2))
    print(summary, file=sys.stderr)


def cmd_construct(args: argparse.Namespace) -> int:
    alphabet = _alphabet(args)
    try:
        cert = construct_counterexample(alphabet, args.m, args.max_m)
    except ConstructionInapplicable as exc:
        raise UsageError(str(exc)) from None
    except NoKernelFound as exc:
        _emit({"status": "not found", "reason": str(exc)}, str(exc))
        return EXIT_NOT_FOUND
    text = cert.dumps()
    if args.out:
        Path(args.out).write_text(text)
    t = cert.transcript
    report = {"q": alphabet.field.q, "k": alphabet.k, "ell": alphabet.ell, "m": cert.m, "n": cert.n,
              "lower_bound_n": lower_bound_n(alphabet.field.q, alphabet.k), "transcript": t,
              "certificate": args.out}
    _emit(report, f"m={cert.m} n={cert.n} bound={report['lower_bound_n']} eq1={t['eq1']}")
    ok = all(v == "pass" for key, v in t.items() if isinstance(v, str) and key != "brute_force")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        cert = Certificate.loads(Path(args.path).read_text())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed certificate: {exc}") from None
    group = None
    if args.group:
        group = _group(args.group, cert.alphabet.field, cert.alphabet.ell)
    try:
        report = verify_certificate(cert, group, args.brute_force, args.budget)
    except MalformedCertificate as exc:
        raise UsageError(f"malformed certificate: {exc}") from None
    failed = [k for k, v in report["checks"].items() if v != "pass"]
    bf = report["details"].get("brute_force", {}).get("result")
    _emit(report, "all checks pass" + (f"; {bf}" if bf else "") if not failed else "failed: " + ", ".join(failed))
    return EXIT_OK if report["ok"] else EXIT_FAILED


def cmd_min_m(args: argparse.Namespace) -> int:
    alphabet = _alphabet(args)
    try:
        report = min_m_search(alphabet, args.max_m)
    except ConstructionInapplicable as exc:
        raise UsageError(str(exc)) from None
    _emit(report.to_json(), f"minimal m={report.minimal_m} lemma bound m={report.lemma_m}")
    return EXIT_OK if report.minimal_m is not None else EXIT_NOT_FOUND


def cmd_lattice_stats(args: argparse.Namespace) -> int:
    F = _field(args)
    report = lattice_stats(args.m, F)
    # Complement-avoiding counts against a fixed b-dim coordinate subspace.
    table = []
    for b in range(args.m + 1):
        B = Subspace.span(F, args.m, [[int(i == j) for j in range(args.m)] for i in range(args.m - b, args.m)])
        for c in range(args.m - b + 1):
            brute = sum(1 for C in enumerate_subspaces(args.m, c, F) if avoids(C, B))
            table.append({"b": b, "c": c, "formula": count_complement_avoiding(args.m, b, c, F.q),
                          "enumerated": brute})
    report["complement_avoiding"] = table
    ok = all(r["enumerated"] == r["gauss_binom"] for r in report["per_dim"]) and \
        all(r["formula"] == r["enumerated"] for r in table)
    _emit(report, f"{report['total']} subspaces; counts {'agree' if ok else 'DISAGREE'}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_duality_check(args: argparse.Namespace) -> int:
    report = duality_check(args.m, _field(args))
    ok = not report["failures"]
    summary = f"all {report['subspaces']} subspaces pass" if ok else \
        f"{len(report['failures'])} of {report['subspaces']} subspaces fail"
    _emit(report, summary)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_closure(args: argparse.Namespace) -> int:
    alphabet = _alphabet(args)
    G = _group(args.group, alphabet.field, alphabet.ell)
    Gbar = closure(G, alphabet)
    _emit({"group_order": G.order, "closure": Gbar.to_json(), "closed": Gbar.order == G.order},
          f"closure has order {Gbar.order}")
    return EXIT_OK


def cmd_pseudo_injective(args: argparse.Namespace) -> int:
    alphabet = _alphabet(args)
    G = _group(args.group, alphabet.field, alphabet.ell)
    result = g_pseudo_injective(alphabet, G)
    _emit(result.to_json(), f"pseudo-injective={result.verdict} characterizations agree={result.agree}")
    return EXIT_OK if result.agree else EXIT_FAILED


def cmd_weight(args: argparse.Namespace) -> int:
    alphabet = _alphabet(args)
    if args.weight == "hamming":
        omega = hamming_weight_fn(alphabet)
    else:
        try:
            omega = load_weight(json.loads(Path(args.weight).read_text()), alphabet)
        except (OSError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad weight file: {exc}") from None
    try:
        cert, report = unextendable_for_weight(omega, alphabet, args.m)
    except ConstructionInapplicable as exc:
        raise UsageError(str(exc)) from None
    except NoKernelFound as exc:
        _emit({"status": "not found", "reason": str(exc)}, str(exc))
        return EXIT_NOT_FOUND
    if args.out:
        Path(args.out).write_text(cert.dumps())
    report.update({"m": cert.m, "n": cert.n, "certificate": args.out})
    _emit(report, f"omega-preserving={report['omega_preserving']} extension={report['extension']}")
    return EXIT_OK if report["ok"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="macext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--q", type=int, default=2, help="field size (built-in modulus)")
    field.add_argument("--p", type=int, help="characteristic; overrides --q")
    field.add_argument("--e", type=int, help="extension degree with --p")
    field.add_argument("--modulus", help="comma-separated coefficients c_0..c_e with --p")

    alpha = argparse.ArgumentParser(add_help=False, parents=[field])
    alpha.add_argument("--k", type=int, default=1, help="matrix ring size")
    alpha.add_argument("--ell", type=int, required=True, help="alphabet dimension")

    p = sub.add_parser("construct", parents=[alpha], help="build a certificate")
    p.add_argument("--m", type=int)
    p.add_argument("--max-m", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-verify a certificate")
    p.add_argument("path")
    p.add_argument("--group", help="trivial, full or a JSON group file")
    p.add_argument("--brute-force", action="store_true")
    p.add_argument("--budget", type=parse_count, default=10**7)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("min-m", parents=[alpha], help="least m with nonzero Ker E'")
    p.add_argument("--max-m", type=int, required=True)
    p.set_defaults(func=cmd_min_m)

    p = sub.add_parser("lattice-stats", parents=[field], help="subspace counts")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_lattice_stats)

    p = sub.add_parser("duality-check", parents=[field], help="Fourier transform of indicators")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_duality_check)

    for name, func, help_ in [("closure", cmd_closure, "closure of a group"),
                              ("pseudo-injective", cmd_pseudo_injective, "G-pseudo-injectivity")]:
        p = sub.add_parser(name, parents=[alpha], help=help_)
        p.add_argument("--group", default="full")
        p.set_defaults(func=func)

    p = sub.add_parser("weight", parents=[alpha], help="counterexample for a weight function")
    p.add_argument("--weight", required=True, help="'hamming' or a JSON {point: rational} file")
    p.add_argument("--m", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_weight)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
