"""Command-line front end.

Subcommands:
    check   decide conditional symmetry for one instance file
    search  grid scan over distribution pairs for a (group, alpha) pair
    padic   finite-level scan of Z_{p^k} with alpha = multiplication by c
    verify  run the randomized property suites

Every emitted report embeds its run manifest (command, inputs, config,
version, timestamp); report content is a pure function of the manifest, so
identical manifests produce byte-identical reports.  Set
HEYDE_LAB_TIMESTAMP to pin the manifest timestamp for reproducible output.

Exit codes: 0 verdict-true/pass, 1 verdict-false/fail, 2 usage or schema
error, 3 internal disagreement between an exact predicate and its
tolerance-based counterpart.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from typing import Sequence, TextIO

from . import __version__
from .distributions import CHAR_TOL
from .groups import identity_endomorphism
from .predicates import (
    are_forms_independent,
    canonicalize,
    conditional_symmetry_witness,
    derived_forms_instance,
    heyde_equation_check,
    independence_equation_check,
)
from .search import (
    SearchConfig,
    SearchSpaceError,
    classify_distribution,
    grid_scan,
    padic_scan,
)
from .serialization import (
    SchemaError,
    element_key,
    endomorphism_to_json,
    group_from_json,
    endomorphism_from_json,
    instance_from_json,
)
from .verify import SUITES, run_suite

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_SCHEMA = 2
EXIT_DISAGREEMENT = 3

_IDEMPOTENT_KINDS = ("degenerate", "idempotent-shift")


def _timestamp() -> str:
    pinned = os.environ.get("HEYDE_LAB_TIMESTAMP")
    if pinned:
        return pinned
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _thread_cap() -> int:
    """Upper bound on worker parallelism; evaluation is partition-
    deterministic, so the cap never affects output."""
    raw = os.environ.get("HEYDE_LAB_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def build_manifest(command: str, inputs: Sequence[str], config: dict) -> dict:
    return {
        "command": command,
        "inputs": list(inputs),
        "config": config,
        "threads": _thread_cap(),
        "version": __version__,
        "timestamp": _timestamp(),
    }


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc


def _emit(report: dict, out: TextIO) -> None:
    json.dump(report, out, sort_keys=True, indent=2)
    out.write("\n")


def _search_config(args: argparse.Namespace) -> SearchConfig:
    return SearchConfig(
        support_size_cap=args.support_cap,
        denominator_cap=args.denominator_cap,
        random_trials=args.trials,
        seed=args.seed,
    )


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    manifest = build_manifest(
        "check", [args.instance], {"tolerance": args.tolerance}
    )
    instance = instance_from_json(_load_json(args.instance))
    canonicalized = not instance.is_canonical
    if canonicalized:
        result = canonicalize(instance)
        canonical = result.instance
        kernel = result.kernel
    else:
        canonical = instance
        kernel = (
            identity_endomorphism(canonical.group) + canonical.beta2
        ).kernel()

    witness = conditional_symmetry_witness(canonical)
    symmetric = witness is None
    eq42 = heyde_equation_check(canonical, tol=args.tolerance)
    derived = derived_forms_instance(canonical)
    independent = are_forms_independent(derived)
    eq4 = independence_equation_check(derived, tol=args.tolerance)

    class1 = classify_distribution(instance.mu1)
    class2 = classify_distribution(instance.mu2)
    pair_idempotent = (
        class1["kind"] in _IDEMPOTENT_KINDS and class2["kind"] in _IDEMPOTENT_KINDS
    )
    tags = []
    if symmetric and pair_idempotent and kernel.is_trivial:
        tags.append("theoremB-consistent")
    if symmetric and not pair_idempotent:
        if not kernel.is_trivial:
            tags.append("kernel-counterexample")
        else:
            tags.append("red-alert-nonidempotent")

    agreement = {
        "symmetric_vs_eq42": symmetric == eq42,
        "independence_vs_eq4": independent == eq4,
        "symmetry_implies_independence": (not symmetric) or independent,
    }
    report = {
        "manifest": manifest,
        "symmetric": symmetric,
        "eq42": eq42,
        "witness": (
            None
            if witness is None
            else {"s": element_key(witness[0]), "t": element_key(witness[1])}
        ),
        "m_forms_independent": independent,
        "eq4": eq4,
        "classifications": {"mu1": class1, "mu2": class2},
        "kernel": [list(e.coords) for e in kernel],
        "canonicalized": canonicalized,
        "alpha_prime": endomorphism_to_json(canonical.beta2),
        "tags": tags,
        "agreement": agreement,
    }
    _emit(report, out)
    if not all(agreement.values()):
        return EXIT_DISAGREEMENT
    return EXIT_TRUE if symmetric else EXIT_FALSE


def cmd_search(args: argparse.Namespace, out: TextIO) -> int:
    config = _search_config(args)
    manifest = build_manifest(
        "search", [args.group, args.alpha], config.to_json()
    )
    group = group_from_json(_load_json(args.group))
    alpha = endomorphism_from_json(group, _load_json(args.alpha))
    result = grid_scan(group, alpha, config)
    for report in result.hits:
        line = {"manifest": manifest, **report.to_json()}
        out.write(json.dumps(line, sort_keys=True))
        out.write("\n")
    summary = {"manifest": manifest, "summary": result.summary}
    out.write(json.dumps(summary, sort_keys=True))
    out.write("\n")
    return EXIT_FALSE if result.red_alert else EXIT_TRUE


def cmd_padic(args: argparse.Namespace, out: TextIO) -> int:
    config = _search_config(args)
    manifest = build_manifest(
        "padic",
        [],
        {"p": args.p, "k": args.k, "c": args.c, **config.to_json()},
    )
    report = padic_scan(args.p, args.k, args.c, config)
    payload = {"manifest": manifest, **report.to_json()}
    payload["hits"] = [r.to_json() for r in report.scan.hits]
    _emit(payload, out)
    return EXIT_TRUE if report.consistent in (True, None) else EXIT_FALSE


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    manifest = build_manifest(
        "verify", [], {"suite": args.suite, "seed": args.seed, "trials": args.trials}
    )
    results = []
    for name in names:
        result = run_suite(name, seed=args.seed, trials=args.trials)
        results.append(result)
        out.write(
            f"{name}: {'PASS' if result.passed else 'FAIL'} "
            f"({result.checks} checks)\n"
        )
        for failure in result.failures:
            out.write(f"  {failure}\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _emit(
                {"manifest": manifest, "suites": [r.to_json() for r in results]},
                fh,
            )
    return EXIT_TRUE if all(r.passed for r in results) else EXIT_FALSE


def _add_search_flags(parser: argparse.ArgumentParser, default_trials: int) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--support-cap", type=int, default=3)
    parser.add_argument("--denominator-cap", type=int, default=6)
    parser.add_argument("--trials", type=int, default=default_trials)
    parser.add_argument("--out", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heyde-lab",
        description=(
            "Exact-arithmetic checks of conditional-symmetry "
            "characterizations on finite abelian groups"
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide one instance file")
    check.add_argument("instance", help="instance JSON file")
    check.add_argument("--tolerance", type=float, default=CHAR_TOL)
    check.add_argument("--out", type=str, default=None)

    search = sub.add_parser("search", help="grid scan over distribution pairs")
    search.add_argument("group", help="group JSON file")
    search.add_argument("alpha", help="endomorphism JSON file")
    _add_search_flags(search, default_trials=10_000)

    padic = sub.add_parser("padic", help="finite-level p-power scan")
    padic.add_argument("--p", type=int, required=True)
    padic.add_argument("--k", type=int, required=True)
    padic.add_argument("--c", type=int, required=True)
    _add_search_flags(padic, default_trials=2000)
    padic.set_defaults(support_cap=2, denominator_cap=4)

    verify = sub.add_parser("verify", help="run property suites")
    verify.add_argument(
        "--suite", choices=[*SUITES, "all"], default="all"
    )
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--out", type=str, default=None)

    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching the schema exit code
        return int(exc.code or 0)
    handlers = {
        "check": cmd_check,
        "search": cmd_search,
        "padic": cmd_padic,
        "verify": cmd_verify,
    }
    out_path = getattr(args, "out", None)
    try:
        if out is not None:
            return handlers[args.command](args, out)
        if out_path and args.command != "verify":
            with open(out_path, "w", encoding="utf-8") as fh:
                return handlers[args.command](args, fh)
        return handlers[args.command](args, sys.stdout)
    except (SchemaError, SearchSpaceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
