"""Command-line front end.

Subcommands: verify (run every check group), certificate (emit the
generation certificate file), check-cert (independently re-validate a
file), complex (export the chain-level data), normalize (print the
normal form of a word).

Exit codes: 0 all checks passed, 1 a mathematical check was falsified or
a certificate rejected, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from .errors import ParameterError, ParseError, VerificationError
from .freewords import PresentationParams, parse_word, random_word, verify_free_identities
from .foxcomplex import apply, d1_contract, d2_matrix, fundamental_identity_holds
from .groupring import check_cyclic_identities
from .normalform import element_to_text, project
from .relmodule import check_module_identities, check_reduction
from .certificate import (
    basis_change,
    build_certificate,
    build_chain_export,
    certificate_bytes,
    chain_export_to_json,
    check_certificate,
    check_certificate_json,
    euler_characteristic,
    splitting_report,
)

DEFAULT_R = (2, 3, 5)
DEFAULT_SEED = 0
FOX_SAMPLE = 200

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class RunConfig:
    params: PresentationParams
    command: str
    out: str | None = None
    format: str = "text"
    seed: int = DEFAULT_SEED


@dataclass(frozen=True)
class CheckGroup:
    name: str
    status: str
    details: tuple[str, ...] = ()


def _group(name: str, ok: bool, failures: tuple[str, ...] = ()) -> CheckGroup:
    return CheckGroup(name, PASS if ok else FAIL, failures)


def run_verification(
    params: PresentationParams, seed: int = DEFAULT_SEED, sample: int = FOX_SAMPLE
) -> list[CheckGroup]:
    """Run the full check battery; pure (no I/O)."""
    n = params.n
    groups: list[CheckGroup] = []

    ok = all(verify_free_identities(i, params) for i in range(1, n + 1))
    groups.append(_group("free-relator conjugation identities", ok))

    bad = tuple(
        f"factor {i}" for i in range(1, n + 1) if not check_cyclic_identities(i, params).ok
    )
    groups.append(_group("cyclic norm/ramp ring identities", not bad, bad))

    bad = tuple(
        f"factor {i}" for i in range(1, n + 1) if not check_module_identities(i, params).ok
    )
    groups.append(_group("relation-module action identities", not bad, bad))

    bad = []
    for i in range(1, n + 1):
        report = check_reduction(i, params)
        if not report.ok:
            failing = [
                name
                for name in (
                    "total",
                    "power_norm_term",
                    "power_ramp_term",
                    "commutator_norm_term",
                    "commutator_ramp_term",
                )
                if not getattr(report, name)
            ]
            bad.append(f"factor {i}: {', '.join(failing)}")
    groups.append(_group("square reduction identity (with four expansion terms)", not bad, tuple(bad)))

    d2 = d2_matrix(params)
    ok = all(d1_contract(row, params).is_zero for row in d2.rows)
    groups.append(_group("chain condition d1 after d2 = 0", ok))

    rng = random.Random(seed)
    ok = all(
        fundamental_identity_holds(random_word(rng, n), params) for _ in range(sample)
    )
    groups.append(_group(f"fundamental derivative identity ({sample} sampled words)", ok))

    cert = None
    try:
        cert = build_certificate(params)
        report = check_certificate(cert)
        groups.append(_group("generation certificate build and recheck", report.accepted, report.failures))
    except VerificationError as exc:
        groups.append(_group("generation certificate build and recheck", False, (str(exc),)))

    if n < 2 or cert is None:
        reason = ("needs n >= 2",) if n < 2 else ("no certificate",)
        groups.append(CheckGroup("kernel membership of 3-cell attachments", SKIP, reason))
        groups.append(CheckGroup("basis-change invertibility", SKIP, reason))
        groups.append(CheckGroup("splitting onto the 3-cell summand", SKIP, reason))
    else:
        ok = all(apply(d2, a.coords, params).is_zero for a in cert.alpha)
        groups.append(_group("kernel membership of 3-cell attachments", ok))
        try:
            p, q, _ = basis_change(cert)
            groups.append(_group("basis-change invertibility", True))
            split = splitting_report(cert, basis=(p, q))
            groups.append(_group("splitting onto the 3-cell summand", split.ok))
        except VerificationError as exc:
            groups.append(_group("basis-change invertibility", False, (str(exc),)))
            groups.append(CheckGroup("splitting onto the 3-cell summand", SKIP, ("no basis change",)))

    ok = euler_characteristic(n) == 2 - n
    groups.append(_group("Euler characteristic equals 2 - n", ok))
    return groups


def _print_verification(params, seed, groups, fmt: str, stream) -> bool:
    passed = all(g.status != FAIL for g in groups)
    if fmt == "json":
        obj = {
            "r": list(params.r),
            "seed": seed,
            "groups": [
                {"name": g.name, "status": g.status, "details": list(g.details)}
                for g in groups
            ],
            "passed": passed,
        }
        print(json.dumps(obj, indent=2), file=stream)
        return passed
    print(f"checking r = ({', '.join(str(v) for v in params.r)})", file=stream)
    width = len(str(len(groups)))
    for pos, g in enumerate(groups, start=1):
        tag = {PASS: "PASS", FAIL: "FAIL", SKIP: "SKIP"}[g.status]
        print(f"  [{pos:>{width}}/{len(groups)}] {tag}  {g.name}", file=stream)
        for detail in g.details:
            print(f"        - {detail}", file=stream)
    counts = {
        "passed": sum(g.status == PASS for g in groups),
        "failed": sum(g.status == FAIL for g in groups),
        "skipped": sum(g.status == SKIP for g in groups),
    }
    verdict = "PASS" if passed else "FAIL"
    print(
        f"result: {verdict} ({len(groups)} groups: {counts['passed']} passed, "
        f"{counts['failed']} failed, {counts['skipped']} skipped)",
        file=stream,
    )
    return passed


def cmd_verify(config: RunConfig) -> int:
    groups = run_verification(config.params, config.seed)
    passed = _print_verification(config.params, config.seed, groups, config.format, sys.stdout)
    return 0 if passed else 1


def _write_output(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(data.decode("utf-8"))
    else:
        with open(out, "wb") as handle:
            handle.write(data)


def cmd_certificate(config: RunConfig) -> int:
    cert = build_certificate(config.params)
    _write_output(certificate_bytes(cert), config.out)
    return 0


def cmd_check_cert(path: str) -> int:
    try:
        with open(path, "rb") as handle:
            obj = json.loads(handle.read().decode("utf-8"))
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        print(f"error: {path} is not valid JSON: {exc}", file=sys.stderr)
        return 2
    report = check_certificate_json(obj)
    for item in report.items:
        tag = "PASS" if item.passed else "FAIL"
        print(f"  {tag}  {item.name}")
    if report.accepted:
        print(f"certificate accepted ({len(report.items)} checks)")
        return 0
    print(f"certificate rejected: {', '.join(report.failures)}")
    return 1


def cmd_complex(config: RunConfig) -> int:
    export = build_chain_export(config.params)
    text = json.dumps(chain_export_to_json(export), indent=2, sort_keys=True) + "\n"
    _write_output(text.encode("utf-8"), config.out)
    return 0


def cmd_normalize(word_text: str, config: RunConfig) -> int:
    word = parse_word(word_text, config.params.n)
    print(element_to_text(project(word, config.params)))
    return 0


def _parse_r(text: str) -> PresentationParams:
    try:
        values = tuple(int(chunk) for chunk in text.split(","))
    except ValueError:
        raise ParameterError(f"--r expects a comma-separated integer list, got {text!r}")
    return PresentationParams(values)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relcert",
        description=(
            "Exact group-ring workbench for free products of C_r x Z: "
            "verifies the relation-module identities and emits/checks "
            "generation certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_out=False, with_format=False, with_seed=False):
        p.add_argument(
            "--r",
            default=",".join(str(v) for v in DEFAULT_R),
            help="comma-separated torsion orders, pairwise coprime, each >= 2",
        )
        if with_out:
            p.add_argument("--out", default=None, help="output path ('-' for stdout)")
        if with_format:
            p.add_argument("--format", choices=("text", "json"), default="text")
        if with_seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    add_common(sub.add_parser("verify", help="run every check group"),
               with_format=True, with_seed=True)
    add_common(sub.add_parser("certificate", help="emit the generation certificate"),
               with_out=True)
    check = sub.add_parser("check-cert", help="re-validate a certificate file")
    check.add_argument("path")
    add_common(sub.add_parser("complex", help="export chain-level data"), with_out=True)
    norm = sub.add_parser("normalize", help="print the normal form of a word")
    norm.add_argument("word")
    add_common(norm)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check-cert":
            return cmd_check_cert(args.path)
        params = _parse_r(args.r)
        config = RunConfig(
            params=params,
            command=args.command,
            out=getattr(args, "out", None),
            format=getattr(args, "format", "text"),
            seed=getattr(args, "seed", DEFAULT_SEED),
        )
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "certificate":
            return cmd_certificate(config)
        if args.command == "complex":
            return cmd_complex(config)
        if args.command == "normalize":
            return cmd_normalize(args.word, config)
        parser.error(f"unknown command {args.command!r}")
    except (ParameterError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"internal verification fault: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
