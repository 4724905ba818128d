"""Command-line interface.

Subcommands:

* ``norms ELEMENT P_LIST``      -- Schatten norms of a JSON element.
* ``analyze POLY ALGEBRA --p P`` -- additivity verdicts + representation.
* ``verify SUITE``              -- seeded property suites (all/metrics/...).
* ``witness POLY ALGEBRA``      -- full-additivity counterexample search.

Exit codes: 0 success, 1 the analysis ran but a property failed,
2 usage or input error.  Machine-readable output (--format json) is
byte-identical across runs for identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import serialize
from .algebra import derive_seed
from .errors import DomainError, PreconditionError, StructuralError, UsageError
from .metrics import norm_p
from .polynomials import check_orthogonal_additivity
from .representation import RepresentationReport, representation_report
from .rigidity import full_oa_counterexample
from .suites import DEFAULT_TOLERANCES, RunConfig, run_suites

ANALYZE_TOLERANCES = {
    "oa_sa": 1e-8,
    "oa_positive": 1e-8,
    "oa_full": 1e-8,
    "represented": 1e-8,
}


def _parse_tols(pairs, registry) -> dict:
    out = {}
    for raw in pairs or ():
        name, sep, value = raw.partition("=")
        if not sep:
            raise UsageError(f"--tol expects name=value, got {raw!r}")
        if name not in registry:
            raise UsageError(f"unknown tolerance name {name!r}; known: {sorted(registry)}")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise UsageError(f"invalid tolerance value in {raw!r}") from exc
    return out


def _parse_p_list(spec: str) -> list[tuple[str, float]]:
    out = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token == "inf":
            out.append((token, math.inf))
            continue
        try:
            value = float(token)
        except ValueError as exc:
            raise UsageError(f"invalid exponent token {token!r}") from exc
        if not value > 0 or math.isnan(value):
            raise UsageError(f"exponent must be > 0, got {token!r}")
        out.append((token, value))
    if not out:
        raise UsageError("empty exponent list")
    return out


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_norms(args) -> int:
    element = serialize.element_from_obj(serialize.load_json_file(args.element))
    entries = []
    for token, p in _parse_p_list(args.p_list):
        entries.append({"p": token, "value": norm_p(element, p)})
    if args.format == "json":
        _emit(serialize.dumps_canonical({"norms": entries}), args.out)
    else:
        lines = [f"{'p':<10}norm"]
        for entry in entries:
            lines.append(f"{entry['p']:<10}{entry['value']:.12g}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _zero_report(algebra, d, p, m) -> RepresentationReport:
    from .representation import dual_exponent

    zeros = [algebra.zero() for _ in range(d)]
    return RepresentationReport(zeros, 0.0, 0.0, p, m, dual_exponent(p, m), [0.0] * d)


def _cmd_analyze(args) -> int:
    algebra = serialize.algebra_from_obj(serialize.load_json_file(args.algebra))
    P = serialize.polynomial_from_obj(serialize.load_json_file(args.polynomial), algebra)
    tols = dict(ANALYZE_TOLERANCES)
    tols.update(_parse_tols(args.tol, ANALYZE_TOLERANCES))
    p = float(args.p)
    if not p > 0:
        raise UsageError(f"--p must be > 0, got {args.p}")

    oa = {}
    for idx, cone in enumerate(("sa", "positive", "full")):
        oa[cone] = check_orthogonal_additivity(
            P,
            cone,
            n_samples=args.samples,
            seed=derive_seed(args.seed, idx),
            tol=tols[f"oa_{cone}"],
            algebra=algebra,
        )
    if P.algebra is None:
        report = _zero_report(algebra, P.codomain.d, p, P.m)
    else:
        report = representation_report(P, p, n_samples=args.samples, seed=args.seed)
    represented = report.max_residual <= tols["represented"]

    obj = {
        "verdict": {
            "oa_sa": oa["sa"].passed,
            "oa_positive": oa["positive"].passed,
            "oa_full": oa["full"].passed,
            "represented": represented,
        },
        "oa": {
            cone: {
                "max_residual": rep.max_residual,
                "tol": rep.tol,
                "n_samples": rep.n_samples,
            }
            for cone, rep in oa.items()
        },
        "report": serialize.representation_report_to_obj(report),
    }
    if args.format == "json":
        _emit(serialize.dumps_canonical(obj), args.out)
    else:
        lines = []
        for key, value in obj["verdict"].items():
            lines.append(f"{key:<14}{value}")
        lines.append(f"{'residual':<14}{report.max_residual:.3e}")
        lines.append(f"{'basis gap':<14}{report.uniqueness_gap:.3e}")
        lines.append(
            f"{'zeta norms':<14}" + ", ".join(f"{v:.12g}" for v in report.zeta_norms)
        )
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if represented else 1


def _cmd_verify(args) -> int:
    config = RunConfig(
        seed=args.seed,
        n_samples=args.samples if args.samples else 120,
        tolerances=_parse_tols(args.tol, DEFAULT_TOLERANCES),
    )
    results = run_suites(args.suite, config)
    all_passed = all(r.passed for r in results)
    obj = {
        "config": {"seed": config.seed, "n_samples": config.n_samples},
        "passed": all_passed,
        "suites": [r.to_obj() for r in results],
    }
    if args.format == "json":
        _emit(serialize.dumps_canonical(obj), args.out)
    else:
        lines = []
        for result in results:
            for check in result.checks:
                flag = "PASS" if check.passed else "FAIL"
                lines.append(
                    f"[{flag}] {result.name}/{check.name:<26} "
                    f"worst={check.worst:.3e} tol={check.threshold:.1e} n={check.count}"
                )
            lines.append(f"suite {result.name}: {'ok' if result.passed else 'FAILED'}")
        lines.append(f"overall: {'ok' if all_passed else 'FAILED'}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if all_passed else 1


def _cmd_witness(args) -> int:
    algebra = serialize.algebra_from_obj(serialize.load_json_file(args.algebra))
    P = serialize.polynomial_from_obj(serialize.load_json_file(args.polynomial), algebra)
    n_random = args.samples if args.samples else 32
    witness = full_oa_counterexample(P, algebra=algebra, seed=args.seed, n_random=n_random)
    if args.format == "json":
        obj = {"witness": None if witness is None else serialize.witness_to_obj(witness)}
        _emit(serialize.dumps_canonical(obj), args.out)
    else:
        if witness is None:
            _emit("none\n", args.out)
        else:
            _emit(
                f"gadget={witness.gadget} residual={witness.residual:.6g}\n",
                args.out,
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oa-polylab",
        description="Orthogonally additive trace polynomials on weighted matrix algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples_default):
        p.add_argument("--seed", type=int, default=42, help="root RNG seed")
        p.add_argument(
            "--samples", type=int, default=samples_default, help="sample count"
        )
        p.add_argument(
            "--tol",
            action="append",
            metavar="NAME=VALUE",
            help="tolerance override, repeatable",
        )
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--out", help="write output to this path instead of stdout")

    p_norms = sub.add_parser("norms", help="Schatten norms of a JSON element")
    p_norms.add_argument("element", help="element JSON file")
    p_norms.add_argument("p_list", help="comma-separated exponents, e.g. 0.5,1,2,inf")
    p_norms.add_argument("--format", choices=("json", "text"), default="text")
    p_norms.add_argument("--out")

    p_analyze = sub.add_parser(
        "analyze", help="additivity verdicts and representing operator"
    )
    p_analyze.add_argument("polynomial", help="polynomial JSON file")
    p_analyze.add_argument("algebra", help="algebra JSON file")
    p_analyze.add_argument("--p", type=float, required=True, help="domain exponent p")
    common(p_analyze, 64)

    p_verify = sub.add_parser("verify", help="run the seeded property suites")
    p_verify.add_argument(
        "suite", choices=("all", "metrics", "representation", "rigidity")
    )
    common(p_verify, 0)

    p_witness = sub.add_parser(
        "witness", help="search for a full-additivity counterexample"
    )
    p_witness.add_argument("polynomial", help="polynomial JSON file")
    p_witness.add_argument("algebra", help="algebra JSON file")
    common(p_witness, 0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "norms": _cmd_norms,
        "analyze": _cmd_analyze,
        "verify": _cmd_verify,
        "witness": _cmd_witness,
    }
    try:
        return handlers[args.command](args)
    except (UsageError, StructuralError, PreconditionError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
