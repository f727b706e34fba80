"""
Command-line front end.

    idealcalc invariants FILE
    idealcalc compare FILE FILE
    idealcalc resolve FILE [--csv]
    idealcalc cohomology FILE --i N
    idealcalc verify THEOREM FILE... [--field-stable]
    idealcalc fuzz THEOREM [--count N] [--workers W] [--witness-dir DIR]
    idealcalc corpus list | check [NAME...]

FILE is a path to an ideal file or the name of a corpus entry; verify also
accepts corpus pair-set names. Exit codes: 0 ok, 2 usage or parse,
3 degree guard, 4 precondition, 5 theorem violation.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from . import config
from .cohomology import comparison_module, deficiency_module, top_cohomology_window, tor
from .config import (
    DEFAULT_PRIME,
    DEFAULT_SEED,
    DEGREE_GUARD,
    FUZZ_DEFAULT_COUNT,
    LOG_LEVEL,
    MAX_PRIME,
    WINDOW_PADDING,
    WORKERS,
    OutputFormat,
)
from .corpus import Corpus, check_expectations, invariants, resolve_ideal_file
from .errors import IdealCalcError, NotDisjointError, TheoremViolation
from .field import Field, is_prime
from .fuzz import run_campaign
from .ideal import Ideal, ideal_intersect, ideal_product, krull_dim, meet_dimension
from .report import VerificationReport, describe_ideal
from .resolution import quotient_resolution
from .theorems import field_stable, get_verifier, run_verifier, verify_serre

logger = logging.getLogger(__name__)


# =============================================================================
# SESSION
# =============================================================================

@dataclass
class SessionConfig:
    """Settings shared by every command of one invocation."""
    prime: int = DEFAULT_PRIME
    seed: int = DEFAULT_SEED
    degree_guard: int = DEGREE_GUARD
    window_padding: int = WINDOW_PADDING
    output_format: OutputFormat = OutputFormat.JSON

    def __post_init__(self):
        if not is_prime(self.prime):
            raise IdealCalcError(f"{self.prime} is not prime")
        if self.prime >= MAX_PRIME:
            raise IdealCalcError(f"prime {self.prime} must be below {MAX_PRIME}")
        if self.degree_guard < 1:
            raise IdealCalcError(f"degree guard must be positive, got {self.degree_guard}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "SessionConfig":
        return cls(
            prime=args.prime,
            seed=args.seed,
            degree_guard=args.degree_guard,
            window_padding=args.window_padding,
            output_format=OutputFormat(args.format),
        )

    @property
    def field(self) -> Field:
        return Field(self.prime)

    def apply(self) -> None:
        """Install the guard and padding as the library defaults."""
        config.DEGREE_GUARD = self.degree_guard
        config.WINDOW_PADDING = self.window_padding

    def to_dict(self) -> Dict[str, Any]:
        return {
            "prime": self.prime,
            "seed": self.seed,
            "degreeGuard": self.degree_guard,
            "windowPadding": self.window_padding,
        }


# =============================================================================
# OUTPUT
# =============================================================================

def _render_text(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value, key=str):
            item = value[key]
            if isinstance(item, (dict, list)) and item and any(isinstance(v, (dict, list)) for v in
                                                              (item.values() if isinstance(item, dict) else item)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(item, sort_keys=True)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            lines.extend(_render_text(item, indent))
            if isinstance(item, dict):
                lines.append("")
        return lines
    return [f"{pad}{value}"]


def emit(payload: Dict[str, Any], session: SessionConfig, out=None) -> None:
    out = out or sys.stdout
    if session.output_format is OutputFormat.TEXT:
        out.write("\n".join(_render_text(payload)).rstrip() + "\n")
    else:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load(spec: str, session: SessionConfig, corpus: Corpus) -> Ideal:
    parsed = resolve_ideal_file(spec, corpus)
    I = parsed.to_ideal(session.field)
    if I.name is None:
        I.name = parsed.name or os.path.splitext(os.path.basename(spec))[0]
    return I


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_invariants(args, session: SessionConfig, corpus: Corpus) -> int:
    I = _load(args.file, session, corpus)
    emit({"ideal": describe_ideal(I), "invariants": invariants(I), "session": session.to_dict()}, session)
    return 0


def cmd_compare(args, session: SessionConfig, corpus: Corpus) -> int:
    I = _load(args.file_i, session, corpus)
    J = _load(args.file_j, session, corpus)
    meet = meet_dimension(I, J)
    if meet > 0:
        raise NotDisjointError(meet)
    product = ideal_product(I, J)
    intersection = ideal_intersect(I, J)
    comparison = comparison_module(I, J)
    tor1 = tor(I, J, 1)
    report = verify_serre(I, J)
    emit({
        "ideals": [describe_ideal(I), describe_ideal(J)],
        "product": product.to_strings(),
        "intersection": intersection.to_strings(),
        "productEqualsIntersection": product == intersection,
        "comparisonModule": comparison.to_dict(),
        "tor1": tor1.to_dict(),
        "serre": report.to_dict(),
        "session": session.to_dict(),
    }, session)
    return TheoremViolation.exit_code if report.violated else 0


def cmd_resolve(args, session: SessionConfig, corpus: Corpus) -> int:
    I = _load(args.file, session, corpus)
    resolution = quotient_resolution(I)
    table = resolution.betti()
    if args.csv or session.output_format is OutputFormat.CSV:
        sys.stdout.write(table.to_csv())
        return 0
    if session.output_format is OutputFormat.TEXT:
        sys.stdout.write(f"{describe_ideal(I).get('name', '')}\n{table}\n")
        return 0
    emit({
        "ideal": describe_ideal(I),
        "resolution": resolution.to_dict(),
        "betti": table.to_dict(),
        "regularity": table.regularity(),
        "session": session.to_dict(),
    }, session)
    return 0


def cmd_cohomology(args, session: SessionConfig, corpus: Corpus) -> int:
    I = _load(args.file, session, corpus)
    n = I.ring.num_vars - 1
    d = krull_dim(I) - 1
    window = tuple(args.window) if args.window else None
    if 1 <= args.i <= n - 1:
        module = deficiency_module(I, args.i, window)
        kind = "deficiency"
    elif args.i == d + 1:
        module = top_cohomology_window(I, window)
        kind = "top"
    else:
        raise IdealCalcError(f"H^{args.i}_* is computed for 1 <= i <= {n - 1} or i = dim + 1 = {d + 1}")
    emit({
        "ideal": describe_ideal(I),
        "index": args.i,
        "kind": kind,
        "module": module.to_dict(),
        "session": session.to_dict(),
    }, session)
    return 0


def _expand_inputs(specs: Sequence[str], arity: int, corpus: Corpus) -> List[List[str]]:
    """Group file arguments into verifier calls, expanding corpus pair-set names."""
    flat: List[str] = []
    groups: List[List[str]] = []
    sets = corpus.pair_sets()
    for spec in specs:
        if spec in sets and not os.path.exists(spec):
            if arity != 2:
                raise IdealCalcError(f"pair set '{spec}' given to a verifier of one ideal")
            groups.extend([list(p) for p in corpus.pairs(spec)])
        else:
            flat.append(spec)
    if len(flat) % arity:
        raise IdealCalcError(f"expected a multiple of {arity} ideal files, got {len(flat)}")
    groups.extend(flat[k:k + arity] for k in range(0, len(flat), arity))
    if not groups:
        raise IdealCalcError("no inputs given")
    return groups


def _write_witness(report: VerificationReport, directory: str, index: int) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"{report.theorem_id}_{index}.json")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(report.to_json())
    return path


def cmd_verify(args, session: SessionConfig, corpus: Corpus) -> int:
    key, _, arity, _ = get_verifier(args.theorem)
    reports = []
    violations = 0
    for index, group in enumerate(_expand_inputs(args.files, arity, corpus)):
        ideals = [_load(spec, session, corpus) for spec in group]
        report = run_verifier(key, ideals, seed=session.seed)
        entry = report.to_dict()
        if args.field_stable:
            entry["fieldStability"] = field_stable(key, ideals, seed=session.seed)
        if report.violated:
            violations += 1
            if args.witness_dir:
                entry["witnessFile"] = _write_witness(report, args.witness_dir, index)
        reports.append(entry)
    emit({"theoremId": key, "reports": reports, "session": session.to_dict()}, session)
    if violations:
        logger.error("%s violated on %d of %d inputs", key, violations, len(reports))
        return TheoremViolation.exit_code
    return 0


def cmd_fuzz(args, session: SessionConfig, corpus: Corpus) -> int:
    summary = run_campaign(args.theorem, args.count, seed=session.seed, prime=session.prime,
                           workers=args.workers, witness_dir=args.witness_dir)
    payload = summary.to_dict()
    if not args.full:
        payload.pop("violations")
        payload["violationIds"] = [inst["id"] for inst in summary.violations]
    payload["session"] = session.to_dict()
    emit(payload, session)
    errors = payload["verdicts"]["error"]
    if errors:
        logger.error("%s: %d of %d instances raised", summary.theorem_id, errors, summary.count)
    return summary.exit_code()


def cmd_corpus(args, session: SessionConfig, corpus: Corpus) -> int:
    if args.action == "list":
        entries = [{"name": name, "provenance": corpus.provenance(name),
                    "description": corpus.entry(name).get("description", "")} for name in corpus.names()]
        emit({"root": corpus.root, "ideals": entries, "pairSets": sorted(corpus.pair_sets())}, session)
        return 0
    names = args.names or corpus.names()
    results = [check_expectations(corpus.file(name), session.field) for name in names]
    failed = [r["name"] for r in results if r["mismatches"]]
    emit({"results": results, "failed": failed, "session": session.to_dict()}, session)
    return 1 if failed else 0


COMMANDS = {
    "invariants": cmd_invariants,
    "compare": cmd_compare,
    "resolve": cmd_resolve,
    "cohomology": cmd_cohomology,
    "verify": cmd_verify,
    "fuzz": cmd_fuzz,
    "corpus": cmd_corpus,
}


# =============================================================================
# PARSER
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idealcalc",
        description="Ideal calculus, free resolutions, deficiency modules, and theorem verification.",
    )
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
    parser.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="field characteristic")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for general linear forms")
    parser.add_argument("--degree-guard", type=int, default=DEGREE_GUARD)
    parser.add_argument("--window-padding", type=int, default=WINDOW_PADDING)
    parser.add_argument("--corpus", default=None, help="corpus directory")
    parser.add_argument("-v", "--verbose", action="count", default=0)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="all invariants of one ideal")
    p.add_argument("file")

    p = sub.add_parser("compare", help="product versus intersection of two ideals")
    p.add_argument("file_i")
    p.add_argument("file_j")

    p = sub.add_parser("resolve", help="minimal free resolution and Betti table of S/I")
    p.add_argument("file")
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("cohomology", help="graded cohomology H^i_* of the ideal sheaf")
    p.add_argument("file")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"))

    p = sub.add_parser("verify", help="check a theorem on given ideals")
    p.add_argument("theorem")
    p.add_argument("files", nargs="+")
    p.add_argument("--field-stable", action="store_true", help="rerun at a second prime")
    p.add_argument("--witness-dir", default=None)

    p = sub.add_parser("fuzz", help="randomized campaign for a theorem")
    p.add_argument("theorem")
    p.add_argument("--count", type=int, default=FUZZ_DEFAULT_COUNT)
    p.add_argument("--workers", type=int, default=WORKERS)
    p.add_argument("--witness-dir", default=None)
    p.add_argument("--full", action="store_true", help="include violating instances in full")

    p = sub.add_parser("corpus", help="list the corpus or check its expectations")
    p.add_argument("action", choices=["list", "check"])
    p.add_argument("names", nargs="*")

    return parser


def configure_logging(verbose: int) -> None:
    level = logging.DEBUG if verbose > 1 else logging.INFO if verbose == 1 else LOG_LEVEL
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        session = SessionConfig.from_args(args)
        session.apply()
        corpus = Corpus(args.corpus)
        return COMMANDS[args.command](args, session, corpus)
    except IdealCalcError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
