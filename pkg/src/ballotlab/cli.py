"""Command-line entry point: ``ballotlab <command> ...``.

Exit codes: 0 success, 1 usage, 2 bad input or validation failure,
3 enumeration space over the cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io, report
from .condorcet import DEFAULT_CAP, EnumerationSpace, SpaceTooLarge, condorcet_winner, pairwise_matrix, probe_condorcet_condition
from .mechanisms import MECHANISMS, MODERATION_STARTS, RUNOFF_SOURCES, MechanismConfig, tabulate_all
from .model import TIE_POLICIES, Candidate, ProfileValidationError
from .weighting import NORMALIZATIONS, InvalidTargets, apply_weights, build_plan, exclude_ballots

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_SPACE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _mechanism_list(text: str) -> list[str]:
    if text.strip() == "all":
        return list(MECHANISMS)
    names = [m.strip() for m in text.split(",") if m.strip()]
    if not names:
        raise UsageError("--mechanisms needs at least one mechanism name or 'all'")
    unknown = [m for m in names if m not in MECHANISMS]
    if unknown:
        raise UsageError(f"unknown mechanism(s): {', '.join(unknown)}; choose from {', '.join(MECHANISMS)} or 'all'")
    return names


def _config(args) -> MechanismConfig:
    return MechanismConfig(
        tie_policy=args.tie_policy,
        runoff_vote_source=args.runoff_source,
        moderation_start=args.moderation_start,
    )


def _load(args):
    profile = io.read_election(args.election)
    for item in getattr(args, "exclude", None) or []:
        dim, _, cats = item.partition("=")
        if not cats:
            raise UsageError(f"--exclude expects dimension=category[,category], got {item!r}")
        profile = exclude_ballots(profile, dim, cats.split(","))
    return profile


def _emit(args, machine_doc, text: str) -> None:
    out = report.to_machine(machine_doc) if args.format == "machine" else text
    sys.stdout.write(out)


def cmd_ingest(args) -> int:
    schema_doc = json.loads(Path(args.schema).read_text(encoding="utf-8"))
    schema = io.SurveyCsvSchema.from_dict(schema_doc)
    if args.roster:
        roster = [Candidate(*part.split("=", 1)) for part in args.roster.split(",")]
    elif "roster" in schema_doc:
        roster = [
            Candidate(r["id"], r.get("name", "")) if isinstance(r, dict) else Candidate(r) for r in schema_doc["roster"]
        ]
    else:
        raise UsageError("a roster is required (--roster or a 'roster' key in the schema)")
    result = io.ingest_csv(args.csv, schema, roster)
    text = io.render_election(result.profile)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    rows = result.rejected_rows
    print(f"ingested {len(result.profile.ballots)} ballot(s); rejected {len(rows)} row(s)", file=sys.stderr)
    for r in result.rejections:
        print(f"  {r}", file=sys.stderr)
    return EXIT_OK


def cmd_tabulate(args) -> int:
    mechanisms = _mechanism_list(args.mechanisms)
    profile = _load(args)
    plan = None
    if args.targets:
        plan = build_plan(profile, io.read_targets(args.targets), normalization=args.normalization)
        profile = apply_weights(profile, plan)
    outcomes = tabulate_all(profile, mechanisms, _config(args))
    _emit(
        args,
        report.tabulation_record(outcomes, profile, plan),
        report.render_tabulation(outcomes, profile, plan),
    )
    return EXIT_OK


def cmd_condorcet(args) -> int:
    profile = _load(args)
    matrix = pairwise_matrix(profile)
    verdict = condorcet_winner(matrix)
    _emit(args, report.condorcet_record(matrix, verdict), report.render_condorcet(matrix, verdict))
    return EXIT_OK


def cmd_probe(args) -> int:
    if args.mechanism not in MECHANISMS:
        raise UsageError(f"unknown mechanism {args.mechanism!r}; choose from {', '.join(MECHANISMS)}")
    try:
        space = EnumerationSpace(args.candidates, args.voters, cutoffs=args.cutoffs, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = probe_condorcet_condition(args.mechanism, space, _config(args), strict=args.strict)
    if result.exhausted:
        doc = {"mechanism": args.mechanism, "result": "exhausted", "examined": result.examined}
        _emit(args, doc, f"exhausted: no counterexample among {result.examined} profile(s)\n")
        return EXIT_OK
    profile = result.counterexample
    output = Path(args.output or f"counterexample-{args.mechanism}.json")
    io.write_election(profile, output)
    outcome = MECHANISMS[args.mechanism](profile, _config(args))
    verdict = condorcet_winner(pairwise_matrix(profile))
    doc = {
        "mechanism": args.mechanism,
        "result": "counterexample",
        "file": str(output),
        "examined": result.examined,
        "condorcet_winner": verdict.winner,
        "outcome": report.outcome_record(outcome),
    }
    text = "\n".join(
        [
            f"counterexample written to {output} (profile {result.examined} in enumeration order)",
            report.verdict_line(verdict),
            report.render_outcome(outcome, profile),
        ]
    )
    _emit(args, doc, text + "\n")
    return EXIT_OK


def cmd_divergence(args) -> int:
    profile = _load(args)
    result = report.divergence(profile)
    _emit(args, report.divergence_record(result), report.render_divergence(result, profile))
    return EXIT_OK


def cmd_weights(args) -> int:
    profile = _load(args)
    plan = build_plan(profile, io.read_targets(args.targets), normalization=args.normalization)
    _emit(args, report.plan_record(plan), report.render_plan(plan) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ballotlab", description="Tabulate ranked-ballot elections under nine voting rules.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, election=True):
        if election:
            p.add_argument("election", help="canonical election file")
            p.add_argument("--exclude", action="append", metavar="DIM=CAT[,CAT]", help="drop ballots in these categories")
        p.add_argument("--format", choices=("table", "machine"), default="table")

    def mech_flags(p):
        p.add_argument("--tie-policy", choices=TIE_POLICIES, default="lexicographic")
        p.add_argument("--runoff-source", choices=RUNOFF_SOURCES, default="declared-else-top")
        p.add_argument("--moderation-start", choices=MODERATION_STARTS, default="least-first")

    p = sub.add_parser("ingest", help="convert a survey CSV export to a canonical election file")
    p.add_argument("csv")
    p.add_argument("--schema", required=True, help="JSON column mapping")
    p.add_argument("--roster", help="comma-separated ids, optionally id=Display Name")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("tabulate", help="run voting rules and print ranking tables")
    common(p)
    mech_flags(p)
    p.add_argument("--mechanisms", default="all", help="comma-separated names or 'all'")
    p.add_argument("--targets", help="target demographic shares (JSON)")
    p.add_argument("--normalization", choices=NORMALIZATIONS, default="mean-one")
    p.set_defaults(func=cmd_tabulate)

    p = sub.add_parser("condorcet", help="print the pairwise matrix and Condorcet verdict")
    common(p)
    p.set_defaults(func=cmd_condorcet)

    p = sub.add_parser("probe", help="search small elections for a Condorcet-condition failure")
    common(p, election=False)
    mech_flags(p)
    p.add_argument("mechanism")
    p.add_argument("candidates", type=int)
    p.add_argument("voters", type=int)
    p.add_argument("--cutoffs", action="store_true", help="also enumerate approval cutoffs")
    p.add_argument("--strict", action="store_true", help="ignore witnesses where the Condorcet winner only loses a tie-break")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("-o", "--output", help="where to write a counterexample")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("divergence", help="compare declared first-round votes with top ranks")
    common(p)
    p.set_defaults(func=cmd_divergence)

    p = sub.add_parser("weights", help="print demographic correction constants")
    common(p)
    p.add_argument("--targets", required=True)
    p.add_argument("--normalization", choices=NORMALIZATIONS, default="mean-one")
    p.set_defaults(func=cmd_weights)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ballotlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpaceTooLarge as exc:
        print(f"ballotlab: SpaceTooLarge: {exc}", file=sys.stderr)
        return EXIT_SPACE
    except ProfileValidationError as exc:
        print("ballotlab: invalid election:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, KeyError, io.ElectionFileError, InvalidTargets, report.NoDeclaredVotes) as exc:
        print(f"ballotlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
