"""Result tables, comparison matrices and the declared-vote diagnostic.

Two renderings exist for everything: fixed-width text tables for people and
a JSON "machine" format in which every exact number is an ``"n/d"`` string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .condorcet import CondorcetVerdict, PairwiseMatrix
from .io import format_fraction
from .model import MechanismOutcome, Profile
from .weighting import WeightingPlan

TITLES = {
    "plurality": "Simple Plurality",
    "runoff": "Plurality with Runoff",
    "irv": "Ranked Choice",
    "coombs": "Coombs' Method",
    "borda": "Borda Count",
    "approval": "Approval Voting",
    "copeland": "Copeland's Rule",
    "moderation": "Moderation Rule",
    "polarization": "Polarization Rule",
}


class NoDeclaredVotes(ValueError):
    pass


def show(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _table(header: Sequence[str], rows: Sequence[Sequence[str]], rule_after: Optional[int] = None) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]

    def line(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

    sep = "+-" + "-+-".join("-" * w for w in widths) + "-+"
    out = [sep, line(header), sep.replace("-", "=")]
    for i, row in enumerate(rows):
        out.append(line(row))
        if rule_after is not None and i + 1 == rule_after and i + 1 < len(rows):
            out.append(sep)
    out.append(sep)
    return "\n".join(out)


# -- mechanism outcomes -------------------------------------------------------------


def render_outcome(outcome: MechanismOutcome, profile: Profile) -> str:
    title = TITLES.get(outcome.mechanism, outcome.mechanism)
    runoff = None
    if outcome.mechanism == "runoff" and outcome.rounds and len(outcome.rounds) == 2:
        runoff = outcome.rounds[1].tallies
    header = ["Ranking", "Candidate", "Score"] + (["Runoff Score"] if runoff else [])
    rows = []
    for pos, (cand, score) in enumerate(outcome.ranking, start=1):
        row = [str(pos), profile.display_name(cand), show(score)]
        if runoff:
            row.append(show(runoff[cand]) if cand in runoff else "N/A")
        rows.append(row)
    lines = [f"{title} ({outcome.mechanism})", _table(header, rows, rule_after=2 if runoff else None)]
    lines.append(f"winner: {profile.display_name(outcome.winner)}")
    if len(outcome.winner_set) > 1:
        lines.append("tied for first: " + ", ".join(sorted(outcome.winner_set)))
    if outcome.rounds:
        for r in outcome.rounds:
            tallies = ", ".join(f"{c}={show(v)}" for c, v in r.tallies.items())
            what = f"removed {r.eliminated} ({r.reason})" if r.eliminated else r.reason
            lines.append(f"  round {r.number}: {tallies}; {what}")
    for t in outcome.tie_events:
        lines.append(f"  tie in round {t.round} ({t.context}) among {', '.join(t.tied)}: {t.rule} chose {t.chosen}")
    return "\n".join(lines)


def comparison_matrix(outcomes: Mapping[str, MechanismOutcome], profile: Profile) -> dict[str, dict[str, int]]:
    """Rank of every candidate under every mechanism, keyed by candidate."""
    return {c: {m: o.position(c) for m, o in outcomes.items()} for c in profile.candidate_ids}


def render_comparison(outcomes: Mapping[str, MechanismOutcome], profile: Profile) -> str:
    matrix = comparison_matrix(outcomes, profile)
    header = ["Candidates/Mechanisms"] + list(outcomes)
    rows = [[profile.display_name(c)] + [str(matrix[c][m]) for m in outcomes] for c in profile.candidate_ids]
    return "Table of mechanism rankings\n" + _table(header, rows)


def outcome_record(outcome: MechanismOutcome) -> dict:
    rounds = None
    if outcome.rounds is not None:
        rounds = [
            {
                "round": r.number,
                "tallies": {c: format_fraction(v) for c, v in r.tallies.items()},
                "eliminated": r.eliminated,
                "reason": r.reason,
            }
            for r in outcome.rounds
        ]
    return {
        "mechanism": outcome.mechanism,
        "winner": outcome.winner,
        "winner_set": sorted(outcome.winner_set),
        "ranking": [
            {"rank": i, "candidate": c, "score": format_fraction(s)}
            for i, (c, s) in enumerate(outcome.ranking, start=1)
        ],
        "rounds": rounds,
        "tie_events": [
            {"round": t.round, "tied": list(t.tied), "rule": t.rule, "chosen": t.chosen, "context": t.context}
            for t in outcome.tie_events
        ],
    }


def plan_record(plan: WeightingPlan) -> dict:
    return {
        "normalization": plan.normalization,
        "unmatched_policy": plan.unmatched_policy,
        "sample_shares": {d: {c: format_fraction(s) for c, s in cats.items()} for d, cats in plan.sample.items()},
        "constants": [
            {"dimension": d, "category": c, "constant": format_fraction(v)}
            for (d, c), v in sorted(plan.constants.items())
        ],
        "issues": [{"dimension": d, "category": c, "kind": k} for d, c, k in plan.issues],
    }


def render_plan(plan: WeightingPlan) -> str:
    rows = []
    for (dim, cat), value in sorted(plan.constants.items()):
        share = plan.sample.get(dim, {}).get(cat)
        rows.append([dim, cat, show(share) if share is not None else "", show(value), f"{float(value):.4f}"])
    out = ["Weighting plan (normalization: %s)" % plan.normalization]
    out.append(_table(["Dimension", "Category", "Sample share", "Constant", "~"], rows))
    for dim, cat, kind in plan.issues:
        out.append(f"  {kind}: {dim}/{cat}")
    return "\n".join(out)


def tabulation_record(outcomes: Mapping[str, MechanismOutcome], profile: Profile, plan=None) -> dict:
    doc = {
        "candidates": list(profile.candidate_ids),
        "total_weight": format_fraction(profile.total_weight),
        "mechanisms": [outcome_record(o) for o in outcomes.values()],
    }
    if len(outcomes) > 1:
        doc["comparison"] = comparison_matrix(outcomes, profile)
    if plan is not None:
        doc["weighting"] = plan_record(plan)
    return doc


def render_tabulation(outcomes: Mapping[str, MechanismOutcome], profile: Profile, plan=None) -> str:
    parts = []
    if plan is not None:
        parts.append(render_plan(plan))
    parts += [render_outcome(o, profile) for o in outcomes.values()]
    if len(outcomes) > 1:
        parts.append(render_comparison(outcomes, profile))
    return "\n\n".join(parts) + "\n"


def to_machine(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


# -- pairwise -----------------------------------------------------------------------


def condorcet_record(matrix: PairwiseMatrix, verdict: CondorcetVerdict) -> dict:
    ids = matrix.candidates
    return {
        "candidates": list(ids),
        "prefer": {x: {y: format_fraction(matrix.prefer(x, y)) for y in ids if y != x} for x in ids},
        "victories": verdict.beats,
        "condorcet_winner": verdict.winner,
    }


def verdict_line(verdict: CondorcetVerdict) -> str:
    if verdict.winner is None:
        return "no Condorcet winner (cycle or tie)"
    return f"Condorcet winner: {verdict.winner}"


def render_condorcet(matrix: PairwiseMatrix, verdict: CondorcetVerdict) -> str:
    ids = matrix.candidates
    header = ["prefer row over column"] + list(ids) + ["wins"]
    rows = [
        [x] + ["-" if x == y else show(matrix.prefer(x, y)) for y in ids] + [str(verdict.beats[x])]
        for x in ids
    ]
    return _table(header, rows) + "\n" + verdict_line(verdict) + "\n"


# -- declared vote vs top rank ------------------------------------------------------


@dataclass(frozen=True)
class DivergenceReport:
    fraction: Fraction
    switched_weight: Fraction
    considered_weight: Fraction
    transitions: dict  # (top rank, declared) -> weight, mismatches only


def divergence(profile: Profile) -> DivergenceReport:
    """Share of weight whose declared first-round vote is not their top rank.

    Only ballots that carry a declared vote are counted.
    """
    considered = Fraction(0)
    switched = Fraction(0)
    transitions: dict[tuple[str, str], Fraction] = {}
    for b in profile.ballots:
        if b.declared_first_vote is None:
            continue
        considered += b.weight
        if b.declared_first_vote != b.top:
            switched += b.weight
            key = (b.top, b.declared_first_vote)
            transitions[key] = transitions.get(key, Fraction(0)) + b.weight
    if considered == 0:
        if not any(b.declared_first_vote is not None for b in profile.ballots):
            raise NoDeclaredVotes("no ballot carries a declared first-round vote")
        return DivergenceReport(Fraction(0), switched, considered, transitions)
    return DivergenceReport(switched / considered, switched, considered, dict(sorted(transitions.items())))


def divergence_record(report: DivergenceReport) -> dict:
    return {
        "fraction": format_fraction(report.fraction),
        "switched_weight": format_fraction(report.switched_weight),
        "considered_weight": format_fraction(report.considered_weight),
        "transitions": [
            {"top": t, "declared": d, "weight": format_fraction(w)} for (t, d), w in report.transitions.items()
        ],
    }


def render_divergence(report: DivergenceReport, profile: Profile) -> str:
    lines = [
        f"declared vote differs from top rank for {show(report.switched_weight)} of "
        f"{show(report.considered_weight)} weight: {show(report.fraction)} (~{float(report.fraction):.1%})"
    ]
    if report.transitions:
        rows = [
            [profile.display_name(t), profile.display_name(d), show(w)] for (t, d), w in report.transitions.items()
        ]
        lines.append(_table(["Top rank", "Declared vote", "Weight"], rows))
    return "\n".join(lines) + "\n"
