"""Reading and writing elections, targets and survey exports.

The canonical election file is JSON with a fixed key order, one ballot per
line, and weights written as ``"numerator/denominator"`` strings so that
``render_election(parse_election(text)) == text`` holds byte for byte.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .model import Ballot, Candidate, Profile, ballot_violations, validate_profile
from .weighting import TargetMarginals

FORMAT_TAG = "ballotlab-election/1"
FIXTURES = ("table1", "table2", "table3", "table4", "synthetic2016")


class ElectionFileError(ValueError):
    pass


class SchemaColumnMissing(ValueError):
    pass


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str, allow_decimal: bool = False) -> Fraction:
    text = str(text).strip()
    if not allow_decimal and not all(part.lstrip("-").isdigit() for part in text.split("/", 1)):
        raise ElectionFileError(f"weight {text!r} must be an integer or 'n/d' fraction")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ElectionFileError(f"bad number {text!r}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def render_election(profile: Profile) -> str:
    roster = [{"id": c.id, "name": c.display_name} for c in profile.roster]
    lines = ["{", f'  "format": {_dump(FORMAT_TAG)},', '  "roster": [']
    lines += [f"    {_dump(c)}," for c in roster]
    if roster:
        lines[-1] = lines[-1][:-1]
    lines.append("  ],")
    lines.append('  "ballots": [')
    for b in profile.ballots:
        record = {
            "voter": b.voter_id,
            "ranking": list(b.ranking),
            "cutoff": b.cutoff,
            "declared": b.declared_first_vote,
            "demographics": dict(sorted(b.demographics.items())),
            "weight": format_fraction(b.weight),
        }
        lines.append(f"    {_dump(record)},")
    if profile.ballots:
        lines[-1] = lines[-1][:-1]
    lines.append("  ],")
    lines.append(f'  "metadata": {_dump(dict(sorted(profile.metadata.items())))}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_election(text: str, validate: bool = True) -> Profile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ElectionFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise ElectionFileError(f"missing or unsupported format tag (expected {FORMAT_TAG!r})")
    try:
        roster = tuple(Candidate(str(c["id"]), str(c.get("name", ""))) for c in doc["roster"])
        ballots = []
        for i, rec in enumerate(doc["ballots"]):
            ballots.append(
                Ballot(
                    voter_id=str(rec.get("voter", "")),
                    ranking=tuple(rec["ranking"]),
                    cutoff=rec["cutoff"],
                    declared_first_vote=rec.get("declared"),
                    demographics={str(k): str(v) for k, v in rec.get("demographics", {}).items()},
                    weight=parse_fraction(rec.get("weight", "1/1")),
                )
            )
        metadata = {str(k): str(v) for k, v in doc.get("metadata", {}).items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise ElectionFileError(f"malformed election file: {exc!r}") from exc
    profile = Profile(roster=roster, ballots=tuple(ballots), metadata=metadata)
    return validate_profile(profile) if validate else profile


def read_election(path, validate: bool = True) -> Profile:
    return parse_election(Path(path).read_text(encoding="utf-8"), validate=validate)


def write_election(profile: Profile, path) -> None:
    Path(path).write_text(render_election(profile), encoding="utf-8")


def load_fixture(name: str) -> Profile:
    """Load one of the bundled elections (see ``FIXTURES``)."""
    text = resources.files("ballotlab.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return parse_election(text)


def fixture_path(name: str):
    return resources.files("ballotlab.data").joinpath(f"{name}.json")


# -- targets ------------------------------------------------------------------------


def parse_targets(text: str) -> TargetMarginals:
    """Targets are JSON: ``{dimension: {category: share}}``.

    Shares may be fraction strings (``"9/25"``) or decimals (``"0.36"``);
    decimals are read exactly.
    """
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ElectionFileError("targets must be a JSON object")
    dims = {}
    for dim, cats in doc.items():
        if not isinstance(cats, dict):
            raise ElectionFileError(f"targets for {dim!r} must be an object")
        dims[dim] = {cat: parse_fraction(str(v), allow_decimal=True) for cat, v in cats.items()}
    return TargetMarginals(dims)


def read_targets(path) -> TargetMarginals:
    return parse_targets(Path(path).read_text(encoding="utf-8"))


# -- survey CSV ---------------------------------------------------------------------


@dataclass
class SurveyCsvSchema:
    """Which CSV columns hold which ballot fields.

    Give either ``rank_columns`` (one column per position, first = most
    preferred) or ``ranking_column`` with a ``delimiter``.
    """

    voter_id: Optional[str] = None
    rank_columns: Sequence[str] = ()
    ranking_column: Optional[str] = None
    delimiter: str = ">"
    cutoff: Optional[str] = None
    declared: Optional[str] = None
    demographics: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc: dict) -> "SurveyCsvSchema":
        known = {"voter_id", "rank_columns", "ranking_column", "delimiter", "cutoff", "declared", "demographics"}
        return cls(**{k: v for k, v in doc.items() if k in known})

    def columns(self) -> list[str]:
        cols = [self.voter_id, self.ranking_column, self.cutoff, self.declared]
        cols += list(self.rank_columns) + list(self.demographics.values())
        return [c for c in cols if c]


@dataclass(frozen=True)
class Rejection:
    row: int
    kind: str
    message: str

    def __str__(self):
        return f"row {self.row}: {self.kind}: {self.message}"


@dataclass(frozen=True)
class IngestResult:
    profile: Profile
    rejections: tuple[Rejection, ...]

    @property
    def rejected_rows(self) -> list[int]:
        return sorted({r.row for r in self.rejections})


def ingest_csv(path, schema: SurveyCsvSchema, roster: Sequence[Candidate | str]) -> IngestResult:
    """Turn a survey export into unit-weight ballots.

    Bad rows are skipped and itemised in ``rejections``; they never abort
    the import. Cells may hold a candidate id or its display name.
    """
    roster = tuple(c if isinstance(c, Candidate) else Candidate(c) for c in roster)
    ids = [c.id for c in roster]
    alias = {c.id: c.id for c in roster}
    alias.update({c.display_name: c.id for c in roster if c.display_name and c.display_name not in alias})
    if schema.rank_columns and len(schema.rank_columns) != len(ids):
        raise SchemaColumnMissing(
            f"schema maps {len(schema.rank_columns)} rank columns but the roster has {len(ids)} candidates"
        )
    if not schema.rank_columns and not schema.ranking_column:
        raise SchemaColumnMissing("schema needs rank_columns or ranking_column")
    path = Path(path)
    try:
        handle = path.open(newline="", encoding="utf-8-sig")
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc}") from exc

    ballots = []
    rejections = []
    with handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [c for c in schema.columns() if c not in header]
        if missing:
            raise SchemaColumnMissing(f"columns not in the file: {', '.join(missing)}")
        for row_number, row in enumerate(reader, start=1):
            voter = row[schema.voter_id].strip() if schema.voter_id else f"r{row_number}"
            if schema.rank_columns:
                cells = [row[c] for c in schema.rank_columns]
            else:
                cells = (row[schema.ranking_column] or "").split(schema.delimiter)
            ranking = tuple(alias.get(c.strip(), c.strip()) for c in cells if c is not None and c.strip())
            cutoff_text = (row[schema.cutoff] or "").strip() if schema.cutoff else str(len(ids))
            try:
                cutoff = int(cutoff_text)
            except ValueError:
                rejections.append(Rejection(row_number, "CutoffOutOfRange", f"cutoff {cutoff_text!r} is not an integer"))
                continue
            declared = None
            if schema.declared:
                text = (row[schema.declared] or "").strip()
                declared = alias.get(text, text) or None
            demographics = {}
            for dim, col in schema.demographics.items():
                value = (row[col] or "").strip()
                if value:
                    demographics[dim] = value
            ballot = Ballot(
                ranking=ranking,
                cutoff=cutoff,
                voter_id=voter,
                declared_first_vote=declared,
                demographics=demographics,
            )
            problems = ballot_violations(ballot, ids)
            if problems:
                for kind, msg in problems:
                    rejections.append(Rejection(row_number, kind, msg))
                continue
            ballots.append(ballot)
    profile = Profile(roster=roster, ballots=tuple(ballots), metadata={"source": path.name})
    return IngestResult(profile, tuple(rejections))
