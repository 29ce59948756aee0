"""Election data model: candidates, ballots, profiles and outcomes.

All weights and scores are :class:`fractions.Fraction` so that ties in
weighted tallies are detected exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

TIE_POLICIES = ("lexicographic",)


@dataclass(frozen=True)
class Candidate:
    id: str
    display_name: str = ""

    @property
    def name(self) -> str:
        return self.display_name or self.id


@dataclass(frozen=True)
class Ballot:
    """One respondent's complete ranking.

    ``cutoff`` is the 1-based position of the last acceptable candidate;
    0 means nobody on the list is acceptable.
    """

    ranking: tuple[str, ...]
    cutoff: int
    voter_id: str = ""
    declared_first_vote: Optional[str] = None
    demographics: Mapping[str, str] = field(default_factory=dict)
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(self, "demographics", dict(self.demographics))

    @property
    def top(self) -> str:
        return self.ranking[0]

    @property
    def approved(self) -> tuple[str, ...]:
        return self.ranking[: self.cutoff]

    def rank_of(self, candidate: str) -> int:
        return self.ranking.index(candidate) + 1

    def with_weight(self, weight) -> "Ballot":
        return Ballot(
            ranking=self.ranking,
            cutoff=self.cutoff,
            voter_id=self.voter_id,
            declared_first_vote=self.declared_first_vote,
            demographics=self.demographics,
            weight=Fraction(weight),
        )


@dataclass(frozen=True)
class Profile:
    roster: tuple[Candidate, ...]
    ballots: tuple[Ballot, ...]
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        roster = tuple(c if isinstance(c, Candidate) else Candidate(c) for c in self.roster)
        object.__setattr__(self, "roster", roster)
        object.__setattr__(self, "ballots", tuple(self.ballots))
        object.__setattr__(self, "metadata", dict(self.metadata))

    @classmethod
    def from_rankings(
        cls,
        rankings: Iterable[Sequence[str] | str],
        cutoffs: Optional[Iterable[int]] = None,
        roster: Optional[Sequence[str]] = None,
        weights: Optional[Iterable] = None,
    ) -> "Profile":
        """Build a profile from bare rankings such as ``["ABC", "BCA"]``.

        Single-character candidate ids may be given as strings. Cutoffs
        default to everyone acceptable; weights default to 1.
        """
        rankings = [tuple(r) for r in rankings]
        if roster is None:
            roster = sorted(set(rankings[0])) if rankings else []
        n = len(roster)
        cutoffs = list(cutoffs) if cutoffs is not None else [n] * len(rankings)
        weights = list(weights) if weights is not None else [1] * len(rankings)
        ballots = tuple(
            Ballot(ranking=r, cutoff=c, voter_id=f"v{i + 1}", weight=Fraction(w))
            for i, (r, c, w) in enumerate(zip(rankings, cutoffs, weights))
        )
        return cls(roster=tuple(Candidate(c) for c in roster), ballots=ballots)

    @property
    def candidate_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.roster)

    @property
    def total_weight(self) -> Fraction:
        return sum((b.weight for b in self.ballots), Fraction(0))

    def display_name(self, candidate: str) -> str:
        for c in self.roster:
            if c.id == candidate:
                return c.name
        raise KeyError(candidate)

    def with_ballots(self, ballots: Iterable[Ballot]) -> "Profile":
        return Profile(roster=self.roster, ballots=tuple(ballots), metadata=self.metadata)


@dataclass(frozen=True)
class Round:
    """One step of an elimination or runoff count."""

    number: int
    tallies: Mapping[str, Fraction]
    eliminated: Optional[str] = None
    reason: str = ""


@dataclass(frozen=True)
class TieEvent:
    round: int
    tied: tuple[str, ...]
    rule: str
    chosen: str
    context: str = ""


@dataclass(frozen=True)
class MechanismOutcome:
    mechanism: str
    ranking: tuple[tuple[str, Fraction], ...]
    winner_set: frozenset
    winner: str
    rounds: Optional[tuple[Round, ...]] = None
    tie_events: tuple[TieEvent, ...] = ()

    @property
    def order(self) -> tuple[str, ...]:
        return tuple(c for c, _ in self.ranking)

    @property
    def scores(self) -> dict[str, Fraction]:
        return dict(self.ranking)

    def position(self, candidate: str) -> int:
        return self.order.index(candidate) + 1


# -- validation ---------------------------------------------------------------

VIOLATION_KINDS = (
    "DuplicateCandidateInRanking",
    "IncompleteRanking",
    "UnknownCandidate",
    "CutoffOutOfRange",
    "NegativeWeight",
    "EmptyRoster",
    "DuplicateCandidateInRoster",
    "InvalidCandidateId",
    "NonPositiveTotalWeight",
)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    ballot: Optional[int] = None

    def __str__(self):
        where = f"ballot {self.ballot}: " if self.ballot is not None else ""
        return f"{where}{self.kind}: {self.message}"


class ProfileValidationError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))

    @property
    def kinds(self) -> list[str]:
        return [v.kind for v in self.violations]


class EmptyTieSet(ValueError):
    pass


def valid_candidate_id(token: str) -> bool:
    return (
        isinstance(token, str)
        and token != ""
        and token.isprintable()
        and "," not in token
    )


def ballot_violations(ballot: Ballot, roster_ids: Sequence[str]) -> list[tuple[str, str]]:
    """Return ``(kind, message)`` pairs for everything wrong with one ballot."""
    problems = []
    known = set(roster_ids)
    seen = set()
    dupes = []
    for c in ballot.ranking:
        if c in seen and c not in dupes:
            dupes.append(c)
        seen.add(c)
    if dupes:
        problems.append(("DuplicateCandidateInRanking", f"ranked more than once: {', '.join(dupes)}"))
    unknown = [c for c in ballot.ranking if c not in known]
    if unknown:
        problems.append(("UnknownCandidate", f"not on the roster: {', '.join(map(str, unknown))}"))
    missing = [c for c in roster_ids if c not in seen]
    if missing:
        problems.append(("IncompleteRanking", f"missing: {', '.join(missing)}"))
    if not isinstance(ballot.cutoff, int) or not 0 <= ballot.cutoff <= len(roster_ids):
        problems.append(("CutoffOutOfRange", f"cutoff {ballot.cutoff} outside 0..{len(roster_ids)}"))
    if ballot.declared_first_vote is not None and ballot.declared_first_vote not in known:
        problems.append(("UnknownCandidate", f"declared vote {ballot.declared_first_vote!r} not on the roster"))
    if ballot.weight < 0:
        problems.append(("NegativeWeight", f"weight {ballot.weight}"))
    return problems


def validate_profile(profile: Profile) -> Profile:
    """Return ``profile`` unchanged if it is well formed.

    Raises :class:`ProfileValidationError` listing every violation found,
    not just the first one.
    """
    violations = []
    ids = profile.candidate_ids
    if len(ids) < 2:
        violations.append(Violation("EmptyRoster", f"roster has {len(ids)} candidate(s); need at least 2"))
    if len(set(ids)) != len(ids):
        violations.append(Violation("DuplicateCandidateInRoster", "candidate ids must be unique"))
    for c in ids:
        if not valid_candidate_id(c):
            violations.append(Violation("InvalidCandidateId", repr(c)))
    for i, ballot in enumerate(profile.ballots):
        for kind, msg in ballot_violations(ballot, ids):
            violations.append(Violation(kind, msg, ballot=i))
    if not any(v.kind == "NegativeWeight" for v in violations) and profile.total_weight <= 0:
        violations.append(Violation("NonPositiveTotalWeight", "total ballot weight must be positive"))
    if violations:
        raise ProfileValidationError(violations)
    return profile


def break_tie(tied: Iterable[str], policy: str = "lexicographic") -> str:
    """Pick one candidate out of a tied group.

    ``lexicographic`` picks the smallest id; Python string order on code
    points agrees with UTF-8 byte order.
    """
    tied = list(tied)
    if not tied:
        raise EmptyTieSet("cannot break a tie among zero candidates")
    if policy == "lexicographic":
        return min(tied)
    raise ValueError(f"unknown tie policy {policy!r}; expected one of {TIE_POLICIES}")
