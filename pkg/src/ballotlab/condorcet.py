"""Head-to-head preference tallies, Condorcet winners and a counterexample prober."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .model import Ballot, Candidate, Profile

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class PairwiseMatrix:
    candidates: tuple[str, ...]
    tallies: dict = field(repr=False)

    def prefer(self, x: str, y: str) -> Fraction:
        """Total weight of ballots ranking ``x`` above ``y``."""
        return self.tallies[x, y]

    def margin(self, x: str, y: str) -> Fraction:
        return self.tallies[x, y] - self.tallies[y, x]

    def beats(self, x: str, y: str) -> bool:
        return self.tallies[x, y] > self.tallies[y, x]

    def wins(self, x: str) -> int:
        return sum(1 for y in self.candidates if y != x and self.beats(x, y))

    def losses(self, x: str) -> int:
        return sum(1 for y in self.candidates if y != x and self.beats(y, x))


@dataclass(frozen=True)
class CondorcetVerdict:
    winner: Optional[str]
    beats: dict


def pairwise_matrix(profile: Profile) -> PairwiseMatrix:
    ids = profile.candidate_ids
    tallies = {(x, y): Fraction(0) for x in ids for y in ids if x != y}
    for ballot in profile.ballots:
        order = ballot.ranking
        for i, x in enumerate(order):
            for y in order[i + 1:]:
                tallies[x, y] += ballot.weight
    return PairwiseMatrix(candidates=ids, tallies=tallies)


def condorcet_winner(matrix: PairwiseMatrix) -> CondorcetVerdict:
    # A pairwise tie is not a victory, so at most one candidate can qualify.
    beats = {x: matrix.wins(x) for x in matrix.candidates}
    needed = len(matrix.candidates) - 1
    winners = [x for x, n in beats.items() if n == needed]
    return CondorcetVerdict(winner=winners[0] if winners else None, beats=beats)


# -- exhaustive search ----------------------------------------------------------


class SpaceTooLarge(ValueError):
    pass


CANDIDATE_LABELS = "ABCD"


@dataclass(frozen=True)
class EnumerationSpace:
    """All unit-weight profiles with a fixed number of candidates and voters.

    Ballot types are (ranking, cutoff) pairs in lexicographic order. With
    ``cutoffs`` false every ballot has everyone acceptable; otherwise the
    cutoff ranges over ``min_cutoff..candidates``.
    """

    candidates: int
    voters: int
    cutoffs: bool = False
    min_cutoff: int = 0
    anonymous: bool = True
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if not 2 <= self.candidates <= 4:
            raise ValueError("candidates must be between 2 and 4")
        if not 1 <= self.voters <= 5:
            raise ValueError("voters must be between 1 and 5")

    @property
    def roster(self) -> tuple[str, ...]:
        return tuple(CANDIDATE_LABELS[: self.candidates])

    def ballot_types(self) -> list[tuple[tuple[str, ...], int]]:
        cutoffs = range(self.min_cutoff, self.candidates + 1) if self.cutoffs else [self.candidates]
        return [(r, c) for r in itertools.permutations(self.roster) for c in cutoffs]

    def size(self) -> int:
        """Number of profiles this space will actually enumerate."""
        t = len(self.ballot_types())
        if self.anonymous:
            return math.comb(t + self.voters - 1, self.voters)
        return t**self.voters

    def profiles(self) -> Iterator[Profile]:
        """Yield profiles in mixed-radix order of their ballot-type sequence.

        In anonymous mode only non-decreasing sequences are produced; the
        first match in that order is also the first match among all
        sequences, because sorting a sequence never makes it larger.
        """
        if self.size() > self.cap:
            raise SpaceTooLarge(f"{self.size()} profiles exceeds the cap of {self.cap}")
        types = self.ballot_types()
        roster = tuple(Candidate(c) for c in self.roster)
        combos = (
            itertools.combinations_with_replacement(range(len(types)), self.voters)
            if self.anonymous
            else itertools.product(range(len(types)), repeat=self.voters)
        )
        for combo in combos:
            ballots = tuple(
                Ballot(ranking=types[t][0], cutoff=types[t][1], voter_id=f"v{i + 1}")
                for i, t in enumerate(combo)
            )
            yield Profile(roster=roster, ballots=ballots)


@dataclass(frozen=True)
class ProbeResult:
    mechanism: str
    space: EnumerationSpace
    counterexample: Optional[Profile]
    condorcet_winner: Optional[str] = None
    mechanism_winner: Optional[str] = None
    examined: int = 0

    @property
    def exhausted(self) -> bool:
        return self.counterexample is None


def probe_condorcet_condition(mechanism: str, space: EnumerationSpace, config=None, strict: bool = False) -> ProbeResult:
    """Search ``space`` for a profile whose Condorcet winner loses under ``mechanism``.

    Returns the first such profile in enumeration order, or an exhausted
    result when none exists. With ``strict`` the Condorcet winner must be
    outside the winner set, so witnesses that only lose a tie-break are
    skipped.
    """
    from .mechanisms import MechanismConfig, get_mechanism

    rule = get_mechanism(mechanism)
    config = config or MechanismConfig()
    examined = 0
    for profile in space.profiles():
        examined += 1
        verdict = condorcet_winner(pairwise_matrix(profile))
        if verdict.winner is None:
            continue
        outcome = rule(profile, config)
        lost = verdict.winner not in outcome.winner_set if strict else outcome.winner != verdict.winner
        if lost:
            profile = Profile(
                roster=profile.roster,
                ballots=profile.ballots,
                metadata={
                    "source": f"probe {mechanism} candidates={space.candidates} voters={space.voters}"
                    + (" cutoffs" if space.cutoffs else "")
                    + (" strict" if strict else ""),
                },
            )
            return ProbeResult(mechanism, space, profile, verdict.winner, outcome.winner, examined)
    return ProbeResult(mechanism, space, None, examined=examined)
