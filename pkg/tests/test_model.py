from fractions import Fraction

import pytest
from hypothesis import given

from ballotlab import Ballot, Candidate, Profile, ProfileValidationError, break_tie, polarization, validate_profile
from ballotlab.model import EmptyTieSet
from conftest import make_profile, profiles


def test_valid_profile_is_returned_unchanged():
    p = make_profile(["ABC"] * 3, cutoffs=[3, 3, 3])
    assert validate_profile(p) is p


def test_incomplete_ranking_reported_at_ballot_0():
    p = make_profile(["AB"])
    with pytest.raises(ProfileValidationError) as exc:
        validate_profile(p)
    assert [(v.kind, v.ballot) for v in exc.value.violations] == [("IncompleteRanking", 0)]


def test_cutoff_out_of_range():
    p = make_profile(["ABC"], cutoffs=[4])
    with pytest.raises(ProfileValidationError) as exc:
        validate_profile(p)
    assert exc.value.kinds == ["CutoffOutOfRange"]


def test_all_violations_collected():
    roster = tuple(Candidate(c) for c in "ABC")
    ballots = (
        Ballot(ranking=("A", "A", "B"), cutoff=3),
        Ballot(ranking=("A", "B", "X"), cutoff=-1),
        Ballot(ranking=("A", "B", "C"), cutoff=1, weight=Fraction(-1, 2), declared_first_vote="Q"),
    )
    with pytest.raises(ProfileValidationError) as exc:
        validate_profile(Profile(roster, ballots))
    found = {(v.ballot, v.kind) for v in exc.value.violations}
    assert found == {
        (0, "DuplicateCandidateInRanking"),
        (0, "IncompleteRanking"),
        (1, "UnknownCandidate"),
        (1, "IncompleteRanking"),
        (1, "CutoffOutOfRange"),
        (2, "UnknownCandidate"),
        (2, "NegativeWeight"),
    }


@pytest.mark.parametrize("roster", [[], ["A"]])
def test_empty_roster(roster):
    with pytest.raises(ProfileValidationError) as exc:
        validate_profile(Profile(tuple(Candidate(c) for c in roster), ()))
    assert "EmptyRoster" in exc.value.kinds


def test_zero_total_weight_rejected():
    p = make_profile(["ABC"], weights=[0])
    with pytest.raises(ProfileValidationError) as exc:
        validate_profile(p)
    assert exc.value.kinds == ["NonPositiveTotalWeight"]


def test_cutoff_zero_is_legal():
    validate_profile(make_profile(["ABC"], cutoffs=[0]))


def test_bad_candidate_ids():
    with pytest.raises(ProfileValidationError) as exc:
        validate_profile(Profile((Candidate("a,b"), Candidate("c\n"), Candidate("")), ()))
    assert exc.value.kinds.count("InvalidCandidateId") == 3


@given(profiles())
def test_validation_idempotent(p):
    assert validate_profile(validate_profile(p)) is p


def test_break_tie_examples():
    assert break_tie({"B", "A", "C"}) == "A"
    assert break_tie({"Z"}) == "Z"
    # byte order: upper case sorts before lower case
    assert break_tie({"b", "B"}) == "B"


def test_break_tie_on_table4_polarization(table4):
    outcome = polarization(table4)
    assert outcome.scores["A"] == outcome.scores["C"] == 0
    assert break_tie(outcome.winner_set) == "A"
    assert outcome.tie_events[0].tied == ("A", "C")
    assert outcome.tie_events[0].rule == "lexicographic"


def test_break_tie_errors():
    with pytest.raises(EmptyTieSet):
        break_tie(set())
    with pytest.raises(ValueError):
        break_tie({"A"}, policy="coin-flip")
