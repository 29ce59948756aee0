"""The nine tabulation rules.

Every rule is a pure function ``(profile, config) -> MechanismOutcome`` and
assumes the profile has already passed :func:`~ballotlab.model.validate_profile`.

Scoring rules (plurality, borda, approval, copeland, polarization) rank by
score. Elimination rules (irv, coombs, moderation) rank survivors first and
then eliminated candidates in reverse order of removal; their reported score
is ``|A| - position + 1``. The runoff places the two finalists on top and
the rest by first-round tally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .condorcet import pairwise_matrix
from .model import (
    TIE_POLICIES,
    MechanismOutcome,
    Profile,
    Round,
    TieEvent,
    break_tie,
)

RUNOFF_SOURCES = ("declared-else-top", "top-rank")
MODERATION_STARTS = ("least-first", "most-last")


@dataclass(frozen=True)
class MechanismConfig:
    tie_policy: str = "lexicographic"
    runoff_vote_source: str = "declared-else-top"
    moderation_start: str = "least-first"

    def __post_init__(self):
        for value, allowed in (
            (self.tie_policy, TIE_POLICIES),
            (self.runoff_vote_source, RUNOFF_SOURCES),
            (self.moderation_start, MODERATION_STARTS),
        ):
            if value not in allowed:
                raise ValueError(f"{value!r} is not one of {allowed}")


DEFAULT_CONFIG = MechanismConfig()


def _order_by_score(scores: Mapping[str, Fraction], policy: str) -> list[str]:
    """Descending score; equal scores resolved by repeated tie-breaking."""
    order = []
    for value in sorted(set(scores.values()), reverse=True):
        group = [c for c, s in scores.items() if s == value]
        while group:
            pick = break_tie(group, policy)
            order.append(pick)
            group.remove(pick)
    return order


def _scored_outcome(name: str, scores: dict, config: MechanismConfig) -> MechanismOutcome:
    best = max(scores.values())
    winner_set = frozenset(c for c, s in scores.items() if s == best)
    order = _order_by_score(scores, config.tie_policy)
    ties = ()
    if len(winner_set) > 1:
        ties = (TieEvent(1, tuple(sorted(winner_set)), config.tie_policy, order[0], "winner"),)
    return MechanismOutcome(
        mechanism=name,
        ranking=tuple((c, scores[c]) for c in order),
        winner_set=winner_set,
        winner=order[0],
        rounds=None,
        tie_events=ties,
    )


def _zero(candidates: Iterable[str]) -> dict:
    return {c: Fraction(0) for c in candidates}


# -- scoring rules ----------------------------------------------------------------


def plurality(profile: Profile, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    scores = _zero(profile.candidate_ids)
    for b in profile.ballots:
        scores[b.ranking[0]] += b.weight
    return _scored_outcome("plurality", scores, config)


def borda(profile: Profile, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    n = len(profile.roster)
    scores = _zero(profile.candidate_ids)
    for b in profile.ballots:
        for position, c in enumerate(b.ranking):
            scores[c] += b.weight * (n - position)
    return _scored_outcome("borda", scores, config)


def approval(profile: Profile, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    scores = _zero(profile.candidate_ids)
    for b in profile.ballots:
        for c in b.ranking[: b.cutoff]:
            scores[c] += b.weight
    return _scored_outcome("approval", scores, config)


def copeland(profile: Profile, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    matrix = pairwise_matrix(profile)
    scores = {c: Fraction(matrix.wins(c) - matrix.losses(c)) for c in profile.candidate_ids}
    return _scored_outcome("copeland", scores, config)


def polarization(profile: Profile, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    """Penalise each candidate below a voter's cutoff by the squared distance."""
    scores = _zero(profile.candidate_ids)
    for b in profile.ballots:
        i = b.cutoff
        for j in range(i + 1, len(b.ranking) + 1):
            scores[b.ranking[j - 1]] -= b.weight * (j - i) ** 2
    return _scored_outcome("polarization", scores, config)


# -- elimination rules ------------------------------------------------------------


def _first_place(profile: Profile, active: list[str]) -> dict:
    alive = set(active)
    tallies = _zero(active)
    for b in profile.ballots:
        for c in b.ranking:
            if c in alive:
                tallies[c] += b.weight
                break
    return tallies


def _last_place(profile: Profile, active: list[str]) -> dict:
    alive = set(active)
    tallies = _zero(active)
    for b in profile.ballots:
        for c in reversed(b.ranking):
            if c in alive:
                tallies[c] += b.weight
                break
    return tallies


_STEPS = {
    "least-first": (_first_place, min, "fewest first-place votes"),
    "most-last": (_last_place, max, "most last-place votes"),
}


def _eliminate(
    name: str,
    profile: Profile,
    config: MechanismConfig,
    schedule: tuple[str, ...],
    majority_exit: bool,
) -> MechanismOutcome:
    active = list(profile.candidate_ids)
    n = len(active)
    half = profile.total_weight / 2
    removed: list[str] = []
    rounds: list[Round] = []
    ties: list[TieEvent] = []
    winner_set = None
    final_tallies = None
    step = 0
    while len(active) > 1:
        number = len(rounds) + 1
        tally_fn, pick, reason = _STEPS[schedule[step % len(schedule)]]
        tallies = tally_fn(profile, active)
        if majority_exit:
            # only paired with the least-first step, so tallies are first places
            leader = max(tallies, key=tallies.get)
            if tallies[leader] > half:
                rounds.append(Round(number, tallies, None, f"majority for {leader}"))
                final_tallies = tallies
                break
        target = pick(tallies.values())
        tied = [c for c in active if tallies[c] == target]
        if len(tied) == len(active) == 2:
            # dead heat between the last two: the tie policy names the winner
            winner_set = frozenset(tied)
            keep = break_tie(tied, config.tie_policy)
            loser = next(c for c in tied if c != keep)
            ties.append(TieEvent(number, tuple(sorted(tied)), config.tie_policy, keep, "winner"))
        else:
            loser = break_tie(tied, config.tie_policy)
            if len(tied) > 1:
                ties.append(TieEvent(number, tuple(sorted(tied)), config.tie_policy, loser, "elimination"))
        rounds.append(Round(number, tallies, loser, reason))
        active.remove(loser)
        removed.append(loser)
        step += 1

    if len(active) > 1:
        survivors = _order_by_score({c: final_tallies[c] for c in active}, config.tie_policy)
    else:
        survivors = active
    order = survivors + removed[::-1]
    winner = order[0]
    return MechanismOutcome(
        mechanism=name,
        ranking=tuple((c, Fraction(n - i)) for i, c in enumerate(order)),
        winner_set=winner_set or frozenset([winner]),
        winner=winner,
        rounds=tuple(rounds),
        tie_events=tuple(ties),
    )


def ranked_choice(profile: Profile, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    return _eliminate("irv", profile, config, ("least-first",), majority_exit=True)


def coombs(profile: Profile, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    return _eliminate("coombs", profile, config, ("most-last",), majority_exit=False)


def moderation(profile: Profile, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    """Alternate removing the weakest first choice and the strongest last choice."""
    if config.moderation_start == "least-first":
        schedule = ("least-first", "most-last")
    else:
        schedule = ("most-last", "least-first")
    return _eliminate("moderation", profile, config, schedule, majority_exit=False)


def plurality_with_runoff(profile: Profile, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    policy = config.tie_policy
    ids = profile.candidate_ids
    first = _zero(ids)
    for b in profile.ballots:
        vote = b.ranking[0]
        if config.runoff_vote_source == "declared-else-top" and b.declared_first_vote is not None:
            vote = b.declared_first_vote
        first[vote] += b.weight
    ties: list[TieEvent] = []
    order = _order_by_score(first, policy)
    leader = order[0]
    if first[leader] > profile.total_weight / 2:
        return MechanismOutcome(
            mechanism="runoff",
            ranking=tuple((c, first[c]) for c in order),
            winner_set=frozenset([leader]),
            winner=leader,
            rounds=(Round(1, first, None, f"majority for {leader}"),),
        )

    finalists = order[:2]
    cut = first[finalists[1]]
    boundary = [c for c in ids if first[c] == cut]
    if any(c not in finalists for c in boundary):
        ties.append(TieEvent(1, tuple(sorted(boundary)), policy, finalists[1], "runoff finalist"))

    second = _zero(finalists)
    for b in profile.ballots:
        pick = next(c for c in b.ranking if c in second)
        second[pick] += b.weight
    best = max(second.values())
    winner_set = frozenset(c for c in finalists if second[c] == best)
    top = _order_by_score(second, policy)
    if len(winner_set) > 1:
        ties.append(TieEvent(2, tuple(sorted(winner_set)), policy, top[0], "winner"))
    rest = [c for c in order if c not in second]
    rounds = (
        Round(1, first, None, "no majority; top two advance"),
        Round(2, second, top[1], "lost the runoff"),
    )
    return MechanismOutcome(
        mechanism="runoff",
        ranking=tuple((c, first[c]) for c in top + rest),
        winner_set=winner_set,
        winner=top[0],
        rounds=rounds,
        tie_events=tuple(ties),
    )


MECHANISMS: dict[str, Callable[[Profile, MechanismConfig], MechanismOutcome]] = {
    "plurality": plurality,
    "runoff": plurality_with_runoff,
    "irv": ranked_choice,
    "coombs": coombs,
    "borda": borda,
    "approval": approval,
    "copeland": copeland,
    "moderation": moderation,
    "polarization": polarization,
}

ELIMINATION_MECHANISMS = frozenset({"runoff", "irv", "coombs", "moderation"})


def get_mechanism(name: str):
    try:
        return MECHANISMS[name]
    except KeyError:
        raise ValueError(f"unknown mechanism {name!r}; choose from {', '.join(MECHANISMS)}") from None


def tabulate(profile: Profile, mechanism: str, config: MechanismConfig = DEFAULT_CONFIG) -> MechanismOutcome:
    return get_mechanism(mechanism)(profile, config)


def tabulate_all(profile: Profile, mechanisms: Iterable[str] = MECHANISMS, config: MechanismConfig = DEFAULT_CONFIG):
    return {m: tabulate(profile, m, config) for m in mechanisms}
