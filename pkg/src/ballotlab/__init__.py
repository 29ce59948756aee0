"""Exact, deterministic tabulation of ranked-ballot elections."""

from .condorcet import (
    CondorcetVerdict,
    EnumerationSpace,
    PairwiseMatrix,
    SpaceTooLarge,
    condorcet_winner,
    pairwise_matrix,
    probe_condorcet_condition,
)
from .mechanisms import (
    MECHANISMS,
    MechanismConfig,
    approval,
    borda,
    coombs,
    copeland,
    moderation,
    plurality,
    plurality_with_runoff,
    polarization,
    ranked_choice,
    tabulate,
    tabulate_all,
)
from .model import (
    Ballot,
    Candidate,
    MechanismOutcome,
    Profile,
    ProfileValidationError,
    break_tie,
    validate_profile,
)
from .weighting import TargetMarginals, WeightingPlan, apply_weights, build_plan, sample_shares

__version__ = "0.1.0"
