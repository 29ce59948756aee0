"""Demographic post-stratification of ballot weights.

Each (dimension, category) gets a correction constant equal to its target
population share divided by its share of the sample. A ballot's new weight
is the product of the constants for all of its labels.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .model import Profile

MISSING = "∅"
NORMALIZATIONS = ("mean-one", "none")
UNMATCHED_POLICIES = ("neutral-one",)


class UnknownDimension(KeyError):
    pass


class InvalidTargets(ValueError):
    pass


@dataclass(frozen=True)
class TargetMarginals:
    dimensions: Mapping[str, Mapping[str, Fraction]]

    def __post_init__(self):
        dims = {d: {c: Fraction(s) for c, s in cats.items()} for d, cats in self.dimensions.items()}
        for d, cats in dims.items():
            if any(s < 0 for s in cats.values()):
                raise InvalidTargets(f"dimension {d!r} has a negative share")
            if sum(cats.values()) != 1:
                raise InvalidTargets(f"shares for dimension {d!r} sum to {sum(cats.values())}, not 1")
        object.__setattr__(self, "dimensions", dims)


@dataclass(frozen=True)
class WeightingPlan:
    constants: Mapping[tuple[str, str], Fraction]
    unmatched_policy: str = "neutral-one"
    normalization: str = "mean-one"
    # (dimension, category, reason) for targeted categories that could not be corrected
    issues: tuple[tuple[str, str, str], ...] = ()
    sample: Mapping[str, Mapping[str, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
        if self.unmatched_policy not in UNMATCHED_POLICIES:
            raise ValueError(f"unmatched policy must be one of {UNMATCHED_POLICIES}")

    @property
    def dimensions(self) -> list[str]:
        return sorted({d for d, _ in self.constants})

    def constant(self, dimension: str, category: str) -> Fraction:
        return self.constants.get((dimension, category), Fraction(1))


def sample_shares(profile: Profile, dimension: str) -> dict[str, Fraction]:
    """Unweighted share of ballots in each category of ``dimension``."""
    counts = Counter(b.demographics.get(dimension, MISSING) for b in profile.ballots)
    if set(counts) <= {MISSING}:
        raise UnknownDimension(dimension)
    total = len(profile.ballots)
    return {cat: Fraction(n, total) for cat, n in sorted(counts.items())}


def build_plan(profile: Profile, targets: TargetMarginals, normalization: str = "mean-one") -> WeightingPlan:
    constants = {}
    issues = []
    sample = {}
    for dim, target in targets.dimensions.items():
        try:
            shares = sample_shares(profile, dim)
        except UnknownDimension:
            shares = {MISSING: Fraction(1)}
        sample[dim] = shares
        for cat, share in target.items():
            if cat not in shares:
                issues.append((dim, cat, "ZeroSampleShareForTargetedCategory"))
            elif share == 0:
                issues.append((dim, cat, "ZeroTargetShare"))
            else:
                constants[dim, cat] = share / shares[cat]
        for cat in shares:
            if cat not in target:
                constants[dim, cat] = Fraction(1)
    return WeightingPlan(
        constants=constants,
        normalization=normalization,
        issues=tuple(issues),
        sample=sample,
    )


def apply_weights(profile: Profile, plan: WeightingPlan) -> Profile:
    dims = plan.dimensions
    weights = []
    for b in profile.ballots:
        w = b.weight
        for dim in dims:
            w *= plan.constant(dim, b.demographics.get(dim, MISSING))
        weights.append(w)
    if plan.normalization == "mean-one" and weights:
        total = sum(weights)
        if total == 0:
            raise ValueError("cannot normalise: every ballot has zero weight")
        factor = Fraction(len(weights)) / total
        weights = [w * factor for w in weights]
    return profile.with_ballots(b.with_weight(w) for b, w in zip(profile.ballots, weights))


def exclude_ballots(profile: Profile, dimension: str, categories: Iterable[str]) -> Profile:
    """Drop ballots whose ``dimension`` label is one of ``categories``.

    Useful for leaving out respondents who did not vote, say.
    """
    drop = set(categories)
    return profile.with_ballots(b for b in profile.ballots if b.demographics.get(dimension, MISSING) not in drop)


def weighted_shares(profile: Profile, dimension: str) -> dict[str, Fraction]:
    totals: dict[str, Fraction] = {}
    for b in profile.ballots:
        cat = b.demographics.get(dimension, MISSING)
        totals[cat] = totals.get(cat, Fraction(0)) + b.weight
    grand = sum(totals.values())
    return {cat: w / grand for cat, w in sorted(totals.items())}
