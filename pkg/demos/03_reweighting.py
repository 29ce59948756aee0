"""
Reweighting a skewed sample
===========================

The synthetic survey over-represents young and Democratic respondents.
Correct it towards population marginals and compare outcomes.
"""

# %%
from ballotlab import TargetMarginals, apply_weights, build_plan, sample_shares, tabulate_all
from ballotlab.io import load_fixture
from ballotlab.report import comparison_matrix, render_plan
from ballotlab.weighting import exclude_ballots, weighted_shares

survey = load_fixture("synthetic2016")
print(sample_shares(survey, "party"))

# %%
# Made-up targets; any shares that sum to 1 work. Fractions keep it exact.
targets = TargetMarginals({
    "party": {"democrat": "37/100", "republican": "33/100", "independent": "30/100"},
    "age": {"18-29": "19/100", "30-44": "25/100", "45-64": "40/100", "65+": "16/100"},
})
plan = build_plan(survey, targets)
print(render_plan(plan))

# %%
# Optionally drop respondents who say they did not vote.
voters_only = exclude_ballots(survey, "voted", ["no"])
weighted = apply_weights(voters_only, build_plan(voters_only, targets))
print({k: float(v) for k, v in weighted_shares(weighted, "party").items()})

# %%
before = comparison_matrix(tabulate_all(survey), survey)
after = comparison_matrix(tabulate_all(weighted), weighted)
for cand in survey.candidate_ids:
    print(f"{survey.display_name(cand):16s}", before[cand], "->", after[cand])
