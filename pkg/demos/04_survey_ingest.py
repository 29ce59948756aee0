"""
From a survey export to a report
================================

Write a tiny CSV the way a survey tool might export it, ingest it,
and check how often respondents' declared first-round vote differs
from their top-ranked candidate.
"""

# %%
import csv
import tempfile
from pathlib import Path

from ballotlab import Candidate
from ballotlab.io import SurveyCsvSchema, ingest_csv
from ballotlab.report import divergence, render_divergence

tmp = Path(tempfile.mkdtemp())
rows = [
    ["respondent", "rank1", "rank2", "rank3", "acceptable", "first_round", "party"],
    ["1", "Donald Trump", "Bernie Sanders", "Hillary Clinton", "2", "Bernie Sanders", "R"],
    ["2", "Bernie Sanders", "Hillary Clinton", "Donald Trump", "2", "Bernie Sanders", "D"],
    ["3", "Hillary Clinton", "Bernie Sanders", "Donald Trump", "1", "Hillary Clinton", "D"],
    ["4", "Hillary Clinton", "Hillary Clinton", "Donald Trump", "1", "", "I"],  # ranked twice
    ["5", "Donald Trump", "Hillary Clinton", "Bernie Sanders", "1", "Donald Trump", ""],
]
with open(tmp / "export.csv", "w", newline="") as fh:
    csv.writer(fh).writerows(rows)

# %%
schema = SurveyCsvSchema(
    voter_id="respondent",
    rank_columns=["rank1", "rank2", "rank3"],
    cutoff="acceptable",
    declared="first_round",
    demographics={"party": "party"},
)
roster = [Candidate("trump", "Donald Trump"), Candidate("sanders", "Bernie Sanders"), Candidate("clinton", "Hillary Clinton")]
result = ingest_csv(tmp / "export.csv", schema, roster)
print(f"{len(result.profile.ballots)} ballots, {len(result.rejected_rows)} rejected")
for r in result.rejections:
    print(" ", r)

# %%
print(render_divergence(divergence(result.profile), result.profile))
