"""Regenerate the bundled election files in src/ballotlab/data/.

Tables 1-4 are the small worked examples; synthetic2016 is a seeded,
made-up 750-ballot survey with eight candidates and demographic labels.
"""

import random
from pathlib import Path

from ballotlab.io import write_election
from ballotlab.model import Ballot, Candidate, Profile

OUT = Path(__file__).resolve().parents[1] / "src" / "ballotlab" / "data"
ABC = tuple(Candidate(c) for c in "ABC")


def small(name, rows, note):
    ballots = [
        Ballot(ranking=tuple(r), cutoff=c, voter_id=f"voter{i + 1}") for i, (r, c) in enumerate(rows)
    ]
    write_election(Profile(ABC, ballots, {"name": name, "note": note}), OUT / f"{name}.json")


small("table1", [("ABC", 3), ("BCA", 3), ("CAB", 3)], "three-voter cycle, no Condorcet winner")
small(
    "table2",
    [("ABC", 1), ("ABC", 1), ("CBA", 1), ("CBA", 1), ("BAC", 2)],
    "approval example: B is the Condorcet winner, A is most approved",
)
small(
    "table3",
    [("ABC", 3), ("ABC", 3), ("CBA", 3), ("CBA", 3), ("BAC", 3)],
    "moderation example: B is the Condorcet winner but is removed first",
)
small(
    "table4",
    [("BAC", 3), ("BAC", 3), ("ACB", 2)],
    "polarization example: B is the Condorcet winner but alone falls outside a cutoff",
)

# left-right positions are invented for the synthetic data
CANDIDATES = [
    ("johnson", "Gary Johnson", 0.55),
    ("clinton", "Hillary Clinton", -0.35),
    ("stein", "Jill Stein", -0.85),
    ("trump", "Donald Trump", 0.75),
    ("rubio", "Marco Rubio", 0.45),
    ("sanders", "Bernie Sanders", -0.6),
    ("cruz", "Ted Cruz", 0.9),
    ("kasich", "John Kasich", 0.3),
]
rng = random.Random(2016)
DEMOGRAPHICS = {
    "age": (["18-29", "30-44", "45-64", "65+"], [0.38, 0.36, 0.2, 0.06]),
    "gender": (["female", "male"], [0.45, 0.55]),
    "race": (["white", "black", "hispanic", "asian", "other"], [0.74, 0.09, 0.07, 0.07, 0.03]),
    "party": (["democrat", "republican", "independent"], [0.42, 0.24, 0.34]),
    "voted": (["yes", "no"], [0.81, 0.19]),
}
ballots = []
for i in range(750):
    demo = {d: rng.choices(cats, weights)[0] for d, (cats, weights) in DEMOGRAPHICS.items()}
    lean = {"democrat": -0.5, "republican": 0.6, "independent": 0.05}[demo["party"]]
    x = rng.gauss(lean, 0.45)
    dist = {cid: abs(x - pos) + rng.gauss(0, 0.25) for cid, _, pos in CANDIDATES}
    ranking = tuple(sorted(dist, key=dist.get))
    cutoff = rng.choices(range(0, 9), [1, 10, 14, 16, 15, 12, 8, 5, 4])[0]
    declared = ranking[0]
    if cutoff >= 2 and rng.random() < 0.2:
        declared = rng.choice(ranking[1:cutoff])
    if rng.random() < 0.03:
        del demo["age"]
    ballots.append(
        Ballot(ranking=ranking, cutoff=cutoff, voter_id=f"r{i + 1:03d}", declared_first_vote=declared, demographics=demo)
    )
roster = tuple(Candidate(cid, name) for cid, name, _ in CANDIDATES)
write_election(
    Profile(roster, ballots, {"name": "synthetic2016", "note": "SYNTHETIC data generated by tools/make_fixtures.py; not survey responses"}),
    OUT / "synthetic2016.json",
)
