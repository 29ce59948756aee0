"""
Small elections, nine rules
===========================

Run the four bundled three-candidate elections through every rule and
look at where the rules disagree.
"""

# %%
from ballotlab import condorcet_winner, pairwise_matrix, tabulate_all
from ballotlab.io import load_fixture
from ballotlab.report import render_comparison, render_outcome

# %%
# A three-voter cycle: every candidate beats one rival and loses to the
# other, so nobody is a Condorcet winner.
cycle = load_fixture("table1")
m = pairwise_matrix(cycle)
print({f"{x}>{y}": int(m.prefer(x, y)) for x in "ABC" for y in "ABC" if x != y})
print("Condorcet winner:", condorcet_winner(m).winner)

# %%
# Approval voting can pass over a Condorcet winner.
t2 = load_fixture("table2")
out = tabulate_all(t2, ["approval", "copeland"])
for o in out.values():
    print(render_outcome(o, t2))
print("Condorcet winner:", condorcet_winner(pairwise_matrix(t2)).winner)

# %%
# Same rankings, everyone acceptable. The Moderation Rule drops B first.
t3 = load_fixture("table3")
outcomes = tabulate_all(t3)
print(render_outcome(outcomes["moderation"], t3))
print(render_comparison(outcomes, t3))

# %%
# Polarization scores: B is the only candidate ever below a cutoff.
t4 = load_fixture("table4")
print(render_outcome(tabulate_all(t4, ["polarization"])["polarization"], t4))
