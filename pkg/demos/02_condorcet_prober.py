"""
Searching for Condorcet failures
================================

Enumerate every small election and report the first one in which a rule
passes over the Condorcet winner.
"""

# %%
from ballotlab import EnumerationSpace, probe_condorcet_condition
from ballotlab.io import render_election

# %%
# Rules that only read rankings are probed without cutoffs; approval and
# polarization need the cutoff enumerated too.
needs_cutoffs = {"approval", "polarization"}
for mechanism in ["plurality", "runoff", "irv", "coombs", "borda", "approval", "moderation", "polarization", "copeland"]:
    for voters in range(1, 6):
        space = EnumerationSpace(3, voters, cutoffs=mechanism in needs_cutoffs)
        result = probe_condorcet_condition(mechanism, space)
        if not result.exhausted:
            ballots = ", ".join("".join(b.ranking) + f"/{b.cutoff}" for b in result.counterexample.ballots)
            print(f"{mechanism:13s} {voters} voters: CW {result.condorcet_winner}, "
                  f"elected {result.mechanism_winner}  [{ballots}]")
            break
    else:
        print(f"{mechanism:13s} exhausted up to 5 voters")

# %%
# Witnesses are ordinary election files and can be fed back to the CLI.
witness = probe_condorcet_condition("borda", EnumerationSpace(3, 3)).counterexample
print(render_election(witness))
