import json
from fractions import Fraction as F

import pytest

from ballotlab.cli import main
from ballotlab.io import fixture_path, parse_election
from ballotlab.mechanisms import approval, get_mechanism
from ballotlab import condorcet_winner, pairwise_matrix


def path(name):
    return str(fixture_path(name))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_condorcet_command(capsys):
    code, out, _ = run(capsys, "condorcet", path("table1"))
    assert code == 0 and "no Condorcet winner" in out
    _, out, _ = run(capsys, "condorcet", path("table2"))
    assert "Condorcet winner: B" in out


def test_condorcet_unanimous(capsys, tmp_path, unanimous):
    from ballotlab.io import write_election

    f = tmp_path / "u.json"
    write_election(unanimous, f)
    _, out, _ = run(capsys, "condorcet", str(f))
    assert "Condorcet winner: A" in out


def test_tabulate_side_by_side(capsys):
    code, out, _ = run(capsys, "tabulate", path("table2"), "--mechanisms", "approval,copeland", "--format", "machine")
    doc = json.loads(out)
    winners = {m["mechanism"]: m["winner"] for m in doc["mechanisms"]}
    assert code == 0 and winners == {"approval": "A", "copeland": "B"}
    assert doc["comparison"]["B"] == {"approval": 3, "copeland": 1}


def test_tabulate_all_matrix(capsys):
    _, out, _ = run(capsys, "tabulate", path("table3"), "--format", "machine")
    doc = json.loads(out)
    assert doc["comparison"]["B"]["copeland"] == 1
    assert doc["comparison"]["B"]["moderation"] == 3
    assert len(doc["mechanisms"]) == 9


def test_machine_output_is_deterministic(capsys):
    first = run(capsys, "tabulate", path("synthetic2016"), "--format", "machine")[1]
    second = run(capsys, "tabulate", path("synthetic2016"), "--format", "machine")[1]
    assert first == second


def test_machine_scores_reparse_exactly(capsys, tmp_path):
    targets = tmp_path / "t.json"
    targets.write_text('{"party": {"democrat": "37/100", "republican": "33/100", "independent": "0.30"}}')
    _, out, _ = run(capsys, "tabulate", path("synthetic2016"), "--targets", str(targets), "--mechanisms", "borda", "--format", "machine")
    doc = json.loads(out)
    scores = [F(r["score"]) for r in doc["mechanisms"][0]["ranking"]]
    assert sum(scores) == F(doc["total_weight"]) * 36
    assert doc["total_weight"] == "750/1"


@pytest.mark.parametrize("mechs", ["", ",", "borda,nonsense"])
def test_bad_mechanism_list_is_usage_error(capsys, mechs):
    code, _, err = run(capsys, "tabulate", path("table1"), "--mechanisms", mechs)
    assert code == 1 and err


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tabulate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_invalid_input_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(fixture_path("table1").read_text().replace('"cutoff": 3', '"cutoff": 9', 1))
    code, _, err = run(capsys, "tabulate", str(bad))
    assert code == 2 and "CutoffOutOfRange" in err
    assert run(capsys, "condorcet", str(tmp_path / "nope.json"))[0] == 2


def test_probe_writes_witness(capsys, tmp_path):
    out_file = tmp_path / "w.json"
    code, out, _ = run(capsys, "probe", "approval", "3", "5", "--cutoffs", "-o", str(out_file), "--format", "machine")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"] == "counterexample"
    profile = parse_election(out_file.read_text())
    cw = condorcet_winner(pairwise_matrix(profile)).winner
    assert cw is not None and approval(profile).winner != cw
    code, out, _ = run(capsys, "tabulate", str(out_file), "--mechanisms", "approval", "--format", "machine")
    assert json.loads(out)["mechanisms"][0]["winner"] != cw


def test_probe_copeland_exhausted(capsys):
    code, out, _ = run(capsys, "probe", "copeland", "3", "5")
    assert code == 0 and out.startswith("exhausted")


def test_probe_borda_three(capsys, tmp_path):
    out_file = tmp_path / "b.json"
    code, out, _ = run(capsys, "probe", "borda", "3", "3", "-o", str(out_file))
    assert code == 0 and "counterexample written" in out
    profile = parse_election(out_file.read_text())
    assert get_mechanism("borda")(profile).winner != condorcet_winner(pairwise_matrix(profile)).winner


def test_probe_space_too_large(capsys):
    code, _, err = run(capsys, "probe", "borda", "4", "5", "--cutoffs")
    assert code == 3 and "SpaceTooLarge" in err
    assert run(capsys, "probe", "borda", "3", "5", "--cap", "10")[0] == 3


def test_probe_bad_bounds(capsys):
    assert run(capsys, "probe", "borda", "7", "3")[0] == 1
    assert run(capsys, "probe", "quadratic", "3", "3")[0] == 1


def test_divergence_command(capsys):
    code, out, _ = run(capsys, "divergence", path("synthetic2016"), "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and 0 < F(doc["fraction"]) < 1
    code, _, err = run(capsys, "divergence", path("table1"))
    assert code == 2 and "NoDeclaredVotes" in err


def test_weights_command(capsys, tmp_path):
    targets = tmp_path / "t.json"
    targets.write_text('{"voted": {"yes": "1"}, "party": {"democrat": "9/25", "republican": "33/100", "independent": "31/100"}}')
    code, out, _ = run(capsys, "weights", path("synthetic2016"), "--targets", str(targets), "--format", "machine")
    doc = json.loads(out)
    assert code == 0
    assert {"dimension": "voted", "category": "no", "constant": "1/1"} in doc["constants"]
    code, out, _ = run(capsys, "weights", path("synthetic2016"), "--targets", str(targets))
    assert "Weighting plan" in out


def test_exclude_flag(capsys):
    _, out, _ = run(capsys, "tabulate", path("synthetic2016"), "--mechanisms", "plurality", "--exclude", "voted=no", "--format", "machine")
    assert F(json.loads(out)["total_weight"]) < 750


def test_ingest_command(capsys, tmp_path):
    csv_file = tmp_path / "s.csv"
    csv_file.write_text("id,r1,r2,r3,cut\n1,A,B,C,3\n2,B,C,A,3\n3,C,A,B,3\n4,A,A,B,1\n")
    schema = tmp_path / "schema.json"
    schema.write_text(json.dumps({"voter_id": "id", "rank_columns": ["r1", "r2", "r3"], "cutoff": "cut", "roster": ["A", "B", "C"]}))
    out_file = tmp_path / "e.json"
    code, _, err = run(capsys, "ingest", str(csv_file), "--schema", str(schema), "-o", str(out_file))
    assert code == 0 and "rejected 1 row(s)" in err
    assert len(parse_election(out_file.read_text()).ballots) == 3
    code, out, _ = run(capsys, "condorcet", str(out_file))
    assert "no Condorcet winner" in out
