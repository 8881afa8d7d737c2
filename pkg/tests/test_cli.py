import csv
import io
import json

import pytest

from courtmix import chains
from courtmix.cli import main
from courtmix.court import reference_configuration


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_distances_csv_and_json_agree(capsys):
    _, text, _ = run(capsys, "tables", "distances", "--chain", "big-friend")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 9 and rows[6]["s_star"] == "0.461"
    _, text, _ = run(capsys, "tables", "distances", "--format", "json")
    data = json.loads(text)
    assert data[0]["n"] == 1 and abs(data[0]["d_star"] - 0.957) < 1e-3


def test_output_is_byte_identical_across_runs(capsys):
    first = run(capsys, "tables", "never", "--event", "teammate")
    second = run(capsys, "tables", "never", "--event", "teammate")
    assert first == second and first[0] == 0


def test_mean_games_and_baselines(capsys):
    _, text, _ = run(capsys, "tables", "mean-games", "--format", "json")
    rows = {r["start"]: r for r in json.loads(text)}
    assert len(rows) == 26 and abs(rows["1T2"]["mean_ST"] - 3.773) < 1e-3
    _, text, _ = run(capsys, "tables", "baselines")
    assert text.splitlines()[1].startswith("never_opposite,8,0.121")


def test_export_chain_round_trip(capsys):
    code, text, _ = run(capsys, "export-chain", "--chain", "friend")
    assert code == 0
    back = chains.ReducedChain.from_json(text, "friend")
    assert back.P == chains.build_friend_chain().P
    _, text, _ = run(capsys, "export-chain", "--chain", "lazy", "--format", "csv")
    assert text.splitlines()[0] == "from,A,B,D,C"


def test_apply(capsys):
    code, text, _ = run(capsys, "apply", "--sequence", "F")
    out = json.loads(text)
    assert code == 0 and out["steps"] == 68 and out["configuration"][:2] == [1, 0]
    code, text, _ = run(capsys, "apply", "--sequence", "EEEE", "--pretty")
    assert text.strip() == reference_configuration().pretty().strip()


@pytest.mark.parametrize("sequence", ["A^9E", "AEQ", "A^2E"])
def test_apply_rejects_bad_sequences(capsys, sequence):
    code, _, err = run(capsys, "apply", "--sequence", sequence)
    assert code == 2 and err.startswith("courtmix: error:")


def test_plan_from_state_file(capsys, tmp_path):
    seating = list(range(24))
    seating[5], seating[18] = seating[18], seating[5]
    path = tmp_path / "state.json"
    path.write_text(json.dumps(seating))
    code, text, _ = run(capsys, "plan", "--state", str(path), "--emit-sequence")
    out = json.loads(text)
    assert code == 0 and out["verified"] and len(out["sequence"].split()) == out["steps"]
    _, text, _ = run(capsys, "apply", "--state", str(path), "--sequence", out["sequence"])
    assert json.loads(text)["configuration"] == list(range(24))


def test_malformed_state_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(list(range(23)) + [3]))
    code, _, err = run(capsys, "plan", "--state", str(path))
    assert code == 2 and "position 23" in err
    path.write_text("[1, 2")
    assert run(capsys, "plan", "--state", str(path))[0] == 2
    assert run(capsys, "plan", "--state", str(tmp_path / "missing.json"))[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "tables", "distances", "--max-n", "0")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_simulate_is_seeded(capsys, monkeypatch):
    argv = ("simulate", "encounter-all", "--trials", "2000")
    monkeypatch.setenv("COURTMIX_SEED", "11")
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b and json.loads(a[1])["trials"] == 2000
    c = run(capsys, *argv, "--seed", "11")
    assert c == a
    monkeypatch.setenv("COURTMIX_SEED", "eleven")
    assert run(capsys, *argv)[0] == 2


def test_verify_exit_codes(capsys):
    code, text, _ = run(capsys, "verify", "aperiodicity")
    assert code == 0 and json.loads(text)["pass"] is True
    code, text, _ = run(capsys, "verify", "irreducibility", "--trials", "3", "--seed", "5")
    assert code == 0 and json.loads(text)["seed"] == 5
