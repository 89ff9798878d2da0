import json
import subprocess
import sys

import pytest

from diamond_relay.cli import main
from diamond_relay.network import load_network
from diamond_relay.worstcase import worst_network


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound(capsys):
    assert run(capsys, "bound", "-n", "3") == (0, "3,0.381966011,2.61803399\n", "")


def test_worst_then_ratio(capsys, tmp_path):
    f = tmp_path / "net.json"
    assert run(capsys, "worst", "--family", "even1", "-n", "6", "-o", str(f))[0] == 0
    code, out, _ = run(capsys, "ratio", "-i", str(f))
    assert code == 0 and out == "0.292893219\n"


@pytest.mark.parametrize("family,n", [("even1", 6), ("even2", 4), ("odd1", 5), ("odd2", 3)])
def test_worst_round_trip(capsys, tmp_path, family, n):
    f = tmp_path / "net.json"
    run(capsys, "worst", "--family", family, "-n", str(n), "--L", "1e6", "-o", str(f))
    assert load_network(f) == worst_network(family, n, 1e6)


def test_missing_file(capsys):
    code, out, err = run(capsys, "capacity", "-i", "missing.json")
    assert code == 1 and out == "" and "missing.json" in err


def test_domain_error(capsys):
    code, _, err = run(capsys, "worst", "--family", "odd1", "-n", "4")
    assert code == 1 and "odd" in err


@pytest.mark.parametrize("argv", [["bogus"], ["bound"], ["bound", "-n", "x"], ["montecarlo", "--n-min", "1",
                                  "--n-max", "2", "--trials", "3"], ["worst", "--family", "even3", "-n", "2"], []])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "usage" in err


def test_capacity_json(capsys, tmp_path):
    f = tmp_path / "net.json"
    f.write_text('{"relays": [{"ell": 2, "r": 2}, {"ell": 2, "r": 2}]}')
    out_json = tmp_path / "cap.json"
    code, out, _ = run(capsys, "capacity", "-i", str(f), "--exact", "-o", str(out_json))
    assert code == 0 and out.splitlines() == ["2", "2"]
    data = json.loads(out_json.read_text())
    assert data["value"] == 2 and data["exact_value"] == "2"
    code, out, _ = run(capsys, "schedule-rate", "-i", str(f), "-s", str(out_json), "--exact")
    assert code == 0 and out == "2\n"


def test_best_relay_and_normalize(capsys, tmp_path):
    f = tmp_path / "net.json"
    f.write_text('{"relays": [{"ell": 2, "r": 2}, {"ell": 6, "r": 3}]}')
    assert run(capsys, "best-relay", "-i", str(f)) == (0, "2,2\n", "")
    code, out, _ = run(capsys, "normalize", "-i", str(f))
    data = json.loads(out)
    assert data["z"] == [1.0, 2.0] and data["permutation"] == [1, 2]
    assert data["relays"][1] == {"ell": 3.0, "r": 1.5}


def test_bad_schedule(capsys, tmp_path):
    f = tmp_path / "net.json"
    f.write_text('{"relays": [{"ell": 2, "r": 2}]}')
    s = tmp_path / "s.json"
    s.write_text('{"0": 0.25, "1": 0.25}')
    code, _, err = run(capsys, "schedule-rate", "-i", str(f), "-s", str(s))
    assert code == 1 and "sums" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--family", "odd1", "-n", "5", "--L", "1e9", "--tol", "1e-4", "--header")
    header, row = out.splitlines()
    assert code == 0 and header.startswith("n,family,L") and row.endswith(",pass")


def test_montecarlo(capsys, tmp_path):
    stats, raw = tmp_path / "s.csv", tmp_path / "r.csv"
    argv = ["montecarlo", "--n-min", "1", "--n-max", "2", "--trials", "5", "--seed", "3", "-o", str(stats),
            "--raw", str(raw)]
    assert run(capsys, *argv)[0] == 0
    first = stats.read_text()
    assert first.splitlines()[2].startswith("1,5,1,1,1,1,1")
    assert len(raw.read_text().splitlines()) == 11
    run(capsys, *argv)
    assert stats.read_text() == first


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "diamond_relay", "bound", "-n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "2,0.5,2\n"
