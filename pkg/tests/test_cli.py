import json

import pytest

from f4gkm.cli import main
from f4gkm.suites import FAULTS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_text(capsys):
    code, out, _ = run(capsys, "group")
    assert code == 0
    assert "order(W(F4)) = 1152" in out
    assert "order(W(Spin8)) = 192" in out


def test_rank_line(capsys):
    code, out, _ = run(capsys, "rank", "--degree", "1")
    assert code == 0
    assert out.splitlines()[0] == "rank = 8, expected = 8, PASS"


def test_json_is_byte_stable(capsys):
    _, a, _ = run(capsys, "graph", "--json", "--no-timestamp")
    _, b, _ = run(capsys, "graph", "--json", "--no-timestamp")
    assert a == b
    doc = json.loads(a)
    assert doc["overall"] == "pass"
    assert "timestamp" not in doc or doc["timestamp"] is None


def test_timestamp_present(capsys):
    _, out, _ = run(capsys, "group", "--json")
    assert json.loads(out)["timestamp"]


def test_threads_do_not_change_report(capsys):
    _, a, _ = run(capsys, "hilbert", "--json", "--no-timestamp", "--prime", "2", "--max-degree", "8")
    _, b, _ = run(capsys, "hilbert", "--json", "--no-timestamp", "--prime", "2", "--max-degree", "8", "--threads", "2")
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "config"}
    assert strip(a) == strip(b)


def test_exit_codes(capsys):
    assert run(capsys, "group", "--inject-fault", "group")[0] == 1
    code, _, err = run(capsys, "group", "--inject-fault", "omega")
    assert code == 2 and "does not apply" in err
    assert run(capsys, "rank", "--degree", "2", "--cell-cap", "10")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["hilbert", "--prime", "4"])
    assert exc.value.code == 2


def test_every_fault_belongs_to_a_command():
    assert set(FAULTS.values()) <= {"group", "graph", "verify", "hilbert", "corollary", "rank"}


def test_dot_and_csv_output(tmp_path, capsys):
    full, quo, csv = tmp_path / "g.dot", tmp_path / "q.dot", tmp_path / "h.csv"
    assert run(capsys, "graph", "--dot", str(full), "--quotient-dot", str(quo))[0] == 0
    assert full.read_text().startswith("graph gkm {")
    assert quo.read_text().startswith("graph cosets {")
    assert run(capsys, "hilbert", "--prime", "3", "--max-degree", "6", "--csv", str(csv))[0] == 0
    rows = csv.read_text().splitlines()
    assert rows[0].startswith("degree,")
    assert [r.split(",")[0] for r in rows[1:]] == ["0", "2", "4", "6"]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert run(capsys, "corollary", "--json", "--prime", "2", "--out", str(path))[0] == 0
    assert json.loads(path.read_text())["overall"] == "pass"
