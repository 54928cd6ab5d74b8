import json
import subprocess
import sys

import pytest

from latshell import audit, cli
from latshell.lattice import GramLattice, builtin


@pytest.fixture(scope="module")
def certs():
    return audit.audit_all()


def test_every_claim_passes(certs):
    failed = [c.claim_id for c in certs if not c.passed]
    assert not failed
    assert len(certs) == len(audit.load_manifest())


def test_manifest_entries_are_cited():
    ids = set()
    for e in audit.load_manifest():
        assert e["citation"].strip()
        assert "expected" in e
        assert e["claim_id"] not in ids
        ids.add(e["claim_id"])
        assert audit._rule_for(e["claim_id"]) is not None


def test_stream_is_byte_identical(certs):
    again = audit.audit_all()
    assert audit.certificate_stream(certs) == audit.certificate_stream(again)


def test_certificate_records_are_self_contained(certs):
    for line in audit.certificate_stream(certs).splitlines():
        rec = json.loads(line)
        assert {"claim_id", "inputs", "computed", "expected", "citation", "verdict"} <= set(rec)


def test_fault_injection_flips_divisibility():
    gram = [list(r) for r in builtin("L_Ok").gram]
    assert gram[0][0] == 8
    gram[0][0] = 12
    bad = GramLattice("L_Ok", gram)
    out = {c.claim_id: c for c in audit.audit_all(only="lok.gram", overrides={"L_Ok": bad})}
    assert out["lok.gram.div8"].verdict == "fail"
    assert out["lok.gram.div8"].computed is False


def test_crashing_rule_is_a_failure():
    manifest = [{"claim_id": "okubo.N4.rep_gram", "inputs": {"norm": 3}, "expected": [], "citation": "x"},
                {"claim_id": "nothing.here", "inputs": {}, "expected": 1, "citation": "x"}]
    out = audit.audit_all(manifest=manifest)
    assert [c.verdict for c in out] == ["fail", "fail"]
    assert all(c.error for c in out)


def test_only_filter():
    out = audit.audit_all(only="e8.")
    assert out and all(c.claim_id.startswith("e8.") for c in out)


@pytest.mark.parametrize("which", audit.TABLES)
def test_tables_render(which):
    text = audit.emit_table(which)
    assert len(text.splitlines()) > 2


def test_okubo_table_counts():
    _, rows = audit.table_rows("okubo-shells")
    assert [r[2] for r in rows] == [0, 0, 0, 16, 0, 0, 0, 112, 0, 0, 0, 448, 0, 0, 0, 1136]
    assert all(r[2] == r[3] for r in rows)


def test_chain_table():
    _, rows = audit.table_rows("lattice-chain")
    assert [(r[1], r[2]) for r in rows[:3]] == [(2 ** 12, 2 ** 24), (2 ** 4, 2 ** 8), (1, 1)]


def test_cli_exit_codes(tmp_path, capsys):
    assert cli.main(["audit", "run", "--only", "e8.", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "certificates.jsonl").read_text().count("\n") == 7
    assert cli.main(["roots", "--lattice", "M", "--norm", "3"]) == 1
    assert "reflection-not-closed" in capsys.readouterr().out
    assert cli.main(["shell", "--lattice", "Leech", "--norm", "1"]) == 2
    assert cli.main(["shell", "--lattice", "E8", "--norm", "1", "--count-only"]) == 0
    assert "240" in capsys.readouterr().out


def test_cli_lattice_file(tmp_path, capsys):
    spec = tmp_path / "d4.json"
    spec.write_text(json.dumps({"name": "mine", "gram": [list(r) for r in builtin("D4").gram]}))
    assert cli.main(["roots", "--lattice", f"@{spec}", "--norm", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["dynkin_type"] == "D4"


def test_cli_other_commands(capsys):
    assert cli.main(["theta", "--lattice", "E8", "--max-norm", "2"]) == 0
    assert capsys.readouterr().out.split() == ["1", "240", "2160"]
    assert cli.main(["orbits", "--lattice", "L_Ok", "--norm", "16"]) == 0
    assert json.loads(capsys.readouterr().out)["total"] == 1136
    assert cli.main(["glue", "--sub", "M", "--sup", "E8"]) == 0
    assert json.loads(capsys.readouterr().out)["overlattice_det"] == 1
    assert cli.main(["gluecode", "--sub", "M", "--sup", "E8"]) == 0
    assert json.loads(capsys.readouterr().out)["weight_enumerator"] == {"0": 1, "4": 14, "8": 1}
    assert cli.main(["analyze", "--lattice", "L_Ok", "--norm", "12"]) == 0
    assert json.loads(capsys.readouterr().out)["design2"] == "1344"


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "latshell.cli", "table", "classical"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "Coxeter-Dickson" in r.stdout
