import os
import sys
import json
import pytest
from unittest.mock import Mock

TEST_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(os.path.dirname(TEST_DIR))
sys.path.append(ROOT_DIR)

from askey import __main__ as cli
from askey.error_handler import ConfigError
from askey.harness import read_report


@pytest.fixture(autouse=True)
def quiet_logger(monkeypatch):
    monkeypatch.setattr(cli, "get_logger", lambda *args, **kwargs: Mock())
    monkeypatch.delenv("ASKEY_THREADS", raising=False)


def run(capsys, *argv):
    status = cli.main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_parse_complex():
    assert cli.parse_complex("1.0+0.5i") == complex(1.0, 0.5)
    assert cli.parse_complex("-2e-1-3i") == complex(-0.2, -3.0)
    assert cli.parse_complex("0.25") == 0.25
    assert cli.parse_complex(".5") == 0.5


@pytest.mark.parametrize("text", ["", "1+i", "i", "1.0+0.5j", "1,5", "nan", "1 + 2i", "--1"])
def test_parse_complex_rejects(text):
    with pytest.raises(ConfigError):
        cli.parse_complex(text)


def test_parse_real():
    assert cli.parse_real("1e-8") == 1e-8
    with pytest.raises(ConfigError):
        cli.parse_real("1+1i")


def test_eval_wilson(capsys):
    status, out, _ = run(capsys, "eval", "wilson", "--n", "0", "--x", "1", "--a", "1", "--b", "1", "--c", "1", "--d", "1")
    assert status == 0
    assert float(out) == 1.0


def test_eval_mp(capsys):
    status, out, _ = run(capsys, "eval", "mp", "--n", "1", "--x", "0", "--lambda", "1", "--phi", "1.5707963267948966")
    assert status == 0
    assert abs(float(out)) <= 1e-12


def test_eval_cdh(capsys):
    status, out, _ = run(capsys, "eval", "cdh", "--n", "1", "--x", "0", "--a", "1", "--b", "1", "--c", "1")
    assert status == 0
    assert float(out) == pytest.approx(3.0, rel=1e-12)


def test_eval_chahn_prints_both_parts(capsys):
    status, out, _ = run(capsys, "eval", "chahn", "--n", "0", "--x", "0.5", "--a", "0.6+0.3i", "--b", "0.9")
    assert status == 0
    re, im = map(float, out.split())
    assert (re, im) == (1.0, 0.0)


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "wilson", "--n", "1", "--x", "1", "--a", "1", "--b", "1", "--c", "1"],
        ["eval", "cdh", "--n", "1", "--x", "1", "--a", "-1", "--b", "1", "--c", "1"],
        ["eval", "cdh", "--n", "1", "--x", "1", "--a", "1", "--b", "1", "--c", "1", "--d", "1"],
        ["eval", "mp", "--n", "1", "--x", "1", "--lambda", "1", "--phi", "4"],
        ["eval", "mp", "--n", "1", "--x", "1", "--lambda", "1+1i", "--phi", "1"],
    ],
)
def test_eval_rejects_bad_parameters(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == 2
    assert out == ""
    assert err.startswith("askey:")


def test_malformed_number_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["eval", "wilson", "--n", "0", "--x", "1", "--a", "1+i", "--b", "1", "--c", "1", "--d", "1"])
    assert info.value.code == 2


def test_list(capsys):
    status, out, _ = run(capsys, "list")
    assert status == 0
    assert "w-t1" in out and "imp3" in out and "whipple" in out

    table = cli.catalog_table()
    assert (table["kind"] == "identity").sum() == 15
    assert (table["kind"] == "corollary").sum() == 10
    assert table["anchor"].str.len().min() > 0


def test_integrate(capsys):
    status, out, _ = run(
        capsys,
        "integrate", "iw1", "--k", "0", "--rho", "0",
        "--a", "1", "--b", "1", "--c", "1", "--d", "1", "--h", "1",
    )
    record = json.loads(out)
    assert status == 0
    assert record["tag"] == "iw1"
    assert record["outcome"] == "pass"


def test_integrate_rejects_unused_aux(capsys):
    status, _, err = run(
        capsys,
        "integrate", "imp1", "--k", "0", "--rho", "0",
        "--lambda", "0.8", "--phi", "1", "--psi", "1.4", "--h", "1",
    )
    assert status == 2
    assert "--h" in err


def test_verify_unknown_tag(capsys):
    status, _, err = run(capsys, "verify", "--include", "bogus-id")
    assert status == 2
    assert "bogus-id" in err


def test_verify_bad_thread_count(capsys, monkeypatch):
    monkeypatch.setenv("ASKEY_THREADS", "many")
    status, _, err = run(capsys, "verify", "--include", "w-t1", "--trials", "1")
    assert status == 2
    assert "ASKEY_THREADS" in err


def test_verify_writes_report(capsys, tmp_path):
    path = str(tmp_path / "out.json")
    status, out, _ = run(capsys, "verify", "--include", "w-t1", "--trials", "1", "--seed", "7", "--report", path)
    assert status == 0
    assert out.startswith("1 records")

    report, records = read_report(path)
    assert [record.tag for record in records] == ["w-t1"]
    assert report["config"]["seed"] == 7
    assert report["summary"]["fail"] == 0
