import csv
import io
import json
from fractions import Fraction

import pytest

from segre import cli, construct
from segre.formats import cell, from_json_rational


def run(argv, stdin=None):
    out = io.StringIO()
    code = cli.run(argv, stdout=out, stdin=io.StringIO(stdin) if stdin is not None else None)
    return code, out.getvalue()


def test_strata_csv_example():
    code, text = run(["strata", "--g", "4", "--r", "2", "--d", "0", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == list(cli.STRATA_COLUMNS)
    assert [(r["s"], r["dim"]) for r in rows] == [("2", "12"), ("4", "13")]


def test_construct_json_example():
    code, text = run(["construct", "--g", "3", "--r", "4", "--d", "1", "--k", "2", "--s", "2",
                      "--format", "json"])
    assert code == 0
    cert = json.loads(text)
    assert cert["N_k"] == 3 and cert["d_tilde"] == 4
    assert cert["sharp_guaranteed"] is True
    assert cert["verdict"] == "PaperGuaranteed"
    chain = cert["per_i"][0]["chain"]["values"]
    assert [from_json_rational(v) for v in chain] == [Fraction(3, 2), 1]
    assert chain[0] == {"num": 3, "den": 2}


def test_bound_example():
    code, text = run(["bound", "--g", "2", "--r", "2", "--k", "1", "--format", "json"])
    data = json.loads(text)
    assert code == 0
    assert (data["hirschowitz"], data["mukai_sakai"], data["segre"]) == (2, 2, 2)
    code, text = run(["bound", "--g", "2", "--r", "2", "--k", "1"])
    assert code == 0 and "hirschowitz" in text


@pytest.mark.parametrize("fmt", ["text", "json", "csv"])
def test_output_is_deterministic(fmt):
    argv = ["strata", "--g", "3", "--r", "4", "--d", "1", "--format", fmt]
    assert run(argv) == run(argv)


def test_json_and_csv_agree():
    base = ["strata", "--g", "3", "--r", "4", "--d", "-3"]
    rows_json = json.loads(run(base + ["--format", "json"])[1])["rows"]
    rows_csv = list(csv.DictReader(io.StringIO(run(base + ["--format", "csv"])[1])))
    assert len(rows_json) == len(rows_csv)
    for a, b in zip(rows_json, rows_csv):
        for col in cli.STRATA_COLUMNS:
            assert b[col] == cell(a[col])


def test_invalid_input_exit_2(capsys):
    assert run(["strata", "--g", "1", "--r", "2", "--d", "0"])[0] == 2
    assert run(["construct", "--g", "3", "--r", "4", "--d", "1", "--k", "2", "--s", "3"])[0] == 2
    assert run(["smax", "--g", "2", "--r", "65", "--d", "0"])[0] == 2
    assert run(["strata", "--g", "2"])[0] == 2


def test_overflow_exit_3():
    big = str(2**63 - 1)
    code, _ = run(["transform", "--g", "2", "--r", "2", "--d", "1", "--s", big, "--steps", "II"])
    assert code == 3


def test_unknown_verdict_exit_1(monkeypatch):
    real = construct.sharp_feasibility

    def forced(*args):
        cert = real(*args)
        return construct.ConstructionCertificate(
            **{**cert.__dict__, "verdict": construct.Verdict.UNKNOWN,
               "sharp_guaranteed": False, "paper_guaranteed": False})

    monkeypatch.setattr(construct, "sharp_feasibility", forced)
    assert run(["construct", "--g", "2", "--r", "3", "--d", "1", "--k", "2", "--s", "2"])[0] == 1


def test_smax_and_transform():
    code, text = run(["smax", "--g", "2", "--r", "3", "--d", "1", "--format", "json"])
    rows = json.loads(text)["rows"]
    assert [(r["k"], r["s_max"], r["valid_s"]) for r in rows] == [(1, 4, [1, 4]), (2, 2, [2])]

    code, text = run(["transform", "--g", "2", "--r", "3", "--d", "1", "--steps", "I,I;I,II",
                      "--format", "json"])
    data = json.loads(text)
    assert code == 0
    assert [t["s"] for t in data["trajectory"]] == [[4, 2], [3, 0], [2, 1]]
    assert data["final"]["d"] == -1

    code, text = run(["transform", "--g", "2", "--r", "3", "--d", "1", "--s", "4,2",
                      "--steps", "II,II", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[1]["feasible"] == "false"


def test_verify_command():
    code, text = run(["verify", "--check", "valid-s", "--check", "fuzz", "--trials", "20",
                      "--format", "json"])
    data = json.loads(text)
    assert code == 0
    assert [r["name"] for r in data["results"]] == ["valid-s", "fuzz"]


def test_out_writes_file(tmp_path):
    target = tmp_path / "strata.csv"
    code, text = run(["strata", "--g", "2", "--r", "2", "--d", "1", "--format", "csv",
                      "--out", str(target)])
    assert code == 0 and text == ""
    assert target.read_text().startswith("g,r,d,k,s")
    assert [p.name for p in tmp_path.iterdir()] == ["strata.csv"]


def test_batch_examples(tmp_path):
    assert run(["batch"], stdin="") == (0, "")

    lines = [
        json.dumps({"command": "smax", "g": 2, "r": 3, "d": 1, "k": 2}),
        json.dumps({"command": "strata", "g": 4, "r": 2, "d": 0}),
        json.dumps({"command": "bound", "g": 2, "r": 2, "k": 1}),
    ]
    code, text = run(["batch"], stdin="\n".join(lines) + "\n")
    records = [json.loads(l) for l in text.splitlines()]
    assert code == 0 and len(records) == 3 and all(r["ok"] for r in records)

    lines[1] = json.dumps({"command": "strata", "g": 1, "r": 2, "d": 0})
    path = tmp_path / "queries.jsonl"
    path.write_text("\n".join(lines) + "\n")
    code, text = run(["batch", "--input", str(path)])
    records = [json.loads(l) for l in text.splitlines()]
    assert [r["ok"] for r in records] == [True, False, True]
    assert records[1]["exit_code"] == 2 and records[1]["line"] == 2
    assert code == 2


def test_batch_bad_json_line():
    records, code = cli.run_batch(["{not json", '{"command": "nope"}', "[1]"])
    assert [r["ok"] for r in records] == [False, False, False]
    assert code == 2
