import io
import json
from contextlib import redirect_stderr, redirect_stdout

import jsonschema
import pytest

from steenrod.cli import REPORT_SCHEMA, main


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestExpressions:
    def test_adem(self):
        code, out, _ = run(["adem", "Sq[1,2]"])
        assert code == 0 and out.strip() == "Sq[3]"

    def test_adem_of_garbage_exits_2(self):
        code, _, err = run(["adem", ""])
        assert code == 2 and "error" in err

    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            run(["frobnicate"])
        assert exc.value.code == 2

    def test_mul_and_antipode(self):
        assert run(["mul", "Sq[2]", "Sq[2]"])[1].strip() == "Sq[3,1]"
        assert run(["antipode", "Sq[3]"])[1].strip() == "Sq[2,1]"

    def test_pair(self):
        code, out, _ = run(["pair", "xi[0,1]", "Sq[2,1]"])
        assert code == 0 and out.strip() == "1"

    def test_milnor_both_directions(self):
        assert run(["milnor", "Q1"])[1].strip() == "Sq[3] + Sq[2,1]"
        assert run(["milnor", "Sq[3]"])[1].strip() == "SqM(3)"

    def test_basis(self):
        code, out, _ = run(["basis", "3"])
        assert out.strip().splitlines() == ["Sq[3]", "Sq[2,1]"]
        code, out, _ = run(["basis", "3", "--format", "json"])
        assert json.loads(out) == [[3], [2, 1]]

    def test_sq_preset(self):
        code, out, _ = run(["sq", "2", "t12", "--preset", "bpsp3"])
        assert code == 0 and out.strip() == "t2*t12"

    def test_transfer(self):
        code, out, _ = run(["transfer", "--bundle", "cp2", "--expr", "x4^2"])
        assert code == 0 and out.strip() == "y4"


class TestModuleCommands:
    def test_module_type(self):
        code, out, _ = run(
            ["module-type", "--preset", "bsu3", "--algebra", "e1", "--max", "20", "--format", "json"]
        )
        doc = json.loads(out)
        assert code == 0 and doc["status"] == "unique"
        assert ["Z2", 0] in doc["pieces"]

    def test_margolis_flags_fringe(self):
        code, out, _ = run(
            ["margolis", "--preset", "bsu3", "--op", "q1", "--max", "12", "--format", "json"]
        )
        rows = json.loads(out)
        assert any(r["status"] == "provisional" for r in rows)
        assert all(r["status"] == "ok" for r in rows if r["degree"] <= 9)

    def test_split_check_cases(self):
        doc = json.loads(run(["split-check", "--case", "identity"])[1])
        assert doc["split_guaranteed"] is True
        doc = json.loads(run(["split-check", "--case", "joker"])[1])
        assert doc["split_guaranteed"] is False and doc["witness_degree"] == 4
        doc = json.loads(run(["split-check", "--case", "zero"])[1])
        assert doc["f_injective"] is False


class TestPrimitivesCommand:
    def test_tsv(self):
        code, out, _ = run(
            ["primitives", "--space", "bspinc", "--max", "12", "--format", "tsv"]
        )
        rows = [line.split("\t") for line in out.strip().splitlines()]
        by_degree = {int(r[0]): r for r in rows}
        assert by_degree[6][2] == "s3,3" and by_degree[6][3] == "ok"
        assert by_degree[9][1] == "0"

    def test_json(self):
        code, out, _ = run(
            ["primitives", "--space", "bso", "--max", "8", "--format", "json"]
        )
        doc = json.loads(out)
        assert all(r["verified"] for r in doc)


class TestVerifyCommand:
    def test_json_report_validates_against_committed_schema(self):
        code, out, _ = run(
            ["verify", "--suite", "hopf", "--suite", "pairing", "--format", "json"]
        )
        doc = json.loads(out)
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert code == 0 and doc["ok"] is True

    def test_deterministic_output(self):
        a = run(["verify", "--suite", "pairing", "--format", "json"])
        b = run(["verify", "--suite", "pairing", "--format", "json"])
        assert a == b

    def test_known_finding_fails_with_witness(self):
        code, out, _ = run(["verify", "--suite", "indecomposables", "--format", "json"])
        doc = json.loads(out)
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert code == 1 and doc["ok"] is False
        failing = [
            c
            for s in doc["suites"]
            for c in s["checks"]
            if c["status"] == "fail"
        ]
        assert len(failing) == 1 and "degree 6" in failing[0]["id"]
        assert failing[0]["witness"]

    def test_cap_override_via_flag(self):
        code, out, _ = run(
            ["verify", "--suite", "dual-quotients", "--max", "8", "--format", "text"]
        )
        assert code == 0 and "degree 8" in out
