import csv
import io
import json
import math
import subprocess
import sys

import pytest

from trigsolve.cli import main

GENERIC_DOC = {"A": [[1.0, 0.5], [0.5, 1.0]], "B": [[0.8, 0.3], [0.3, 0.8]], "C": [1.2, 1.0]}
ZERO_B_DOC = {"A": [[1, 0], [0, 1]], "B": [[0, 0], [0, 0]], "C": [math.sqrt(2) / 2, math.sqrt(2) / 2]}
RANK1_DOC = {"A": [[0.6, 0.2], [0.2, 0.6]], "B": [[1, 0.5], [2, 1]], "C": [0.8, 1.0]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_lines(tmp_path, docs, name="in.jsonl"):
    path = tmp_path / name
    path.write_text("".join((d if isinstance(d, str) else json.dumps(d)) + "\n" for d in docs))
    return str(path)


class TestSolve:
    def test_inline_generic(self, capsys):
        code, out, _ = run(capsys, "solve", "--a", "1,0.5,0.5,1", "--b", "0.8,0.3,0.3,0.8", "--c", "1.2,1.0")
        doc = json.loads(out)
        assert code == 0
        assert doc["branch"] == "generic" and len(doc["solutions"]) == 2
        assert set(doc) == {"status", "branch", "det_b", "solutions", "theta1_values", "message"}

    def test_family(self, capsys, tmp_path):
        path = tmp_path / "sys.json"
        path.write_text(json.dumps(ZERO_B_DOC))
        code, out, _ = run(capsys, "solve", "--json", str(path))
        doc = json.loads(out)
        assert code == 0 and doc["status"] == "theta2_family"
        assert doc["theta1_values"] == pytest.approx([math.pi / 4], abs=1e-12)

    def test_empty_exit_code(self, capsys):
        code, out, _ = run(capsys, "solve", "--a", "1,0,0,1", "--b", "1,0,0,1", "--c", "10,0")
        assert code == 3 and json.loads(out)["status"] == "empty"

    @pytest.mark.parametrize("bad", ["1,0,0", "1,x,0,1", "1,0,nan,1"])
    def test_malformed(self, capsys, bad):
        code, out, err = run(capsys, "solve", "--a", bad, "--b", "1,0,0,1", "--c", "1,0")
        assert code == 2 and out == "" and len(err.strip().splitlines()) == 1

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "solve", "--a", "1,0,0,1", "--b", "1,0,0,1", "--c", "2,0", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert list(rows[0]) == ["index", "status", "branch", "n_solutions", "max_residual", "micros"]
        assert rows[0]["n_solutions"] == "1"


class TestBatch:
    def test_fixtures(self, capsys, tmp_path):
        path = write_lines(tmp_path, [GENERIC_DOC, ZERO_B_DOC, RANK1_DOC])
        code, out, _ = run(capsys, "batch", "--in", path)
        docs = [json.loads(line) for line in out.splitlines()]
        assert code == 0
        assert [len(d["solutions"]) for d in docs] == [2, 0, 4]
        assert docs[1]["status"] == "theta2_family"

    def test_empty_file(self, capsys, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        assert run(capsys, "batch", "--in", str(path)) == (0, "", "")

    def test_bad_line_is_recorded(self, capsys, tmp_path):
        bad = {"A": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "B": [[1, 0], [0, 1]], "C": [1, 0]}
        path = write_lines(tmp_path, [GENERIC_DOC, bad, "not json", RANK1_DOC])
        code, out, _ = run(capsys, "batch", "--in", path)
        docs = [json.loads(line) for line in out.splitlines()]
        assert code == 0
        assert [d["status"] for d in docs] == ["finite", "error", "error", "finite"]
        assert docs[1]["message"]

    def test_unreadable(self, capsys, tmp_path):
        assert run(capsys, "batch", "--in", str(tmp_path / "missing"))[0] == 2

    def test_parallel_preserves_order(self, capsys, tmp_path):
        docs = []
        for i in range(40):
            c = 0.05 * i
            docs.append({"A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]], "C": [c, 0.3]})
        path = write_lines(tmp_path, docs)
        out_serial, out_par = tmp_path / "s.jsonl", tmp_path / "p.jsonl"
        assert run(capsys, "batch", "--in", path, "--out", str(out_serial))[0] == 0
        assert run(capsys, "batch", "--in", path, "--out", str(out_par), "--parallel", "3")[0] == 0
        assert out_serial.read_text() == out_par.read_text()
        assert len(out_par.read_text().splitlines()) == 40

    def test_custom_tolerance(self, capsys, tmp_path):
        doc = dict(GENERIC_DOC, tol={"residual": 1e-6, "rank": 1e-9, "det": 1e-8})
        code, out, _ = run(capsys, "batch", "--in", write_lines(tmp_path, [doc]))
        assert json.loads(out)["status"] == "finite"


class TestRandom:
    def test_rank0_single(self, capsys):
        code, out, _ = run(capsys, "random", "--count", "1", "--seed", "7", "--singular", "rank0")
        assert code == 0 and json.loads(out)["branch_histogram"] == {"rank0": 1}

    def test_rank1_batch(self, capsys):
        code, out, _ = run(capsys, "random", "--count", "100", "--seed", "1", "--singular", "rank1")
        doc = json.loads(out)
        assert doc["success_rate"] == 1.0
        assert all(int(k) <= 4 for k in doc["solution_count_histogram"])

    def test_equal_seeds_byte_identical(self, capsys):
        first = run(capsys, "random", "--count", "200", "--seed", "5")[1]
        second = run(capsys, "random", "--count", "200", "--seed", "5")[1]
        assert first == second

    def test_count_precondition(self, capsys):
        assert run(capsys, "random", "--count", "0")[0] == 2


class TestOracle:
    def test_fixtures(self, capsys, tmp_path):
        path = write_lines(tmp_path, [GENERIC_DOC, ZERO_B_DOC, RANK1_DOC])
        code, out, _ = run(capsys, "oracle", "--in", path, "--grid", "1024")
        doc = json.loads(out)
        assert code == 0 and doc["match_rate"] == 1.0

    def test_unreachable(self, capsys, tmp_path):
        path = write_lines(tmp_path, [{"A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]], "C": [10, 0]}])
        doc = json.loads(run(capsys, "oracle", "--in", path, "--grid", "256")[1])
        line = doc["lines"][0]
        assert line["match"] and line["n_solver"] == 0 and line["n_oracle"] == 0

    def test_grid_precondition(self, capsys, tmp_path):
        path = write_lines(tmp_path, [GENERIC_DOC])
        assert run(capsys, "oracle", "--in", path, "--grid", "128")[0] == 2


class TestIk:
    def test_stretched(self, capsys):
        code, out, _ = run(capsys, "ik", "--l1", "1", "--l2", "1", "--x", "2", "--y", "0")
        sols = json.loads(out)["solutions"]
        assert code == 0 and len(sols) == 1

    def test_two_pairs(self, capsys):
        code, out, _ = run(capsys, "ik", "--l1", "1", "--l2", "1", "--x", "1", "--y", "1")
        got = sorted((s["theta1"], s["theta2"]) for s in json.loads(out)["solutions"])
        assert got == pytest.approx([(0.0, math.pi / 2), (math.pi / 2, -math.pi / 2)], abs=1e-12)

    def test_unreachable(self, capsys):
        code, out, _ = run(capsys, "ik", "--l1", "1", "--l2", "1", "--x", "3", "--y", "0")
        assert code == 3 and json.loads(out)["solutions"] == []

    def test_bad_length(self, capsys):
        assert run(capsys, "ik", "--l1", "0", "--l2", "1", "--x", "1", "--y", "0")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "trigsolve", "ik", "--l1", "1", "--l2", "1", "--x", "2", "--y", "0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["status"] == "finite"
