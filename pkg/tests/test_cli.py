import json

import numpy as np
import pytest

from conftest import random_kraus_family
from qmarkov import DirectedGraph, from_kraus, identity_operator, pure_state, shift_unitary
from qmarkov import io as qio
from qmarkov.cli import main


@pytest.fixture
def files(tmp_path):
    """Model files shared across CLI tests."""
    paths = {}
    paths["id_op"] = tmp_path / "id.json"
    qio.save_operator(paths["id_op"], identity_operator(2))

    paths["density"] = tmp_path / "d.json"
    qio.save_matrix(paths["density"], np.diag([0.3, 0.7]).astype(complex), kind="density")

    paths["swap"] = tmp_path / "swap.json"
    swap = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    paths["swap"].write_text(json.dumps({"n": 2, "kraus": [qio.matrix_to_dict(swap)]}))

    paths["graph"] = tmp_path / "g.txt"
    paths["graph"].write_text("0 1\n1 2\n2 0\n")
    cycle = DirectedGraph(node_count=3, edges=((0, 1), (1, 2), (2, 0)))
    paths["shift"] = tmp_path / "shift.json"
    paths["shift"].write_text(
        json.dumps({"n": 3, "kraus": [qio.matrix_to_dict(shift_unitary(cycle))]})
    )
    paths["edge0"] = tmp_path / "edge0.json"
    qio.save_matrix(paths["edge0"], pure_state(np.eye(3)[0]), kind="density")

    paths["zmeas"] = tmp_path / "zmeas.json"
    paths["zmeas"].write_text(
        json.dumps(
            {
                "n": 2,
                "scale": ["0", "1"],
                "kraus": {
                    "0": qio.matrix_to_dict(np.diag([1.0, 0.0]).astype(complex)),
                    "1": qio.matrix_to_dict(np.diag([0.0, 1.0]).astype(complex)),
                },
            }
        )
    )

    paths["oom"] = tmp_path / "oom.json"
    paths["oom"].write_text(
        json.dumps(
            {
                "dim": 2,
                "scale": ["a", "b"],
                "operators": {"a": [[0.5, 0.5], [0.0, 0.0]], "b": [[0.0, 0.0], [0.5, 0.5]]},
                "pi": [0.5, 0.5],
            }
        )
    )
    paths["tmp"] = tmp_path
    return paths


class TestBell:
    def test_builtin_five_state(self, capsys):
        assert main(["bell", "--builtin", "five-state"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["lhs"] == pytest.approx(4 / 3, abs=1e-12)
        assert out["rhs"] == pytest.approx(0.0, abs=1e-12)
        assert out["satisfied"] is False
        assert out["pairwise_observable"] is True
        assert out["jointly_observable"] is False
        assert out["e_xy"] == pytest.approx(1.0, abs=1e-12)
        assert out["e_yz"] == pytest.approx(-1 / 3, abs=1e-12)
        assert out["e_xz"] == pytest.approx(1.0, abs=1e-12)

    def test_table_file(self, files, capsys):
        table = files["tmp"] / "table.json"
        table.write_text(
            json.dumps(
                {
                    "states": ["w1", "w2", "w3", "w4", "w5"],
                    "functions": {
                        "X": [-1, 1, -1, -1, -1],
                        "Y": [1, 1, -1, 1, -1],
                        "Z": [1, 1, 1, -1, -1],
                    },
                    "q": [-1 / 3, 1 / 3, 1 / 3, 1 / 3, 1 / 3],
                }
            )
        )
        assert main(["bell", "--table", str(table)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["satisfied"] is False

    def test_missing_function_rejected(self, files, capsys):
        table = files["tmp"] / "incomplete.json"
        table.write_text(
            json.dumps({"states": ["a"], "functions": {"X": [1]}, "q": [1.0]})
        )
        assert main(["bell", "--table", str(table)]) == 2
        assert "X, Y and Z" in capsys.readouterr().err


class TestFeynman:
    def test_worked_point(self, capsys):
        assert main(["feynman", "--sx", "0.5", "--sy", "0.5", "--sz", "0.5"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["q"] == [0.625, 0.125, 0.375, -0.125]
        assert out["states"] == ["++", "+-", "-+", "--"]

    def test_invalid_point_exit_code(self, capsys):
        assert main(["feynman", "--sx", "0.3", "--sy", "0.1", "--sz", "0.5"]) == 2
        err = capsys.readouterr().err
        assert "1.2" in err


class TestChainCommands:
    def test_cesaro_identity(self, files, capsys):
        assert (
            main(
                [
                    "chain-cesaro",
                    "--operator",
                    str(files["id_op"]),
                    "--density",
                    str(files["density"]),
                ]
            )
            == 0
        )
        out = json.loads(capsys.readouterr().out)
        assert out["iterations"] == 0
        assert out["residual"] == 0.0
        entries = out["average"]["entries"]
        assert entries[0] == [0.3, 0.0]
        assert entries[3] == [0.7, 0.0]

    def test_evolve_csv(self, files, capsys):
        assert (
            main(
                [
                    "chain-evolve",
                    "--operator",
                    str(files["swap"]),
                    "--density",
                    str(files["density"]),
                    "--steps",
                    "2",
                ]
            )
            == 0
        )
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "t,coordinate_index,value"
        assert len(lines) == 1 + 3 * 4
        first = dict((tuple(l.split(",")[:2]), float(l.split(",")[2])) for l in lines[1:])
        assert first[("0", "0")] == pytest.approx(0.3)
        assert first[("1", "0")] == pytest.approx(0.7)
        assert first[("2", "0")] == pytest.approx(0.3)

    def test_cesaro_failure_exit_code(self, files, capsys):
        # defective column-sum-1 matrix: averages never become stationary
        bad = files["tmp"] / "jordan.json"
        from qmarkov import from_stochastic

        qio.save_operator(bad, from_stochastic(np.array([[2.0, 1.0], [-1.0, 0.0]])))
        code = main(
            [
                "chain-cesaro",
                "--operator",
                str(bad),
                "--density",
                str(files["density"]),
                "--max-doublings",
                "20",
            ]
        )
        assert code == 3
        assert "analysis failed" in capsys.readouterr().err


class TestWalkCommand:
    def test_trace_rows_sum_to_one(self, files, capsys):
        assert (
            main(
                [
                    "walk",
                    "--graph",
                    str(files["graph"]),
                    "--operator",
                    str(files["shift"]),
                    "--density",
                    str(files["edge0"]),
                    "--steps",
                    "5",
                ]
            )
            == 0
        )
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "t,node,probability"
        totals = {}
        for line in lines[1:]:
            t, _, p = line.split(",")
            totals[t] = totals.get(t, 0.0) + float(p)
        for total in totals.values():
            assert total == pytest.approx(1.0, abs=1e-9)

    def test_limiting_distribution(self, files, capsys):
        assert (
            main(
                [
                    "walk",
                    "--graph",
                    str(files["graph"]),
                    "--operator",
                    str(files["shift"]),
                    "--density",
                    str(files["edge0"]),
                    "--limiting",
                ]
            )
            == 0
        )
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "node,probability"
        values = [float(l.split(",")[1]) for l in lines[1:]]
        np.testing.assert_allclose(values, np.full(3, 1 / 3), atol=1e-8)


class TestMeasureCommand:
    def test_csv_output(self, files, capsys):
        assert (
            main(
                [
                    "measure",
                    "--measurement",
                    str(files["zmeas"]),
                    "--density",
                    str(files["density"]),
                ]
            )
            == 0
        )
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "word,probability"
        values = dict(l.split(",") for l in lines[1:])
        assert float(values["0"]) == pytest.approx(0.3)
        assert float(values["1"]) == pytest.approx(0.7)

    def test_json_word_depth(self, files, capsys):
        assert (
            main(
                [
                    "measure",
                    "--measurement",
                    str(files["zmeas"]),
                    "--density",
                    str(files["density"]),
                    "--steps",
                    "2",
                    "--format",
                    "json",
                ]
            )
            == 0
        )
        out = json.loads(capsys.readouterr().out)
        assert out["observable"] is True
        dist = {tuple(d["word"]): d["probability"] for d in out["distribution"]}
        assert dist[("0", "0")] == pytest.approx(0.3)
        assert dist[("0", "1")] == pytest.approx(0.0)


class TestOomCommands:
    def test_prob(self, files, capsys):
        assert (
            main(["oom-prob", "--oom", str(files["oom"]), "--word", "ab", "--word", "a"]) == 0
        )
        lines = capsys.readouterr().out.strip().splitlines()
        values = dict(l.split(",") for l in lines[1:])
        assert float(values["ab"]) == pytest.approx(0.25)
        assert float(values["a"]) == pytest.approx(0.5)

    def test_prob_unknown_symbol(self, files, capsys):
        assert main(["oom-prob", "--oom", str(files["oom"]), "--word", "xy"]) == 2
        assert "unknown symbol" in capsys.readouterr().err

    def test_rank(self, files, capsys):
        assert main(["oom-rank", "--oom", str(files["oom"]), "--max-length", "3"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["rank"] == 1

    def test_lift(self, files, capsys):
        assert main(["oom-lift", "--oom", str(files["oom"])]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["states"] == [["a", 0], ["a", 1], ["b", 0], ["b", 1]]
        assert out["pi"] == [0.25, 0.25, 0.25, 0.25]

    def test_entropy(self, files, capsys):
        assert main(["oom-entropy", "--oom", str(files["oom"]), "--t-max", "3"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "t,entropy_per_symbol,entropy_increment"
        for line in lines[1:]:
            _, avg, inc = line.split(",")
            assert float(avg) == pytest.approx(1.0)
            assert float(inc) == pytest.approx(1.0)


class TestCliContract:
    def test_malformed_file_exit_two(self, files, capsys):
        bad = files["tmp"] / "broken.json"
        bad.write_text("{oops")
        code = main(
            ["chain-cesaro", "--operator", str(bad), "--density", str(files["density"])]
        )
        assert code == 2
        assert "malformed JSON" in capsys.readouterr().err

    def test_missing_file_exit_two(self, files, capsys):
        code = main(
            [
                "chain-cesaro",
                "--operator",
                str(files["tmp"] / "nope.json"),
                "--density",
                str(files["density"]),
            ]
        )
        assert code == 2

    def test_completeness_violation_cites_invariant(self, files, capsys):
        bad = files["tmp"] / "bad_kraus.json"
        bad.write_text(
            json.dumps(
                {"n": 2, "kraus": [qio.matrix_to_dict(np.diag([1.0, 0.999]).astype(complex))]}
            )
        )
        code = main(
            ["chain-cesaro", "--operator", str(bad), "--density", str(files["density"])]
        )
        assert code == 2
        assert "sum up to the identity" in capsys.readouterr().err

    def test_dimension_mismatch_exit_two(self, files, capsys):
        code = main(
            [
                "walk",
                "--graph",
                str(files["graph"]),
                "--operator",
                str(files["id_op"]),
                "--density",
                str(files["density"]),
                "--steps",
                "1",
            ]
        )
        assert code == 2
        assert "dimension mismatch" in capsys.readouterr().err

    def test_deterministic_output(self, files, capsys):
        rng = np.random.default_rng(113)
        op = from_kraus(random_kraus_family(rng, 2, 2))
        path = files["tmp"] / "chan.json"
        qio.save_operator(path, op)
        argv = [
            "chain-cesaro",
            "--operator",
            str(path),
            "--density",
            str(files["density"]),
        ]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_output_file(self, files):
        out_path = files["tmp"] / "result.json"
        assert (
            main(
                [
                    "bell",
                    "--builtin",
                    "five-state",
                    "--output",
                    str(out_path),
                ]
            )
            == 0
        )
        out = json.loads(out_path.read_text())
        assert out["satisfied"] is False

    def test_distribution_rows_sum_to_one(self, files, capsys):
        assert (
            main(
                [
                    "measure",
                    "--measurement",
                    str(files["zmeas"]),
                    "--density",
                    str(files["density"]),
                    "--steps",
                    "3",
                ]
            )
            == 0
        )
        lines = capsys.readouterr().out.strip().splitlines()
        total = sum(float(l.split(",")[1]) for l in lines[1:])
        assert total == pytest.approx(1.0, abs=1e-9)
