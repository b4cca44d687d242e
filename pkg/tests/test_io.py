import json

import numpy as np
import pytest

from conftest import random_hermitian, random_kraus_family
from qmarkov import (
    KrausMeasurement,
    MarkovMeasurement,
    ObservableOperatorModel,
    Scale,
    from_kraus,
    identity_operator,
)
from qmarkov import io as qio


class TestMatrixRoundTrip:
    def test_bit_exact(self, tmp_path):
        rng = np.random.default_rng(110)
        m = random_hermitian(rng, 4)
        path = tmp_path / "m.json"
        qio.save_matrix(path, m, kind="hermitian")
        loaded = qio.load_matrix(path)
        np.testing.assert_array_equal(loaded, m)

    def test_density_kind_validated(self, tmp_path):
        path = tmp_path / "bad.json"
        qio.save_matrix(path, np.eye(2), kind=None)
        payload = json.loads(path.read_text())
        payload["kind"] = "density"
        path.write_text(json.dumps(payload))
        with pytest.raises(ValueError, match="trace 1"):
            qio.load_matrix(path)

    def test_hermitian_kind_validated(self, tmp_path):
        path = tmp_path / "bad.json"
        qio.save_matrix(path, np.array([[0.0, 1.0], [0.0, 0.0]]), kind=None)
        payload = json.loads(path.read_text())
        payload["kind"] = "hermitian"
        path.write_text(json.dumps(payload))
        with pytest.raises(ValueError, match="not Hermitian"):
            qio.load_matrix(path)

    def test_entry_count_checked(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [[1.0, 0.0]]}))
        with pytest.raises(ValueError, match="entries"):
            qio.load_matrix(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ValueError, match="malformed JSON"):
            qio.load_matrix(path)


class TestOperatorRoundTrip:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(111)
        op = from_kraus(random_kraus_family(rng, 2, 2))
        path = tmp_path / "op.json"
        qio.save_operator(path, op)
        loaded = qio.load_operator(path)
        np.testing.assert_array_equal(loaded.matrix, op.matrix)
        assert loaded.n == op.n

    def test_basis_tag_checked(self, tmp_path):
        path = tmp_path / "op.json"
        qio.save_operator(path, identity_operator(2))
        payload = json.loads(path.read_text())
        payload["basis"] = "something-else"
        path.write_text(json.dumps(payload))
        with pytest.raises(ValueError, match="unsupported basis"):
            qio.load_operator(path)


class TestChannelLoading:
    def test_kraus_file(self, tmp_path):
        rng = np.random.default_rng(112)
        mats = random_kraus_family(rng, 2, 2)
        path = tmp_path / "kraus.json"
        path.write_text(
            json.dumps({"n": 2, "kraus": [qio.matrix_to_dict(m) for m in mats]})
        )
        op = qio.load_channel(path)
        np.testing.assert_allclose(op.matrix, from_kraus(mats).matrix, atol=1e-15)

    def test_incomplete_kraus_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        bad = np.diag([1.0, 0.999]).astype(complex)
        path.write_text(json.dumps({"n": 2, "kraus": [qio.matrix_to_dict(bad)]}))
        with pytest.raises(ValueError, match="sum up to the identity"):
            qio.load_channel(path)


class TestMeasurementLoading:
    def test_kraus_variant(self, tmp_path):
        path = tmp_path / "meas.json"
        payload = {
            "n": 2,
            "scale": ["0", "1"],
            "kraus": {
                "0": qio.matrix_to_dict(np.diag([1.0, 0.0]).astype(complex)),
                "1": qio.matrix_to_dict(np.diag([0.0, 1.0]).astype(complex)),
            },
        }
        path.write_text(json.dumps(payload))
        meas = qio.load_measurement(path)
        assert isinstance(meas, KrausMeasurement)
        assert meas.scale.symbols == ("0", "1")

    def test_operator_variant(self, tmp_path):
        path = tmp_path / "meas.json"
        payload = {
            "scale": ["a", "b"],
            "operators": {
                "a": (0.5 * np.eye(4)).tolist(),
                "b": (0.5 * np.eye(4)).tolist(),
            },
        }
        path.write_text(json.dumps(payload))
        meas = qio.load_measurement(path)
        assert isinstance(meas, MarkovMeasurement)
        assert meas.n == 2

    def test_missing_family(self, tmp_path):
        path = tmp_path / "meas.json"
        path.write_text(json.dumps({"scale": ["a"]}))
        with pytest.raises(ValueError, match="'kraus' or 'operators'"):
            qio.load_measurement(path)


class TestGraphLoading:
    def test_text_three_cycle(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("0 1\n1 2\n2 0\n")
        g = qio.load_graph(path)
        assert g.node_count == 3
        assert g.edges == ((0, 1), (1, 2), (2, 0))

    def test_json_graph(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps({"nodes": 4, "edges": [[0, 1], [1, 0]]}))
        g = qio.load_graph(path)
        assert g.node_count == 4
        assert g.edge_count == 2

    def test_bad_line_reported(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("0 1\n1 2 3\n")
        with pytest.raises(ValueError, match=":2:"):
            qio.load_graph(path)

    def test_round_trip(self, tmp_path):
        from qmarkov import DirectedGraph

        g = DirectedGraph(node_count=3, edges=((0, 1), (1, 2)))
        path = tmp_path / "g.json"
        qio.save_graph(path, g)
        assert qio.load_graph(path) == g


class TestOomRoundTrip:
    def test_round_trip(self, tmp_path):
        model = ObservableOperatorModel(
            scale=Scale(("a", "b")),
            operators=(np.array([[0.5, 0.5], [0.0, 0.0]]), np.array([[0.0, 0.0], [0.5, 0.5]])),
            pi=np.array([0.5, 0.5]),
        )
        path = tmp_path / "oom.json"
        qio.save_oom(path, model)
        loaded = qio.load_oom(path)
        assert loaded.scale == model.scale
        np.testing.assert_array_equal(loaded.pi, model.pi)
        for a, b in zip(loaded.operators, model.operators):
            np.testing.assert_array_equal(a, b)

    def test_shape_mismatch_reported(self, tmp_path):
        path = tmp_path / "oom.json"
        path.write_text(
            json.dumps({"dim": 2, "scale": ["a"], "operators": {"a": [[1.0]]}, "pi": [1.0, 0.0]})
        )
        with pytest.raises(ValueError, match="shape"):
            qio.load_oom(path)


class TestStateTable:
    def test_load(self, tmp_path):
        path = tmp_path / "table.json"
        payload = {
            "states": ["w1", "w2", "w3", "w4", "w5"],
            "functions": {
                "X": [-1, 1, -1, -1, -1],
                "Y": [1, 1, -1, 1, -1],
                "Z": [1, 1, 1, -1, -1],
            },
            "q": [-1 / 3, 1 / 3, 1 / 3, 1 / 3, 1 / 3],
        }
        path.write_text(json.dumps(payload))
        space, functions, state = qio.load_state_table(path)
        assert len(space) == 5
        assert set(functions) == {"X", "Y", "Z"}
        assert functions["X"].values == (-1, 1, -1, -1, -1)
        assert state.values.sum() == pytest.approx(1.0, abs=1e-12)

    def test_bad_state_sum(self, tmp_path):
        path = tmp_path / "table.json"
        path.write_text(
            json.dumps({"states": ["a"], "functions": {"X": [1]}, "q": [0.5]})
        )
        with pytest.raises(ValueError, match="sum to 1"):
            qio.load_state_table(path)
