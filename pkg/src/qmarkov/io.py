"""JSON/text serialization for all model types.

Complex entries are stored as [re, im] pairs, row-major, so every file round
trips bit-exactly through Python floats.  Superoperator matrices are tagged
with the basis identifier "canonical-hermitian-v1" (see
:func:`qmarkov.hermitian.hermitian_basis`).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .hermitian import require_hermitian, require_markov_density
from .measurement import KrausMeasurement, MarkovMeasurement, Scale
from .oom import HiddenStateLift, ObservableOperatorModel
from .hidden import HiddenStateSpace, InformationFunction, MarkovState
from .operators import MarkovOperator, from_kraus
from .walk import DirectedGraph

__all__ = [
    "BASIS_TAG",
    "matrix_to_dict",
    "matrix_from_dict",
    "save_matrix",
    "load_matrix",
    "load_density",
    "operator_to_dict",
    "operator_from_dict",
    "save_operator",
    "load_operator",
    "load_kraus_family",
    "load_channel",
    "load_measurement",
    "save_graph",
    "load_graph",
    "oom_to_dict",
    "oom_from_dict",
    "save_oom",
    "load_oom",
    "lift_to_dict",
    "load_state_table",
]

BASIS_TAG = "canonical-hermitian-v1"


def _read_json(path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: malformed JSON ({exc})") from None


def _write_json(path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def matrix_to_dict(m: np.ndarray, kind: str | None = None) -> dict:
    """Matrix as {"rows", "cols", "entries": [[re, im], ...]} row-major."""
    m = np.asarray(m, dtype=complex)
    _expect(m.ndim == 2, f"matrix must be 2-d, got ndim {m.ndim}")
    payload: dict = {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }
    if kind is not None:
        payload["kind"] = kind
    return payload


def matrix_from_dict(d: Mapping, where: str = "matrix") -> np.ndarray:
    """Parse a matrix dict, validating any declared kind (hermitian/density)."""
    _expect(isinstance(d, Mapping), f"{where}: expected an object with rows/cols/entries")
    for key in ("rows", "cols", "entries"):
        _expect(key in d, f"{where}: missing field {key!r}")
    rows, cols = int(d["rows"]), int(d["cols"])
    entries = d["entries"]
    _expect(rows >= 1 and cols >= 1, f"{where}: rows/cols must be positive")
    _expect(
        isinstance(entries, list) and len(entries) == rows * cols,
        f"{where}: entries must hold rows*cols = {rows * cols} pairs, got {len(entries)}",
    )
    flat = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(entries):
        _expect(
            isinstance(pair, list) and len(pair) == 2,
            f"{where}: entries[{i}] must be a [re, im] pair",
        )
        flat[i] = complex(float(pair[0]), float(pair[1]))
    m = flat.reshape(rows, cols)
    kind = d.get("kind")
    if kind == "hermitian":
        require_hermitian(m, name=where)
    elif kind == "density":
        require_markov_density(m, name=where)
    elif kind is not None:
        raise ValueError(f"{where}: unknown kind {kind!r} (expected 'hermitian' or 'density')")
    return m


def save_matrix(path, m: np.ndarray, kind: str | None = None) -> None:
    _write_json(path, matrix_to_dict(m, kind=kind))


def load_matrix(path) -> np.ndarray:
    return matrix_from_dict(_read_json(path), where=str(path))


def load_density(path) -> np.ndarray:
    """Load a matrix file and insist it is a Markov density."""
    return require_markov_density(load_matrix(path), name=str(path))


def operator_to_dict(op: MarkovOperator) -> dict:
    return {
        "n": op.n,
        "basis": BASIS_TAG,
        "matrix": [[float(x) for x in row] for row in op.matrix],
    }


def operator_from_dict(d: Mapping, where: str = "operator") -> MarkovOperator:
    _expect(isinstance(d, Mapping), f"{where}: expected an object")
    for key in ("n", "basis", "matrix"):
        _expect(key in d, f"{where}: missing field {key!r}")
    _expect(
        d["basis"] == BASIS_TAG,
        f"{where}: unsupported basis {d['basis']!r} (expected {BASIS_TAG!r})",
    )
    n = int(d["n"])
    matrix = np.asarray(d["matrix"], dtype=float)
    _expect(
        matrix.shape == (n * n, n * n),
        f"{where}: matrix must be {n * n}x{n * n}, got {matrix.shape}",
    )
    return MarkovOperator(n=n, matrix=matrix)


def save_operator(path, op: MarkovOperator) -> None:
    _write_json(path, operator_to_dict(op))


def load_operator(path) -> MarkovOperator:
    return operator_from_dict(_read_json(path), where=str(path))


def load_kraus_family(path) -> list[np.ndarray]:
    d = _read_json(path)
    where = str(path)
    _expect(isinstance(d, Mapping) and "kraus" in d, f"{where}: missing field 'kraus'")
    mats = d["kraus"]
    _expect(isinstance(mats, list) and mats, f"{where}: 'kraus' must be a non-empty list")
    out = [matrix_from_dict(m, where=f"{where}: kraus[{i}]") for i, m in enumerate(mats)]
    if "n" in d:
        n = int(d["n"])
        for i, m in enumerate(out):
            _expect(m.shape == (n, n), f"{where}: kraus[{i}] has shape {m.shape}, expected ({n}, {n})")
    return out


def load_channel(path) -> MarkovOperator:
    """Load a Markov operator from either an operator file or a Kraus file."""
    d = _read_json(path)
    if isinstance(d, Mapping) and "kraus" in d:
        mats = [
            matrix_from_dict(m, where=f"{path}: kraus[{i}]") for i, m in enumerate(d["kraus"])
        ]
        return from_kraus(mats)
    return operator_from_dict(d, where=str(path))


def load_measurement(path):
    """Load a measurement file; returns a Kraus or Markov measurement."""
    d = _read_json(path)
    where = str(path)
    _expect(isinstance(d, Mapping), f"{where}: expected an object")
    _expect("scale" in d, f"{where}: missing field 'scale'")
    symbols = d["scale"]
    _expect(isinstance(symbols, list) and symbols, f"{where}: 'scale' must be a non-empty list")
    scale = Scale(tuple(symbols))
    if "kraus" in d:
        kraus = d["kraus"]
        _expect(isinstance(kraus, Mapping), f"{where}: 'kraus' must map symbols to matrices")
        mats = []
        for s in scale:
            _expect(str(s) in kraus or s in kraus, f"{where}: no Kraus matrix for symbol {s!r}")
            entry = kraus[s] if s in kraus else kraus[str(s)]
            mats.append(matrix_from_dict(entry, where=f"{where}: kraus[{s!r}]"))
        return KrausMeasurement(scale=scale, kraus=tuple(mats))
    if "operators" in d:
        ops = d["operators"]
        _expect(isinstance(ops, Mapping), f"{where}: 'operators' must map symbols to matrices")
        out = []
        for s in scale:
            _expect(str(s) in ops or s in ops, f"{where}: no operator for symbol {s!r}")
            entry = ops[s] if s in ops else ops[str(s)]
            out.append(np.asarray(entry, dtype=float))
        return MarkovMeasurement(scale=scale, operators=tuple(out))
    raise ValueError(f"{where}: measurement needs either 'kraus' or 'operators'")


def save_graph(path, graph: DirectedGraph) -> None:
    _write_json(path, {"nodes": graph.node_count, "edges": [[u, v] for u, v in graph.edges]})


def load_graph(path) -> DirectedGraph:
    """Load a graph from JSON {"nodes", "edges"} or plain "u v" lines."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        d = json.loads(stripped)
        _expect("nodes" in d and "edges" in d, f"{path}: graph JSON needs 'nodes' and 'edges'")
        edges = tuple((int(u), int(v)) for u, v in d["edges"])
        return DirectedGraph(node_count=int(d["nodes"]), edges=edges)
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: node ids must be integers, got {line!r}") from None
    _expect(bool(edges), f"{path}: graph file contains no edges")
    node_count = max(max(u, v) for u, v in edges) + 1
    return DirectedGraph(node_count=node_count, edges=tuple(edges))


def oom_to_dict(model: ObservableOperatorModel) -> dict:
    return {
        "dim": model.dim,
        "scale": list(model.scale.symbols),
        "operators": {
            str(s): [[float(x) for x in row] for row in op]
            for s, op in zip(model.scale, model.operators)
        },
        "pi": [float(x) for x in model.pi],
    }


def oom_from_dict(d: Mapping, where: str = "oom") -> ObservableOperatorModel:
    _expect(isinstance(d, Mapping), f"{where}: expected an object")
    for key in ("dim", "scale", "operators", "pi"):
        _expect(key in d, f"{where}: missing field {key!r}")
    m = int(d["dim"])
    symbols = d["scale"]
    _expect(isinstance(symbols, list) and symbols, f"{where}: 'scale' must be a non-empty list")
    scale = Scale(tuple(symbols))
    ops_field = d["operators"]
    _expect(isinstance(ops_field, Mapping), f"{where}: 'operators' must map symbols to matrices")
    ops = []
    for s in scale:
        key = s if s in ops_field else str(s)
        _expect(key in ops_field, f"{where}: no operator for symbol {s!r}")
        op = np.asarray(ops_field[key], dtype=float)
        _expect(op.shape == (m, m), f"{where}: operator for {s!r} has shape {op.shape}, expected ({m}, {m})")
        ops.append(op)
    pi = np.asarray(d["pi"], dtype=float)
    _expect(pi.shape == (m,), f"{where}: 'pi' must have length {m}")
    return ObservableOperatorModel(scale=scale, operators=tuple(ops), pi=pi)


def save_oom(path, model: ObservableOperatorModel) -> None:
    _write_json(path, oom_to_dict(model))


def load_oom(path) -> ObservableOperatorModel:
    return oom_from_dict(_read_json(path), where=str(path))


def lift_to_dict(lift: HiddenStateLift) -> dict:
    return {
        "states": [[str(sym), int(j)] for sym, j in lift.space.states],
        "scale": [str(s) for s in lift.scale],
        "operators": {
            str(s): [[float(x) for x in row] for row in op]
            for s, op in zip(lift.scale, lift.operators)
        },
        "pi": [float(x) for x in lift.pi],
    }


def load_state_table(path) -> tuple[HiddenStateSpace, dict[str, InformationFunction], MarkovState]:
    """Load {"states", "functions", "q"}: a hidden-state table with a Markov state."""
    d = _read_json(path)
    where = str(path)
    for key in ("states", "functions", "q"):
        _expect(isinstance(d, Mapping) and key in d, f"{where}: missing field {key!r}")
    space = HiddenStateSpace(states=tuple(d["states"]))
    functions: dict[str, InformationFunction] = {}
    _expect(isinstance(d["functions"], Mapping), f"{where}: 'functions' must map names to value lists")
    for name, values in d["functions"].items():
        _expect(
            isinstance(values, list) and len(values) == len(space),
            f"{where}: function {name!r} needs one value per state",
        )
        seen: list = []
        for v in values:
            if v not in seen:
                seen.append(v)
        functions[name] = InformationFunction(
            space=space, scale=Scale(tuple(seen)), values=tuple(values)
        )
    q = np.asarray(d["q"], dtype=float)
    state = MarkovState(space=space, values=q)
    return space, functions, state
