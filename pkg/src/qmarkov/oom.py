"""Observable operator models: word probabilities, dimension, lifting, entropy.

An OOM is a family of real m x m matrices {M_a} whose sum has column sums 1,
together with a Markov state pi (entries may be negative).  Word
probabilities are the component sums of M_{a_t} ... M_{a_1} pi.  The model
is equivalent to a diagonal Markov measurement, and lifts to an explicit
hidden-state system on |scale| * m states that reproduces every word
probability through an information function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterator, Mapping, Sequence

import numpy as np

from .hidden import HiddenStateSpace, InformationFunction
from .measurement import (
    MarkovMeasurement,
    OutcomeDistribution,
    Scale,
    enumeration_cap,
    iter_words,
)
from .operators import diagonal_superop

__all__ = [
    "ObservableOperatorModel",
    "PredictionMatrix",
    "HiddenStateLift",
    "OomValidationReport",
    "word_probability",
    "validate",
    "conditional",
    "prediction_matrix",
    "hmm_to_oom",
    "lift_hidden_states",
    "step_distribution",
    "entropy_rate",
    "to_markov_measurement",
]

SUM_TOL = 1e-10
CONDITIONING_THRESHOLD = 1e-12
RANK_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ObservableOperatorModel:
    """Operators {M_a} with column-sum-1 total and a Markov state pi."""

    scale: Scale
    operators: tuple[np.ndarray, ...]
    pi: np.ndarray

    def __post_init__(self) -> None:
        ops = tuple(np.array(m, dtype=float) for m in self.operators)
        if len(ops) != len(self.scale):
            raise ValueError(
                f"need one operator per symbol: {len(ops)} operators, {len(self.scale)} symbols"
            )
        m = ops[0].shape[0]
        for sym, op in zip(self.scale, ops):
            if op.ndim != 2 or op.shape != (m, m):
                raise ValueError(f"operator for {sym!r} has shape {op.shape}, expected ({m}, {m})")
            if not np.all(np.isfinite(op)):
                raise ValueError(f"operator for {sym!r} contains non-finite entries")
        total = sum(ops)
        col_dev = float(np.max(np.abs(total.sum(axis=0) - 1.0)))
        if col_dev > SUM_TOL:
            raise ValueError(
                f"operator sum must be a Markov matrix (column sums 1), deviation {col_dev:.3e}"
            )
        pi = np.array(self.pi, dtype=float)
        if pi.shape != (m,):
            raise ValueError(f"pi must have shape ({m},), got {pi.shape}")
        pi_dev = abs(float(pi.sum()) - 1.0)
        if pi_dev > SUM_TOL:
            raise ValueError(f"pi must sum to 1, got sum deviation {pi_dev:.3e}")
        for op in ops:
            op.setflags(write=False)
        pi.setflags(write=False)
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "pi", pi)

    @classmethod
    def from_mapping(cls, operators: Mapping[Hashable, np.ndarray], pi) -> "ObservableOperatorModel":
        scale = Scale(tuple(operators.keys()))
        return cls(scale=scale, operators=tuple(operators[s] for s in scale), pi=pi)

    @property
    def dim(self) -> int:
        return self.pi.shape[0]

    @property
    def transition_sum(self) -> np.ndarray:
        """The Markov matrix M = sum_a M_a."""
        return sum(self.operators)

    def operator(self, symbol) -> np.ndarray:
        return self.operators[self.scale.index(symbol)]


@dataclass(frozen=True, eq=False)
class PredictionMatrix:
    """Truncated matrix of conditionals p(v|w); columns exist only where p(w) > threshold."""

    row_words: tuple[tuple, ...]
    col_words: tuple[tuple, ...]
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class OomValidationReport:
    """Structural sums plus the minimum word probability up to a horizon."""

    horizon: int
    transition_column_error: float
    pi_sum_error: float
    min_probability: float
    min_word: tuple
    negative_words: int

    @property
    def observable(self) -> bool:
        return self.negative_words == 0


@dataclass(frozen=True, eq=False)
class HiddenStateLift:
    """Block lift of an OOM to |scale| * m hidden states.

    The hidden states are the pairs (a, j) in symbol-major order; the
    information function reads off the symbol.  The lifted operators and
    start state reproduce the original word probabilities exactly.
    """

    space: HiddenStateSpace
    info: InformationFunction
    scale: Scale
    base_dim: int
    operators: tuple[np.ndarray, ...]
    pi: np.ndarray

    def operator(self, symbol) -> np.ndarray:
        return self.operators[self.scale.index(symbol)]

    @property
    def transition_sum(self) -> np.ndarray:
        return sum(self.operators)


def word_probability(model: ObservableOperatorModel, word: Sequence) -> float:
    """p(w) as the component sum of M_{a_t} ... M_{a_1} pi; the empty word has p = 1."""
    x = model.pi
    for symbol in word:
        x = model.operator(symbol) @ x
    return float(x.sum())


def _check_total(count: int, cap: int | None) -> None:
    limit = enumeration_cap(cap)
    if count > limit:
        raise ValueError(
            f"word enumeration cap exceeded: {count} words > {limit} "
            f"(raise QMARKOV_ENUM_CAP to override)"
        )


def _prefix_levels(model: ObservableOperatorModel, depth: int) -> Iterator[np.ndarray]:
    """States M_w pi for all words of length 1..depth, level by level, product order."""
    states = model.pi[None, :]
    for _ in range(depth):
        states = np.stack([states @ op.T for op in model.operators], axis=1)
        states = states.reshape(-1, model.dim)
        yield states


def _decode_word(model: ObservableOperatorModel, index: int, length: int) -> tuple:
    symbols = model.scale.symbols
    base = len(symbols)
    out = []
    for _ in range(length):
        out.append(symbols[index % base])
        index //= base
    return tuple(reversed(out))


def validate(
    model: ObservableOperatorModel,
    horizon: int,
    tol: float = CONDITIONING_THRESHOLD,
    cap: int | None = None,
) -> OomValidationReport:
    """Scan structural sums and all word probabilities up to the horizon.

    Negative word probabilities (below -tol) mean the model is not
    observable at that depth; the report flags them without raising.
    """
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    _check_total(horizon * len(model.scale) ** horizon, cap)
    col_err = float(np.max(np.abs(model.transition_sum.sum(axis=0) - 1.0)))
    pi_err = abs(float(model.pi.sum()) - 1.0)
    min_p = 1.0
    min_word: tuple = ()
    negatives = 0
    for length, states in enumerate(_prefix_levels(model, horizon), start=1):
        values = states.sum(axis=1)
        negatives += int(np.count_nonzero(values < -tol))
        idx = int(np.argmin(values))
        if values[idx] < min_p:
            min_p = float(values[idx])
            min_word = _decode_word(model, idx, length)
    return OomValidationReport(
        horizon=horizon,
        transition_column_error=col_err,
        pi_sum_error=pi_err,
        min_probability=min_p,
        min_word=min_word,
        negative_words=negatives,
    )


def conditional(model: ObservableOperatorModel, future: Sequence, past: Sequence) -> float:
    """Prediction probability p(future | past) = p(past + future) / p(past)."""
    p_past = word_probability(model, past)
    if p_past <= CONDITIONING_THRESHOLD:
        raise ValueError(
            f"cannot condition on a word with probability {p_past!r} <= {CONDITIONING_THRESHOLD}"
        )
    return word_probability(model, tuple(past) + tuple(future)) / p_past


def prediction_matrix(
    model: ObservableOperatorModel,
    max_length: int,
    rank_tol: float = RANK_TOL,
    cap: int | None = None,
) -> tuple[PredictionMatrix, int]:
    """Truncated prediction matrix over words of length <= max_length, with its rank.

    The numerical rank counts singular values above rank_tol times the
    largest one; for an m-dimensional model it never exceeds m.
    """
    if max_length < 0:
        raise ValueError("max_length must be nonnegative")
    base = len(model.scale)
    total = (base ** (max_length + 1) - 1) // (base - 1) if base > 1 else max_length + 1
    _check_total(total, cap)

    words: list[tuple] = [()]
    for length in range(1, max_length + 1):
        words.extend(iter_words(model.scale, length))

    m = model.dim
    # x_w = M_w pi (append symbols), y_v = M_w^T-chain applied to the ones
    # vector (prepend symbols); then p(wv) = y_v . x_w.
    xs = np.empty((total, m))
    ys = np.empty((total, m))
    xs[0] = model.pi
    ys[0] = np.ones(m)
    level_start = 0
    level_count = 1
    offset = 1
    for _ in range(max_length):
        x_level = xs[level_start : level_start + level_count]
        y_level = ys[level_start : level_start + level_count]
        new_count = level_count * base
        x_children = np.stack([x_level @ op.T for op in model.operators], axis=1)
        xs[offset : offset + new_count] = x_children.reshape(new_count, m)
        y_children = np.stack([y_level @ op for op in model.operators], axis=0)
        ys[offset : offset + new_count] = y_children.reshape(new_count, m)
        level_start = offset
        level_count = new_count
        offset += new_count

    joint = ys @ xs.T
    p_w = xs.sum(axis=1)
    defined = p_w > CONDITIONING_THRESHOLD
    values = joint[:, defined] / p_w[defined]
    if values.size == 0:
        rank = 0
    else:
        singular = np.linalg.svd(values, compute_uv=False)
        top = float(singular[0]) if singular.size else 0.0
        rank = int(np.count_nonzero(singular > rank_tol * top)) if top > 0 else 0
    values = np.array(values)
    values.setflags(write=False)
    matrix = PredictionMatrix(
        row_words=tuple(words),
        col_words=tuple(w for w, ok in zip(words, defined) if ok),
        values=values,
    )
    return matrix, rank


def hmm_to_oom(
    transition: np.ndarray,
    emissions: Mapping[Hashable, np.ndarray],
    initial: np.ndarray,
) -> ObservableOperatorModel:
    """Classical hidden Markov model as an OOM with M_a = T diag(O(a|.)).

    ``transition`` is column-stochastic (column j holds the distribution of
    the next state given state j), ``emissions`` maps each symbol to its
    per-state probabilities, and ``initial`` is a classical distribution.
    """
    t = np.asarray(transition, dtype=float)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError(f"transition must be square, got shape {t.shape}")
    m = t.shape[0]
    if np.any(t < -SUM_TOL):
        raise ValueError("transition matrix must be entrywise nonnegative")
    col_dev = float(np.max(np.abs(t.sum(axis=0) - 1.0)))
    if col_dev > SUM_TOL:
        raise ValueError(f"transition must be column-stochastic, deviation {col_dev:.3e}")
    scale = Scale(tuple(emissions.keys()))
    emission_rows = np.array([np.asarray(emissions[s], dtype=float) for s in scale])
    if emission_rows.shape != (len(scale), m):
        raise ValueError(
            f"emissions must give one probability per symbol and state, got {emission_rows.shape}"
        )
    if np.any(emission_rows < -SUM_TOL):
        raise ValueError("emission probabilities must be nonnegative")
    state_dev = float(np.max(np.abs(emission_rows.sum(axis=0) - 1.0)))
    if state_dev > SUM_TOL:
        raise ValueError(f"emission probabilities must sum to 1 per state, deviation {state_dev:.3e}")
    pi = np.asarray(initial, dtype=float)
    if pi.shape != (m,):
        raise ValueError(f"initial distribution must have shape ({m},), got {pi.shape}")
    if np.any(pi < -SUM_TOL):
        raise ValueError("initial distribution must be nonnegative")
    if abs(float(pi.sum()) - 1.0) > SUM_TOL:
        raise ValueError("initial distribution must sum to 1")
    ops = tuple(t @ np.diag(emission_rows[i]) for i in range(len(scale)))
    return ObservableOperatorModel(scale=scale, operators=ops, pi=pi)


def lift_hidden_states(model: ObservableOperatorModel) -> HiddenStateLift:
    """Lift to hidden states (a, j): block operators and spread-out start state.

    The lifted operator for symbol a has block rows indexed by symbols, with
    M_a in every column block of row a and zeros elsewhere; the start state
    is pi(j)/|scale| at every (a, j).  Word probabilities are preserved.
    """
    base = len(model.scale)
    m = model.dim
    labels = tuple((sym, j) for sym in model.scale for j in range(m))
    space = HiddenStateSpace(states=labels)
    info = InformationFunction(
        space=space,
        scale=model.scale,
        values=tuple(sym for sym, _ in labels),
    )
    ones_row = np.ones((1, base))
    lifted = []
    for i in range(base):
        selector = np.zeros((base, 1))
        selector[i, 0] = 1.0
        lifted.append(np.kron(selector @ ones_row, model.operators[i]))
    pi_bar = np.tile(model.pi, base) / base
    return HiddenStateLift(
        space=space,
        info=info,
        scale=model.scale,
        base_dim=m,
        operators=tuple(lifted),
        pi=pi_bar,
    )


def step_distribution(lift: HiddenStateLift, t: int) -> OutcomeDistribution:
    """Distribution of the symbol read off at time t from the lifted state."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    vec = lift.pi
    total = lift.transition_sum
    for _ in range(t):
        vec = total @ vec
    sums = vec.reshape(len(lift.scale), lift.base_dim).sum(axis=1)
    return OutcomeDistribution(scale=lift.scale, values=sums)


def entropy_rate(
    model: ObservableOperatorModel,
    t_max: int,
    tol: float = CONDITIONING_THRESHOLD,
    cap: int | None = None,
) -> list[tuple[int, float, float]]:
    """Block entropies in bits: rows (t, H(t)/t, H(t) - H(t-1)) for t = 1..t_max.

    Requires all word probabilities down to -tol (an observable process);
    values in [-tol, 0] are clipped to 0 and 0 log 0 counts as 0.
    """
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    _check_total(len(model.scale) ** t_max, cap)
    rows: list[tuple[int, float, float]] = []
    h_prev = 0.0
    for t, states in enumerate(_prefix_levels(model, t_max), start=1):
        values = states.sum(axis=1)
        low = float(values.min())
        if low < -tol:
            raise ValueError(
                f"negative word probability {low!r} at length {t}; entropy undefined"
            )
        p = np.clip(values, 0.0, None)
        p = p[p > 0.0]
        h = float(-(p * np.log2(p)).sum())
        rows.append((t, h / t, h - h_prev))
        h_prev = h
    return rows


def to_markov_measurement(model: ObservableOperatorModel) -> MarkovMeasurement:
    """The OOM as a Markov measurement acting on diagonal matrices.

    Each symbol operator acts as diag(x) -> diag(M_a x) with off-diagonal
    coordinates annihilated; at the density diag(pi) the word statistics of
    the measurement coincide with the model's word probabilities.
    """
    ops = tuple(diagonal_superop(op) for op in model.operators)
    return MarkovMeasurement(scale=model.scale, operators=ops)
