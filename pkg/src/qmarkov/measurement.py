"""Quantum (Kraus) and general Markov measurements.

A Kraus measurement attaches one matrix M_a per scale symbol with
sum_a M_a* M_a = I; outcome values are tr(M_a Q M_a*).  A Markov measurement
attaches one unconstrained linear operator per symbol whose sum is trace
preserving; outcome values are tr(mu_a(Q)).  Outcome values of a Markov
density may be negative, and "observable" means exactly that they are not.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Hashable, Iterator, Mapping, Sequence

import numpy as np

from .hermitian import coords, require_hermitian, require_markov_density
from .operators import (
    MarkovOperator,
    TRACE_PRESERVING_TOL,
    kraus_superop,
    trace_preservation_deviation,
)

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "Scale",
    "KrausMeasurement",
    "MarkovMeasurement",
    "OutcomeDistribution",
    "enumeration_cap",
    "iter_words",
    "outcome_distribution",
    "is_observable",
    "posterior",
    "as_markov_measurement",
    "word_operator",
    "word_distribution",
    "is_t_observable",
]

DEFAULT_ENUMERATION_CAP = 10**6
POSTERIOR_THRESHOLD = 1e-12
OBSERVABILITY_TOL = 1e-10


def enumeration_cap(override: int | None = None) -> int:
    """Word-enumeration cap: explicit override, else QMARKOV_ENUM_CAP, else 10^6."""
    if override is not None:
        return int(override)
    env = os.environ.get("QMARKOV_ENUM_CAP")
    return int(env) if env else DEFAULT_ENUMERATION_CAP


@dataclass(frozen=True)
class Scale:
    """Ordered finite set of distinct measurement outcomes."""

    symbols: tuple[Hashable, ...]

    def __post_init__(self) -> None:
        symbols = tuple(self.symbols)
        if not symbols:
            raise ValueError("scale must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"scale symbols must be distinct, got {symbols!r}")
        object.__setattr__(self, "symbols", symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol) -> bool:
        return symbol in self.symbols

    def index(self, symbol) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValueError(f"unknown symbol {symbol!r}, scale is {self.symbols!r}") from None


def iter_words(scale: Scale, length: int) -> Iterator[tuple]:
    """All words of the given length in lexicographic (product) order."""
    return itertools.product(scale.symbols, repeat=length)


def _check_word_count(scale: Scale, length: int, cap: int | None) -> int:
    count = len(scale) ** length
    limit = enumeration_cap(cap)
    if count > limit:
        raise ValueError(
            f"word enumeration cap exceeded: |scale|^{length} = {count} > {limit} "
            f"(raise QMARKOV_ENUM_CAP to override)"
        )
    return count


@dataclass(frozen=True, eq=False)
class KrausMeasurement:
    """Quantum measurement: one Kraus matrix per symbol, sum_a M_a* M_a = I."""

    scale: Scale
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        mats = tuple(np.array(m, dtype=complex) for m in self.kraus)
        if len(mats) != len(self.scale):
            raise ValueError(
                f"need one Kraus matrix per symbol: {len(mats)} matrices, "
                f"{len(self.scale)} symbols"
            )
        n = mats[0].shape[0]
        for sym, m in zip(self.scale, mats):
            if m.ndim != 2 or m.shape != (n, n):
                raise ValueError(f"Kraus matrix for {sym!r} has shape {m.shape}, expected ({n}, {n})")
        gram = sum(m.conj().T @ m for m in mats)
        dev = float(np.linalg.norm(gram - np.eye(n)))
        if dev > TRACE_PRESERVING_TOL:
            raise ValueError(
                f"Kraus matrices do not sum up to the identity (POVM completeness violated): "
                f"||sum M_a* M_a - I|| = {dev:.3e}"
            )
        for m in mats:
            m.setflags(write=False)
        object.__setattr__(self, "kraus", mats)

    @classmethod
    def from_mapping(cls, kraus: Mapping[Hashable, np.ndarray]) -> "KrausMeasurement":
        scale = Scale(tuple(kraus.keys()))
        return cls(scale=scale, kraus=tuple(kraus[s] for s in scale))

    @property
    def n(self) -> int:
        return self.kraus[0].shape[0]

    def matrix(self, symbol) -> np.ndarray:
        return self.kraus[self.scale.index(symbol)]


@dataclass(frozen=True, eq=False)
class MarkovMeasurement:
    """One linear operator per symbol; the symbol sum must be trace preserving.

    Per-symbol operators are stored as raw n^2 x n^2 coordinate matrices and
    are individually unconstrained (they are generally not Markov operators).
    """

    scale: Scale
    operators: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ops = tuple(np.array(m, dtype=float) for m in self.operators)
        if len(ops) != len(self.scale):
            raise ValueError(
                f"need one operator per symbol: {len(ops)} operators, {len(self.scale)} symbols"
            )
        shape = ops[0].shape
        m = shape[0]
        n = int(round(np.sqrt(m)))
        if ops[0].ndim != 2 or shape[0] != shape[1] or n * n != m:
            raise ValueError(f"operators must be square of size n^2, got {shape}")
        for sym, op in zip(self.scale, ops):
            if op.shape != shape:
                raise ValueError(f"operator for {sym!r} has shape {op.shape}, expected {shape}")
            if not np.all(np.isfinite(op)):
                raise ValueError(f"operator for {sym!r} contains non-finite entries")
        dev = trace_preservation_deviation(sum(ops))
        if dev > TRACE_PRESERVING_TOL:
            raise ValueError(
                f"symbol sum is not a Markov operator: basis-trace deviation {dev:.3e}"
            )
        for op in ops:
            op.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @classmethod
    def from_mapping(cls, operators: Mapping[Hashable, np.ndarray]) -> "MarkovMeasurement":
        scale = Scale(tuple(operators.keys()))
        return cls(scale=scale, operators=tuple(operators[s] for s in scale))

    @property
    def n(self) -> int:
        return int(round(np.sqrt(self.operators[0].shape[0])))

    @property
    def sum_operator(self) -> MarkovOperator:
        """The Markov operator mu_X = sum_a mu_a."""
        return MarkovOperator(n=self.n, matrix=sum(self.operators))

    def operator(self, symbol) -> np.ndarray:
        return self.operators[self.scale.index(symbol)]


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Outcome values p(a) per symbol; they sum to 1 but may be negative."""

    scale: Scale
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.shape != (len(self.scale),):
            raise ValueError(
                f"need one value per symbol: {values.shape} values, {len(self.scale)} symbols"
            )
        total = float(values.sum())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"outcome values must sum to 1, got {total!r}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def value(self, symbol) -> float:
        return float(self.values[self.scale.index(symbol)])

    def as_dict(self) -> dict:
        return {s: float(v) for s, v in zip(self.scale, self.values)}

    def min_value(self) -> float:
        return float(self.values.min())

    def is_observable(self, tol: float = OBSERVABILITY_TOL) -> bool:
        return self.min_value() >= -tol


def _kraus_outcome_values(meas: KrausMeasurement, density: np.ndarray) -> np.ndarray:
    return np.array(
        [np.einsum("ij,jk,ik->", m, density, m.conj()).real for m in meas.kraus]
    )


def _markov_outcome_values(meas: MarkovMeasurement, density: np.ndarray) -> np.ndarray:
    n = meas.n
    c = coords(density)
    return np.array([float((op @ c)[:n].sum()) for op in meas.operators])


def outcome_distribution(meas, density: np.ndarray) -> OutcomeDistribution:
    """Distribution of single-outcome values for a Markov density."""
    density = require_markov_density(density)
    if density.shape[0] != meas.n:
        raise ValueError(f"dimension mismatch: measurement on H_{meas.n}, density {density.shape}")
    if isinstance(meas, KrausMeasurement):
        values = _kraus_outcome_values(meas, density)
    elif isinstance(meas, MarkovMeasurement):
        values = _markov_outcome_values(meas, density)
    else:
        raise TypeError(f"expected a measurement, got {type(meas).__name__}")
    return OutcomeDistribution(scale=meas.scale, values=values)


def is_observable(meas, density: np.ndarray, tol: float = OBSERVABILITY_TOL) -> bool:
    """True when every outcome value is >= -tol."""
    return outcome_distribution(meas, density).is_observable(tol)


def posterior(meas: KrausMeasurement, density: np.ndarray, symbol) -> tuple[float, np.ndarray]:
    """Outcome probability and posterior density (p, M_a Q M_a*/p) for one outcome.

    Defined only when the outcome probability exceeds the 1e-12 threshold;
    at (near-)zero or negative probability the posterior is not a density
    and an error is raised.
    """
    density = require_markov_density(density)
    m = meas.matrix(symbol)
    raw = m @ density @ m.conj().T
    p = float(np.trace(raw).real)
    if p <= POSTERIOR_THRESHOLD:
        raise ValueError(
            f"posterior undefined: outcome {symbol!r} has probability {p!r} <= {POSTERIOR_THRESHOLD}"
        )
    post = raw / p
    return p, (post + post.conj().T) / 2.0


def as_markov_measurement(meas: KrausMeasurement) -> MarkovMeasurement:
    """Per-symbol conjugation operators Q -> M_a Q M_a* as a Markov measurement."""
    ops = tuple(kraus_superop(m[None, :, :]) for m in meas.kraus)
    return MarkovMeasurement(scale=meas.scale, operators=ops)


def _as_markov(meas) -> MarkovMeasurement:
    if isinstance(meas, KrausMeasurement):
        return as_markov_measurement(meas)
    if isinstance(meas, MarkovMeasurement):
        return meas
    raise TypeError(f"expected a measurement, got {type(meas).__name__}")


def word_operator(meas, word: Sequence) -> np.ndarray:
    """Coordinate matrix of mu_w = mu_{a_t} ... mu_{a_1} (chronological order).

    The first symbol of the word acts first; the empty word gives the
    identity.  The result is a plain superoperator matrix: word operators
    are generally not trace preserving.
    """
    meas = _as_markov(meas)
    m = meas.operators[0].shape[0]
    out = np.eye(m)
    for symbol in word:
        out = meas.operator(symbol) @ out
    return out


def _word_values(meas: MarkovMeasurement, density: np.ndarray, t: int, cap: int | None) -> np.ndarray:
    """Values tr(mu_w(Q)) for all words of length t, in product order."""
    if t < 0:
        raise ValueError("word length must be nonnegative")
    density = require_markov_density(density)
    if density.shape[0] != meas.n:
        raise ValueError(f"dimension mismatch: measurement on H_{meas.n}, density {density.shape}")
    _check_word_count(meas.scale, t, cap)
    n = meas.n
    states = coords(density)[None, :]
    for _ in range(t):
        states = np.stack([states @ op.T for op in meas.operators], axis=1)
        states = states.reshape(-1, n * n)
    return states[:, :n].sum(axis=1)


def word_distribution(meas, density: np.ndarray, t: int, cap: int | None = None) -> dict[tuple, float]:
    """Map from each word of length t to tr(mu_w(Q)); values sum to 1."""
    meas = _as_markov(meas)
    values = _word_values(meas, density, t, cap)
    return {word: float(v) for word, v in zip(iter_words(meas.scale, t), values)}


def is_t_observable(
    meas,
    density: np.ndarray,
    t: int,
    tol: float = OBSERVABILITY_TOL,
    cap: int | None = None,
) -> bool:
    """True when every length-t word value is >= -tol (always true at t = 0)."""
    meas = _as_markov(meas)
    values = _word_values(meas, density, t, cap)
    return bool(values.min() >= -tol)
