"""Finite hidden-state systems: information functions, joint observability, Bell.

A Markov state is a real vector over the hidden states summing to 1, with
components allowed to be negative.  An information function maps hidden
states to a finite scale; it is statistically observable in a state when all
aggregated outcome values are nonnegative.  The Bell inequality
|E(XY) - E(YZ)| <= 1 - E(XZ) holds whenever X, Y, Z are jointly observable,
and can fail when they are only pairwise observable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, NamedTuple, Sequence

import numpy as np

from .measurement import KrausMeasurement, OutcomeDistribution, Scale

__all__ = [
    "HiddenStateSpace",
    "InformationFunction",
    "MarkovState",
    "RawMoment",
    "BellCheckResult",
    "FiveStateExample",
    "observe_distribution",
    "expectation",
    "raw_moment",
    "joint",
    "is_jointly_observable",
    "product_expectation",
    "bell_check",
    "feynman_state",
    "five_state_example",
    "diagonal_povm",
]

OBSERVABILITY_TOL = 1e-10
BELL_TOL = 1e-12


@dataclass(frozen=True)
class HiddenStateSpace:
    """Ordered finite set of distinct hidden-state labels."""

    states: tuple[Hashable, ...]

    def __post_init__(self) -> None:
        states = tuple(self.states)
        if not states:
            raise ValueError("hidden-state space must be non-empty")
        if len(set(states)) != len(states):
            raise ValueError("hidden-state labels must be distinct")
        object.__setattr__(self, "states", states)

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class InformationFunction:
    """Function from hidden states to a finite scale, one value per state."""

    space: HiddenStateSpace
    scale: Scale
    values: tuple[Hashable, ...]

    def __post_init__(self) -> None:
        values = tuple(self.values)
        if len(values) != len(self.space):
            raise ValueError(
                f"need one value per hidden state: {len(values)} values, "
                f"{len(self.space)} states"
            )
        for v in values:
            if v not in self.scale:
                raise ValueError(f"value {v!r} is not in the scale {self.scale.symbols!r}")
        object.__setattr__(self, "values", values)

    def __call__(self, state) -> Hashable:
        return self.values[self.space.states.index(state)]


@dataclass(frozen=True, eq=False)
class MarkovState:
    """Real vector over the hidden states summing to 1 (components may be negative)."""

    space: HiddenStateSpace
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.shape != (len(self.space),):
            raise ValueError(
                f"need one component per hidden state: {values.shape}, "
                f"{len(self.space)} states"
            )
        total = float(values.sum())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"Markov state components must sum to 1, got {total!r}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


class RawMoment(NamedTuple):
    """Algebraic moment sum X(w) q_w with an honesty flag.

    ``observable`` is False when the value is not a statistical expectation
    because the function is not observable in the state.
    """

    value: float
    observable: bool


@dataclass(frozen=True)
class BellCheckResult:
    """Bell inequality evaluation |E(XY) - E(YZ)| <= 1 - E(XZ)."""

    lhs: float
    rhs: float
    satisfied: bool
    pairwise_observable: bool
    jointly_observable: bool
    e_xy: float
    e_yz: float
    e_xz: float


class FiveStateExample(NamedTuple):
    space: HiddenStateSpace
    x: InformationFunction
    y: InformationFunction
    z: InformationFunction
    state: MarkovState


def _require_same_space(funcs: Sequence[InformationFunction], state: MarkovState | None = None) -> None:
    space = funcs[0].space
    for f in funcs[1:]:
        if f.space != space:
            raise ValueError("information functions live on different hidden-state spaces")
    if state is not None and state.space != space:
        raise ValueError("Markov state lives on a different hidden-state space")


def observe_distribution(func: InformationFunction, state: MarkovState) -> OutcomeDistribution:
    """Aggregate the state components by outcome: p(a) = sum over X(w) = a of q_w."""
    _require_same_space([func], state)
    values = np.zeros(len(func.scale))
    for component, symbol in zip(state.values, func.values):
        values[func.scale.index(symbol)] += component
    return OutcomeDistribution(scale=func.scale, values=values)


def _numeric_values(func: InformationFunction, name: str) -> np.ndarray:
    out = []
    for v in func.values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValueError(f"{name} must be real-valued, got value {v!r}")
        out.append(float(v))
    return np.array(out)


def expectation(func: InformationFunction, state: MarkovState, tol: float = OBSERVABILITY_TOL) -> float:
    """Expectation of a real-valued observable information function.

    Defined only under observability; otherwise the moment has no
    statistical meaning and an error is raised (use :func:`raw_moment` for
    the algebraic value).
    """
    values = _numeric_values(func, "information function")
    if not observe_distribution(func, state).is_observable(tol):
        raise ValueError(
            "information function is not statistically observable in this state; "
            "its expectation is undefined"
        )
    return float(values @ state.values)


def raw_moment(func: InformationFunction, state: MarkovState, tol: float = OBSERVABILITY_TOL) -> RawMoment:
    """Algebraic moment sum X(w) q_w, flagged by observability."""
    values = _numeric_values(func, "information function")
    observable = observe_distribution(func, state).is_observable(tol)
    return RawMoment(value=float(values @ state.values), observable=observable)


def joint(funcs: Sequence[InformationFunction]) -> InformationFunction:
    """Composite information function with the full product scale."""
    funcs = list(funcs)
    if not funcs:
        raise ValueError("joint needs at least one information function")
    _require_same_space(funcs)
    scale = Scale(tuple(itertools.product(*(f.scale.symbols for f in funcs))))
    values = tuple(zip(*(f.values for f in funcs)))
    return InformationFunction(space=funcs[0].space, scale=scale, values=values)


def is_jointly_observable(
    funcs: Sequence[InformationFunction],
    state: MarkovState,
    tol: float = OBSERVABILITY_TOL,
) -> bool:
    """True when the composite function is observable in the state."""
    _require_same_space(list(funcs), state)
    return observe_distribution(joint(funcs), state).is_observable(tol)


def product_expectation(
    x: InformationFunction,
    y: InformationFunction,
    state: MarkovState,
    tol: float = OBSERVABILITY_TOL,
) -> float:
    """E(XY) = sum X(w) Y(w) q_w for a jointly observable real-valued pair."""
    xv = _numeric_values(x, "first information function")
    yv = _numeric_values(y, "second information function")
    if not is_jointly_observable([x, y], state, tol):
        raise ValueError("pair is not jointly observable; the product expectation is undefined")
    return float((xv * yv) @ state.values)


def _pm_one_values(func: InformationFunction, name: str) -> np.ndarray:
    out = []
    for v in func.values:
        if isinstance(v, bool):
            raise ValueError(f"{name} must have scale {{-1, +1}}, got value {v!r}")
        if isinstance(v, (int, float)) and v in (-1, 1):
            out.append(float(v))
        elif isinstance(v, str) and v in ("-1", "+1"):
            out.append(float(v))
        else:
            raise ValueError(f"{name} must have scale {{-1, +1}}, got value {v!r}")
    return np.array(out)


def bell_check(
    x: InformationFunction,
    y: InformationFunction,
    z: InformationFunction,
    state: MarkovState,
    tol: float = BELL_TOL,
) -> BellCheckResult:
    """Evaluate |E(XY) - E(YZ)| <= 1 - E(XZ) for three +-1-valued functions.

    All three pairs must be jointly observable (otherwise the expectations
    are undefined and an error is raised).  Joint observability of the triple
    guarantees the inequality; pairwise-only observability can violate it.
    """
    _require_same_space([x, y, z], state)
    xv = _pm_one_values(x, "X")
    yv = _pm_one_values(y, "Y")
    zv = _pm_one_values(z, "Z")
    for name, (f, g) in (("X,Y", (x, y)), ("Y,Z", (y, z)), ("X,Z", (x, z))):
        if not is_jointly_observable([f, g], state):
            raise ValueError(f"pair ({name}) is not jointly observable; Bell expectations undefined")
    q = state.values
    e_xy = float((xv * yv) @ q)
    e_yz = float((yv * zv) @ q)
    e_xz = float((xv * zv) @ q)
    lhs = abs(e_xy - e_yz)
    rhs = 1.0 - e_xz
    return BellCheckResult(
        lhs=lhs,
        rhs=rhs,
        satisfied=bool(lhs <= rhs + tol),
        pairwise_observable=True,
        jointly_observable=is_jointly_observable([x, y, z], state),
        e_xy=e_xy,
        e_yz=e_yz,
        e_xz=e_xz,
    )


FEYNMAN_LABELS = ("++", "+-", "-+", "--")


def feynman_state(sx: float, sy: float, sz: float) -> MarkovState:
    """Spin-average table for a two-spin system as a four-component Markov state.

    Components, in label order ++, +-, -+, --:

        (1 + sz + sx + sy) / 4
        (1 + sz - sx - sy) / 4
        (1 + sz + sx - sy) / 4
        (1 - sz - sx - sy) / 4

    The components sum to 1 + (sz - sy)/2, so the construction is valid only
    when sz equals sy; otherwise the computed sum is reported in the error.
    """
    sx, sy, sz = float(sx), float(sy), float(sz)
    q = np.array(
        [
            (1.0 + sz + sx + sy) / 4.0,
            (1.0 + sz - sx - sy) / 4.0,
            (1.0 + sz + sx - sy) / 4.0,
            (1.0 - sz - sx - sy) / 4.0,
        ]
    )
    total = float(q.sum())
    if abs(total - 1.0) > 1e-10:
        raise ValueError(
            f"spin-average table has component sum {total!r}, not 1; "
            f"these formulas normalize only when sz equals sy (sum = 1 + (sz - sy)/2)"
        )
    return MarkovState(space=HiddenStateSpace(states=FEYNMAN_LABELS), values=q)


def five_state_example() -> FiveStateExample:
    """Canonical five-hidden-state instance violating the Bell inequality.

    X, Y, Z are pairwise but not jointly observable in the returned state;
    E(XY) = 1, E(YZ) = -1/3, E(XZ) = 1, so |E(XY) - E(YZ)| = 4/3 > 0 = 1 - E(XZ).
    """
    space = HiddenStateSpace(states=("w1", "w2", "w3", "w4", "w5"))
    scale = Scale(symbols=(-1, 1))
    x = InformationFunction(space=space, scale=scale, values=(-1, 1, -1, -1, -1))
    y = InformationFunction(space=space, scale=scale, values=(1, 1, -1, 1, -1))
    z = InformationFunction(space=space, scale=scale, values=(1, 1, 1, -1, -1))
    state = MarkovState(space=space, values=np.array([-1.0, 1.0, 1.0, 1.0, 1.0]) / 3.0)
    return FiveStateExample(space=space, x=x, y=y, z=z, state=state)


def diagonal_povm(func: InformationFunction) -> KrausMeasurement:
    """The POVM view of an information function: diagonal 0/1 projectors.

    Applying it to diag(q) reproduces :func:`observe_distribution` exactly.
    """
    n = len(func.space)
    mats = []
    for symbol in func.scale:
        d = np.zeros(n, dtype=complex)
        for i, v in enumerate(func.values):
            if v == symbol:
                d[i] = 1.0
        mats.append(np.diag(d))
    return KrausMeasurement(scale=func.scale, kraus=tuple(mats))
