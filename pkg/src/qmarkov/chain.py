"""Markov chains (mu, P): evolution, boundedness, Cesaro averages, stationarity.

The Cesaro average of a bounded chain exists and is stationary; it is
computed here with a doubling scheme on the superoperator, so horizons up to
~10^12 steps cost only ~40 matrix products of size n^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermitian import coords, from_coords, hs_inner, is_unitary, require_hermitian, require_markov_density
from .operators import MarkovOperator

__all__ = [
    "MarkovChain",
    "CesaroResult",
    "BoundednessReport",
    "ConvergenceError",
    "evolve",
    "boundedness_probe",
    "cesaro_average",
    "is_stationary",
    "functional_average",
    "unitary_vector_average",
]

DEFAULT_RESIDUAL_TOL = 1e-8
DEFAULT_MAX_DOUBLINGS = 40


class ConvergenceError(RuntimeError):
    """Raised when the Cesaro residual cannot be pushed below tolerance."""


@dataclass(frozen=True, eq=False)
class MarkovChain:
    """Evolution operator mu together with a start density P."""

    operator: MarkovOperator
    start: np.ndarray

    def __post_init__(self) -> None:
        start = np.array(require_markov_density(self.start, name="start density"))
        if start.shape != (self.operator.n, self.operator.n):
            raise ValueError(
                f"dimension mismatch: operator on H_{self.operator.n}, start {start.shape}"
            )
        start.setflags(write=False)
        object.__setattr__(self, "start", start)


@dataclass(frozen=True, eq=False)
class CesaroResult:
    """Cesaro average with the step count and stationarity residual reached."""

    average: np.ndarray
    iterations: int
    residual: float


@dataclass(frozen=True, eq=False)
class BoundednessReport:
    """Largest tr(mu^t(P)^2) observed along a finite chain prefix."""

    bound: float
    horizon: int
    max_value: float
    exceeded: bool
    first_exceeded: int | None


def evolve(chain: MarkovChain, steps: int) -> list[np.ndarray]:
    """Densities mu^t(P) for t = 0..steps."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    k = chain.operator.matrix
    c = coords(chain.start)
    out = [np.array(chain.start)]
    for _ in range(steps):
        c = k @ c
        out.append(from_coords(c))
    return out


def boundedness_probe(chain: MarkovChain, horizon: int, bound: float) -> BoundednessReport:
    """Track tr(mu^t(P)^2) for t <= horizon against a candidate bound.

    tr(Q^2) equals the squared coordinate norm, so the probe runs entirely
    in coordinates.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    k = chain.operator.matrix
    c = coords(chain.start)
    max_value = float(c @ c)
    first_exceeded = 0 if max_value > bound else None
    for t in range(1, horizon + 1):
        c = k @ c
        value = float(c @ c)
        if value > max_value:
            max_value = value
        if first_exceeded is None and value > bound:
            first_exceeded = t
    return BoundednessReport(
        bound=float(bound),
        horizon=horizon,
        max_value=max_value,
        exceeded=first_exceeded is not None,
        first_exceeded=first_exceeded,
    )


def cesaro_average(
    chain: MarkovChain,
    tol: float = DEFAULT_RESIDUAL_TOL,
    max_doublings: int = DEFAULT_MAX_DOUBLINGS,
) -> CesaroResult:
    """Limit of averages (1/t) sum_{k=1..t} mu^k(P) via superoperator doubling.

    Maintains T_t = mu^t and S_t = sum_{k=1..t} mu^k with S_2t = S_t + T_t S_t
    and T_2t = T_t^2, checking the stationarity residual ||mu(avg) - avg|| at
    t = 1, 2, 4, ..., 2^max_doublings.  The average is renormalized to unit
    trace to absorb accumulated rounding.  Raises ConvergenceError when the
    residual stays above tol, which signals an unbounded chain or extremely
    slow mixing.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    k = chain.operator.matrix
    c0 = coords(chain.start)

    residual = float(np.linalg.norm(k @ c0 - c0))
    if residual <= tol:
        return CesaroResult(average=np.array(chain.start), iterations=0, residual=residual)

    s = k.copy()
    t_mat = k.copy()
    t = 1
    # overflow along the way is a legitimate signal of an unbounded chain,
    # not a numerical accident worth warning about
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(max_doublings + 1):
            avg = (s @ c0) / t
            trace = float(avg[: chain.operator.n].sum())
            if np.isfinite(trace) and abs(trace) > 1e-6:
                avg = avg / trace
            residual = float(np.linalg.norm(k @ avg - avg))
            if not np.isfinite(residual):
                raise ConvergenceError(
                    f"averages diverged after {t} steps; the chain appears unbounded"
                )
            if residual <= tol:
                return CesaroResult(average=from_coords(avg), iterations=t, residual=residual)
            s = s + t_mat @ s
            t_mat = t_mat @ t_mat
            t *= 2
    raise ConvergenceError(
        f"stationarity residual {residual:.3e} still above {tol:.1e} after "
        f"{max_doublings} doublings (t = {t // 2}); the chain may be unbounded"
    )


def is_stationary(chain: MarkovChain, tol: float = DEFAULT_RESIDUAL_TOL) -> bool:
    """True when ||mu(P) - P|| <= tol."""
    k = chain.operator.matrix
    c = coords(chain.start)
    return bool(np.linalg.norm(k @ c - c) <= tol)


def functional_average(
    chain: MarkovChain,
    functional: np.ndarray,
    tol: float = DEFAULT_RESIDUAL_TOL,
    max_doublings: int = DEFAULT_MAX_DOUBLINGS,
) -> float:
    """Long-run average of t -> <X|mu^t(P)> for a Hermitian functional X.

    Equals <X|average> by linearity once the Cesaro average exists; errors
    from :func:`cesaro_average` propagate.
    """
    functional = require_hermitian(functional, name="functional")
    if functional.shape != (chain.operator.n, chain.operator.n):
        raise ValueError(
            f"dimension mismatch: operator on H_{chain.operator.n}, functional {functional.shape}"
        )
    result = cesaro_average(chain, tol=tol, max_doublings=max_doublings)
    return float(hs_inner(functional, result.average).real)


def unitary_vector_average(u: np.ndarray, v: np.ndarray, steps: int) -> np.ndarray:
    """Running average (1/T) sum_{k=1..T} U^k v of a wave-function evolution.

    For unitaries without eigenvalue 1 the norm decays like O(1/T); this is
    the contrast to density averages, which converge to a Markov density.
    """
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, tol=1e-10):
        raise ValueError("matrix is not unitary within 1e-10 (UU* must equal I)")
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] != u.shape[0]:
        raise ValueError(f"dimension mismatch: unitary {u.shape}, vector {v.shape}")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    acc = np.zeros_like(v)
    w = v
    for _ in range(steps):
        w = u @ w
        acc += w
    return acc / steps
