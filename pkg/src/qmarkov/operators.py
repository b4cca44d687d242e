"""Trace-preserving linear operators (Markovians) on Hermitian matrices.

A Markov operator is stored as a real n^2 x n^2 matrix acting on canonical
basis coordinates (see :mod:`qmarkov.hermitian`).  Constructors cover the
three standard sources: Kraus families, unitary conjugation, and stochastic
matrices extended from the diagonal subspace by annihilating off-diagonal
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermitian import (
    coords,
    from_coords,
    hermitian_basis,
    is_unitary,
    min_eigenvalue,
    require_hermitian,
)

__all__ = [
    "MarkovOperator",
    "NonnegativityReport",
    "identity_operator",
    "kraus_superop",
    "diagonal_superop",
    "from_kraus",
    "from_unitary",
    "from_stochastic",
    "apply",
    "compose",
    "power",
    "is_trace_preserving",
    "trace_preservation_deviation",
    "sampled_nonnegativity",
    "random_quantum_density",
]

TRACE_PRESERVING_TOL = 1e-10


def trace_preservation_deviation(matrix: np.ndarray) -> float:
    """Largest deviation |tr(image of B_k) - tr(B_k)| over the basis elements.

    In canonical coordinates tr(from_coords(c)) is the sum of the first n
    entries of c, so the check reduces to column sums of the first n rows.
    """
    matrix = np.asarray(matrix, dtype=float)
    m = matrix.shape[0]
    n = int(round(np.sqrt(m)))
    if matrix.ndim != 2 or matrix.shape != (m, m) or n * n != m:
        raise ValueError(f"superoperator matrix must be square of size n^2, got {matrix.shape}")
    target = np.zeros(m)
    target[:n] = 1.0
    return float(np.max(np.abs(matrix[:n, :].sum(axis=0) - target)))


@dataclass(frozen=True, eq=False)
class MarkovOperator:
    """Trace-preserving linear map on the Hermitian n x n matrices.

    ``matrix`` is real n^2 x n^2 in canonical basis coordinates.  Trace
    preservation is validated at construction; positivity is not implied
    (use :func:`sampled_nonnegativity` to probe it).
    """

    n: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float)
        m = self.n * self.n
        if matrix.shape != (m, m):
            raise ValueError(
                f"operator on dimension {self.n} needs a {m}x{m} matrix, got {matrix.shape}"
            )
        if not np.all(np.isfinite(matrix)):
            raise ValueError("operator matrix contains non-finite entries")
        dev = trace_preservation_deviation(matrix)
        if dev > TRACE_PRESERVING_TOL:
            raise ValueError(
                f"operator is not trace preserving: basis-trace deviation {dev:.3e}"
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)


def identity_operator(n: int) -> MarkovOperator:
    """The identity Markov operator on H_n."""
    return MarkovOperator(n=n, matrix=np.eye(n * n))


def kraus_superop(family) -> np.ndarray:
    """Superoperator matrix of Q -> sum_a M_a Q M_a* (no completeness check)."""
    mats = np.asarray(family, dtype=complex)
    if mats.ndim == 2:
        mats = mats[None, :, :]
    if mats.ndim != 3 or mats.shape[-1] != mats.shape[-2]:
        raise ValueError(f"Kraus family must be square matrices, got shape {mats.shape}")
    n = mats.shape[-1]
    basis = hermitian_basis(n)
    images = np.einsum("aij,ljk,ahk->lih", mats, basis, mats.conj())
    return np.ascontiguousarray(coords(images).T)


def diagonal_superop(m: np.ndarray) -> np.ndarray:
    """Superoperator acting as diag(x) -> diag(Mx), annihilating off-diagonal coordinates."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square real matrix, got shape {m.shape}")
    n = m.shape[0]
    out = np.zeros((n * n, n * n))
    out[:n, :n] = m
    return out


def from_kraus(family) -> MarkovOperator:
    """Markov operator of a Kraus family {M_a} with sum_a M_a* M_a = I.

    The completeness condition is exactly what makes Q -> sum_a M_a Q M_a*
    trace preserving; the resulting operator also maps quantum densities to
    quantum densities.
    """
    mats = np.asarray(family, dtype=complex)
    if mats.ndim == 2:
        mats = mats[None, :, :]
    if mats.ndim != 3 or mats.shape[-1] != mats.shape[-2]:
        raise ValueError(f"Kraus family must be square matrices, got shape {mats.shape}")
    n = mats.shape[-1]
    gram = np.einsum("aji,ajk->ik", mats.conj(), mats)
    dev = float(np.linalg.norm(gram - np.eye(n)))
    if dev > TRACE_PRESERVING_TOL:
        raise ValueError(
            f"Kraus matrices do not sum up to the identity (POVM completeness violated): "
            f"||sum M_a* M_a - I|| = {dev:.3e}"
        )
    return MarkovOperator(n=n, matrix=kraus_superop(mats))


def from_unitary(u: np.ndarray) -> MarkovOperator:
    """Markov operator of unitary conjugation Q -> UQU*."""
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, tol=1e-10):
        raise ValueError("matrix is not unitary within 1e-10 (UU* must equal I)")
    return MarkovOperator(n=u.shape[0], matrix=kraus_superop(u[None, :, :]))


def from_stochastic(m: np.ndarray) -> MarkovOperator:
    """Markov operator extending x -> Mx on diagonals, for M with column sums 1.

    Off-diagonal coordinates are annihilated, which keeps the extension trace
    preserving for any column-sum-1 matrix (off-diagonal basis elements are
    traceless) and positivity preserving whenever M is entrywise nonnegative.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"stochastic matrix must be square, got shape {m.shape}")
    col_dev = float(np.max(np.abs(m.sum(axis=0) - 1.0)))
    if col_dev > TRACE_PRESERVING_TOL:
        raise ValueError(f"column sums must equal 1, largest deviation {col_dev:.3e}")
    return MarkovOperator(n=m.shape[0], matrix=diagonal_superop(m))


def apply(op: MarkovOperator, q: np.ndarray) -> np.ndarray:
    """Apply a Markov operator to a Hermitian matrix."""
    q = require_hermitian(q)
    if q.shape != (op.n, op.n):
        raise ValueError(f"dimension mismatch: operator on H_{op.n}, matrix {q.shape}")
    return from_coords(op.matrix @ coords(q))


def compose(outer: MarkovOperator, inner: MarkovOperator) -> MarkovOperator:
    """Composition outer after inner."""
    if outer.n != inner.n:
        raise ValueError(f"dimension mismatch: {outer.n} vs {inner.n}")
    return MarkovOperator(n=outer.n, matrix=outer.matrix @ inner.matrix)


def power(op: MarkovOperator, t: int) -> MarkovOperator:
    """t-fold composition via repeated squaring; power(op, 0) is the identity."""
    if t != int(t) or t < 0:
        raise ValueError(f"exponent must be a nonnegative integer, got {t!r}")
    t = int(t)
    result = np.eye(op.n * op.n)
    base = np.asarray(op.matrix)
    while t > 0:
        if t & 1:
            result = base @ result
        base = base @ base
        t >>= 1
    return MarkovOperator(n=op.n, matrix=result)


def is_trace_preserving(op, tol: float = TRACE_PRESERVING_TOL) -> bool:
    """Check |tr(image of B_k) - tr(B_k)| <= tol over all basis elements."""
    matrix = op.matrix if isinstance(op, MarkovOperator) else op
    return trace_preservation_deviation(matrix) <= tol


def random_quantum_density(n: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank random quantum density GG*/tr(GG*) for complex Gaussian G."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    w = g @ g.conj().T
    return w / np.trace(w).real


@dataclass(frozen=True, eq=False)
class NonnegativityReport:
    """Outcome of sampling-based positivity probing of an operator."""

    trials: int
    passed: int
    witness: np.ndarray | None
    witness_eigenvalue: float | None

    @property
    def all_passed(self) -> bool:
        return self.witness is None


def sampled_nonnegativity(
    op: MarkovOperator,
    trials: int,
    seed: int = 0,
    tol: float = 1e-9,
) -> NonnegativityReport:
    """Probe whether an operator maps quantum densities to quantum densities.

    Draws seeded random quantum densities and reports the first input whose
    image has an eigenvalue below -tol.  A pass is evidence, not a proof:
    exact positivity certification is out of scope.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    passed = 0
    for _ in range(trials):
        q = random_quantum_density(op.n, rng)
        lam = min_eigenvalue(apply(op, q))
        if lam < -tol:
            return NonnegativityReport(
                trials=trials, passed=passed, witness=q, witness_eigenvalue=lam
            )
        passed += 1
    return NonnegativityReport(trials=trials, passed=passed, witness=None, witness_eigenvalue=None)
