"""Complex and Hermitian matrix algebra.

Matrices are plain numpy arrays (``complex128``).  Hermitian matrices with
unit trace ("Markov densities") carry system states throughout the package.
The canonical orthonormal basis of the real Hilbert space of Hermitian
n x n matrices fixes the n^2-dimensional real coordinate system in which
superoperators are represented (see :func:`hermitian_basis`,
:func:`coords` and :func:`from_coords`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "TRACE_TOL",
    "NONNEG_TOL",
    "SpectralDecomposition",
    "adjoint",
    "hs_inner",
    "hs_norm",
    "hermitian_atol",
    "is_hermitian",
    "require_hermitian",
    "require_markov_density",
    "spectral_decompose",
    "min_eigenvalue",
    "is_nonnegative",
    "pure_state",
    "is_unitary",
    "hermitian_basis",
    "coords",
    "from_coords",
]

# Semantic tolerances (trace-1, nonnegativity); construction-time Hermiticity
# checks use hermitian_atol, which scales with the dimension.
TRACE_TOL = 1e-10
NONNEG_TOL = 1e-10

_SQRT2 = float(np.sqrt(2.0))


def hermitian_atol(n: int) -> float:
    """Hermiticity tolerance for an n x n matrix."""
    return 1e-12 * n


def adjoint(c: np.ndarray) -> np.ndarray:
    """Conjugate transpose of a complex matrix."""
    c = np.asarray(c, dtype=complex)
    if c.ndim != 2:
        raise ValueError(f"adjoint expects a matrix, got array of ndim {c.ndim}")
    return c.conj().T


def hs_inner(c: np.ndarray, d: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product tr(C* D)."""
    c = np.asarray(c, dtype=complex)
    d = np.asarray(d, dtype=complex)
    if c.shape != d.shape:
        raise ValueError(f"shape mismatch in inner product: {c.shape} vs {d.shape}")
    return complex(np.vdot(c, d))


def hs_norm(c: np.ndarray) -> float:
    """Hilbert-Schmidt (Frobenius) norm sqrt(tr(C* C))."""
    return float(np.linalg.norm(np.asarray(c, dtype=complex)))


def _as_square(q: np.ndarray, name: str) -> np.ndarray:
    q = np.asarray(q, dtype=complex)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {q.shape}")
    if not np.all(np.isfinite(q.view(float))):
        raise ValueError(f"{name} contains non-finite entries")
    return q


def is_hermitian(q: np.ndarray, atol: float | None = None) -> bool:
    """True when ||Q - Q*|| is within the construction tolerance."""
    q = _as_square(q, "matrix")
    if atol is None:
        atol = hermitian_atol(q.shape[0])
    return bool(np.linalg.norm(q - q.conj().T) <= atol)


def require_hermitian(q: np.ndarray, atol: float | None = None, name: str = "matrix") -> np.ndarray:
    """Validate Hermiticity and return the matrix as a complex array."""
    q = _as_square(q, name)
    if atol is None:
        atol = hermitian_atol(q.shape[0])
    dev = float(np.linalg.norm(q - q.conj().T))
    if dev > atol:
        raise ValueError(f"{name} is not Hermitian: ||Q - Q*|| = {dev:.3e} exceeds {atol:.1e}")
    return q


def require_markov_density(q: np.ndarray, name: str = "density") -> np.ndarray:
    """Validate a Markov density: Hermitian with trace 1 (eigenvalues unrestricted)."""
    q = require_hermitian(q, name=name)
    tr = complex(np.trace(q)).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"{name} must have trace 1, got trace {tr!r}")
    return q


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Reassemble sum_i lambda_i v_i v_i*."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def spectral_decompose(q: np.ndarray) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Eigenvalues are sorted descending; exact ties are ordered by comparing
    eigenvector components lexicographically.  Each eigenvector is phase
    normalized (leading maximal-modulus component made real positive) so the
    output is reproducible.
    """
    q = require_hermitian(q)
    herm = (q + q.conj().T) / 2.0
    try:
        vals, vecs = np.linalg.eigh(herm)
    except np.linalg.LinAlgError as exc:
        raise ValueError("eigendecomposition did not converge") from exc
    order = np.argsort(-vals, kind="stable")
    vals = np.ascontiguousarray(vals[order])
    vecs = np.ascontiguousarray(vecs[:, order])

    n = vals.size
    for i in range(n):
        col = vecs[:, i]
        pivot = int(np.argmax(np.abs(col)))
        lead = col[pivot]
        mag = abs(lead)
        if mag > 0.0:
            vecs[:, i] = col * (lead.conjugate() / mag)

    i = 0
    while i < n:
        j = i + 1
        while j < n and vals[j] == vals[i]:
            j += 1
        if j - i > 1:
            block = sorted(
                range(i, j),
                key=lambda k: tuple((vecs[r, k].real, vecs[r, k].imag) for r in range(n)),
            )
            vecs[:, i:j] = vecs[:, block]
        i = j

    vals.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralDecomposition(eigenvalues=vals, eigenvectors=vecs)


def min_eigenvalue(q: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    q = require_hermitian(q)
    herm = (q + q.conj().T) / 2.0
    return float(np.linalg.eigvalsh(herm)[0])


def is_nonnegative(q: np.ndarray, tol: float = NONNEG_TOL) -> bool:
    """True when every eigenvalue is >= -tol."""
    return min_eigenvalue(q) >= -tol


def pure_state(v: np.ndarray) -> np.ndarray:
    """Normalized rank-1 density vv*/<v|v> for a nonzero vector."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    norm_sq = float(np.vdot(v, v).real)
    if not norm_sq > 0.0:
        raise ValueError("cannot build a pure state from the zero vector")
    return np.outer(v, v.conj()) / norm_sq


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    """True when ||UU* - I|| <= tol."""
    u = _as_square(u, "matrix")
    n = u.shape[0]
    return bool(np.linalg.norm(u @ u.conj().T - np.eye(n)) <= tol)


def hermitian_basis(n: int) -> np.ndarray:
    """Canonical orthonormal basis of the Hermitian n x n matrices, shape (n^2, n, n).

    Order: the n diagonal units E_ii first, then for each index pair i < j
    (row-major) the symmetric element (E_ij + E_ji)/sqrt(2) immediately
    followed by the antisymmetric element i(E_ij - E_ji)/sqrt(2).  This is
    the coordinate order used by :func:`coords` and by every superoperator
    matrix in the package ("canonical-hermitian-v1").
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    return from_coords(np.eye(n * n))


def coords(q: np.ndarray) -> np.ndarray:
    """Real coordinates of Hermitian matrices in the canonical basis.

    Accepts a single (n, n) matrix or a batch (..., n, n); returns (..., n^2).
    The map is a linear isometry for the Hilbert-Schmidt norm.  Input must be
    Hermitian; the anti-Hermitian part is discarded silently.
    """
    q = np.asarray(q, dtype=complex)
    if q.ndim < 2 or q.shape[-1] != q.shape[-2]:
        raise ValueError(f"coords expects square matrices, got shape {q.shape}")
    n = q.shape[-1]
    iu, ju = np.triu_indices(n, k=1)
    out = np.empty(q.shape[:-2] + (n * n,), dtype=float)
    out[..., :n] = np.diagonal(q, axis1=-2, axis2=-1).real
    off = q[..., iu, ju]
    out[..., n::2] = _SQRT2 * off.real
    out[..., n + 1 :: 2] = _SQRT2 * off.imag
    return out


def from_coords(c: np.ndarray) -> np.ndarray:
    """Inverse of :func:`coords`: (..., n^2) real coordinates to Hermitian (..., n, n)."""
    c = np.asarray(c, dtype=float)
    if c.ndim < 1:
        raise ValueError("from_coords expects at least one coordinate axis")
    m = c.shape[-1]
    n = int(round(np.sqrt(m)))
    if n * n != m:
        raise ValueError(f"coordinate length {m} is not a perfect square")
    q = np.zeros(c.shape[:-1] + (n, n), dtype=complex)
    idx = np.arange(n)
    q[..., idx, idx] = c[..., :n]
    iu, ju = np.triu_indices(n, k=1)
    off = (c[..., n::2] + 1j * c[..., n + 1 :: 2]) / _SQRT2
    q[..., iu, ju] = off
    q[..., ju, iu] = off.conj()
    return q
