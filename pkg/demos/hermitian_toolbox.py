#!/usr/bin/env python3
"""Tour of the Hermitian-matrix layer: spectra, densities, coordinates.

Run with: python3 demos/hermitian_toolbox.py
"""

import numpy as np

import qmarkov as qm

rng = np.random.default_rng(1)

print("=== adjoints and inner products ===")
c = np.array([[0.0, 1.0j], [0.0, 0.0]])
print("C =\n", c)
print("C* =\n", qm.adjoint(c))
sigma_x = np.array([[0, 1], [1, 0]], dtype=complex)
sigma_z = np.diag([1.0, -1.0]).astype(complex)
print("<sigma_x | sigma_z> =", qm.hs_inner(sigma_x, sigma_z), "(orthogonal)")
print("||sigma_x|| =", qm.hs_norm(sigma_x))

print()
print("=== spectral decomposition ===")
g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
q = (g + g.conj().T) / 2
dec = qm.spectral_decompose(q)
print("eigenvalues (descending):", np.round(dec.eigenvalues, 6))
print("reconstruction error:", qm.hs_norm(dec.reconstruct() - q))
print("trace vs eigenvalue sum:", np.trace(q).real, "vs", dec.eigenvalues.sum())

print()
print("=== Markov densities vs quantum densities ===")
# a Markov density has trace 1; its eigenvalues may be negative
markov_density = np.diag([1.25, -0.25])
print("diag(5/4, -1/4): trace =", np.trace(markov_density).real)
print("nonnegative?", qm.is_nonnegative(markov_density))
# a pure state is always a quantum density
v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
rho = qm.pure_state(v)
print("pure state: trace =", np.trace(rho).real, "nonnegative?", qm.is_nonnegative(rho))

print()
print("=== canonical coordinates ===")
# Hermitian n x n matrices form a real vector space of dimension n^2;
# coords() is a linear isometry onto R^(n^2)
print("coords(sigma_x) =", qm.coords(sigma_x))
print("coords preserves norms:", np.linalg.norm(qm.coords(q)), "=", qm.hs_norm(q))
print("round trip error:", qm.hs_norm(qm.from_coords(qm.coords(q)) - q))
basis = qm.hermitian_basis(2)
print("basis elements (n=2):")
for element in basis:
    print(np.round(element, 3))
