#!/usr/bin/env python3
"""Markov chains of densities, Cesaro limits, and the wave-function contrast.

Bounded chains have a limit of running averages, and that limit is a
stationary Markov density.  Wave-function averages behave differently: for
a unitary without eigenvalue 1 they shrink to zero instead of converging to
a wave function.

Run with: python3 demos/chains_and_averages.py
"""

import numpy as np

import qmarkov as qm

rng = np.random.default_rng(3)

print("=== evolving a chain ===")
swap = qm.from_unitary(np.array([[0, 1], [1, 0]], dtype=complex))
chain = qm.MarkovChain(operator=swap, start=np.diag([1.0, 0.0]))
for t, rho in enumerate(qm.evolve(chain, 4)):
    print(f"t = {t}: diag =", np.round(np.diagonal(rho).real, 6))

print()
print("=== boundedness probing ===")
report = qm.boundedness_probe(chain, horizon=50, bound=1.0)
print(f"swap chain: max tr(P_t^2) = {report.max_value:.6f}, exceeded bound 1? {report.exceeded}")
amplifier = qm.MarkovOperator(n=2, matrix=np.diag([1.0, 1.0, 1.1, 1.0]))
wild = qm.MarkovChain(operator=amplifier, start=qm.pure_state(np.array([1.0, 1.0])))
report = qm.boundedness_probe(wild, horizon=60, bound=10.0)
print(f"off-diagonal amplifier: bound 10 exceeded at t = {report.first_exceeded}")

print()
print("=== Cesaro averages ===")
result = qm.cesaro_average(chain)
print("period-2 chain averages to:\n", np.round(result.average, 9))
print(f"(t = {result.iterations}, residual = {result.residual:.2e})")

noisy = qm.from_kraus(
    [m * 1.0 for m in (np.diag([1.0, np.sqrt(0.6)]).astype(complex),
                       np.array([[0.0, np.sqrt(0.4)], [0.0, 0.0]]))]
)
chain = qm.MarkovChain(operator=noisy, start=qm.pure_state(np.array([1.0, 1.0])))
result = qm.cesaro_average(chain)
print("damping chain averages to:\n", np.round(result.average, 9))
print("stationary?", qm.is_stationary(
    qm.MarkovChain(operator=noisy, start=result.average), tol=1e-7))

print()
print("=== functional averages ===")
observable = np.diag([1.0, -1.0]).astype(complex)
value = qm.functional_average(chain, observable)
print("long-run average of <sigma_z| P_t>:", round(value, 9))

print()
print("=== the wave-function contrast ===")
u = np.diag([np.exp(1j * np.pi / np.sqrt(2)), np.exp(1j)])
v = np.array([1.0, 1.0]) / np.sqrt(2)
for t in (100, 1_000, 10_000):
    avg = qm.unitary_vector_average(u, v, t)
    print(f"T = {t:>6}: ||average of U^t v|| = {np.linalg.norm(avg):.2e}")
density_chain = qm.MarkovChain(operator=qm.from_unitary(u), start=qm.pure_state(v))
result = qm.cesaro_average(density_chain)
print("while the density average converges to\n", np.round(result.average, 9))
