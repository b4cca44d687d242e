#!/usr/bin/env python3
"""Trace-preserving operators: construction, composition, positivity probing.

Run with: python3 demos/channels_and_operators.py
"""

import numpy as np

import qmarkov as qm

rng = np.random.default_rng(2)

print("=== three ways to build a Markov operator ===")
# 1. a Kraus family (sum_a M_a* M_a = I): here amplitude damping
gamma = 0.3
m0 = np.diag([1.0, np.sqrt(1 - gamma)]).astype(complex)
m1 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]])
damping = qm.from_kraus([m0, m1])
print("amplitude damping trace preserving?", qm.is_trace_preserving(damping))

# 2. a unitary conjugation
hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
rotation = qm.from_unitary(hadamard)

# 3. a column-sum-1 matrix extended from the diagonal subspace;
# entries may be negative, trace preservation still holds
flow = qm.from_stochastic(np.array([[1.2, 0.3], [-0.2, 0.7]]))
print("negative-entry flow trace preserving?", qm.is_trace_preserving(flow))

print()
print("=== applying and composing ===")
rho = qm.pure_state(np.array([1.0, 0.0]))
print("damping(|0><0|) =\n", np.round(qm.apply(damping, rho), 6))
both = qm.compose(damping, rotation)
print("(damping after rotation)(|0><0|) =\n", np.round(qm.apply(both, rho), 6))
print("power(rotation, 2) is the identity:",
      np.abs(qm.power(rotation, 2).matrix - np.eye(4)).max() < 1e-12)

print()
print("=== positivity is NOT part of the contract ===")
# trace preservation does not imply that quantum densities stay quantum;
# this operator sends the first diagonal unit to 2 D_1 - D_2
matrix = np.eye(4)
matrix[0, 0] = 2.0
matrix[1, 0] = -1.0
sneaky = qm.MarkovOperator(n=2, matrix=matrix)
print("sneaky operator trace preserving?", qm.is_trace_preserving(sneaky))
report = qm.sampled_nonnegativity(sneaky, trials=100, seed=0)
print("sampled positivity:", "pass" if report.all_passed else
      f"witness found after {report.passed} passes "
      f"(image eigenvalue {report.witness_eigenvalue:.3f})")

report = qm.sampled_nonnegativity(damping, trials=100, seed=0)
print("amplitude damping sampled positivity:",
      "pass" if report.all_passed else "witness found")
