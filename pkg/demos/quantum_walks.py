#!/usr/bin/env python3
"""Quantum walks on directed graphs via the edge-indexed Markov picture.

Edges are basis vectors; every node carries the diagonal projector on its
outgoing edges, and those projectors form a POVM for any directed graph.

Run with: python3 demos/quantum_walks.py
"""

import numpy as np

import qmarkov as qm

print("=== the directed 3-cycle ===")
cycle = qm.DirectedGraph(node_count=3, edges=((0, 1), (1, 2), (2, 0)))
povm = qm.node_povm(cycle)
print("projector diagonals:", [np.diagonal(p).real.tolist() for p in povm.projectors])

shift = qm.shift_unitary(cycle)
print("edge shift permutation:\n", shift.real.astype(int))

start = qm.pure_state(np.eye(3)[0])  # point mass on edge (0, 1)
trace = qm.walk(cycle, qm.from_unitary(shift), start, 6)
print("node probabilities over time (rows are t):")
print(np.round(trace.node_probabilities, 6))
print("limiting distribution:",
      np.round(qm.limiting_node_distribution(cycle, qm.from_unitary(shift), start), 6))

print()
print("=== a coined walk on the same cycle ===")
# any unitary on the edge space drives a walk; a Fourier coin mixes edges
omega = np.exp(2j * np.pi / 3)
coin = np.array([[1, 1, 1], [1, omega, omega**2], [1, omega**2, omega**4]]) / np.sqrt(3)
trace = qm.walk(cycle, qm.from_unitary(coin), start, 8)
print("node probabilities (still a distribution at every step):")
print(np.round(trace.node_probabilities, 4))
print("row sums:", np.round(trace.node_probabilities.sum(axis=1), 12))
print("limiting distribution:",
      np.round(qm.limiting_node_distribution(cycle, qm.from_unitary(coin), start), 6))

print()
print("=== graphs with sinks still give a POVM ===")
import warnings

star = qm.DirectedGraph(node_count=3, edges=((0, 1), (0, 2)))
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    povm = qm.node_povm(star)
print("warning raised:", str(caught[0].message))
total = sum(povm.projectors)
print("projectors still sum to the identity:", np.array_equal(total.real, np.eye(2)))
