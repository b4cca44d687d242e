#!/usr/bin/env python3
"""Measurements on Markov densities and the observability question.

A measurement applied to a trace-1 Hermitian matrix always produces values
summing to 1, but they are probabilities only when none is negative.  That
is what "statistically observable" means, and it can fail at some word
length t while holding at every shorter length.

Run with: python3 demos/measurements_and_observability.py
"""

import numpy as np

import qmarkov as qm

print("=== outcome statistics of a projective measurement ===")
z_meas = qm.KrausMeasurement(
    scale=qm.Scale(("up", "down")),
    kraus=(np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)),
)
rho = qm.pure_state(np.array([1.0, 1.0]) / np.sqrt(2))
print("on a balanced pure state:", qm.outcome_distribution(z_meas, rho).as_dict())

indefinite = np.diag([1.25, -0.25])
dist = qm.outcome_distribution(z_meas, indefinite)
print("on diag(5/4, -1/4):", dist.as_dict(), "-> observable?", dist.is_observable())

# the same density IS observable for the x-basis measurement
x_meas = qm.KrausMeasurement(
    scale=qm.Scale(("plus", "minus")),
    kraus=(
        qm.pure_state(np.array([1.0, 1.0]) / np.sqrt(2)),
        qm.pure_state(np.array([1.0, -1.0]) / np.sqrt(2)),
    ),
)
print("x-basis on the same density:", qm.outcome_distribution(x_meas, indefinite).as_dict())

print()
print("=== posteriors and the expected density ===")
p, post = qm.posterior(z_meas, rho, "up")
print(f"outcome 'up' has p = {p}; posterior =\n", np.round(post, 6))
mm = qm.as_markov_measurement(z_meas)
expected = qm.apply(mm.sum_operator, rho)
print("sum_a p(a) Q_a equals the sum-operator image:\n", np.round(expected, 6))

print()
print("=== word statistics and t-observability ===")
# a two-symbol model whose word 'bbbb' is the first to go negative
shear = 2.0 / 7.0
model = qm.ObservableOperatorModel(
    scale=qm.Scale(("a", "b")),
    operators=(
        np.array([[0.5, shear], [0.0, 0.5]]),
        np.array([[0.5, -shear], [0.0, 0.5]]),
    ),
    pi=np.array([0.5, 0.5]),
)
meas = qm.to_markov_measurement(model)
density = np.diag(model.pi).astype(complex)
for t in range(7):
    verdict = qm.is_t_observable(meas, density, t)
    print(f"t = {t}: {'observable' if verdict else 'NOT observable'}")
dist = qm.word_distribution(meas, density, 4)
worst = min(dist, key=dist.get)
print("most negative word at t = 4:", "".join(worst), "with value", dist[worst])
print("(once a depth fails, every deeper level fails too)")
