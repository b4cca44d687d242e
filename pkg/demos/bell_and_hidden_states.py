#!/usr/bin/env python3
"""Hidden states, joint observability, and a Bell inequality violation.

Three +-1 observables that are jointly observable in a state must satisfy
|E(XY) - E(YZ)| <= 1 - E(XZ).  With hidden states whose Markov state has a
negative component, the observables can be pairwise observable (so all
three expectations are statistically meaningful) while the triple is not,
and the inequality can fail.

Run with: python3 demos/bell_and_hidden_states.py
"""

import numpy as np

import qmarkov as qm

print("=== the five-state instance ===")
example = qm.five_state_example()
print("state q =", np.round(example.state.values, 6))
print("X =", example.x.values)
print("Y =", example.y.values)
print("Z =", example.z.values)

for name, pair in (("X,Y", (example.x, example.y)),
                   ("Y,Z", (example.y, example.z)),
                   ("X,Z", (example.x, example.z))):
    ok = qm.is_jointly_observable(list(pair), example.state)
    e = qm.product_expectation(pair[0], pair[1], example.state)
    print(f"pair ({name}): jointly observable = {ok}, E = {round(e, 6)}")

triple_ok = qm.is_jointly_observable([example.x, example.y, example.z], example.state)
print("triple jointly observable?", triple_ok)

result = qm.bell_check(example.x, example.y, example.z, example.state)
print(f"|E(XY) - E(YZ)| = {result.lhs:.6f}  vs  1 - E(XZ) = {result.rhs:.6f}")
print("inequality satisfied?", result.satisfied)

print()
print("=== joint observability seen directly ===")
composite = qm.joint([example.x, example.y, example.z])
dist = qm.observe_distribution(composite, example.state)
for symbol, value in dist.as_dict().items():
    if abs(value) > 1e-12:
        print(f"P{symbol} = {round(value, 6)}")
print("(the negative triple probability is what blocks joint observability)")

print()
print("=== the two-spin average table ===")
state = qm.feynman_state(0.5, 0.5, 0.5)
print("spin averages (1/2, 1/2, 1/2) ->", state.values)
space = state.space
x_sign = qm.InformationFunction(
    space=space, scale=qm.Scale(("+", "-")), values=("+", "+", "-", "-"))
z_sign = qm.InformationFunction(
    space=space, scale=qm.Scale(("+", "-")), values=("+", "-", "+", "-"))
print("first sign alone:", qm.observe_distribution(x_sign, state).as_dict())
print("second sign alone:", qm.observe_distribution(z_sign, state).as_dict())
print("jointly observable?", qm.is_jointly_observable([x_sign, z_sign], state))

print()
print("nonnegative states never violate the inequality:")
rng = np.random.default_rng(4)
q = rng.random(5)
uniform_ish = qm.MarkovState(space=example.space, values=q / q.sum())
result = qm.bell_check(example.x, example.y, example.z, uniform_ish)
print(f"random classical state: lhs = {result.lhs:.4f} <= rhs = {result.rhs:.4f} ->",
      result.satisfied)
