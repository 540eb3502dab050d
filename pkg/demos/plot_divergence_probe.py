"""
Running suprema of means of unbounded sequences
===============================================

A probe records max_{n <= M} |mean_n| at checkpoints M. For s_k = k the
logarithmic means have the closed form n(1 - 1/l_n).
"""

from logmeans import VaryingCesaroParams, divergence_probe, harmonic_number
from logmeans.generators import bounded, dyadic_spikes, linear

N = 10**4
for row in divergence_probe(linear(N, "float"), nmax=N):
    closed = row.M * (1 - 1 / float(harmonic_number(row.M, "float")))
    print(f"M = {row.M:>6}  sup |L_n| = {row.running_sup:12.4f}  closed form {closed:12.4f}")

# %%
# Bounded input keeps the logarithmic means bounded by the same constant.

print("bounded input, final sup:", divergence_probe(bounded(N, "float", seed=1), nmax=N)[-1].running_sup)

# %%
# Spikes s_{2^j} = j under (C, 0.6/ln n) means.

params = VaryingCesaroParams.tetunashvili(0.6)
for row in divergence_probe(dyadic_spikes(2**14 + 1, "float"), "varying-cesaro", 2**14, params):
    print(f"M = {row.M:>6}  sup |sigma_n| = {row.running_sup:.4f} at n = {row.argmax}")
