"""
Walsh-Paley and trigonometric partial sums
==========================================

Partial sums S_{2^m} of a dyadic step function are averages over dyadic
intervals. Logarithmic means of partial sums reuse the sequence machinery.
"""

from fractions import Fraction

from logmeans import FourierFunction, fourier_log_means, partial_sums, subseq_log_means, walsh_partial_sum

f = FourierFunction.dyadic_step([3, -1, Fraction(1, 2), 0, 7, Fraction(2, 3), -5, 1])
x = Fraction(5, 16)
for m in range(4):
    print(f"S_{2**m}(f, {x}) = {walsh_partial_sum(f, 2**m, x)}")
print("f(x) =", f(x))

# %%
# Logarithmic means of the partial sums at the same point.

S = partial_sums(f, 9, x)
print("S_0..S_8:", [str(v) for v in S.values])
print("L_8:", fourier_log_means(f, 8, x))

# %%
# The trigonometric system, evaluated exactly at a quarter point.

cos = FourierFunction.cosine(1)
print("L_3(cos 2 pi x, 0) =", fourier_log_means(cos, 3, 0))

# %%
# Means along a lacunary subsequence with both normalizations.

w3 = FourierFunction.walsh(3, mode="float")
for norm in ("harmonic", "ln"):
    print(norm, subseq_log_means(w3, [4, 8, 16, 32], 4, 0.1, norm))
