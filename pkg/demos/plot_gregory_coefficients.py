"""
Reciprocal coefficients of the logarithmic weights
==================================================

The weights q_n = 1/(n+1) have generating function -ln(1-x)/x, so the
reciprocal series has the Gregory coefficients as its coefficients.
"""

from fractions import Fraction

from logmeans import WeightScheme, check_gamma_conclusions, check_hardy_hypotheses, reciprocal_coeffs

weights = WeightScheme.logarithmic()
coeffs = reciprocal_coeffs(weights, 12)
for n, g in enumerate(coeffs.gamma):
    print(f"gamma_{n:<2} = {str(g):>22}  ~ {float(g): .3e}")

# %%
# Exact residuals of the convolution are zero.

print("residuals:", {str(r) for r in coeffs.residuals()})

# %%
# The weights are positive with nondecreasing ratios q_{n+1}/q_n. Then
# gamma_n < 0 for n >= 1 and the partial sums of gamma stay positive.

hyp = check_hardy_hypotheses(weights, 64)
concl = check_gamma_conclusions(reciprocal_coeffs(weights, 64))
print("hypotheses hold:", hyp.holds)
print("strictly negative:", concl.strictly_negative, " min partial sum:", float(concl.min_partial_sum))

# %%
# A scheme that breaks the ratio hypothesis can produce positive coefficients.

bad = WeightScheme.explicit([1, 1, 1, 0, 0, 0, 0])
print("positive gamma for 1/(1+x+x^2):", check_gamma_conclusions(reciprocal_coeffs(bad, 6)).positive_indices)
print("float mode gamma_4:", reciprocal_coeffs(weights, 4, "float").gamma[4], "vs", float(Fraction(-19, 720)))
