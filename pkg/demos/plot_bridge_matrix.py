"""
Varying-order Cesaro means through logarithmic means
====================================================

The bridge matrix t_{k,n} writes the (C, alpha_n) mean as a transform of the
Norlund (logarithmic) means. Its rows always sum to 1; whether they are
nonnegative depends on the ratio condition.
"""

import random
from fractions import Fraction

from logmeans import BridgeMatrix, VaryingCesaroParams, WeightScheme, cond_check, rowsum_scan, verify_identity2
from logmeans.generators import random_rational

weights = WeightScheme.logarithmic()
reciprocal = VaryingCesaroParams.reciprocal()

row = BridgeMatrix(weights, reciprocal).row(2)
print("row 2, alpha = 1/3:", [str(t) for t in row.t], "abs sum", row.abs_row_sum)

# %%
# The ratio condition, read with alpha_n held fixed, fails below the
# diagonal; read with alpha_j at index j it holds with equality.

rep = cond_check(weights, reciprocal, 6)
print("frozen failures:", rep.frozen_failures, " diagonal failures:", rep.diagonal_failures)

# %%
# Row sums and absolute row sums for both parameter rules.

for params in (reciprocal, VaryingCesaroParams.constant(Fraction(1, 2))):
    scan = rowsum_scan(32, weights, params)
    print(params.name, "max abs row sum:", float(max(r.abs_row_sum for r in scan)),
          " rows with negative entries:", sum(1 for r in scan if r.negatives))

# %%
# The representation is an exact identity on any prefix.

s = random_rational(41, random.Random(0))
bridge = BridgeMatrix(weights, reciprocal)
print("residuals:", {str(verify_identity2(s, n, weights, reciprocal, bridge)) for n in range(41)})
