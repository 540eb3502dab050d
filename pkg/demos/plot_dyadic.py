"""
Binary coefficients and the variation of a number
=================================================

V(n) counts transitions in the binary expansion of n and Sp(n) lists the
positions of its one digits.
"""

from logmeans import DyadicNumber, gen_nested_unbounded_variation, is_nested

for n in (1, 3, 5, 6, 21, 1023, 1024):
    d = DyadicNumber.of(n)
    print(f"{n:>5} = {n:b}  V = {d.variation}  Sp = {d.spectrum}")

# %%
# Nested spectra with unbounded variation: n_k = 1 + 4 + ... + 4^k.

seq = gen_nested_unbounded_variation(8)
print(seq)
print("nested:", is_nested(seq).nested, " variations:", [DyadicNumber.of(n).variation for n in seq])

# %%
# A failing pair reports the position of the offending term.

print(is_nested([1, 5, 6, 7]))
