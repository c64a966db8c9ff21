"""
How tight is the index bound?
=============================

For the undissected F_k every tile has diameter D_k = 2 / sqrt(3 sin(pi/3k))
and the total index is 6k - 6.  The ratio of the bound 2 pi D_k^2 - 6 to the
index drifts down to 4/3.
"""
from hextiling.analysis import asymptotic_table, log_sampled_ks
from hextiling.files import encode_table

rows = asymptotic_table([2, 3, 5, 10, 100, 1000, 10_000, 1_000_000])
print(encode_table(rows))

# %%
# The sampled ratios decrease monotonically; this is an observation, the
# limit itself is what the theory guarantees.
ratios = [row.ratio for row in asymptotic_table(log_sampled_ks(10**6, 60))]
print("monotone:", all(a > b for a, b in zip(ratios, ratios[1:])))
print("last ratio - 4/3:", ratios[-1] - 4 / 3)
