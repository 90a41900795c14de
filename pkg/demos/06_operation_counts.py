# coding: utf-8

# # Operation counts
#
# Every criterion tallies its scalar multiplications, additions and
# comparisons.  In exhaustive mode on generic states the counts grow like
# `n d` for proportionality, `n d^2` for minors, and `n r^3` for the dense
# determinant, where `r = d / d_k` is the unfolding height.

# %%
from puresep import bench

report = bench.run_bench(bench.sweep_points("qubit", 2, 9), ["prop", "minors", "det-dense"])
print(bench.format_table(report))

# %%
# Counts are exact, so a single repetition already gives clean slopes.

for name, fit in report.fits.items():
    print(f"{name:10s} {fit['d_slope']:.3f} per {fit['variable']}, {fit['n_slope']:.3f} per party")
