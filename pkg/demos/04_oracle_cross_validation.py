# coding: utf-8

# # Checking the criteria against an independent oracle
#
# The oracle builds every single-party cut with its own index loop and counts
# LAPACK singular values above `tol.rank * sigma_1`.  States whose ratio
# `sigma_2 / sigma_1` falls within a factor of ten of the tolerance are too
# close to call and are excluded from the comparison.

# %%
import puresep as ps

rep = ps.oracle_schmidt(ps.w_state(3))
print(rep.schmidt_numbers, (rep.singular_values[0] ** 2).round(6))

# %%
battery = []
for seed in range(60):
    dims = [(2, 2), (3, 3), (2, 3, 2), (2, 2, 2, 2)][seed % 4]
    battery.append(ps.random_product_state(dims, seed))
    battery.append(ps.random_state(dims, seed))
    base = ps.random_product_state(dims, 1000 + seed)
    battery.append(ps.perturb(base, ps.random_state(dims, 2000 + seed), 10.0 ** -(seed % 12)))

report = ps.cross_validate(battery)
print(report.summary())
