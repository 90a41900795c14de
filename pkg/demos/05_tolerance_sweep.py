# coding: utf-8

# # How small an entanglement can be seen
#
# Starting from a product state we step a distance `eps` towards an
# entangled direction.  The second singular value of the unfoldings grows
# like `eps`, so the verdict flips where `eps` passes the rank tolerance
# (1e-8 by default).

# %%
import math

import numpy as np

import puresep as ps

dims = (3, 3)
base = ps.random_product_state(dims, seed=2)
amps = np.zeros(9, complex)
amps[0] = amps[ps.flat_index(dims, (1, 1))] = 1 / math.sqrt(2)
direction = ps.PureState(dims, amps)

for eps in [1e-12, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-4]:
    s = ps.perturb(base, direction, eps)
    margin = ps.oracle_schmidt(s).margin
    row = {name: fn(s, extract=False).separable for name, fn in
           [("rank", ps.rank_criterion), ("minors", ps.minor_criterion),
            ("prop", ps.proportionality_criterion), ("det", ps.det_criterion)]}
    print(f"{eps:8.0e}  sigma2/sigma1={margin:9.2e}  {row}")

# %%
# A looser tolerance moves the boundary.

loose = ps.ToleranceConfig(rank=1e-4, det=1e-8)
s = ps.perturb(base, direction, 1e-6)
print(ps.rank_criterion(s).separable, ps.rank_criterion(s, loose).separable)
