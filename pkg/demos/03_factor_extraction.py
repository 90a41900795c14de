# coding: utf-8

# # Recovering the product factors
#
# When a state is separable, each factor is the largest row of its unfolding,
# normalized.  The global phase is put on the first factor, so the rebuilt
# product has a real positive overlap with the input.

# %%
import numpy as np

import puresep as ps

truth = ps.random_product_factors((2, 3, 4), seed=11)
state = ps.product_state(truth)
factors = ps.extract_factors(state)

for f, g in zip(factors, truth):
    print(f.dims, abs(ps.inner_product(f, g)))

# %%
rebuilt = ps.product_state(factors)
print("fidelity", abs(ps.inner_product(rebuilt, state)))
print("max amplitude error", np.abs(rebuilt.amplitudes - state.amplitudes).max())

# %%
# Entangled states have no factors.

try:
    ps.extract_factors(ps.cat_state(2))
except ps.EntangledStateError as exc:
    print("refused:", exc)
