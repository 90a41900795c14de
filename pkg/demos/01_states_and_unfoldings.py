# coding: utf-8

# # States and unfoldings
#
# A pure state of n parties is a vector of `d = d_1 * ... * d_n` complex
# amplitudes.  Flat positions run with the last party fastest.

# %%
import numpy as np

import puresep as ps

ghz = ps.cat_state(3)
print(ghz.dims, ghz.d)
print(np.flatnonzero(ghz.amplitudes))   # |000> and |111>

# %%
# `flat_index` and `multi_index` convert between the two addressings.

print(ps.flat_index((2, 3, 2), (1, 2, 0)))
print(ps.multi_index((2, 3, 2), 10))

# %% [markdown]
# ## Mode-k unfoldings
#
# `M_k` has one column per level of party k and one row per setting of all
# the other parties.  A state is fully separable exactly when every `M_k`
# has rank one.

# %%
unf = ps.build_unfolding(ps.w_state(3), 0)
print(unf.entries.real.round(3))

# %%
# Zero rows and columns can be removed without changing the rank.

pruned = ps.prune(unf)
print(pruned.shape, pruned.kept_rows, pruned.kept_cols)

# %% [markdown]
# ## Reduced densities
#
# `M_k M_k^dagger` is the density of the remaining parties after tracing out
# party k.  It matches the explicit partial trace to rounding.

# %%
state = ps.random_state((2, 3, 2), seed=7)
for k in range(state.n):
    u = ps.build_unfolding(state, k)
    diff = ps.gram_large(u).entries - ps.partial_trace(state, k).entries
    print(k, np.abs(diff).max())
