# coding: utf-8

# # Four separability criteria
#
# Each criterion looks at the unfoldings in a different way:
#
# - `det`: `det(M_k M_k^dagger - E)` must vanish for every party
# - `rank`: the second singular value of every `M_k` must be negligible
# - `minors`: every 2x2 minor of every `M_k` must vanish
# - `prop`: all columns of the pruned `M_k` must be proportional to the pivot column

# %%
import puresep as ps

states = {
    "GHZ": ps.cat_state(3),
    "W": ps.w_state(3),
    "product": ps.random_product_state((2, 3, 2), seed=1),
}
criteria = {
    "det": ps.det_criterion,
    "rank": ps.rank_criterion,
    "minors": ps.minor_criterion,
    "prop": ps.proportionality_criterion,
}
for label, state in states.items():
    print(label, {name: fn(state).separable for name, fn in criteria.items()})

# %% [markdown]
# ## The determinant value of a cat state
#
# For every cat state and every party the determinant is exactly 1/4.

# %%
for n in range(2, 7):
    v = ps.det_criterion(ps.cat_state(n))
    print(n, [round(e.value, 12) for e in v.per_party])

# %% [markdown]
# ## Witnesses
#
# A failed zero-test reports where it failed.  For the GHZ state the pivot of
# `M_1` is `sqrt(2)/2` in row 0, and the second column has a zero there, so the
# residual of the second column is `sqrt(2)/2` times that column.

# %%
v = ps.proportionality_criterion(ps.cat_state(3))
w = v.witness
print(w.party, w.rows, w.cols, w.value)
print("still violated from raw amplitudes:", w.recheck(ps.cat_state(3)))

# %%
# The minors witness for W is the first vanishing-test failure in scan order.

w = ps.minor_criterion(ps.w_state(3)).witness
print(w.rows, w.cols, w.value)

# %% [markdown]
# `classify` runs several criteria and raises `CriteriaConflict` if they
# ever disagree.

# %%
print(ps.classify(ps.w_state(4)).separable)
