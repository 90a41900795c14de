import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import puresep as ps
from puresep.oracle import cut_matrix


def brute_unfolding(state, k):
    dims = state.dims
    rest = [range(x) for j, x in enumerate(dims) if j != k]
    rows = []
    for comp in itertools.product(*rest):
        row = []
        for c in range(dims[k]):
            multi = comp[:k] + (c,) + comp[k:]
            row.append(state.amplitude(multi))
        rows.append(row)
    return np.array(rows)


def test_cat2_unfolding():
    m = ps.build_unfolding(ps.cat_state(2), 0).entries
    np.testing.assert_allclose(m, [[2**-0.5, 0], [0, 2**-0.5]])


def test_basis_unfolding():
    m = ps.build_unfolding(ps.basis_state((2, 2), (0, 0)), 0).entries
    np.testing.assert_array_equal(m, [[1, 0], [0, 0]])


def test_cat3_middle_party():
    m = ps.build_unfolding(ps.cat_state(3), 1).entries
    expected = brute_unfolding(ps.cat_state(3), 1)
    np.testing.assert_array_equal(m, expected)
    assert m.shape == (4, 2)
    assert m[0, 0] == pytest.approx(2**-0.5) and m[3, 1] == pytest.approx(2**-0.5)
    assert np.count_nonzero(m) == 2


def test_bad_party():
    with pytest.raises(IndexError):
        ps.build_unfolding(ps.cat_state(2), 2)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4).map(tuple), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_unfolding_layout_and_round_trip(dims, seed):
    state = ps.random_state(dims, seed)
    for k in range(state.n):
        unf = ps.build_unfolding(state, k)
        assert unf.rows * unf.cols == state.d
        np.testing.assert_array_equal(unf.entries, brute_unfolding(state, k))
        np.testing.assert_array_equal(unf.scatter(), state.amplitudes)
        assert abs(np.linalg.norm(unf.entries) ** 2 - 1) <= 1e-9
        for row in (0, unf.rows - 1):
            for col in range(unf.cols):
                assert unf.entries[row, col] == state.amplitude(unf.multi_index(row, col))


def test_prune_examples():
    cat = ps.prune(ps.build_unfolding(ps.cat_state(2), 0))
    assert cat.shape == (2, 2)
    one = ps.prune(ps.build_unfolding(ps.basis_state((2, 2), (0, 0)), 0))
    np.testing.assert_array_equal(one.entries, [[1]])
    w = ps.prune(ps.build_unfolding(ps.w_state(3), 0))
    # w3 amplitudes: M_1 rows (0,0),(0,1),(1,0),(1,1); row (1,1) has a_011 = a_111 = 0
    assert w.shape == (3, 2)
    assert list(w.kept_rows) == [0, 1, 2]
    assert list(w.kept_cols) == [0, 1]


@pytest.mark.parametrize("seed", range(20))
def test_prune_preserves_rank(seed):
    rng = np.random.default_rng(seed)
    dims = tuple(int(x) for x in rng.integers(2, 4, size=3))
    amps = ps.random_state(dims, seed).amplitudes.copy()
    amps[rng.random(amps.size) < 0.5] = 0
    if not np.any(amps):
        amps[0] = 1
    state = ps.normalize(ps.PureState(dims, amps))
    for k in range(state.n):
        unf = ps.build_unfolding(state, k)
        pr = ps.prune(unf)
        ref = np.linalg.matrix_rank(cut_matrix(state, k))
        assert np.linalg.matrix_rank(pr.entries) == ref
        assert np.all(np.diff(pr.kept_rows) > 0) and np.all(np.diff(pr.kept_cols) > 0)
        assert np.all(np.abs(pr.entries).max(axis=1) > 1e-12)
        assert np.all(np.abs(pr.entries).max(axis=0) > 1e-12)
