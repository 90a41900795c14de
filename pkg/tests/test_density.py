import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import puresep as ps
from puresep._linalg import jacobi_eigh, jacobi_gram_spectrum, lu_determinant
from puresep.counters import OpCounters
from puresep.oracle import cut_matrix


def brute_partial_trace(state, k):
    """rho_k[i, j] = sum over the other parties of a(.., i, ..) conj(a(.., j, ..))."""
    dims = state.dims
    out = np.zeros((dims[k], dims[k]), dtype=complex)
    rest = [range(x) for j, x in enumerate(dims) if j != k]
    for comp in itertools.product(*rest):
        for i in range(dims[k]):
            for j in range(dims[k]):
                a = state.amplitude(comp[:k] + (i,) + comp[k:])
                b = state.amplitude(comp[:k] + (j,) + comp[k:])
                out[i, j] += a * np.conj(b)
    return out


def test_cat2_grams():
    unf = ps.build_unfolding(ps.cat_state(2), 0)
    np.testing.assert_allclose(ps.gram_large(unf).entries, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(ps.gram_small(unf).entries, np.eye(2) / 2, atol=1e-15)


def test_basis_gram_large():
    unf = ps.build_unfolding(ps.basis_state((2, 2), (0, 0)), 0)
    np.testing.assert_array_equal(ps.gram_large(unf).entries, [[1, 0], [0, 0]])


def test_product_gram_large_is_rank_one():
    unf = ps.build_unfolding(ps.random_product_state((2, 3), 4), 0)
    lam = np.linalg.eigvalsh(ps.gram_large(unf).entries)
    assert lam[-1] == pytest.approx(1, abs=1e-12)
    assert np.all(np.abs(lam[:-1]) < 1e-12)


def test_partial_trace_of_cat2():
    for k in (0, 1):
        np.testing.assert_allclose(ps.partial_trace(ps.cat_state(2), k).entries,
                                   np.eye(2) / 2, atol=1e-15)


def brute_trace_out(state, k):
    """Density of the other parties with party k summed out, indexed like the rows of M_k."""
    dims = state.dims
    comps = list(itertools.product(*[range(x) for j, x in enumerate(dims) if j != k]))
    out = np.zeros((len(comps), len(comps)), dtype=complex)
    for i, ci in enumerate(comps):
        for j, cj in enumerate(comps):
            for c in range(dims[k]):
                out[i, j] += (state.amplitude(ci[:k] + (c,) + ci[k:])
                              * np.conj(state.amplitude(cj[:k] + (c,) + cj[k:])))
    return out


def test_w3_reductions_brute_force():
    w = ps.w_state(3)
    np.testing.assert_allclose(brute_partial_trace(w, 0), np.diag([2 / 3, 1 / 3]), atol=1e-15)
    np.testing.assert_allclose(ps.gram_small(ps.build_unfolding(w, 0)).entries,
                               np.diag([2 / 3, 1 / 3]), atol=1e-15)
    rho = ps.partial_trace(w, 0).entries
    np.testing.assert_allclose(rho, brute_trace_out(w, 0), atol=1e-15)
    third = 1 / 3
    np.testing.assert_allclose(rho, [[third, 0, 0, 0], [0, third, third, 0],
                                     [0, third, third, 0], [0, 0, 0, 0]], atol=1e-15)


@given(st.lists(st.integers(1, 3), min_size=2, max_size=3).map(tuple), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_gram_large_is_partial_trace(dims, seed):
    state = ps.random_state(dims, seed)
    for k in range(state.n):
        unf = ps.build_unfolding(state, k)
        g = ps.gram_large(unf).entries
        # M M^dagger is indexed by the complement; it is the trace over party k
        complement = [x for j, x in enumerate(dims) if j != k]
        assert g.shape == (int(np.prod(complement)),) * 2
        np.testing.assert_allclose(g, ps.partial_trace(state, k).entries, atol=1e-12)
        np.testing.assert_allclose(g, brute_trace_out(state, k), atol=1e-12)
        rho_small = ps.gram_small(unf).entries
        np.testing.assert_allclose(rho_small, brute_partial_trace(state, k).T, atol=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_reduced_density_properties(seed):
    state = ps.random_state((2, 3, 2), seed)
    for k in range(state.n):
        unf = ps.build_unfolding(state, k)
        for rho in (ps.gram_large(unf), ps.gram_small(unf), ps.partial_trace(state, k)):
            rho.check()
            assert rho.trace() == pytest.approx(1, abs=1e-12)
            lam = rho.eigenvalues()
            assert np.all(lam >= -1e-12)
            assert np.all(np.diff(lam) <= 1e-15)


@given(st.integers(1, 6), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_jacobi_eigh_matches_lapack(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = a + a.conj().T
    lam, vec = jacobi_eigh(h)
    np.testing.assert_allclose(lam, np.sort(np.linalg.eigvalsh(h))[::-1],
                               atol=1e-12 * max(1, np.abs(h).max()))
    np.testing.assert_allclose(h @ vec, vec * lam, atol=1e-10 * max(1, np.abs(h).max()))


@given(st.lists(st.integers(1, 4), min_size=2, max_size=3).map(tuple), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_spectra_agree(dims, seed):
    state = ps.random_state(dims, seed)
    for k in range(state.n):
        unf = ps.build_unfolding(state, k)
        one_sided = ps.gram_spectrum(unf)
        two_sided = ps.gram_small(unf).eigenvalues()
        big = ps.gram_large(unf).eigenvalues()
        lapack = np.linalg.svd(cut_matrix(state, k), compute_uv=False) ** 2
        m = lapack.size
        np.testing.assert_allclose(one_sided[:m], lapack, atol=1e-12)
        np.testing.assert_allclose(two_sided[:m], lapack, atol=1e-12)
        np.testing.assert_allclose(big[:m], lapack, atol=1e-12)
        assert np.all(np.abs(big[m:]) < 1e-12)


def test_one_sided_resolves_tiny_singular_values():
    # sigma_2 = 1e-12 sits far below sqrt(eps) of an explicit Gram matrix
    u, _ = np.linalg.qr(np.random.default_rng(0).normal(size=(6, 2)))
    v, _ = np.linalg.qr(np.random.default_rng(1).normal(size=(2, 2)))
    m = u @ np.diag([1.0, 1e-12]) @ v.T
    lam = jacobi_gram_spectrum(m.astype(complex))
    assert np.sqrt(lam[1]) == pytest.approx(1e-12, rel=1e-3)


def test_lu_determinant():
    rng = np.random.default_rng(3)
    for n in (1, 2, 5, 9):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        c = OpCounters()
        assert lu_determinant(a, c) == pytest.approx(np.linalg.det(a), rel=1e-10)
        assert c.phase_total("det") > 0
    assert lu_determinant(np.zeros((3, 3))) == 0


def test_jacobi_gram_counts_cubic_in_rows_times_cols():
    c = OpCounters()
    jacobi_gram_spectrum(ps.build_unfolding(ps.random_state((2, 2, 2), 0), 0).entries, counter=c)
    assert c.phase_total("jacobi") > 0
