import numpy as np
import pytest

import puresep as ps
from helpers import basis_pair, mixed_battery
from puresep.oracle import cut_matrix, is_decisive


def test_oracle_examples():
    rep = ps.oracle_schmidt(ps.cat_state(2))
    assert not rep.separable and rep.schmidt_numbers == (2, 2)
    np.testing.assert_allclose(rep.singular_values[0], [2**-0.5] * 2, atol=1e-15)
    rep = ps.oracle_schmidt(ps.w_state(3))
    np.testing.assert_allclose(rep.singular_values[0] ** 2, [2 / 3, 1 / 3], atol=1e-15)
    assert ps.oracle_schmidt(ps.random_product_state((2, 3, 4), 0)).separable
    assert ps.oracle_schmidt(ps.basis_state((2, 2), (1, 0))).margin == 0


def test_cut_matrix_layout():
    state = ps.random_state((2, 3, 2), 7)
    for k in range(3):
        np.testing.assert_array_equal(cut_matrix(state, k), ps.build_unfolding(state, k).entries)


def test_decisiveness_band():
    assert is_decisive(1e-10) and is_decisive(1e-6)
    assert not is_decisive(1e-8) and not is_decisive(1e-9) and not is_decisive(1e-7)


def test_cross_validate_small_battery():
    battery = mixed_battery(340, seed=1)
    report = ps.cross_validate(battery)
    assert report.unanimous
    assert report.decisive_count + len(report.indecisive) == len(battery)
    assert report.agreement["oracle"]["oracle"] == report.decisive_count
    assert "disagreements" in report.summary()


def test_cross_validate_flags_indecisive():
    base = ps.random_product_state((2, 2), 0)
    near = ps.perturb(base, basis_pair((2, 2)), 1e-8)
    report = ps.cross_validate([near, ps.cat_state(2)])
    assert report.indecisive == [0]
    assert report.decisive_count == 1


def test_cross_validate_empty():
    with pytest.raises(ValueError):
        ps.cross_validate([])
