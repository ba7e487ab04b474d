import numpy as np
import pytest

from extgevrey import (
    SequenceParams,
    UsageError,
    check_T_phi_equivalence,
    check_corollary,
    check_matrix_equivalence,
    check_ocena_norme,
    conjugate_matrix,
    default_k_grid,
    extended_matrix,
)


def test_default_k_grid_spans_12_decades():
    k = default_k_grid()
    assert k[0] == pytest.approx(np.e)
    assert k[-1] == pytest.approx(1e12)


def test_t_phi_equivalence_holds():
    rep = check_T_phi_equivalence(SequenceParams(1.0, 2.0))
    assert rep.holds
    fc = rep.fitted_constants
    assert 0 < fc["B"] <= fc["A"]
    assert rep.max_violation <= 1e-8


def test_t_phi_tau_scaling_band():
    rep = check_T_phi_equivalence(SequenceParams(1.0, 2.0))
    fc = rep.fitted_constants
    assert fc["scaling_expected"] == pytest.approx(2.0)
    assert 1.0 <= fc["scaling_ratio_A"] <= 4.0
    assert 1.0 <= fc["scaling_ratio_B"] <= 4.0


def test_t_phi_h_robustness():
    # the band fit still succeeds away from h = 1; the additive-offset
    # relation between different h values is covered by h_shift_check
    r2 = check_T_phi_equivalence(SequenceParams(1.0, 2.0), h=10.0,
                                 check_tau_scaling=False)
    assert r2.holds
    assert r2.fitted_constants["B"] > 0


@pytest.mark.parametrize("sigma", [1.5, 2.0, 3.0])
@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0])
def test_ocena_norme_stabilizes(sigma, tau):
    rep = check_ocena_norme(sigma, tau, 1000)
    assert rep.holds
    fc = rep.fitted_constants
    assert fc["H2"] < fc["H1"]
    assert np.isfinite(fc["logC1"]) and np.isfinite(fc["logC2"])


def test_matrix_self_equivalence():
    M = extended_matrix(2.0, [0.5, 1.0, 2.0])
    rep = check_matrix_equivalence(M, M, 300)
    assert rep.holds
    # identity matching with log C = 0
    for tau in (0.5, 1.0, 2.0):
        assert rep.fitted_constants[f"M_sigma:{tau:g}<=M_sigma:{tau:g}"] == 0.0
        assert rep.fitted_constants[f"M_sigma:{tau:g}>=M_sigma:{tau:g}"] == 0.0


def test_matrix_equivalence_with_conjugate_family():
    taus = [0.5, 1.0, 2.0]
    Hs = set()
    for tau in taus:
        fc = check_ocena_norme(2.0, tau, 300).fitted_constants
        Hs.update((fc["H1"], fc["H2"]))
    M = extended_matrix(2.0, taus)
    N = conjugate_matrix(2.0, sorted(Hs))
    rep = check_matrix_equivalence(M, N, 300)
    assert rep.holds
    assert rep.notes == ""


def test_matrix_orphan_is_reported():
    M = extended_matrix(2.0, [4.0])
    N = conjugate_matrix(2.0, [0.5])     # far too slow to dominate M_4
    rep = check_matrix_equivalence(M, N, 200)
    assert not rep.holds
    assert "no" in rep.notes


def test_matrix_guards():
    M = extended_matrix(2.0, [1.0])
    N = conjugate_matrix(3.0, [1.0])
    with pytest.raises(UsageError):
        check_matrix_equivalence(M, N, 100)
    with pytest.raises(UsageError):
        check_matrix_equivalence(M, extended_matrix(2.0, []), 100)


@pytest.mark.parametrize("s", [2.0, 3.0])
def test_corollary_band(s):
    rep = check_corollary(s)
    assert rep.holds
    fc = rep.fitted_constants
    assert fc["band"] <= 10.0
    assert fc["c1"] > 0


def test_corollary_needs_s_above_one():
    with pytest.raises(UsageError):
        check_corollary(1.0)


def test_reports_serialize_deterministically():
    a = check_T_phi_equivalence(SequenceParams(1.0, 2.0)).to_dict()
    b = check_T_phi_equivalence(SequenceParams(1.0, 2.0)).to_dict()
    assert a == b
