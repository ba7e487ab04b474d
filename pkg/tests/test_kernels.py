import os
import subprocess
import sys

import numpy as np
import pytest

from extgevrey import _kernels


def test_w0_paths_agree():
    x = np.concatenate([
        np.array([0.0, 1e-9, 5e-5, 1e-4, 0.5, 1.0, np.e]),
        np.logspace(1, 300, 200),
    ])
    a = _kernels.w0_grid_njit(x)
    b = _kernels.w0_grid_numpy(x)
    np.testing.assert_allclose(a, b, rtol=1e-14, atol=1e-300)


def test_assoc_sup_paths_agree():
    lnk = np.linspace(0.0, 25.0, 150)
    for lnh in (-1.0, 0.0, 0.7):
        va, pa = _kernels.assoc_sup_grid_njit(lnk, lnh, 1.0, 2.0)
        vb, pb = _kernels.assoc_sup_grid_numpy(lnk, lnh, 1.0, 2.0)
        np.testing.assert_allclose(va, vb, rtol=1e-13, atol=1e-13)
        np.testing.assert_array_equal(pa, pb)


def test_counting_paths_agree():
    lnk = np.linspace(0.0, 30.0, 200)
    va, ca = _kernels.counting_sum_grid_njit(lnk, 1.0, 2.0)
    vb, cb = _kernels.counting_sum_grid_numpy(lnk, 1.0, 2.0)
    np.testing.assert_allclose(va, vb, rtol=1e-12, atol=1e-12)
    np.testing.assert_array_equal(ca, cb)


def test_scan_cap_is_past_the_maximizer():
    for tau, sigma, lnh, lnk in ((1.0, 2.0, 0.0, 20.0), (0.5, 1.5, 1.5, 25.0),
                                 (2.0, 3.0, -2.0, 10.0)):
        cap = _kernels._scan_cap(tau, sigma, abs(lnh), abs(lnk))
        _, best_p = _kernels._assoc_sup_scalar(lnk, lnh, tau, sigma)
        assert best_p < cap
        # the objective really is decreasing at the cap
        g = lambda p: _kernels._assoc_objective(float(p), lnk, lnh, tau, sigma)
        assert g(cap + 1) < g(cap)


@pytest.mark.parametrize("flag,expected", [("", True), ("1", False)])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, EXTGEVREY_NO_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c",
         "from extgevrey import NUMBA_ENABLED; print(NUMBA_ENABLED)"],
        env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == str(expected)


def test_numpy_backend_end_to_end():
    env = dict(os.environ, EXTGEVREY_NO_NUMBA="1")
    code = (
        "import math\n"
        "from extgevrey import SequenceParams, assoc_fn_sup, lambert_w0\n"
        "assert abs(lambert_w0(1.0) - 0.5671432904097838) < 1e-14\n"
        "r = assoc_fn_sup(SequenceParams(1.0, 2.0), 1.0, 1e6)\n"
        "assert abs(r.value - 33.081332453938846515) < 1e-10\n"
        "print('ok')\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "ok"
