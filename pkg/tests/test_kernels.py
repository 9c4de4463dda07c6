import os
import subprocess
import sys

import numpy as np
import pytest

from comp_noma import SchemeId, estimate_esc, set_backend, active_backend
from comp_noma import kernels


def test_env_flag_selects_numpy_fallback():
    env = dict(os.environ, COMP_NOMA_NUMBA="0")
    result = subprocess.run(
        [sys.executable, "-c",
         "import comp_noma; print(comp_noma.active_backend())"],
        capture_output=True, text=True, env=env, timeout=600)
    assert result.returncode == 0, result.stderr
    assert result.stdout.strip() == "numpy"


def test_default_backend_prefers_numba():
    env = dict(os.environ)
    env.pop("COMP_NOMA_NUMBA", None)
    result = subprocess.run(
        [sys.executable, "-c",
         "import comp_noma; print(comp_noma.active_backend())"],
        capture_output=True, text=True, env=env, timeout=600)
    assert result.returncode == 0, result.stderr
    assert result.stdout.strip() == "numba"


def test_backends_produce_matching_estimates(default_layout, default_stats,
                                             params_20db):
    if active_backend() != "numba":
        pytest.skip("numba backend unavailable")
    original = active_backend()
    try:
        set_backend("numba")
        fast = estimate_esc(default_layout, default_stats, params_20db,
                            SchemeId.COMP_VPNOMA, trials=20_000, seed=8)
        set_backend("numpy")
        slow = estimate_esc(default_layout, default_stats, params_20db,
                            SchemeId.COMP_VPNOMA, trials=20_000, seed=8)
    finally:
        set_backend(original)
    assert slow.mean_total == pytest.approx(fast.mean_total, rel=1e-9)
    assert slow.ci95_halfwidth == pytest.approx(fast.ci95_halfwidth, rel=1e-6)


def test_chunked_and_whole_stream_agree():
    sigma = np.linspace(0.2, 2.0, 18).reshape(3, 6)
    whole = kernels.gains_chunk_numpy(5, 0, 3 * kernels.CHUNK_TRIALS, sigma)
    pieces = [kernels.gains_chunk_numpy(5, i * kernels.CHUNK_TRIALS,
                                        kernels.CHUNK_TRIALS, sigma)
              for i in range(3)]
    assert np.array_equal(whole, np.concatenate(pieces))


def test_unit_interval_draws_are_strictly_inside():
    sigma = np.ones((3, 6))
    gains = kernels.gains_chunk_numpy(123, 0, 50_000, sigma)
    assert np.all(gains > 0.0)
    assert np.all(np.isfinite(gains))
