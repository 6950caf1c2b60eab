import math

import numpy as np
import pytest

from aoa_pla.arrays import (
    ArrayGeometry,
    AttackerConfig,
    NoiseModel,
    SignalBlock,
    synthesize_attack,
    synthesize_legitimate,
)
from aoa_pla.music import (
    DegenerateSpectrumError,
    NonHermitianError,
    estimate_aoa,
    hermitian_eig,
    pseudospectrum,
    sample_covariance,
    _angle_grid,
    _find_peaks,
)


def test_sample_covariance_matches_direct_sum():
    rng = np.random.default_rng(0)
    x = rng.standard_normal((4, 9)) + 1j * rng.standard_normal((4, 9))
    block = SignalBlock(x)
    cov = sample_covariance(block)
    direct = sum(np.outer(x[:, i], x[:, i].conj()) for i in range(9)) / 9
    assert np.allclose(cov, direct, atol=1e-13)
    assert np.allclose(cov, cov.conj().T, atol=0.0)


def test_hermitian_eig_residual_and_orthonormality():
    rng = np.random.default_rng(1)
    raw = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    mat = raw + raw.conj().T
    vals, vecs = hermitian_eig(mat)
    assert np.all(np.diff(vals) >= 0)
    assert np.allclose(mat @ vecs, vecs * vals, atol=1e-12)
    assert np.allclose(vecs.conj().T @ vecs, np.eye(6), atol=1e-12)


def test_hermitian_eig_rejects_bad_input():
    with pytest.raises(NonHermitianError):
        hermitian_eig(np.array([[1.0, 2.0], [3.0, 1.0]]))
    with pytest.raises(ValueError):
        hermitian_eig(np.zeros((2, 3)))


def test_angle_grid_contains_round_decimals():
    grid = _angle_grid(0.001)
    assert 0.2 in grid
    assert -0.4 in grid
    assert grid[0] >= -math.pi / 2 and grid[-1] <= math.pi / 2
    assert np.all(np.diff(grid) > 0)


def test_find_peaks_tie_breaks_toward_smaller_angle():
    grid = np.array([-1.0, 0.0, 1.0, 2.0, 3.0])
    values = np.array([0.0, 5.0, 0.0, 5.0, 0.0])
    peaks = _find_peaks(grid, values)
    assert peaks[0] == (0.0, 5.0)
    assert peaks[1] == (2.0, 5.0)


def test_noiseless_estimate_is_exact_on_grid():
    geom = ArrayGeometry(16)
    block = synthesize_legitimate(geom, 0.4, NoiseModel.noiseless(), 8, 0)
    est = estimate_aoa(block, geom, num_sources=1, grid_step=0.001)
    assert est[0] == pytest.approx(0.4, abs=1e-12)


def test_noisy_estimate_close_to_truth():
    geom = ArrayGeometry(16)
    block = synthesize_legitimate(geom, -0.3, NoiseModel.from_db(15.0), 2000, 3)
    est = estimate_aoa(block, geom)[0]
    assert abs(est + 0.3) <= 0.01


def test_attack_from_alias_angle_estimated_as_legitimate():
    # sin(pi - theta) = sin(theta): a 1D ULA cannot tell them apart
    geom = ArrayGeometry(16)
    theta = 0.4
    att = AttackerConfig.single(math.pi - theta)
    block = synthesize_attack(geom, att, NoiseModel.noiseless(), 4, 0)
    est = estimate_aoa(block, geom)[0]
    assert est == pytest.approx(theta, abs=1e-12)


def test_two_source_estimation():
    geom = ArrayGeometry(16)
    rng = np.random.default_rng(5)
    a1 = np.exp(-1j * math.pi * np.arange(16) * math.sin(0.4))
    a2 = np.exp(-1j * math.pi * np.arange(16) * math.sin(-0.2))
    s = rng.standard_normal((2, 400)) + 1j * rng.standard_normal((2, 400))
    x = np.column_stack([a1, a2]) @ s
    x += 0.01 * (rng.standard_normal(x.shape) + 1j * rng.standard_normal(x.shape))
    est = sorted(estimate_aoa(SignalBlock(x), geom, num_sources=2))
    assert est[0] == pytest.approx(-0.2, abs=0.01)
    assert est[1] == pytest.approx(0.4, abs=0.01)


def test_pseudospectrum_finite_in_noiseless_case():
    geom = ArrayGeometry(8)
    block = synthesize_legitimate(geom, 0.1, NoiseModel.noiseless(), 4, 0)
    spec = pseudospectrum(sample_covariance(block), geom)
    assert np.all(np.isfinite(spec.values))
    assert spec.peaks[0][0] == pytest.approx(0.1, abs=1e-12)


def test_pseudospectrum_validation():
    geom = ArrayGeometry(4)
    block = synthesize_legitimate(geom, 0.1, NoiseModel.noiseless(), 4, 0)
    cov = sample_covariance(block)
    with pytest.raises(ValueError):
        pseudospectrum(cov, geom, num_sources=4)
    with pytest.raises(ValueError):
        pseudospectrum(cov, geom, num_sources=0)


def test_degenerate_spectrum_raises():
    # a one-point grid cannot host a strict local maximum
    geom = ArrayGeometry(3)
    block = synthesize_legitimate(geom, 0.1, NoiseModel.noiseless(), 4, 0)
    with pytest.raises(DegenerateSpectrumError):
        estimate_aoa(block, geom, grid_step=2.0)
