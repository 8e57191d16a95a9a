"""Shared helpers: deterministic random baths and states."""

import numpy as np
import pytest

from quasifree import BathSpec, kossakowski, propagate_exact, vacuum


def random_cp_bath(rng, strength=1.0, damping_bias=0.8, omega_scale=0.5):
    """A random completely positive bath with a damping-dominated diagonal.

    The Kossakowski matrix is a random PSD matrix scaled to the requested
    spectral norm, with extra decay added on the eta block so that evolutions
    stay well inside a moderate Fock cutoff.
    """
    r = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    c = r @ r.conj().T
    c *= strength / np.linalg.eigvalsh(c).max()
    c[:2, :2] += damping_bias * np.eye(2)
    q = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    om = q @ q.conj().T
    om *= rng.uniform(0.0, omega_scale) / np.linalg.eigvalsh(om).max()
    return bath_from_kossakowski(c, om)


def rotated_collective_bath(rng):
    """A rank-one dissipative bath along a random mode direction, with
    parameters inside the asymptotic-entanglement window (so trajectories
    from the vacuum become entangled within t ~ 1)."""
    w = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    w /= np.linalg.norm(w)
    eta = rng.uniform(0.7, 1.0)
    sigma = rng.uniform(0.3, 0.55) * eta
    lam = np.sqrt(rng.uniform(0.9, 1.0) * eta * sigma) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    c22 = np.array([[eta, np.conj(lam)], [lam, sigma]])
    c = np.kron(c22, np.outer(w, w.conj()))
    return bath_from_kossakowski(c, np.zeros((2, 2)))


def bath_from_kossakowski(c, omega):
    """Read (eta, sigma, lam) back out of a 4x4 Kossakowski matrix laid out
    as [[eta, lam*], [lam^T, sigma]]."""
    bath = BathSpec(omega=omega, eta=c[:2, :2], sigma=c[2:, 2:], lam=c[2:, :2].T)
    assert np.abs(kossakowski(bath) - c).max() < 1e-12
    return bath


def random_physical_covariance(rng, t=0.7):
    """A generic physical two-mode covariance: the vacuum evolved for a while
    under a random CP bath."""
    return propagate_exact(vacuum(2), random_cp_bath(rng, strength=rng.uniform(0.4, 1.5)), t)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
