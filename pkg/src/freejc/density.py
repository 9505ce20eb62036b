"""Reduced centre-of-mass density and its uniformity/periodicity metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adiabatic import gauge_factor
from .stationary import StationaryState, amplitudes_on_grid

TWO_PI = 2.0 * np.pi
DEFAULT_SAMPLES = 512


@dataclass(frozen=True)
class DensityProfile:
    eta: np.ndarray
    rho: np.ndarray

    def mean(self):
        return float(np.mean(self.rho))


def reduced_density(eta, components):
    """rho(eta) = sum over photon/atom components of |amplitude(eta)|^2.

    ``components`` is an iterable of sampled amplitudes a_m(eta), b_m(eta)
    on the uniform grid ``eta`` over [0, 2 pi).
    """
    eta = np.asarray(eta, dtype=float)
    rho = np.zeros(eta.shape)
    for c in components:
        c = np.asarray(c)
        if c.shape != eta.shape:
            raise ValueError("component and grid shapes differ")
        rho += np.abs(c) ** 2
    return DensityProfile(eta, rho)


def state_density(state, n_samples=DEFAULT_SAMPLES):
    """Density of a joint eigenstate, ground and excited amplitudes included."""
    if not isinstance(state, StationaryState):
        raise TypeError("expected a StationaryState")
    eta, a, b = amplitudes_on_grid(state, n_samples)
    return reduced_density(eta, list(a) + list(b))


def floquet_density(fstate):
    """|a0|^2 + |a1|^2 of a Floquet state from the Hill reduction."""
    return reduced_density(fstate.eta, [fstate.a0, fstate.a1])


def density_from_gauged(eta, abar0, a1, xi):
    """Undo abar0 = a0 exp(-xi/4 cos 2 eta) before forming the density."""
    return reduced_density(eta, [np.asarray(abar0) / gauge_factor(xi, eta), a1])


def uniformity(d):
    """max |rho - mean(rho)|; zero for a flat profile."""
    return float(np.max(np.abs(d.rho - np.mean(d.rho))))


def periodicity(d, period):
    """max |rho(eta) - rho(eta + period)| using band-limited (Fourier) shifting."""
    rho = np.asarray(d.rho, dtype=float)
    n = rho.size
    spacing = TWO_PI / n
    shift = period / spacing
    if abs(shift - round(shift)) < 1e-9:
        shifted = np.roll(rho, -int(round(shift)))
    else:
        k = np.fft.fftfreq(n, 1.0 / n)
        shifted = np.fft.ifft(np.fft.fft(rho) * np.exp(1j * k * period)).real
    return float(np.max(np.abs(rho - shifted)))
