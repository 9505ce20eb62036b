"""Classical monochromatic field in a rotated pair of counter-propagating modes.

Units: k = 1, c = 1, so z is measured in 1/k and omega = 1.  Energies are
returned in units of 2*eps0 and momenta in units of 2*eps0/c, both per unit
length (spatial average over one period).

The mode pair is

    chi_1(z) =  cos(a) e^{iz} + sin(a) e^{-iz}
    chi_2(z) = -sin(a) e^{iz} + cos(a) e^{-iz}

and a field E(z) = f1 chi_1 + f2 chi_2 has plane-wave coefficients
(g+, g-) = R(a)^T (f1, f2).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

MIN_SAMPLES = 64
TWO_PI = 2.0 * np.pi


class ModeAmplitudes(NamedTuple):
    f1: complex
    f2: complex


class FieldProfile(NamedTuple):
    """Complex spatial amplitudes of E and B on a uniform grid over one period."""

    z: np.ndarray
    E: np.ndarray
    B: np.ndarray


def canonical_angle(alpha, f=None):
    """Reduce ``alpha`` into [0, pi/2) and relabel the amplitudes accordingly.

    R(alpha + pi/2) maps chi_1 -> chi_2 and chi_2 -> -chi_1, so the same
    physical field is described by (alpha - pi/2, (-f2, f1)).  Returns
    ``(alpha_reduced, ModeAmplitudes)`` (amplitudes ``None`` if not given).
    """
    turns = int(np.floor(alpha / (np.pi / 2)))
    reduced = alpha - turns * (np.pi / 2)
    if f is None:
        return reduced, None
    f1, f2 = complex(f[0]), complex(f[1])
    for _ in range(turns % 4):
        f1, f2 = -f2, f1
    return reduced, ModeAmplitudes(f1, f2)


def mode_pair(alpha):
    """Coefficients of (chi_1, chi_2) over (e^{iz}, e^{-iz}); rows are modes."""
    c, s = np.cos(alpha), np.sin(alpha)
    return np.array([[c, s], [-s, c]])


def plane_wave_coefficients(f, alpha):
    """Return (g+, g-), the e^{+iz} and e^{-iz} coefficients of E(z)."""
    return mode_pair(alpha).T @ np.asarray(f, dtype=complex)


def assemble_fields(f, alpha, n_samples=256):
    """Sample E(z) and B(z) over z in [0, 2 pi).

    B follows the sign convention B = (1/c)(e x e_z) * [-f1(cos a e^{iz} -
    sin a e^{-iz}) + f2(cos a e^{-iz} + sin a e^{iz})]; only the scalar
    component along (e x e_z) is stored.
    """
    if n_samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {n_samples}")
    f1, f2 = complex(f[0]), complex(f[1])
    c, s = np.cos(alpha), np.sin(alpha)
    z = TWO_PI * np.arange(n_samples) / n_samples
    ep, em = np.exp(1j * z), np.exp(-1j * z)
    E = f1 * (c * ep + s * em) + f2 * (-s * ep + c * em)
    B = -f1 * (c * ep - s * em) + f2 * (c * em + s * ep)
    return FieldProfile(z, E, B)


def energy_closed(f):
    f1, f2 = complex(f[0]), complex(f[1])
    return abs(f1) ** 2 + abs(f2) ** 2


def momentum_closed(f, alpha):
    f1, f2 = complex(f[0]), complex(f[1])
    diagonal = abs(f1) ** 2 - abs(f2) ** 2
    cross = 2.0 * (f1.conjugate() * f2).real
    return np.cos(2 * alpha) * diagonal - np.sin(2 * alpha) * cross


def _check_periodic_grid(profile):
    z = np.asarray(profile.z, dtype=float)
    n = z.size
    if n < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {n}")
    if len(profile.E) != n or len(profile.B) != n:
        raise ValueError("E, B and z must have the same length")
    dz = TWO_PI / n
    # the grid must tile exactly one period, endpoint excluded
    if not np.allclose(np.diff(z), dz, rtol=0, atol=1e-12 * TWO_PI):
        raise ValueError("samples do not form a uniform grid over one period [z0, z0 + 2pi)")


def energy_integrated(profile):
    """Period average of eps0 |E|^2 + |B|^2 / mu0, in units of 2 eps0 (c = 1)."""
    _check_periodic_grid(profile)
    density = 0.5 * (np.abs(profile.E) ** 2 + np.abs(profile.B) ** 2)
    # trapezoid on a periodic uniform grid is the plain mean
    return float(np.mean(density))


def momentum_integrated(profile):
    """Period average of eps0 (E x B* + E* x B) along e_z, in units of 2 eps0 / c.

    e x (e x e_z) = -e_z for a transverse polarisation e, hence the sign.
    """
    _check_periodic_grid(profile)
    density = -np.real(profile.E * np.conj(profile.B))
    return float(np.mean(density))


def basis_change(f, alpha_from, alpha_to):
    """Re-express the field described by ``f`` in the basis ``alpha_to``."""
    g = plane_wave_coefficients(f, alpha_from)
    f1, f2 = mode_pair(alpha_to) @ g
    return ModeAmplitudes(complex(f1), complex(f2))
