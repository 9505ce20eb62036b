"""Hamiltonian, momentum, excitation-number and parity-translation operators.

Everything is dimensionless: energies in recoil units E_rec = hbar^2 k^2 / 2M,
momenta in hbar k, position eta = k z.

Detuning convention: the bare excited level lies ``Delta`` above the
photon energy, hbar omega_0 / E_rec = Omega + Delta.  With Delta > 0 the
ground-state manifold is pushed down by the light shift zeta^2 / Delta, which
is the sign the adiabatic formulas in :mod:`freejc.adiabatic` rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import (
    UPPER,
    SparseOperator,
    atom_sigma,
    cm_momentum,
    mode_hopping,
    mode_lowering,
    photon_number,
    translation_phase,
)


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters in recoil units.

    Omega : photon energy hbar omega / E_rec
    Delta : detuning; excited level at Omega + Delta
    zeta  : dipole coupling beta / E_rec (real, non-negative)
    alpha : second-quantization basis angle (radians)
    N     : excitation number
    """

    Omega: float = 100.0
    Delta: float = 100.0
    zeta: float = 1.0
    alpha: float = 0.0
    N: int = 1

    def __post_init__(self):
        for name in ("Omega", "Delta", "zeta", "alpha"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.zeta < 0:
            raise ValueError("zeta must be non-negative (phase absorbed into the Fock states)")
        if int(self.N) != self.N or self.N < 0:
            raise ValueError(f"N must be a non-negative integer, got {self.N}")

    @property
    def omega0(self):
        """Atomic transition energy in recoil units."""
        return self.Omega + self.Delta

    @property
    def energy_offset(self):
        """N hbar Omega, subtracted when energies are reported."""
        return self.N * self.Omega


def _check(space, params):
    if space.n_excitations != params.N:
        raise ValueError(f"space has N={space.n_excitations}, params have N={params.N}")


def h_field(space, params):
    _check(space, params)
    n1, n2 = photon_number(space, 1), photon_number(space, 2)
    return params.Omega * (n1 + n2)


def p_field(space, params):
    """cos 2a (n1 - n2) - sin 2a (a1^+ a2 + a2^+ a1), units hbar k."""
    _check(space, params)
    a = params.alpha
    diag = photon_number(space, 1) - photon_number(space, 2)
    hop = mode_hopping(space, 1, 2) + mode_hopping(space, 2, 1)
    return np.cos(2 * a) * diag - np.sin(2 * a) * hop


def h_atom(space, params):
    """Kinetic energy (q + n)^2 plus omega_0 on the excited level."""
    _check(space, params)
    values = space.momenta ** 2 + params.omega0 * (space.level == UPPER)
    return SparseOperator.diagonal(space, values)


def h_inter(space, params):
    """-zeta sigma+ [chi_1(eta) a_1 + chi_2(eta) a_2] + h.c.

    chi_1 = cos a e^{i eta} + sin a e^{-i eta},
    chi_2 = cos a e^{-i eta} - sin a e^{i eta}.
    """
    _check(space, params)
    c, s = np.cos(params.alpha), np.sin(params.alpha)
    up, down = translation_phase(space, 1), translation_phase(space, -1)
    L1, L2 = mode_lowering(space, 1), mode_lowering(space, 2)
    raising = up @ (c * L1 - s * L2) + down @ (s * L1 + c * L2)
    return -params.zeta * (raising + raising.H)


def h_total(space, params):
    return h_atom(space, params) + h_field(space, params) + h_inter(space, params)


def p_total(space, params):
    return cm_momentum(space) + p_field(space, params)


def n_op(space):
    upper = SparseOperator.diagonal(space, (space.level == UPPER).astype(float))
    return upper + photon_number(space, 1) + photon_number(space, 2)


def t_op(space):
    """sigma_3 times translation by half a wavelength: diagonal sigma_3 e^{i pi (q+n)}."""
    sigma3 = atom_sigma(space, "z").diagonal_values().real
    return SparseOperator.diagonal(space, sigma3 * np.exp(1j * np.pi * space.momenta))


def observables(space, params):
    """The commuting set {H, P, N, T} as a dict."""
    return {
        "H": h_total(space, params),
        "P": p_total(space, params),
        "N": n_op(space),
        "T": t_op(space),
    }
