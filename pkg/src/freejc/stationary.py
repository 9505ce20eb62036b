"""Simultaneous eigenstates of the Hamiltonian and the total momentum.

The total momentum P commutes with H, so H maps every P-eigenspace into
itself.  :func:`solve_joint` diagonalises P once, keeps the eigenvalue
cluster at the requested p and diagonalises the projected Hamiltonian.

P never shifts the plane-wave index, so its spectrum is {q + n + j} with
j an integer in [-N, N]; a sector at momentum p is non-empty only when
p - q is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la

from .hilbert import LOWER, UPPER, TruncatedSpace, make_space
from .operators import h_total, p_total, t_op

TWO_PI = 2.0 * np.pi


class EmptySectorError(LookupError):
    """No eigenstate of the total momentum at the requested value."""


@dataclass(frozen=True)
class AmplitudeField:
    """Fourier coefficients of a_m(eta), b_m(eta) on the grid exp(i (q + n) eta).

    ``coefficients`` is a flat vector in the ordering of ``space``; with unit
    Euclidean norm the per-period normalisation
    sum_m int_0^{2pi} (|a_m|^2 + |b_m|^2) d eta / 2pi = 1 holds by Parseval.
    """

    space: TruncatedSpace
    coefficients: np.ndarray

    def a(self, m):
        """Fourier coefficients of a_m over n = -n_max..n_max."""
        return self._block(LOWER, m)

    def b(self, m):
        return self._block(UPPER, m)

    def _block(self, level, m):
        s = self.space
        start = s.index(level, m, -s.n_max)
        return self.coefficients[start:start + s.n_values.size]

    def norm(self):
        return float(np.linalg.norm(self.coefficients))

    def edge_weight(self, margin=2):
        """Probability carried by plane waves within ``margin`` of the cutoff."""
        outside = ~self.space.interior_mask(margin)
        return float(np.sum(np.abs(self.coefficients[outside]) ** 2))


@dataclass(frozen=True)
class StationaryState:
    eps: float
    p: float
    N: int
    alpha: float
    amplitudes: AmplitudeField
    energy_residual: float
    momentum_residual: float
    t_value: complex
    energy_offset: float = 0.0
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def eps_rel(self):
        """Energy relative to N hbar Omega."""
        return self.eps - self.energy_offset

    def lower_weight(self):
        c = self.amplitudes.coefficients
        return float(np.sum(np.abs(c[self.amplitudes.space.level == LOWER]) ** 2))

    def to_record(self):
        """JSON-ready dict (complex coefficients split into re/im lists)."""
        s = self.amplitudes.space
        c = self.amplitudes.coefficients
        nz = np.flatnonzero(np.abs(c) > 1e-14)
        return {
            "eps": float(self.eps),
            "eps_rel": float(self.eps_rel),
            "p": float(self.p),
            "N": int(self.N),
            "alpha": float(self.alpha),
            "q": s.momentum_offset,
            "n_max": s.n_max,
            "residuals": {"energy": self.energy_residual, "momentum": self.momentum_residual},
            "t_value": [float(self.t_value.real), float(self.t_value.imag)],
            "normalization": "per-period",
            "coefficients": [
                {
                    "level": "upper" if s.level[i] == UPPER else "lower",
                    "m": int(s.m[i]),
                    "n": int(s.n[i]),
                    "re": float(c[i].real),
                    "im": float(c[i].imag),
                }
                for i in nz
            ],
        }


def _dense(op):
    return op.matrix.toarray()


def momentum_sector(space, params, p, tol=None):
    """Orthonormal basis (columns) of the P-eigenspace at eigenvalue ``p``.

    ``tol`` is the eigenvalue cluster width; default 1e-9 * ||P||.  An empty
    (dim x 0) array is returned when ``p`` is not in the spectrum.
    """
    if tol is not None and tol <= 0:
        raise ValueError("tol must be positive")
    N = space.n_excitations
    lo = space.momentum_offset - space.n_max - N
    hi = space.momentum_offset + space.n_max + N
    if not lo <= p <= hi:
        raise ValueError(f"p={p} outside the representable range [{lo}, {hi}]")
    P = _dense(p_total(space, params))
    w, v = la.eigh(P)
    if tol is None:
        tol = 1e-9 * max(np.max(np.abs(w)), 1.0)
    return v[:, np.abs(w - p) <= tol]


def solve_joint(space, params, p, k_eigs=None, tol=None):
    """Joint eigenstates of H and P at momentum ``p``, sorted by energy.

    Raises :class:`EmptySectorError` when no state has total momentum p.
    """
    V = momentum_sector(space, params, p, tol)
    if V.shape[1] == 0:
        raise EmptySectorError(f"no states at momentum p={p} (q={space.momentum_offset})")
    H = _dense(h_total(space, params))
    P = _dense(p_total(space, params))
    T = t_op(space).diagonal_values()
    w, u = la.eigh(V.conj().T @ H @ V)
    psi = V @ u
    if k_eigs is not None:
        w, psi = w[:k_eigs], psi[:, :k_eigs]

    states = []
    for eps, vec in zip(w, psi.T):
        vec = _fix_phase(vec)
        res_h = float(np.linalg.norm(H @ vec - eps * vec))
        res_p = float(np.linalg.norm(P @ vec - p * vec))
        states.append(StationaryState(
            eps=float(eps),
            p=float(p),
            N=space.n_excitations,
            alpha=params.alpha,
            amplitudes=AmplitudeField(space, vec),
            energy_residual=res_h,
            momentum_residual=res_p,
            t_value=complex(np.vdot(vec, T * vec)),
            energy_offset=params.energy_offset,
        ))
    return states


def _fix_phase(vec):
    # largest component real positive: deterministic output
    k = int(np.argmax(np.abs(vec)))
    return vec * (abs(vec[k]) / vec[k])


def reduce_traveling(params, p, N=None):
    """Constant-coefficient eigenproblem for the traveling-wave basis (alpha = 0).

    At alpha = 0 each Fock component is a single plane wave:
    a_m ~ exp(i (p - 2m + N) eta), b_m ~ exp(i (p - 2m + N - 1) eta).
    Returns ``(matrix, labels)`` with energies relative to N Omega;
    ``labels`` are (amplitude, m, momentum) tuples.
    """
    if N is None:
        N = params.N
    if params.alpha != 0:
        raise ValueError("the plane-wave reduction requires alpha = 0")
    labels = [("a", m, p - (2 * m - N)) for m in range(N + 1)]
    labels += [("b", m, p - (2 * m - N + 1)) for m in range(N)]
    dim = 2 * N + 1
    M = np.zeros((dim, dim))
    for i, (kind, m, k) in enumerate(labels):
        M[i, i] = k * k + (params.Delta if kind == "b" else 0.0)
    for m in range(N):
        b = N + 1 + m
        M[b, m + 1] = M[m + 1, b] = -params.zeta * np.sqrt(m + 1)  # a_{m+1} via mode 1
        M[b, m] = M[m, b] = -params.zeta * np.sqrt(N - m)  # a_m via mode 2
    return M, labels


def traveling_energies(params, p, N=None):
    M, _ = reduce_traveling(params, p, N)
    return la.eigvalsh(M)


def amplitudes_on_grid(state, n_samples=512):
    """Synthesize a_m(eta), b_m(eta) on eta = 2 pi j / n_samples.

    Returns ``(eta, a, b)`` with ``a`` of shape (N + 1, n_samples) and ``b``
    of shape (N, n_samples).
    """
    amps = state.amplitudes if isinstance(state, StationaryState) else state
    s = amps.space
    if n_samples < 2 * (2 * s.n_max + 1):
        raise ValueError(f"n_samples={n_samples} undersamples n_max={s.n_max}")
    eta = TWO_PI * np.arange(n_samples) / n_samples
    basis = np.exp(1j * np.outer(s.momentum_offset + s.n_values, eta))
    N = s.n_excitations
    a = np.array([amps.a(m) @ basis for m in range(N + 1)])
    b = np.array([amps.b(m) @ basis for m in range(N)]).reshape(N, n_samples)
    return eta, a, b


def q_scan(params, p, q_values, n_max=12, k_eigs=None):
    """Joint eigenstates at fixed total momentum for a range of offsets q.

    Returns a list of ``(q, states)``; ``states`` is empty for offsets at
    which p is not in the spectrum of P.
    """
    out = []
    for q in q_values:
        space = make_space(params.N, q, n_max)
        try:
            states = solve_joint(space, params, p, k_eigs)
        except (EmptySectorError, ValueError):
            states = []
        out.append((float(q), states))
    return out
