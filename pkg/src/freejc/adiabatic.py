"""One excitation, large detuning: effective light-shift model and Hill bands.

After eliminating the excited amplitude the ground amplitudes feel the light
shift xi = zeta^2 / Delta.  In the traveling-wave basis the problem is a 2x2
matrix; in the standing-wave basis (alpha = pi/4) the amplitude a0 obeys

    a0'' + xi sin(2 eta) a0' + (eps + xi (1 - cos 2eta - i p sin 2eta)) a0 = 0,

and abar0 = a0 exp(-xi/4 cos 2eta) satisfies the Hill equation
abar0'' + Q(eta) abar0 = 0 with

    Q = eps + xi (1 - 2 cos 2eta - i p sin 2eta) - (xi^2 / 4) sin^2 2eta.

Bands are read off the monodromy trace D(eps) over one period pi:
|D| <= 2 inside a band, with quasi-momentum arccos(D/2)/pi.  Dropping the
xi^2 term leaves a Mathieu equation in the shifted variable eta - i phi
with a = eps + xi and q = xi sqrt(1 - p^2/4); its characteristic values are
computed from truncated tridiagonal Fourier matrices.

All energies here are eps_rel = eps - hbar Omega (recoil units).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

log = logging.getLogger(__name__)

# coefficient of xi^2 sin^2(2 eta) in Q, from removing the first-derivative term
QUADRATIC_COEFF = -0.25
TWO_PI = 2.0 * np.pi


class IntegrationError(RuntimeError):
    def __init__(self, message, nfev=None, t_reached=None):
        super().__init__(f"{message} (nfev={nfev}, t_reached={t_reached})")
        self.nfev = nfev
        self.t_reached = t_reached


@dataclass(frozen=True)
class EffectiveParams:
    xi: float
    p: float = 0.0
    eps_rel: float | None = None
    # max(xi, |eps_rel|) / Delta; the elimination needs this << 1
    validity_ratio: float = 0.0


def adiabatic_eliminate(params, p=0.0, eps_rel=None):
    """Light-shift coupling xi = zeta^2 / Delta for N = 1 at large detuning."""
    if params.Delta <= 0:
        raise ValueError("adiabatic elimination needs Delta > 0 (excited level above)")
    xi = params.zeta ** 2 / params.Delta
    scale = max(xi, abs(eps_rel) if eps_rel is not None else 0.0)
    return EffectiveParams(xi=xi, p=p, eps_rel=eps_rel, validity_ratio=scale / params.Delta)


# -- traveling waves ---------------------------------------------------------

def traveling_matrix(xi, p):
    """Effective 2x2 Hamiltonian on (a0 e^{i(p+1)eta}, a1 e^{i(p-1)eta})."""
    return np.array([[(p + 1) ** 2 - xi, -xi], [-xi, (p - 1) ** 2 - xi]])


def spectrum_traveling(xi, p):
    """(eps_minus, eps_plus) = 1 + p^2 - xi -/+ sqrt(4 p^2 + xi^2)."""
    root = np.sqrt(4 * p * p + xi * xi)
    base = 1 + p * p - xi
    return base - root, base + root


def traveling_amplitudes(xi, p, branch="minus"):
    """Real normalised (a0, a1) of the requested branch.

    Sign fixed so that the larger component is positive.
    """
    if branch not in ("minus", "plus"):
        raise ValueError("branch must be 'minus' or 'plus'")
    w, v = la.eigh(traveling_matrix(xi, p))
    vec = v[:, 0 if branch == "minus" else 1]
    vec = vec * np.sign(vec[np.argmax(np.abs(vec))])
    return float(vec[0]), float(vec[1])


def traveling_state(xi, p, branch="minus", n_samples=512):
    """Sampled a0(eta), a1(eta) of a traveling-wave state, eta in [0, 2 pi)."""
    a0, a1 = traveling_amplitudes(xi, p, branch)
    eta = TWO_PI * np.arange(n_samples) / n_samples
    return eta, a0 * np.exp(1j * (p + 1) * eta), a1 * np.exp(1j * (p - 1) * eta)


# -- Hill equation -----------------------------------------------------------

def hill_potential(xi, p, eta, quadratic=QUADRATIC_COEFF):
    """Q(eta) - eps_rel."""
    s2 = np.sin(2 * eta)
    return xi * (1 - 2 * np.cos(2 * eta) - 1j * p * s2) + quadratic * xi * xi * s2 * s2


def hill_coefficient(xi, p, eps_rel, quadratic=QUADRATIC_COEFF):
    """Return Q as a vectorised function of eta (period pi)."""
    def Q(eta):
        return eps_rel + hill_potential(xi, p, np.asarray(eta, dtype=float), quadratic)
    return Q


def gauge_factor(xi, eta):
    """abar0 = a0 * gauge_factor; removes the first-derivative term."""
    return np.exp(-0.25 * xi * np.cos(2 * np.asarray(eta)))


def _integrate(rhs, y0, t_span, ode_tol, t_eval=None):
    sol = solve_ivp(rhs, t_span, y0, method="DOP853", rtol=ode_tol,
                    atol=ode_tol * 1e-3, t_eval=t_eval)
    if not sol.success:
        raise IntegrationError(sol.message, sol.nfev, sol.t[-1] if sol.t.size else None)
    return sol


def monodromy(xi, p, eps_rel, ode_tol=1e-10, quadratic=QUADRATIC_COEFF):
    """Monodromy matrices over [0, pi] for one or many energies.

    Columns are the solutions started from (1, 0) and (0, 1).  Returns shape
    (2, 2) for scalar ``eps_rel`` and (M, 2, 2) for an array.  All energies
    are advanced in one integration.
    """
    if ode_tol <= 0:
        raise ValueError("ode_tol must be positive")
    eps = np.atleast_1d(np.asarray(eps_rel, dtype=float))
    M = eps.size

    def rhs(t, y):
        y = y.reshape(4, M)
        q = eps + hill_potential(xi, p, t, quadratic)
        return np.concatenate([y[1], -q * y[0], y[3], -q * y[2]])

    y0 = np.zeros((4, M), dtype=complex)
    y0[0] = 1.0
    y0[3] = 1.0
    sol = _integrate(rhs, y0.ravel(), (0.0, np.pi), ode_tol)
    y = sol.y[:, -1].reshape(4, M)
    mono = np.empty((M, 2, 2), dtype=complex)
    mono[:, 0, 0], mono[:, 1, 0] = y[0], y[1]
    mono[:, 0, 1], mono[:, 1, 1] = y[2], y[3]
    return mono[0] if np.ndim(eps_rel) == 0 else mono


def floquet_discriminant(xi, p, eps_rel, ode_tol=1e-10, quadratic=QUADRATIC_COEFF):
    """Trace of the monodromy matrix; 2 cos(pi sqrt(eps)) at xi = 0."""
    mono = monodromy(xi, p, eps_rel, ode_tol, quadratic)
    return np.trace(mono, axis1=-2, axis2=-1)


@dataclass
class Band:
    index: int
    lower: float
    upper: float
    eps: np.ndarray
    p_quasi: np.ndarray
    open_lower: bool = False
    open_upper: bool = False


@dataclass
class Gap:
    index: int
    lower: float
    upper: float

    @property
    def width(self):
        return self.upper - self.lower


@dataclass
class BandStructure:
    xi: float
    p: float
    bands: list
    gaps: list
    max_imag_discriminant: float = 0.0
    settings: dict = field(default_factory=dict)

    def edges(self):
        """Closed band edges in increasing order."""
        out = []
        for b in self.bands:
            if not b.open_lower:
                out.append(b.lower)
            if not b.open_upper:
                out.append(b.upper)
        return out

    def rows(self):
        """(band_index, eps_rel, p_quasi) rows for tabular output."""
        return [(b.index, float(e), float(k))
                for b in self.bands for e, k in zip(b.eps, b.p_quasi)]


def _p_quasi(d):
    return np.arccos(np.clip(np.real(d) / 2.0, -1.0, 1.0)) / np.pi


def band_structure(xi, p, eps_range=(-1.0, 5.0), eps_step=0.01, ode_tol=1e-10,
                   quadratic=QUADRATIC_COEFF, edge_tol=1e-9, band_slack=1e-7):
    """Bands of the Hill equation over ``eps_range``.

    A grid point is inside a band when |Re D| <= 2 + band_slack; the slack
    keeps tangential touchings (closed gaps) from registering as gaps.
    Edges are refined by bracketing root search on Re D = +/-2 to
    ``edge_tol``.  Bands cut by the scan window are flagged open.
    """
    lo, hi = map(float, eps_range)
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi <= lo:
        raise ValueError("eps_range must be a finite increasing pair")
    if eps_step <= 0:
        raise ValueError("eps_step must be positive")
    grid = np.arange(lo, hi + 0.5 * eps_step, eps_step)
    d = floquet_discriminant(xi, p, grid, ode_tol, quadratic)
    im_max = float(np.max(np.abs(d.imag)))
    if im_max > 1e-6:
        log.warning("discriminant has |Im D| up to %.3g at xi=%g, p=%g", im_max, xi, p)
    re = d.real
    inside = np.abs(re) <= 2.0 + band_slack

    def D(e):
        return float(floquet_discriminant(xi, p, e, ode_tol, quadratic).real)

    def edge(i_out, i_in):
        target = 2.0 * np.sign(re[i_out])
        a, b = sorted((grid[i_out], grid[i_in]))
        fa, fb = D(a) - target, D(b) - target
        if fa * fb > 0:
            return grid[i_in]
        return brentq(lambda e: D(e) - target, a, b, xtol=edge_tol, rtol=4 * np.finfo(float).eps)

    bands = []
    i = 0
    while i < grid.size:
        if not inside[i]:
            i += 1
            continue
        j = i
        while j + 1 < grid.size and inside[j + 1]:
            j += 1
        open_lo, open_hi = i == 0, j == grid.size - 1
        lower = grid[i] if open_lo else edge(i - 1, i)
        upper = grid[j] if open_hi else edge(j + 1, j)
        interior = grid[i:j + 1]
        interior = interior[(interior > lower) & (interior < upper)]
        eps = np.concatenate([[lower], interior, [upper]])
        dvals = np.concatenate([[D(lower)], re[i:j + 1][(grid[i:j + 1] > lower) & (grid[i:j + 1] < upper)], [D(upper)]])
        bands.append(Band(len(bands), float(lower), float(upper), eps, _p_quasi(dvals), open_lo, open_hi))
        i = j + 1

    gaps = [Gap(k, bands[k].upper, bands[k + 1].lower) for k in range(len(bands) - 1)]
    settings = dict(eps_range=[lo, hi], eps_step=eps_step, ode_tol=ode_tol,
                    quadratic=quadratic, edge_tol=edge_tol, band_slack=band_slack)
    return BandStructure(xi, p, bands, gaps, im_max, settings)


# -- Mathieu approximation ---------------------------------------------------

def mathieu_characteristic(q, n_levels=3, dim=40):
    """Characteristic values a_0..a_n and b_1..b_n of y'' + (a - 2q cos 2x) y = 0.

    Four symmetric tridiagonal Fourier matrices (cos/sin, period pi/2pi),
    each truncated at ``dim`` terms.
    """
    if dim < 2 * n_levels + 2:
        raise ValueError("dim too small for the requested number of levels")
    r = np.arange(dim, dtype=float)
    off = np.full(dim - 1, float(q))

    off_even = off.copy()
    off_even[0] *= np.sqrt(2.0)
    a_even = la.eigh_tridiagonal((2 * r) ** 2, off_even, eigvals_only=True)
    d = (2 * r + 1) ** 2
    a_odd = la.eigh_tridiagonal(d + np.r_[q, np.zeros(dim - 1)], off, eigvals_only=True)
    b_odd = la.eigh_tridiagonal(d - np.r_[q, np.zeros(dim - 1)], off, eigvals_only=True)
    b_even = la.eigh_tridiagonal((2 * r + 2) ** 2, off, eigvals_only=True)

    a = np.empty(n_levels + 1)
    b = np.empty(n_levels)
    for k in range(n_levels + 1):
        a[k] = a_even[k // 2] if k % 2 == 0 else a_odd[k // 2]
    for k in range(1, n_levels + 1):
        b[k - 1] = b_odd[(k - 1) // 2] if k % 2 == 1 else b_even[(k - 2) // 2]
    return a, b


def complex_shift(p):
    """phi with cosh 2phi = 1/sqrt(1 - p^2/4), signed like p."""
    if abs(p) >= 2:
        raise ValueError("the Mathieu mapping needs |p| < 2 (sqrt(1 - p^2/4) real)")
    return 0.5 * np.arctanh(p / 2.0)


@dataclass(frozen=True)
class MathieuEdges:
    q_eff: float
    phi: float
    labels: tuple
    edges: np.ndarray

    def gaps(self):
        """(lower, upper) of gaps 1..n: (b_r - xi, a_r - xi)."""
        return [(self.edges[2 * r - 1], self.edges[2 * r]) for r in range(1, (len(self.edges) + 1) // 2)]


def mathieu_bands(xi, p, n_levels=3, dim=40):
    """Band edges eps_rel = a_0, b_1, a_1, ..., b_n, a_n minus xi at q = xi sqrt(1 - p^2/4)."""
    phi = complex_shift(p)
    q_eff = xi * np.sqrt(1 - p * p / 4.0)
    a, b = mathieu_characteristic(q_eff, n_levels, dim)
    labels = ["a0"]
    values = [a[0]]
    for r in range(1, n_levels + 1):
        labels += [f"b{r}", f"a{r}"]
        values += [b[r - 1], a[r]]
    return MathieuEdges(float(q_eff), float(phi), tuple(labels), np.array(values) - xi)


# -- Floquet states ----------------------------------------------------------

def spectral_derivative(f, bloch=0.0):
    """d f / d eta on eta = 2 pi j / n, for f(eta) exp(-i bloch eta) 2pi-periodic."""
    f = np.asarray(f, dtype=complex)
    n = f.size
    eta = TWO_PI * np.arange(n) / n
    carrier = np.exp(1j * bloch * eta)
    u = f / carrier
    k = np.fft.fftfreq(n, 1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    du = np.fft.ifft(1j * k * np.fft.fft(u))
    return carrier * (du + 1j * bloch * u)


def a1_from_a0(a0, p, bloch=0.0):
    """a1 = (-i d/d eta - p) a0 on a uniform periodic grid."""
    return -1j * spectral_derivative(a0, bloch) - p * np.asarray(a0)


@dataclass
class FloquetState:
    xi: float
    p: float
    eps_rel: float
    p_quasi: float
    multiplier: complex
    eta: np.ndarray
    abar0: np.ndarray
    dabar0: np.ndarray
    a0: np.ndarray
    a1: np.ndarray


def floquet_state(xi, p, eps_rel, n_samples=512, ode_tol=1e-10,
                  quadratic=QUADRATIC_COEFF, quasi_sign=1):
    """Bloch solution of the Hill equation at ``eps_rel`` and its amplitudes.

    The multiplier is exp(i pi p_quasi) with p_quasi = quasi_sign *
    arccos(Re D / 2) / pi, i.e. in [0, 1] or [-1, 0].  Its Bloch vector is the null vector of (M - rho) via SVD,
    which stays well conditioned at band edges where M is a Jordan block.
    The solution is integrated over the full [0, 2 pi) grid and scaled so
    that the period mean of |a0|^2 + |a1|^2 is 1.
    """
    mono = monodromy(xi, p, eps_rel, ode_tol, quadratic)
    d = np.trace(mono)
    if abs(d.real) > 2.0 + 1e-6:
        raise ValueError(f"eps_rel={eps_rel} is not inside a band (D={d})")
    if quasi_sign not in (1, -1):
        raise ValueError("quasi_sign must be +1 or -1")
    p_quasi = quasi_sign * float(_p_quasi(d))
    rho = np.exp(1j * np.pi * p_quasi)
    _, _, vh = la.svd(mono - rho * np.eye(2))
    start = vh[-1].conj()

    eta = TWO_PI * np.arange(n_samples) / n_samples

    def rhs(t, y):
        return np.array([y[1], -(eps_rel + hill_potential(xi, p, t, quadratic)) * y[0]])

    sol = _integrate(rhs, start.astype(complex), (0.0, float(eta[-1])), ode_tol, t_eval=eta)
    abar0, dabar0 = sol.y
    a0 = abar0 / gauge_factor(xi, eta)
    a1 = a1_from_a0(a0, p, bloch=p_quasi)
    scale = np.sqrt(np.mean(np.abs(a0) ** 2 + np.abs(a1) ** 2))
    return FloquetState(xi, p, float(eps_rel), p_quasi, complex(rho), eta,
                        abar0 / scale, dabar0 / scale, a0 / scale, a1 / scale)


def lowest_band_edge(xi, p, ode_tol=1e-10, quadratic=QUADRATIC_COEFF, edge_tol=1e-9):
    """Bottom of the lowest band (D = +2, p_quasi = 0)."""
    def D(e):
        return float(floquet_discriminant(xi, p, e, ode_tol, quadratic).real)

    # Q is bounded below by eps - xi(3 + |p|) - |quadratic| xi^2, so below that D > 2
    hi = -xi * (3 + abs(p)) - abs(quadratic) * xi * xi - 0.5
    while D(hi) <= 2.0:
        hi -= 1.0
    lo = hi
    step = 0.05
    while D(hi) > 2.0:
        lo, hi = hi, hi + step
    return brentq(lambda e: D(e) - 2.0, lo, hi, xtol=edge_tol, rtol=4 * np.finfo(float).eps)


def ground_band_state(xi, p, n_samples=512, ode_tol=1e-10, quadratic=QUADRATIC_COEFF):
    return floquet_state(xi, p, lowest_band_edge(xi, p, ode_tol, quadratic), n_samples, ode_tol, quadratic)


def integrate_ungauged(xi, p, eps_rel, a0_init, da0_init, eta, ode_tol=1e-10):
    """Integrate the a0 equation with its first-derivative term, no gauge."""
    def rhs(t, y):
        s2 = np.sin(2 * t)
        q = eps_rel + xi * (1 - np.cos(2 * t) - 1j * p * s2)
        return np.array([y[1], -xi * s2 * y[1] - q * y[0]])

    sol = _integrate(rhs, np.array([a0_init, da0_init], dtype=complex),
                     (float(eta[0]), float(eta[-1])), ode_tol, t_eval=eta)
    return sol.y[0]


def second_momentum_residual(state):
    """Max |i a1' + p a1 + a0| / max |a0| at alpha = pi/4.

    The a0 Hill equation uses only one of the two momentum equations; the
    other one holds only when p_quasi = p + 1 (mod 2).
    """
    da1 = spectral_derivative(state.a1, state.p_quasi)
    res = 1j * da1 + state.p * state.a1 + state.a0
    return float(np.max(np.abs(res)) / np.max(np.abs(state.a0)))
