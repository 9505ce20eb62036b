"""Acceptance criteria A1-A8.

Each test records one PASS/FAIL line; the lines are printed as they are
produced and again in the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` for the bare list.
"""

import itertools
import time

import numpy as np
import pytest

from freejc import adiabatic as ad
from freejc import classical_field as cf
from freejc.density import floquet_density, periodicity, reduced_density, state_density, uniformity
from freejc.hilbert import LOWER, commutator, interior_norm, make_space
from freejc.operators import SystemParams, h_total, observables
from freejc.stationary import q_scan, solve_joint

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

pytestmark = pytest.mark.acceptance

XI = 0.5


def _record(tag, ok, detail):
    line = f"{tag} {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_a1_classical_closed_forms():
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    worst_e = worst_p = 0.0
    cross_cases = 0
    for _ in range(200):
        f = rng.normal(size=2) + 1j * rng.normal(size=2)
        alpha = rng.uniform(0, 2 * np.pi)
        prof = cf.assemble_fields(f, alpha, 256)
        e, p = cf.energy_closed(f), cf.momentum_closed(f, alpha)
        worst_e = max(worst_e, abs(cf.energy_integrated(prof) - e) / e)
        worst_p = max(worst_p, abs(cf.momentum_integrated(prof) - p) / max(abs(p), 1e-300))
        cross_cases += abs(f[0] * f[1]) > 1e-3 and abs(np.sin(2 * alpha)) > 1e-3
    dt = time.perf_counter() - t0
    ok = worst_e < 1e-10 and worst_p < 1e-10 and cross_cases > 0 and dt < 1.0
    _record("A1", ok, f"energy rel {worst_e:.2e}, momentum rel {worst_p:.2e} (tol 1e-10), "
                      f"{cross_cases} cases with cross term, {dt:.2f}s (< 1s)")


def test_a2_commuting_set():
    t0 = time.perf_counter()
    worst = 0.0
    for N, alpha, zeta in itertools.product((1, 2), (0.0, 0.3, np.pi / 4), (0.0, 1.0, 5.0)):
        ops = observables(make_space(N, 0.3, 12), SystemParams(zeta=zeta, alpha=alpha, N=N))
        for (_, A), (_, B) in itertools.combinations(ops.items(), 2):
            worst = max(worst, interior_norm(commutator(A, B), 2))
    dt = time.perf_counter() - t0
    _record("A2", worst < 1e-10 and dt < 10, f"max interior commutator {worst:.2e} (tol 1e-10), {dt:.2f}s (< 10s)")


def _a_dominant(states, k=2):
    return sorted(sorted(states, key=lambda s: -s.lower_weight())[:k], key=lambda s: s.eps_rel)


def test_a3_traveling_spectrum():
    params = SystemParams(zeta=1.0, Delta=100.0, alpha=0.0, N=1)
    xi = params.zeta ** 2 / params.Delta
    worst = 0.0
    for p in (0.0, 0.5, 1.0):
        states = _a_dominant(solve_joint(make_space(1, p - round(p), 12), params, p))
        ref = ad.spectrum_traveling(xi, p)
        split = ref[1] - ref[0]
        err = max(abs(s.eps_rel - r) for s, r in zip(states, ref)) / split
        worst = max(worst, err)
    _record("A3", worst < 1e-2, f"max |eps - eps_pm| / splitting {worst:.3e} (tol 1e-2)")


def test_a4_band_structure_and_method_agreement():
    t0 = time.perf_counter()
    bs = ad.band_structure(XI, 0.0, (-1.0, 2.0), 0.01)
    floquet = np.array(bs.edges()[:3])
    mathieu = ad.mathieu_bands(XI, 0.0, n_levels=1).edges[:3]
    method_diff = float(np.max(np.abs(floquet - mathieu)))

    # direct solver in the standing-wave basis, xi = zeta^2 / Delta at large Delta
    Delta = 1e4
    params = SystemParams(Delta=Delta, zeta=np.sqrt(XI * Delta), alpha=np.pi / 4)
    scan = q_scan(params, 0.0, np.linspace(-0.5, 0.5, 5), n_max=12)
    eps = np.sort([s.eps_rel for _, states in scan for s in states if s.lower_weight() > 0.5])
    gap = bs.gaps[0]
    # the gap is the empty interval between consecutive direct levels that brackets it
    i = int(np.searchsorted(eps, 0.5 * (gap.lower + gap.upper)))
    direct = (eps[i - 1], eps[i])
    scan_diff = max(abs(direct[0] - gap.lower), abs(direct[1] - gap.upper))
    dt = time.perf_counter() - t0
    ok = method_diff < 1e-3 and scan_diff < 1e-3 and dt < 30
    _record("A4", ok, f"Floquet vs Mathieu first three edges max diff {method_diff:.3e} (tol 1e-3); "
                      f"direct gap [{direct[0]:.5f}, {direct[1]:.5f}] vs Floquet "
                      f"[{gap.lower:.5f}, {gap.upper:.5f}] diff {scan_diff:.2e} (tol 1e-3); {dt:.1f}s")


def test_a5_gap_monotonicity():
    t0 = time.perf_counter()
    ps = (0.0, 0.5, 1.0, 1.5, 1.8)
    widths = [ad.band_structure(XI, p, (-1.0, 2.5), 0.01).gaps[0].width for p in ps]
    dt = time.perf_counter() - t0
    ok = bool(np.all(np.diff(widths) < 0)) and dt < 30
    _record("A5", ok, "first-gap widths " + ", ".join(f"{w:.5f}" for w in widths)
            + f" strictly decreasing, {dt:.1f}s (< 30s)")


def test_a6_density_dichotomy():
    t0 = time.perf_counter()
    params = SystemParams(zeta=1.0, Delta=100.0, alpha=0.0)
    flat = [uniformity(state_density(s)) for p in (0.0, 0.5) for s in solve_joint(make_space(1, p - round(p), 12), params, p)]
    for p in (0.0, 0.5):
        eta, a0, a1 = ad.traveling_state(XI, p)
        flat.append(uniformity(reduced_density(eta, [a0, a1])))
    d = floquet_density(ad.ground_band_state(XI, 0.0))
    per, uni = periodicity(d, np.pi), uniformity(d)
    dt = time.perf_counter() - t0
    ok = max(flat) < 1e-10 and per < 1e-8 and uni > 1e-3 and dt < 10
    _record("A6", ok, f"alpha=0 uniformity {max(flat):.2e} (< 1e-10); alpha=pi/4 periodicity {per:.2e} "
                      f"(< 1e-8), uniformity {uni:.3f} (> 1e-3); {dt:.2f}s")


def test_a7_traveling_eigenvector_structure():
    params = SystemParams(zeta=1.0, Delta=100.0, alpha=0.0)
    xi = params.zeta ** 2 / params.Delta
    support_ok = True
    norm_err = 0.0
    for p in (0.0, 0.5, 1.0):
        space = make_space(1, p - round(p), 12)
        for s in solve_joint(space, params, p):
            c = s.amplitudes.coefficients
            nz = np.flatnonzero((space.level == LOWER) & (np.abs(c) > 1e-12))
            support_ok &= sorted(space.momenta[nz].tolist()) == [p - 1, p + 1]
        for branch in ("minus", "plus"):
            a0, a1 = ad.traveling_amplitudes(xi, p, branch)
            norm_err = max(norm_err, abs(a0 * a0 + a1 * a1 - 1))
    _record("A7", support_ok and norm_err < 1e-12,
            f"ground-sector support exactly {{p-1, p+1}}: {support_ok}; |a0^2 + a1^2 - 1| {norm_err:.1e} (tol 1e-12)")


def test_a8_free_limits():
    worst = 0.0
    for q, alpha, N in itertools.product((0.0, 0.37), (0.0, 0.3, np.pi / 4), (1, 2)):
        params = SystemParams(Omega=50.0, Delta=3.0, zeta=0.0, alpha=alpha, N=N)
        space = make_space(N, q, 8)
        w = np.linalg.eigvalsh(h_total(space, params).toarray())
        k2 = (q + space.n) ** 2
        ref = np.sort(k2 + N * params.Omega + np.where(space.level == LOWER, 0.0, params.Delta))
        worst = max(worst, float(np.max(np.abs(w - ref))))
    bs = ad.band_structure(0.0, 0.3, (-0.5, 10.0), 0.01)
    widths = [g.width for g in bs.gaps]
    touch = np.abs(np.abs(ad.floquet_discriminant(0.0, 0.3, np.array([1.0, 4.0, 9.0])).real) - 2)
    gap_max = max(widths + [float(np.max(touch))])
    ok = worst < 1e-9 and gap_max < 1e-9
    _record("A8", ok, f"zeta=0 spectrum max error {worst:.1e} (excited level at +Delta); "
                      f"xi=0 gaps {len(widths)}, max gap/tangency defect {gap_max:.1e} (tol 1e-9)")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_a"):
            try:
                fn()
            except AssertionError:
                pass
