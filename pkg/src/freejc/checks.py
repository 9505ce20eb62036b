"""Self-checks run by ``freejc verify``.

Each check returns a :class:`Check` with the measured defect and the
threshold it was held to.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import classical_field as cf
from .hilbert import commutator, hermiticity_defect, interior_norm, make_space
from .operators import SystemParams, h_total, observables, p_total
from .stationary import solve_joint, traveling_energies

DEFAULT_ALPHAS = (0.0, 0.3, np.pi / 4)


@dataclass(frozen=True)
class Check:
    name: str
    defect: float
    threshold: float
    detail: str = ""

    @property
    def passed(self):
        return bool(np.isfinite(self.defect) and self.defect <= self.threshold)

    def to_record(self):
        return {"name": self.name, "defect": float(self.defect), "threshold": self.threshold,
                "passed": self.passed, "detail": self.detail}


def classical_checks(n_cases=200, n_samples=256, seed=0):
    """Closed-form field energy/momentum against grid integration."""
    rng = np.random.default_rng(seed)
    worst_e = worst_p = 0.0
    for _ in range(n_cases):
        f = rng.normal(size=2) + 1j * rng.normal(size=2)
        alpha = rng.uniform(0, 2 * np.pi)
        prof = cf.assemble_fields(f, alpha, n_samples)
        e_ref = cf.energy_closed(f)
        p_ref = cf.momentum_closed(f, alpha)
        worst_e = max(worst_e, abs(cf.energy_integrated(prof) - e_ref) / e_ref)
        # momentum can vanish; scale by the energy, which bounds |momentum|
        worst_p = max(worst_p, abs(cf.momentum_integrated(prof) - p_ref) / e_ref)
    return [
        Check("classical-energy", worst_e, 1e-10, f"{n_cases} random cases"),
        Check("classical-momentum", worst_p, 1e-10, f"{n_cases} random cases"),
    ]


def commutator_checks(Ns=(1, 2), alphas=DEFAULT_ALPHAS, zetas=(0.0, 1.0, 5.0), n_max=12,
                      margin=2, q=0.3):
    worst = 0.0
    where = ""
    for N, alpha, zeta in itertools.product(Ns, alphas, zetas):
        space = make_space(N, q, n_max)
        ops = observables(space, SystemParams(zeta=zeta, alpha=alpha, N=N))
        for (na, A), (nb, B) in itertools.combinations(ops.items(), 2):
            d = interior_norm(commutator(A, B), margin)
            if d >= worst:
                worst, where = d, f"[{na},{nb}] N={N} alpha={alpha:.4g} zeta={zeta}"
    return [Check("commuting-set", worst, 1e-10, f"worst {where}; n_max={n_max}, margin={margin}")]


def hermiticity_checks(alphas=DEFAULT_ALPHAS, n_max=12):
    worst = 0.0
    for alpha in alphas:
        space = make_space(1, 0.3, n_max)
        params = SystemParams(alpha=alpha, zeta=1.0)
        worst = max(worst, hermiticity_defect(h_total(space, params)),
                    hermiticity_defect(p_total(space, params)))
    return [Check("hermiticity", worst, 0.0)]


def momentum_diagonal_checks(alphas=DEFAULT_ALPHAS, n_max=12):
    """P is diagonal in the Fock basis exactly when sin 2 alpha = 0."""
    out = []
    for alpha in alphas:
        space = make_space(1, 0.0, n_max)
        P = p_total(space, SystemParams(alpha=alpha))
        off = (P.matrix - sp.diags(P.diagonal_values())).tocsr()
        off.eliminate_zeros()
        off_norm = float(np.max(np.abs(off.data))) if off.nnz else 0.0
        expect_diag = abs(np.sin(2 * alpha)) < 1e-12
        defect = off_norm if expect_diag else float(abs(off_norm - abs(np.sin(2 * alpha))))
        out.append(Check(f"momentum-diagonal(alpha={alpha:.4g})", defect, 1e-12,
                         f"off-diagonal max {off_norm:.3g}"))
    return out


def traveling_oracle_checks(Ns=(1, 2), ps=(0.0, 0.4, 1.2), n_max=12):
    """Full joint solver against the alpha = 0 plane-wave reduction."""
    worst = 0.0
    used = set()
    for N, p in itertools.product(Ns, ps):
        params = SystemParams(Omega=100.0, Delta=7.0, zeta=1.3, alpha=0.0, N=N)
        q = p - round(p)
        # the sector needs plane waves up to |p| + N
        n_eff = max(n_max, int(np.ceil(abs(p))) + N + 1)
        used.add(n_eff)
        states = solve_joint(make_space(N, q, n_eff), params, p)
        full = np.sort([s.eps_rel for s in states])
        ref = traveling_energies(params, p)
        worst = max(worst, float(np.max(np.abs(full - ref))))
    return [Check("traveling-oracle", worst, 1e-8, f"n_max used: {sorted(used)}")]


def free_limit_checks(n_max=12, q=0.3):
    """zeta = 0: spectrum equals (q+n)^2 + N Omega, plus Delta on the excited level."""
    worst = 0.0
    for alpha in DEFAULT_ALPHAS:
        params = SystemParams(Omega=50.0, Delta=3.0, zeta=0.0, alpha=alpha, N=1)
        space = make_space(1, q, n_max)
        H = h_total(space, params).toarray()
        w = np.linalg.eigvalsh(H)
        k2 = (q + space.n_values) ** 2
        ref = np.sort(np.concatenate([k2, k2, k2 + params.Delta])) + params.energy_offset
        worst = max(worst, float(np.max(np.abs(w - ref))))
    return [Check("free-limit", worst, 1e-9)]


SUITES = {
    "classical": classical_checks,
    "commutators": commutator_checks,
    "hermiticity": hermiticity_checks,
    "momentum-diagonal": momentum_diagonal_checks,
    "traveling-oracle": traveling_oracle_checks,
    "free-limit": free_limit_checks,
}


def run_checks(names=None, n_max=12, alphas=None):
    names = list(SUITES) if not names else names
    results = []
    for name in names:
        fn = SUITES[name]
        kwargs = {}
        if name in ("commutators", "hermiticity", "traveling-oracle", "free-limit", "momentum-diagonal"):
            kwargs["n_max"] = n_max
        if alphas is not None and name in ("commutators", "hermiticity", "momentum-diagonal"):
            kwargs["alphas"] = tuple(alphas)
        results.extend(fn(**kwargs))
    return results
