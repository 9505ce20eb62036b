import itertools

import numpy as np
import pytest

from freejc.hilbert import UPPER, commutator, hermiticity_defect, interior_norm, make_space
from freejc.operators import SystemParams, h_atom, h_total, observables, p_total, t_op


@pytest.mark.parametrize("N,alpha,zeta", list(itertools.product([1, 2], [0.0, 0.3, np.pi / 4], [0.0, 1.0, 5.0])))
def test_commuting_set(N, alpha, zeta):
    s = make_space(N, 0.3, 10)
    ops = observables(s, SystemParams(zeta=zeta, alpha=alpha, N=N))
    for (_, A), (_, B) in itertools.combinations(ops.items(), 2):
        assert interior_norm(commutator(A, B), 2) < 1e-10


@pytest.mark.parametrize("alpha", [0.0, 0.5, np.pi / 4, 2.0])
def test_hermitian(alpha):
    s = make_space(2, 0.1, 4)
    p = SystemParams(alpha=alpha, zeta=2.0, N=2)
    assert hermiticity_defect(h_total(s, p)) == 0.0
    assert hermiticity_defect(p_total(s, p)) == 0.0


@pytest.mark.parametrize("alpha,diag", [(0.0, True), (np.pi / 2, True), (0.3, False), (np.pi / 4, False)])
def test_momentum_diagonal_only_for_traveling_basis(alpha, diag):
    s = make_space(1, 0.0, 3)
    assert p_total(s, SystemParams(alpha=alpha)).is_diagonal(atol=1e-14) == diag


def test_atomic_energy_uses_upper_level_above_photon():
    s = make_space(1, 0.0, 3)
    params = SystemParams(Omega=100.0, Delta=10.0)
    d = h_atom(s, params).diagonal_values().real
    assert d[s.index(UPPER, 0, 0)] == pytest.approx(110.0)
    assert d[s.index(UPPER, 0, 2)] == pytest.approx(114.0)


@pytest.mark.parametrize("alpha", [0.3, np.pi / 4, 1.1])
def test_spectrum_is_basis_angle_independent(alpha):
    # a1, a2 are an orthogonal rotation of the traveling-wave modes
    s = make_space(2, 0.25, 6)
    ref = np.linalg.eigvalsh(h_total(s, SystemParams(zeta=3.0, N=2)).toarray())
    w = np.linalg.eigvalsh(h_total(s, SystemParams(zeta=3.0, N=2, alpha=alpha)).toarray())
    assert np.allclose(w, ref, atol=1e-9)


def test_parity_translation_is_unitary_diagonal():
    s = make_space(1, 0.3, 4)
    t = t_op(s).diagonal_values()
    assert np.allclose(np.abs(t), 1)


@pytest.mark.parametrize("kw", [dict(zeta=-1.0), dict(N=1.5), dict(N=-1), dict(Delta=np.inf)])
def test_params_validation(kw):
    with pytest.raises(ValueError):
        SystemParams(**kw)


def test_space_params_mismatch():
    with pytest.raises(ValueError):
        h_total(make_space(2, 0.0, 3), SystemParams(N=1))
