import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freejc import classical_field as cf

finite = st.floats(-3, 3, allow_nan=False)
amps = st.tuples(finite, finite, finite, finite).map(lambda t: (t[0] + 1j * t[1], t[2] + 1j * t[3]))


@settings(max_examples=100, deadline=None)
@given(f=amps, alpha=st.floats(0, 2 * np.pi))
def test_closed_forms_match_grid_integration(f, alpha):
    prof = cf.assemble_fields(f, alpha, 128)
    e = cf.energy_closed(f)
    assert cf.energy_integrated(prof) == pytest.approx(e, rel=1e-12, abs=1e-14)
    assert cf.momentum_integrated(prof) == pytest.approx(cf.momentum_closed(f, alpha), abs=1e-12 * max(e, 1))


def test_pure_traveling_wave_carries_unit_momentum():
    # alpha = 0, f = (1, 0) is E = e^{iz}: momentum equals energy
    prof = cf.assemble_fields((1, 0), 0.0)
    assert np.allclose(prof.E, np.exp(1j * prof.z))
    assert cf.momentum_integrated(prof) == pytest.approx(1.0)
    assert cf.momentum_integrated(cf.assemble_fields((0, 1), 0.0)) == pytest.approx(-1.0)


@pytest.mark.parametrize("f", [(1, 0), (0, 1), (1, 1j)])
def test_standing_wave_modes_have_zero_momentum_when_real_phase(f):
    # at alpha = pi/4 a single mode is a standing wave cos/sin
    if f == (1, 1j):
        # cross term 2 Re(f1* f2) vanishes for a quarter-period phase
        assert cf.momentum_closed(f, np.pi / 4) == pytest.approx(0.0)
    else:
        assert cf.momentum_integrated(cf.assemble_fields(f, np.pi / 4)) == pytest.approx(0.0, abs=1e-14)


def test_standing_basis_momentum_is_off_diagonal():
    f = (1.0, 1.0)
    assert cf.momentum_closed(f, np.pi / 4) == pytest.approx(-2.0)
    assert cf.momentum_integrated(cf.assemble_fields(f, np.pi / 4)) == pytest.approx(-2.0)


def test_mode_pair_is_orthogonal():
    R = cf.mode_pair(0.37)
    assert np.allclose(R @ R.T, np.eye(2))


@settings(max_examples=50, deadline=None)
@given(f=amps, a=st.floats(-4, 4), b=st.floats(-4, 4))
def test_basis_change_describes_the_same_field(f, a, b):
    g = cf.basis_change(f, a, b)
    pa, pb = cf.assemble_fields(f, a, 64), cf.assemble_fields(g, b, 64)
    assert np.allclose(pa.E, pb.E) and np.allclose(pa.B, pb.B)
    assert cf.momentum_closed(g, b) == pytest.approx(cf.momentum_closed(f, a), abs=1e-9)


@pytest.mark.parametrize("alpha", [-2.0, 0.1, 1.7, 3.3, 7.0])
def test_canonical_angle_keeps_fields(alpha):
    f = (0.3 - 1j, 2 + 0.5j)
    red, g = cf.canonical_angle(alpha, f)
    assert 0 <= red < np.pi / 2
    pa, pb = cf.assemble_fields(f, alpha), cf.assemble_fields(g, red)
    assert np.allclose(pa.E, pb.E) and np.allclose(pa.B, pb.B)


def test_grid_validation():
    with pytest.raises(ValueError):
        cf.assemble_fields((1, 0), 0.0, 16)
    prof = cf.assemble_fields((1, 0), 0.0, 128)
    bad = cf.FieldProfile(prof.z ** 1.01, prof.E, prof.B)
    with pytest.raises(ValueError):
        cf.energy_integrated(bad)
    with pytest.raises(ValueError):
        cf.momentum_integrated(cf.FieldProfile(prof.z, prof.E[:-1], prof.B))
