import numpy as np
import pytest

from freejc.hilbert import (
    LOWER,
    UPPER,
    SpaceMismatchError,
    SparseOperator,
    atom_sigma,
    commutator,
    identity,
    interior_norm,
    make_space,
    mode_hopping,
    mode_lowering,
    photon_number,
    translation_phase,
)


@pytest.mark.parametrize("N,n_max", [(0, 1), (1, 4), (3, 6)])
def test_dimension_and_index_roundtrip(N, n_max):
    s = make_space(N, 0.2, n_max)
    assert s.dim == (2 * N + 1) * (2 * n_max + 1)
    for i in range(s.dim):
        assert s.index(*s.label(i)) == i


def test_invalid_space():
    with pytest.raises(ValueError):
        make_space(-1)
    with pytest.raises(ValueError):
        make_space(1, 0.0, 0)
    s = make_space(1, 0.0, 3)
    with pytest.raises(IndexError):
        s.index(UPPER, 1, 0)
    with pytest.raises(IndexError):
        s.index(LOWER, 0, 4)


def test_photon_counts_add_to_excitation_number():
    s = make_space(3, 0.0, 2)
    total = s.m + s.m2 + (s.level == UPPER)
    assert np.all(total == 3)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_lowering_gives_number_operators(N):
    s = make_space(N, 0.0, 2)
    lower = s.level == LOWER
    for which, counts in ((1, s.m), (2, s.m2)):
        L = mode_lowering(s, which)
        nn = (L.H @ L).diagonal_values().real
        assert np.allclose(nn[lower], counts[lower])
        assert (L.H @ L).is_diagonal()


@pytest.mark.parametrize("N", [1, 2, 4])
def test_hopping_algebra(N):
    # Schwinger: [a1+ a2, a2+ a1] = n1 - n2
    s = make_space(N, 0.0, 1)
    h12, h21 = mode_hopping(s, 1, 2), mode_hopping(s, 2, 1)
    assert (h12.H - h21).max_norm() < 1e-14
    diff = photon_number(s, 1) - photon_number(s, 2)
    assert (commutator(h12, h21) - diff).max_norm() < 1e-12


def test_translation_inverse_on_interior():
    s = make_space(1, 0.4, 5)
    tp, tm = translation_phase(s, 1), translation_phase(s, -1)
    assert interior_norm(tp @ tm - identity(s), 1) == 0.0
    with pytest.raises(ValueError):
        translation_phase(s, 2)


def test_sigma_completeness_except_unpaired_states():
    s = make_space(2, 0.0, 1)
    sp_, sm = atom_sigma(s, "plus"), atom_sigma(s, "minus")
    d = (sp_ @ sm + sm @ sp_).diagonal_values().real
    unpaired = (s.level == LOWER) & (s.m == s.n_excitations)
    assert np.all(d[~unpaired] == 1) and np.all(d[unpaired] == 0)
    sz = atom_sigma(s, "z").diagonal_values().real
    assert set(sz[s.level == UPPER]) == {1.0}


def test_operator_algebra_matches_dense(rng):
    s = make_space(1, 0.0, 2)
    A = SparseOperator(s, rng.normal(size=(s.dim, s.dim)))
    B = SparseOperator(s, rng.normal(size=(s.dim, s.dim)) * 1j)
    a, b = A.toarray(), B.toarray()
    assert np.allclose((A @ B).toarray(), a @ b)
    assert np.allclose((2.5 * A - B).toarray(), 2.5 * a - b)
    assert np.allclose((np.float64(2.0) * A).toarray(), 2 * a)
    v = rng.normal(size=s.dim)
    assert np.allclose(A @ v, a @ v)
    assert np.allclose(A.H.toarray(), a.conj().T)


def test_space_mismatch():
    a = identity(make_space(1, 0.0, 2))
    b = identity(make_space(1, 0.5, 2))
    with pytest.raises(SpaceMismatchError):
        a + b
