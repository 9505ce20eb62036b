"""Fixed-excitation-number Hilbert space and a small sparse operator algebra.

Basis states are labelled (level, m, n):

* ``level`` is LOWER or UPPER (atomic internal state),
* ``m`` is the photon count of mode 1; the mode-2 count is fixed by the
  excitation number N (N - m if LOWER, N - 1 - m if UPPER),
* ``n`` indexes the centre-of-mass plane wave exp(i (q + n) eta), with
  |n| <= n_max.

Operators that would change N (a bare photon annihilator, a bare sigma+)
have no representation here; photon annihilation appears paired with atomic
excitation, see :func:`mode_lowering`.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

LOWER = 0
UPPER = 1


class SpaceMismatchError(ValueError):
    pass


class TruncatedSpace:
    """Index map for atom x two-mode Fock (fixed N) x plane-wave grid."""

    def __init__(self, n_excitations, momentum_offset=0.0, n_max=8):
        if int(n_excitations) != n_excitations or n_excitations < 0:
            raise ValueError(f"excitation number must be a non-negative integer, got {n_excitations}")
        if int(n_max) != n_max or n_max < 1:
            raise ValueError(f"n_max must be an integer >= 1, got {n_max}")
        self.n_excitations = int(n_excitations)
        self.momentum_offset = float(momentum_offset)
        self.n_max = int(n_max)

        N = self.n_excitations
        self.sectors = [(LOWER, m) for m in range(N + 1)] + [(UPPER, m) for m in range(N)]
        self.n_values = np.arange(-self.n_max, self.n_max + 1)
        n_grid = self.n_values.size
        self.dim = len(self.sectors) * n_grid

        level = np.repeat([s[0] for s in self.sectors], n_grid)
        m = np.repeat([s[1] for s in self.sectors], n_grid)
        n = np.tile(self.n_values, len(self.sectors))
        self.level = level
        self.m = m
        self.n = n
        self.m2 = np.where(level == LOWER, N - m, N - 1 - m)
        self._sector_index = {s: i for i, s in enumerate(self.sectors)}
        for arr in (self.level, self.m, self.n, self.m2, self.n_values):
            arr.setflags(write=False)

    def __repr__(self):
        return (f"TruncatedSpace(N={self.n_excitations}, q={self.momentum_offset!r}, "
                f"n_max={self.n_max}, dim={self.dim})")

    def __eq__(self, other):
        if not isinstance(other, TruncatedSpace):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        return (self.n_excitations, self.momentum_offset, self.n_max)

    @property
    def momenta(self):
        """Centre-of-mass momentum q + n of every basis state (units hbar k)."""
        return self.momentum_offset + self.n

    def index(self, level, m, n):
        """Flat index of basis state (level, m, n)."""
        try:
            s = self._sector_index[(level, m)]
        except KeyError:
            raise IndexError(f"no sector (level={level}, m={m}) for N={self.n_excitations}") from None
        if abs(n) > self.n_max:
            raise IndexError(f"plane-wave index {n} outside [-{self.n_max}, {self.n_max}]")
        return s * self.n_values.size + (n + self.n_max)

    def label(self, i):
        return int(self.level[i]), int(self.m[i]), int(self.n[i])

    def interior_mask(self, margin):
        return np.abs(self.n) <= self.n_max - margin

    def basis_vector(self, level, m, n):
        v = np.zeros(self.dim, dtype=complex)
        v[self.index(level, m, n)] = 1.0
        return v


def make_space(N, q=0.0, n_max=8):
    return TruncatedSpace(N, q, n_max)


class SparseOperator:
    """A sparse matrix bound to a :class:`TruncatedSpace`.

    Arithmetic between operators checks that both live on the same space.
    """

    __array_ufunc__ = None

    def __init__(self, space, matrix):
        if matrix.shape != (space.dim, space.dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match dim {space.dim}")
        self.space = space
        self.matrix = sp.csr_matrix(matrix, dtype=complex)
        self.matrix.sum_duplicates()
        self.matrix.eliminate_zeros()

    @classmethod
    def from_triplets(cls, space, rows, cols, values):
        rows = np.asarray(rows, dtype=int)
        cols = np.asarray(cols, dtype=int)
        if rows.size and (rows.min() < 0 or cols.min() < 0
                          or rows.max() >= space.dim or cols.max() >= space.dim):
            raise IndexError("triplet index outside the space dimension")
        m = sp.coo_matrix((np.asarray(values, dtype=complex), (rows, cols)),
                          shape=(space.dim, space.dim))
        return cls(space, m.tocsr())

    @classmethod
    def diagonal(cls, space, values):
        values = np.broadcast_to(np.asarray(values, dtype=complex), (space.dim,))
        return cls(space, sp.diags(values, format="csr"))

    @classmethod
    def zero(cls, space):
        return cls(space, sp.csr_matrix((space.dim, space.dim), dtype=complex))

    def triplets(self):
        coo = self.matrix.tocoo()
        return list(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))

    def _check(self, other):
        if not isinstance(other, SparseOperator):
            return False
        if other.space != self.space:
            raise SpaceMismatchError(f"{self.space!r} vs {other.space!r}")
        return True

    def __add__(self, other):
        if self._check(other):
            return SparseOperator(self.space, self.matrix + other.matrix)
        return NotImplemented

    def __sub__(self, other):
        if self._check(other):
            return SparseOperator(self.space, self.matrix - other.matrix)
        return NotImplemented

    def __neg__(self):
        return SparseOperator(self.space, -self.matrix)

    def __mul__(self, scalar):
        if isinstance(scalar, SparseOperator):
            return NotImplemented
        return SparseOperator(self.space, self.matrix * complex(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, SparseOperator):
            self._check(other)
            return SparseOperator(self.space, self.matrix @ other.matrix)
        return self.matrix @ other

    @property
    def H(self):
        return SparseOperator(self.space, self.matrix.conj().T)

    def toarray(self):
        return self.matrix.toarray()

    def diagonal_values(self):
        return self.matrix.diagonal()

    def is_diagonal(self, atol=0.0):
        off = self.matrix - sp.diags(self.matrix.diagonal())
        return bool(off.nnz == 0 or np.max(np.abs(off.data)) <= atol)

    def max_norm(self):
        return float(np.max(np.abs(self.matrix.data))) if self.matrix.nnz else 0.0

    def __repr__(self):
        return f"SparseOperator({self.space!r}, nnz={self.matrix.nnz})"


def identity(space):
    return SparseOperator.diagonal(space, 1.0)


def photon_number(space, which):
    """Diagonal photon-number operator of mode 1 or 2."""
    if which == 1:
        return SparseOperator.diagonal(space, space.m)
    if which == 2:
        return SparseOperator.diagonal(space, space.m2)
    raise ValueError(f"mode must be 1 or 2, got {which}")


def mode_lowering(space, which):
    """sigma+ a_which: absorb one photon of the given mode and excite the atom.

    <UPPER, m-1, n| . |LOWER, m, n> = sqrt(m)       (mode 1)
    <UPPER, m,   n| . |LOWER, m, n> = sqrt(N - m)   (mode 2)

    This is the only way a photon annihilator acts inside a fixed-N space.
    """
    if which not in (1, 2):
        raise ValueError(f"mode must be 1 or 2, got {which}")
    N = space.n_excitations
    rows, cols, vals = [], [], []
    for m in range(N + 1):
        if which == 1:
            target, amp = m - 1, np.sqrt(m)
        else:
            target, amp = m, np.sqrt(N - m)
        if not (0 <= target <= N - 1) or amp == 0:
            continue
        for n in space.n_values:
            rows.append(space.index(UPPER, target, n))
            cols.append(space.index(LOWER, m, n))
            vals.append(amp)
    return SparseOperator.from_triplets(space, rows, cols, vals)


def mode_hopping(space, to_mode, from_mode):
    """a_to^dagger a_from within each atomic level (photon moved between modes)."""
    if {to_mode, from_mode} != {1, 2}:
        if to_mode == from_mode and to_mode in (1, 2):
            return photon_number(space, to_mode)
        raise ValueError("modes must be 1 or 2")
    N = space.n_excitations
    rows, cols, vals = [], [], []
    for level, m in space.sectors:
        total = N if level == LOWER else N - 1
        m2 = total - m
        if to_mode == 1:
            target, amp = m + 1, np.sqrt((m + 1) * m2)
        else:
            target, amp = m - 1, np.sqrt(m * (m2 + 1))
        if not (0 <= target <= total) or amp == 0:
            continue
        for n in space.n_values:
            rows.append(space.index(level, target, n))
            cols.append(space.index(level, m, n))
            vals.append(amp)
    return SparseOperator.from_triplets(space, rows, cols, vals)


def atom_sigma(space, which):
    """Atomic operators sigma+, sigma-, sigma_3.

    sigma_3 is +1 on UPPER and -1 on LOWER.  sigma+/- flip the level at fixed
    mode-1 count m (LOWER m <-> UPPER m); the lower states with m = N have no
    such partner and are annihilated by sigma+.
    """
    if which == "z":
        return SparseOperator.diagonal(space, np.where(space.level == UPPER, 1.0, -1.0))
    if which not in ("plus", "minus"):
        raise ValueError(f"which must be 'plus', 'minus' or 'z', got {which!r}")
    rows, cols = [], []
    for m in range(space.n_excitations):
        for n in space.n_values:
            rows.append(space.index(UPPER, m, n))
            cols.append(space.index(LOWER, m, n))
    op = SparseOperator.from_triplets(space, rows, cols, np.ones(len(rows)))
    return op if which == "plus" else op.H


def translation_phase(space, sign):
    """Multiplication by exp(+/- i eta): plane-wave index n -> n +/- 1.

    States shifted past |n| = n_max are dropped (absorbing edge).
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    src = np.flatnonzero(np.abs(space.n + sign) <= space.n_max)
    dst = src + sign
    return SparseOperator.from_triplets(space, dst, src, np.ones(src.size))


def cm_momentum(space):
    """Centre-of-mass momentum -i d/d eta, diagonal entries q + n."""
    return SparseOperator.diagonal(space, space.momenta)


def commutator(A, B):
    return A @ B - B @ A


def hermiticity_defect(A):
    return (A - A.H).max_norm()


def interior_norm(A, margin):
    """Max |A_ij| over rows i with |n_i| <= n_max - margin.

    Masks artefacts confined to the truncation edge of the plane-wave grid.
    """
    if margin < 0:
        raise ValueError("margin must be non-negative")
    rows = np.flatnonzero(A.space.interior_mask(margin))
    sub = A.matrix[rows]
    return float(np.max(np.abs(sub.data))) if sub.nnz else 0.0
