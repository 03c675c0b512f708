import logging
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import InvariantError, ShapeError

logger = logging.getLogger(__name__)

MAX_SWEEPS = 64


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """Immutable dense complex matrix on top of a numpy array."""
    entries: np.ndarray

    def __post_init__(self):
        array = np.array(self.entries, dtype=complex)
        if array.ndim != 2 or array.size == 0:
            raise ShapeError(f"expected a non-empty 2-d matrix, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise InvariantError("matrix has non-finite entries")
        array.setflags(write=False)
        object.__setattr__(self, 'entries', array)

    @classmethod
    def identity(cls, size):
        return cls(np.eye(size))

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    @property
    def is_square(self):
        return self.rows == self.cols

    def _check_same_shape(self, other):
        if self.entries.shape != other.entries.shape:
            raise ShapeError(f"shape {self.entries.shape} does not match {other.entries.shape}")

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.entries.shape} by {other.entries.shape}")
        return ComplexMatrix(self.entries @ other.entries)

    def __add__(self, other):
        self._check_same_shape(other)
        return ComplexMatrix(self.entries + other.entries)

    def adjoint(self):
        return ComplexMatrix(self.entries.conj().T)

    def trace(self):
        if not self.is_square:
            raise ShapeError(f"trace of a non-square {self.entries.shape} matrix")
        return complex(np.trace(self.entries))

    def kron(self, other):
        return ComplexMatrix(np.kron(self.entries, other.entries))

    def max_deviation(self, other):
        self._check_same_shape(other)
        return float(np.max(np.abs(self.entries - other.entries)))


def _rotate(a, p, q):
    phi = 0.5 * math.atan2(2 * a[p, q], a[q, q] - a[p, p])
    c, s = math.cos(phi), math.sin(phi)
    rotation = np.eye(a.shape[0])
    rotation[p, p] = rotation[q, q] = c
    rotation[p, q] = s
    rotation[q, p] = -s
    a = rotation.T @ a @ rotation
    # Zero by construction.
    a[p, q] = a[q, p] = 0.0
    return a


def jacobi_eigenvalues(symmetric, eps=1e-14):
    """
    Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
    sweeping over the upper triangle until the off-diagonal mass is
    negligible relative to the matrix norm.
    """
    a = np.array(symmetric, dtype=float)
    n = a.shape[0]
    scale = max(np.linalg.norm(a), 1.0)
    sweeps = 0
    while sweeps < MAX_SWEEPS:
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= eps * scale:
            break
        for p in range(n):
            for q in range(p + 1, n):
                if abs(a[p, q]) > eps * scale * 1e-4:
                    a = _rotate(a, p, q)
        sweeps += 1
    logger.debug("jacobi converged after %d sweeps on a %dx%d matrix", sweeps, n, n)
    return np.diag(a).copy()


def hermitian_eigenvalues(matrix):
    """
    Ascending eigenvalues of a Hermitian A + iB through the real symmetric
    embedding [[A, -B], [B, A]], whose spectrum is that of A + iB with every
    eigenvalue doubled.
    """
    if not matrix.is_square:
        raise ShapeError(f"eigenvalues of a non-square {matrix.entries.shape} matrix")
    real, imag = matrix.entries.real, matrix.entries.imag
    embedded = np.block([[real, -imag], [imag, real]])
    embedded = (embedded + embedded.T) / 2
    return np.sort(jacobi_eigenvalues(embedded))[::2]
