from dataclasses import dataclass

import numpy as np

from core.conf import bell_setting
from core.exceptions import InvariantError, ShapeError

from ..utils.linalg import ComplexMatrix, hermitian_eigenvalues


def check_positive(matrix, label, floor=None):
    floor = bell_setting('PSD_FLOOR', floor)
    lowest = hermitian_eigenvalues(matrix)[0]
    if lowest < floor:
        raise InvariantError(f"{label} has eigenvalue {lowest:.3e} below {floor:.0e}")


def check_hermitian(matrix, label, tolerance=None):
    tolerance = bell_setting('HERMITIAN_TOLERANCE', tolerance)
    if not matrix.is_square:
        raise ShapeError(f"{label} is not square: {matrix.rows}x{matrix.cols}")
    deviation = matrix.max_deviation(matrix.adjoint())
    if deviation > tolerance:
        raise InvariantError(f"{label} is not Hermitian: deviation {deviation:.3e}")


@dataclass(frozen=True)
class QuantumState:
    """
    Density matrix of a bipartite system, Alice's factor first in the
    tensor ordering.
    """
    dim_a: int
    dim_b: int
    rho: ComplexMatrix

    def __post_init__(self):
        if not isinstance(self.rho, ComplexMatrix):
            object.__setattr__(self, 'rho', ComplexMatrix(self.rho))
        if self.dim_a < 1 or self.dim_b < 1:
            raise ShapeError(f"dimensions must be positive, got {self.dim_a}x{self.dim_b}")
        size = self.dim_a * self.dim_b
        if (self.rho.rows, self.rho.cols) != (size, size):
            raise ShapeError(
                f"density matrix is {self.rho.rows}x{self.rho.cols}, expected {size}x{size}"
            )

        check_hermitian(self.rho, 'density matrix')
        trace = self.rho.trace()
        if abs(trace - 1) > bell_setting('HERMITIAN_TOLERANCE'):
            raise InvariantError(f"density matrix has trace {trace:.12g}, expected 1")
        check_positive(self.rho, 'density matrix')

    @classmethod
    def from_vector(cls, vector, dim_a, dim_b):
        vector = np.asarray(vector, dtype=complex)
        vector = vector / np.linalg.norm(vector)
        return cls(dim_a, dim_b, ComplexMatrix(np.outer(vector, vector.conj())))

    @classmethod
    def product(cls, alice, bob):
        """rho_A (x) rho_B for single-party density matrices."""
        alice, bob = ComplexMatrix(alice), ComplexMatrix(bob)
        return cls(alice.rows, bob.rows, alice.kron(bob))
