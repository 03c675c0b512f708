import math

import numpy as np

from core.exceptions import ParameterError

from ..models import MeasurementAssemblage, QuantumState
from ..utils.linalg import ComplexMatrix

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Alice measures at 0 and pi/2, Bob at pi/4 and 3pi/4, all in the z-x plane.
SINGLET_ALICE_ANGLES = (0.0, math.pi / 2)
SINGLET_BOB_ANGLES = (math.pi / 4, 3 * math.pi / 4)


def qubit_projective(angle):
    """
    Spin measurement along (sin angle, 0, cos angle): the aligned projector
    first, then the anti-aligned one.
    """
    direction = math.cos(angle) * PAULI_Z + math.sin(angle) * PAULI_X
    return (
        ComplexMatrix((IDENTITY + direction) / 2),
        ComplexMatrix((IDENTITY - direction) / 2),
    )


def planar_assemblage(alice_angles, bob_angles):
    if not alice_angles or not bob_angles:
        raise ParameterError("each party needs at least one measurement angle")
    return MeasurementAssemblage(
        alice=tuple(qubit_projective(angle) for angle in alice_angles),
        bob=tuple(qubit_projective(angle) for angle in bob_angles),
    )


def singlet_state():
    """(|01> - |10>)/sqrt(2)."""
    return QuantumState.from_vector([0, 1, -1, 0], 2, 2)


def singlet_setup():
    return singlet_state(), planar_assemblage(SINGLET_ALICE_ANGLES, SINGLET_BOB_ANGLES)


def product_state(alice_angle=0.0, bob_angle=0.0):
    """Both qubits pure and aligned with the given directions."""
    alice, _ = qubit_projective(alice_angle)
    bob, _ = qubit_projective(bob_angle)
    return QuantumState.product(alice.entries, bob.entries)


def maximally_mixed_state(dim_a=2, dim_b=2):
    size = dim_a * dim_b
    return QuantumState(dim_a, dim_b, ComplexMatrix(np.eye(size) / size))


def noisy_singlet(visibility):
    """Singlet mixed with white noise; CHSH reaches 2*sqrt(2)*visibility."""
    if not 0 <= visibility <= 1:
        raise ParameterError(f"visibility {visibility} outside [0, 1]")
    rho = visibility * singlet_state().rho.entries + (1 - visibility) * np.eye(4) / 4
    return QuantumState(2, 2, ComplexMatrix(rho))


def random_pure_vector(rng, dimension):
    vector = rng.normal(size=dimension) + 1j * rng.normal(size=dimension)
    return vector / np.linalg.norm(vector)


def random_two_qubit_state(rng, terms=3):
    """Random mixture of random pure two-qubit states."""
    weights = rng.dirichlet(np.ones(terms))
    rho = sum(
        w * np.outer(v, v.conj())
        for w, v in zip(weights, (random_pure_vector(rng, 4) for _ in range(terms)))
    )
    return QuantumState(2, 2, ComplexMatrix(rho))


def random_product_state(rng):
    alice = random_pure_vector(rng, 2)
    bob = random_pure_vector(rng, 2)
    return QuantumState.product(np.outer(alice, alice.conj()), np.outer(bob, bob.conj()))


def random_planar_assemblage(rng, settings=2):
    return planar_assemblage(
        tuple(rng.uniform(0, 2 * math.pi, size=settings)),
        tuple(rng.uniform(0, 2 * math.pi, size=settings)),
    )
