import math

import numpy as np
import pytest
from django.test import SimpleTestCase

from behaviors.services.validation_service import validate_behavior
from core.exceptions import InvariantError, ParameterError, ShapeError
from local_polytope.models.membership_model import MembershipMethod, MembershipStatus
from local_polytope.services.chsh_service import chsh_all_variants, correlator
from local_polytope.services.classification_service import Verdict, classify_behavior
from local_polytope.services.membership_service import membership
from nosignalling.services import check_no_signalling

from .models import MeasurementAssemblage, QuantumState
from .serializers.quantum_serializer import QuantumSetupSerializer, QuantumStateSerializer
from .services.fixture_service import (
    PAULI_X,
    maximally_mixed_state,
    noisy_singlet,
    planar_assemblage,
    product_state,
    qubit_projective,
    random_planar_assemblage,
    random_product_state,
    random_two_qubit_state,
    singlet_setup,
)
from .services.quantum_behavior_service import quantum_behavior
from .utils.linalg import ComplexMatrix, hermitian_eigenvalues

TSIRELSON = 2 * math.sqrt(2)


class LinalgTest(SimpleTestCase):
    """Test cases for ComplexMatrix and the Jacobi eigenvalues."""

    def test_operations(self):
        """Test product, adjoint, trace and Kronecker product."""
        m = ComplexMatrix([[1, 2j], [0, 3]])
        self.assertEqual(m.adjoint().entries[1, 0], -2j)
        self.assertEqual(m.trace(), 4)
        self.assertEqual((m @ ComplexMatrix.identity(2)).max_deviation(m), 0)
        self.assertEqual(m.kron(ComplexMatrix.identity(3)).rows, 6)
        with self.assertRaises(ShapeError):
            m @ ComplexMatrix([[1, 2, 3]])

    def test_pauli_spectrum(self):
        """Test sigma_x and sigma_y have eigenvalues -1 and 1."""
        np.testing.assert_allclose(hermitian_eigenvalues(ComplexMatrix(PAULI_X)), [-1, 1], atol=1e-12)
        sigma_y = ComplexMatrix([[0, -1j], [1j, 0]])
        np.testing.assert_allclose(hermitian_eigenvalues(sigma_y), [-1, 1], atol=1e-12)

    def test_against_numpy(self):
        """Test random Hermitian matrices against numpy.linalg.eigvalsh."""
        rng = np.random.default_rng(4)
        for _ in range(20):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            h = (a + a.conj().T) / 2
            np.testing.assert_allclose(
                hermitian_eigenvalues(ComplexMatrix(h)), np.linalg.eigvalsh(h), atol=1e-10
            )

    def test_non_finite(self):
        """Test NaN entries are rejected."""
        with self.assertRaises(InvariantError):
            ComplexMatrix([[float('nan')]])


class QuantumObjectsTest(SimpleTestCase):
    """Test cases for QuantumState and MeasurementAssemblage validation."""

    def test_projectors(self):
        """Test theta = 0 gives the computational basis and theta = pi swaps it."""
        up, down = qubit_projective(0.0)
        np.testing.assert_allclose(up.entries, np.diag([1, 0]), atol=1e-15)
        np.testing.assert_allclose(down.entries, np.diag([0, 1]), atol=1e-15)
        flipped_up, flipped_down = qubit_projective(math.pi)
        self.assertLess(flipped_up.max_deviation(down), 1e-15)
        self.assertLess(flipped_down.max_deviation(up), 1e-15)
        for angle in np.linspace(0, 2 * math.pi, 17):
            first, second = qubit_projective(angle)
            self.assertLessEqual((first + second).max_deviation(ComplexMatrix.identity(2)), 1e-15)

    def test_invalid_states(self):
        """Test trace, Hermiticity, positivity and shape checks."""
        with self.assertRaises(InvariantError):
            QuantumState(1, 2, ComplexMatrix(np.eye(2)))
        with self.assertRaises(InvariantError):
            QuantumState(1, 2, ComplexMatrix([[0.5, 0.5j], [0.5j, 0.5]]))
        with self.assertRaises(InvariantError):
            QuantumState(1, 2, ComplexMatrix([[1.5, 0], [0, -0.5]]))
        with self.assertRaises(ShapeError):
            QuantumState(2, 2, ComplexMatrix(np.eye(2) / 2))

    def test_invalid_assemblage(self):
        """Test effects that do not sum to the identity."""
        up, _ = qubit_projective(0.0)
        with self.assertRaises(InvariantError):
            MeasurementAssemblage(alice=((up, up),), bob=(qubit_projective(0.0),))
        with self.assertRaises(ShapeError):
            MeasurementAssemblage(alice=(), bob=(qubit_projective(0.0),))

    def test_dimension_mismatch(self):
        """Test a qutrit state with qubit measurements."""
        state = maximally_mixed_state(3, 2)
        with self.assertRaises(ShapeError):
            quantum_behavior(state, planar_assemblage((0.0,), (0.0,)))


class QuantumBehaviorTest(SimpleTestCase):
    """Test cases for quantum_behavior and the fixtures."""

    def setUp(self):
        """Set up test data."""
        self.computational = planar_assemblage((0.0, 0.0), (0.0, 0.0))

    def test_product_state(self):
        """Test |00> measured in the computational basis."""
        behavior = quantum_behavior(product_state(), self.computational)
        for x, y in behavior.scenario.cells():
            self.assertAlmostEqual(behavior.p(0, 0, x, y), 1.0, places=12)
            self.assertAlmostEqual(behavior.p(1, 1, x, y), 0.0, places=12)

    def test_maximally_mixed(self):
        """Test every entry is 1/4 under arbitrary planar measurements."""
        behavior = quantum_behavior(maximally_mixed_state(), planar_assemblage((0.3, 1.1), (2.0, 5.0)))
        for x, y in behavior.scenario.cells():
            for a, b in behavior.scenario.outcome_pairs(x, y):
                self.assertAlmostEqual(behavior.p(a, b, x, y), 0.25, places=12)

    def test_singlet(self):
        """Test the singlet is no-signalling, reaches 2*sqrt(2) and is not local."""
        behavior = quantum_behavior(*singlet_setup())
        self.assertFalse(behavior.is_exact)
        self.assertTrue(check_no_signalling(behavior, 1e-9).ok)

        summary = chsh_all_variants(behavior)
        self.assertAlmostEqual(summary.maximum, TSIRELSON, delta=1e-9)
        self.assertEqual(summary.argmax, 5)

        alice_angles = (0.0, math.pi / 2)
        bob_angles = (math.pi / 4, 3 * math.pi / 4)
        for x, y in behavior.scenario.cells():
            self.assertAlmostEqual(
                correlator(behavior, x, y), -math.cos(alice_angles[x] - bob_angles[y]), delta=1e-12
            )

        result = membership(behavior)
        self.assertEqual(result.status, MembershipStatus.NON_MEMBER)
        self.assertEqual(result.method, MembershipMethod.CHSH)
        self.assertEqual(classify_behavior(behavior).verdict, Verdict.LOCAL_NONSEPARABLE)

    def test_noisy_singlet_threshold(self):
        """Test white noise scales CHSH by the visibility."""
        _, assemblage = singlet_setup()
        for visibility in (0.5, 0.7, 0.75, 1.0):
            behavior = quantum_behavior(noisy_singlet(visibility), assemblage)
            self.assertAlmostEqual(chsh_all_variants(behavior).maximum, TSIRELSON * visibility, delta=1e-9)
            self.assertEqual(membership(behavior).is_member, visibility <= 1 / math.sqrt(2))
        with self.assertRaises(ParameterError):
            noisy_singlet(1.5)

    def test_random_states_are_no_signalling(self):
        """Test random mixed states with random planar measurements."""
        rng = np.random.default_rng(100)
        for _ in range(100):
            behavior = quantum_behavior(random_two_qubit_state(rng), random_planar_assemblage(rng))
            self.assertTrue(check_no_signalling(behavior, 1e-9).ok)
            self.assertTrue(validate_behavior(behavior, tolerance=1e-9).ok)

    def test_product_states_are_local(self):
        """Test product states never violate CHSH."""
        rng = np.random.default_rng(7)
        for _ in range(50):
            behavior = quantum_behavior(random_product_state(rng), random_planar_assemblage(rng))
            self.assertLessEqual(chsh_all_variants(behavior).maximum, 2 + 1e-9)
            self.assertTrue(membership(behavior).is_member)

    @pytest.mark.slow
    def test_tsirelson_ceiling(self):
        """Test random two-qubit fixtures stay below 2*sqrt(2)."""
        rng = np.random.default_rng(2718)
        for _ in range(1000):
            behavior = quantum_behavior(random_two_qubit_state(rng, terms=1), random_planar_assemblage(rng))
            self.assertLessEqual(chsh_all_variants(behavior).maximum, TSIRELSON + 1e-6)


class QuantumSerializerTest(SimpleTestCase):
    """Test cases for the quantum JSON documents."""

    def test_state_layout(self):
        """Test complex entries render as [re, im] pairs."""
        data = QuantumStateSerializer(singlet_setup()[0]).data
        self.assertEqual(data['dims'], [2, 2])
        real, imag = data['rho'][1][2]
        self.assertAlmostEqual(real, -0.5, places=12)
        self.assertEqual(imag, 0.0)

    def test_setup_round_trip(self):
        """Test an emitted setup parses back to the same behavior."""
        data = QuantumSetupSerializer(singlet_setup()).data
        serializer = QuantumSetupSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        state, assemblage = serializer.save()
        self.assertEqual(quantum_behavior(state, assemblage), quantum_behavior(*singlet_setup()))

    def test_bad_documents(self):
        """Test ragged matrices and invalid states are field errors."""
        serializer = QuantumStateSerializer(data={'dims': [1, 2], 'rho': [[1, 0], [0]]})
        self.assertFalse(serializer.is_valid())
        self.assertIn('rho', serializer.errors)
        serializer = QuantumStateSerializer(data={'dims': [1, 2], 'rho': [[1, 0], [0, 1]]})
        self.assertFalse(serializer.is_valid())
