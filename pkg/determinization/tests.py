import random
from fractions import Fraction

from django.test import SimpleTestCase

from behaviors.models import LocalModel, Scenario
from behaviors.services.synthesis_service import behavior_of_model, is_deterministic
from behaviors.utils.random_models import random_local_model
from core.exceptions import InvariantError, ModeError, ParameterError

from .serializers import ComponentAtomsSerializer
from .services import (
    alice_atoms,
    bob_atoms,
    breakpoints,
    component_bound,
    determinize,
    interval_atoms,
)

F = Fraction


class BreakpointsTest(SimpleTestCase):
    """Test cases for breakpoints and interval atoms."""

    def test_union_of_partial_sums(self):
        """Test rows (1/2,1/2) and (1/4,3/4)."""
        table = [[F(1, 2), F(1, 2)], [F(1, 4), F(3, 4)]]
        self.assertEqual(breakpoints(table), [0, F(1, 4), F(1, 2), 1])

    def test_deterministic_row_is_one_atom(self):
        """Test a single deterministic row."""
        self.assertEqual(breakpoints([[F(1), F(0)]]), [0, 1])
        atoms = interval_atoms([[F(1), F(0)]])
        self.assertEqual(len(atoms), 1)
        self.assertEqual(atoms[0].assignment, (0,))

    def test_thirds(self):
        """Test rows (1/3,2/3) and (2/3,1/3)."""
        table = [[F(1, 3), F(2, 3)], [F(2, 3), F(1, 3)]]
        self.assertEqual(breakpoints(table), [0, F(1, 3), F(2, 3), 1])

    def test_atom_assignments(self):
        """Test each atom lies inside the cumulative interval of its outcome."""
        table = [[F(1, 2), F(1, 2)], [F(1, 4), F(3, 4)]]
        atoms = interval_atoms(table)
        self.assertEqual([a.assignment for a in atoms], [(0, 0), (0, 1), (1, 1)])
        self.assertEqual([a.width for a in atoms], [F(1, 4), F(1, 4), F(1, 2)])
        self.assertIn(F(1, 4), atoms[1])
        self.assertNotIn(F(1, 2), atoms[1])

    def test_zero_probability_outcome_gets_no_atom(self):
        """Test zero-width intervals never appear in assignments."""
        atoms = interval_atoms([[F(1, 2), F(0), F(1, 2)]])
        self.assertEqual([a.assignment for a in atoms], [(0,), (2,)])

    def test_bad_ordering(self):
        """Test an ordering that is not a permutation."""
        with self.assertRaises(ParameterError):
            breakpoints([[F(1, 2), F(1, 2)]], [(0, 0)])


class DeterminizeTest(SimpleTestCase):
    """Test cases for determinize."""

    def setUp(self):
        """Set up test data."""
        self.scenario = Scenario((2, 2), (2,))
        self.model = LocalModel(
            self.scenario,
            [(1, [[F(1, 2), F(1, 2)], [F(1, 4), F(3, 4)]], [[1, 0]])],
        )

    def test_hand_worked_example(self):
        """Test the three-atom decomposition of a single stochastic component."""
        result = determinize(self.model)
        self.assertEqual([c.weight for c in result.components], [F(1, 4), F(1, 4), F(1, 2)])
        alice_choices = [
            tuple(row.index(1) for row in component.alice) for component in result.components
        ]
        self.assertEqual(alice_choices, [(0, 0), (0, 1), (1, 1)])
        self.assertTrue(is_deterministic(result))
        behavior = behavior_of_model(result)
        self.assertEqual(behavior, behavior_of_model(self.model))
        self.assertEqual(behavior.p(0, 0, 1, 0), F(1, 4))

    def test_deterministic_input_is_kept(self):
        """Test a deterministic model comes back unchanged."""
        model = LocalModel(self.scenario, [(1, [[0, 1], [1, 0]], [[1, 0]])])
        self.assertEqual(determinize(model), model)

    def test_product_of_two_partitions(self):
        """Test uniform responses on both sides give four quarter-weight components."""
        scenario = Scenario((2,), (2,))
        model = LocalModel(scenario, [(1, [[F(1, 2), F(1, 2)]], [[F(1, 2), F(1, 2)]])])
        result = determinize(model)
        self.assertEqual(len(result), 4)
        self.assertTrue(all(c.weight == F(1, 4) for c in result.components))
        pairs = {(c.alice[0].index(1), c.bob[0].index(1)) for c in result.components}
        self.assertEqual(pairs, {(0, 0), (0, 1), (1, 0), (1, 1)})

    def test_invalid_model(self):
        """Test determinize refuses invalid models and approximate input."""
        with self.assertRaises(InvariantError):
            determinize(LocalModel(self.scenario, [(F(1, 2), [[1, 0], [1, 0]], [[1, 0]])]))
        with self.assertRaises(ModeError):
            LocalModel(self.scenario, [(1.0, [[1, 0], [1, 0]], [[1, 0]])])
        with self.assertRaises(ModeError):
            determinize(object())

    def test_exactness_over_random_models(self):
        """Test behavior equality, determinism, weight conservation and the size bound."""
        rng = random.Random(1964)
        for _ in range(200):
            model = random_local_model(rng)
            result = determinize(model)
            self.assertEqual(behavior_of_model(result), behavior_of_model(model))
            self.assertTrue(is_deterministic(result))
            self.assertEqual(sum(c.weight for c in result.components), 1)
            self.assertLessEqual(len(result), component_bound(model))

    def test_idempotent_at_behavior_level(self):
        """Test determinizing twice preserves the behavior again."""
        rng = random.Random(8)
        for _ in range(20):
            model = random_local_model(rng)
            twice = determinize(determinize(model))
            self.assertEqual(behavior_of_model(twice), behavior_of_model(model))

    def test_ordering_contextuality(self):
        """Test reversed outcome orderings change the components, never the behavior."""
        rng = random.Random(1)
        changed = 0
        for _ in range(50):
            model = random_local_model(rng)
            reverse = {
                'alice': [tuple(reversed(range(n))) for n in model.scenario.alice_outcomes],
                'bob': [tuple(reversed(range(n))) for n in model.scenario.bob_outcomes],
            }
            canonical = determinize(model)
            reversed_model = determinize(model, orderings=reverse)
            self.assertEqual(behavior_of_model(canonical), behavior_of_model(reversed_model))
            self.assertTrue(is_deterministic(reversed_model))
            changed += canonical.components != reversed_model.components
        self.assertGreater(changed, 0)


class AtomSerializerTest(SimpleTestCase):
    """Test cases for the atom decomposition documents."""

    def test_component_atoms(self):
        """Test the hand-worked component renders its three alice atoms."""
        model = LocalModel(
            Scenario((2, 2), (2,)),
            [(1, [[F(1, 2), F(1, 2)], [F(1, 4), F(3, 4)]], [[1, 0]])],
        )
        data = ComponentAtomsSerializer(model.components[0]).data
        self.assertEqual(data['weight'], '1')
        self.assertEqual(
            [(atom['lower'], atom['upper'], atom['assignment']) for atom in data['alice']],
            [('0', '1/4', [0, 0]), ('1/4', '1/2', [0, 1]), ('1/2', '1', [1, 1])],
        )
        self.assertEqual(data['bob'], [{'lower': '0', 'upper': '1', 'assignment': [0]}])
        self.assertEqual(alice_atoms(model.components[0])[1].width, F(1, 4))
        self.assertEqual(len(bob_atoms(model.components[0])), 1)
