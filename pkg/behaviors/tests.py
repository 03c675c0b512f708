import random
from fractions import Fraction

from django.test import SimpleTestCase

from core.exceptions import InvariantError, ModeError, ParameterError, ShapeError

from .models import Behavior, LocalModel, NumericMode, Scenario
from .serializers.behavior_serializer import BehaviorSerializer, LocalModelSerializer
from .serializers.validation_serializer import ValidationReportSerializer
from .services.fixture_service import pr_box, uniform_behavior
from .services.marginal_service import marginal_alice, marginal_bob
from .services.synthesis_service import behavior_of_model, blend_models, is_deterministic
from .services.validation_service import validate_behavior, validate_model
from .utils.random_models import random_local_model
from .utils.rational import format_rational, parse_rational

F = Fraction
CHSH = Scenario((2, 2), (2, 2))


def point_mass_behavior(scenario, a=0, b=0):
    entries = [
        [
            [[F(int(i == a and j == b)) for j in range(scenario.bob_outcomes[y])]
             for i in range(scenario.alice_outcomes[x])]
            for y in range(scenario.bob_settings)
        ]
        for x in range(scenario.alice_settings)
    ]
    return Behavior(scenario, entries)


class RationalTest(SimpleTestCase):
    """Test cases for the rational text encoding."""

    def test_parse_fraction_and_integer(self):
        """Test parsing "num/den" and bare integers."""
        self.assertEqual(parse_rational('3/4'), F(3, 4))
        self.assertEqual(parse_rational('3'), F(3))
        self.assertEqual(parse_rational('-2/4'), F(-1, 2))
        self.assertEqual(parse_rational(5), F(5))

    def test_parse_rejects_floats_and_garbage(self):
        """Test that floats and malformed strings are refused."""
        for bad in (0.5, '0.5', '1/0', 'abc', True, None):
            with self.assertRaises(ValueError):
                parse_rational(bad)

    def test_format_is_lowest_terms(self):
        """Test canonical formatting."""
        self.assertEqual(format_rational(F(6, 8)), '3/4')
        self.assertEqual(format_rational(F(4, 2)), '2')
        self.assertEqual(format_rational(F(-1, 3)), '-1/3')

    def test_round_trip(self):
        """Test parse(format(r)) = r over random rationals."""
        rng = random.Random(7)
        for _ in range(200):
            value = F(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 6))
            self.assertEqual(parse_rational(format_rational(value)), value)


class ScenarioTest(SimpleTestCase):
    """Test cases for Scenario."""

    def test_ragged_outcomes(self):
        """Test a scenario with different outcome counts per setting."""
        scenario = Scenario([2, 3], [1])
        self.assertEqual(scenario.alice_settings, 2)
        self.assertEqual(list(scenario.outcome_pairs(1, 0)), [(0, 0), (1, 0), (2, 0)])
        self.assertFalse(scenario.is_chsh)

    def test_invalid_scenarios(self):
        """Test that empty parties and zero outcome counts are rejected."""
        with self.assertRaises(ShapeError):
            Scenario([], [2])
        with self.assertRaises(ShapeError):
            Scenario([2, 0], [2])


class ValidateBehaviorTest(SimpleTestCase):
    """Test cases for validate_behavior."""

    def test_uniform_is_ok(self):
        """Test the uniform (2,2,2) behavior."""
        self.assertTrue(validate_behavior(uniform_behavior(CHSH)).ok)

    def test_normalization_violation(self):
        """Test a cell summing to 5/4."""
        entries = [[[[F(1, 4)] * 2 for _ in range(2)] for _ in range(2)] for _ in range(2)]
        entries[0][0][0][0] = F(1, 2)
        report = validate_behavior(Behavior(CHSH, entries))
        self.assertFalse(report.ok)
        self.assertEqual(len(report.violations), 1)
        violation = report.violations[0]
        self.assertEqual(violation.kind, 'normalization')
        self.assertEqual(violation.location, {'x': 0, 'y': 0})
        self.assertIn('sum 5/4', violation.message)
        self.assertIn('(x=0,y=0)', violation.message)

    def test_negative_entry(self):
        """Test a negative entry is located."""
        entries = [[[[F(1, 4)] * 2 for _ in range(2)] for _ in range(2)] for _ in range(2)]
        entries[1][0][1][1] = F(-1, 8)
        entries[1][0][0][0] = F(5, 8)
        report = validate_behavior(Behavior(CHSH, entries))
        kinds = [v.kind for v in report.violations]
        self.assertEqual(kinds, ['negative'])
        self.assertEqual(report.violations[0].location, {'x': 1, 'y': 0, 'a': 1, 'b': 1})

    def test_shape_error_names_index(self):
        """Test a malformed table raises a shape error naming the offending index."""
        entries = [[[[F(1, 4)] * 2 for _ in range(2)] for _ in range(2)] for _ in range(2)]
        entries[1][1][0] = [F(1, 4)]
        with self.assertRaisesMessage(ShapeError, '(x=1,y=1,a=0)'):
            Behavior(CHSH, entries)

    def test_float_tolerance(self):
        """Test approximate behaviors are checked against tolerances."""
        entries = [[[[0.25] * 2 for _ in range(2)] for _ in range(2)] for _ in range(2)]
        entries[0][0][0][0] = 0.25 + 1e-11
        entries[0][1][0][0] = 0.25 - 1e-13 + 0.0
        self.assertTrue(validate_behavior(Behavior(CHSH, entries, NumericMode.FLOAT)).ok)
        entries[0][0][0][0] = 0.26
        self.assertFalse(validate_behavior(Behavior(CHSH, entries, NumericMode.FLOAT)).ok)

    def test_exact_table_refuses_floats(self):
        """Test floats are not silently accepted in exact mode."""
        entries = [[[[0.25] * 2 for _ in range(2)] for _ in range(2)] for _ in range(2)]
        with self.assertRaises(ModeError):
            Behavior(CHSH, entries)


class BehaviorOfModelTest(SimpleTestCase):
    """Test cases for behavior_of_model."""

    def setUp(self):
        """Set up test data."""
        self.scenario = CHSH
        self.zero = ([[1, 0], [1, 0]], [[1, 0], [1, 0]])
        self.one = ([[0, 1], [0, 1]], [[0, 1], [0, 1]])

    def test_degenerate_mixture(self):
        """Test a single deterministic component."""
        model = LocalModel(self.scenario, [(1, *self.zero)])
        self.assertEqual(behavior_of_model(model), point_mass_behavior(self.scenario))

    def test_two_component_mixture(self):
        """Test a convex combination of two deterministic components."""
        model = LocalModel(self.scenario, [(F(1, 2), *self.zero), (F(1, 2), *self.one)])
        behavior = behavior_of_model(model)
        for x, y in self.scenario.cells():
            self.assertEqual(behavior.p(0, 0, x, y), F(1, 2))
            self.assertEqual(behavior.p(1, 1, x, y), F(1, 2))
            self.assertEqual(behavior.p(0, 1, x, y), 0)
        self.assertTrue(is_deterministic(model))

    def test_product_sum_evaluation(self):
        """Test p(0,0|x1,y0) = 1/4 for a stochastic component."""
        scenario = Scenario((2, 2), (2,))
        model = LocalModel(scenario, [(1, [[F(1, 2), F(1, 2)], [F(1, 4), F(3, 4)]], [[1, 0]])])
        behavior = behavior_of_model(model)
        self.assertEqual(behavior.p(0, 0, 1, 0), F(1, 4))
        self.assertFalse(is_deterministic(model))

    def test_invalid_model_is_not_renormalized(self):
        """Test weights not summing to one raise instead of being rescaled."""
        model = LocalModel(self.scenario, [(F(1, 2), *self.zero)])
        self.assertFalse(validate_model(model).ok)
        with self.assertRaises(InvariantError):
            behavior_of_model(model)

    def test_random_models_are_valid_behaviors(self):
        """Test exact normalization of synthesized behaviors."""
        rng = random.Random(11)
        for _ in range(50):
            model = random_local_model(rng)
            self.assertTrue(validate_model(model).ok)
            self.assertTrue(validate_behavior(behavior_of_model(model)).ok)

    def test_affine_in_the_mixture(self):
        """Test blending models blends their behaviors exactly."""
        rng = random.Random(3)
        for _ in range(20):
            first = random_local_model(rng)
            second = random_local_model(rng, scenario=first.scenario)
            weight = F(rng.randint(0, 10), 10)
            blended = behavior_of_model(blend_models(first, second, weight))
            p1, p2 = behavior_of_model(first), behavior_of_model(second)
            for x, y in first.scenario.cells():
                for a, b in first.scenario.outcome_pairs(x, y):
                    self.assertEqual(
                        blended.p(a, b, x, y),
                        weight * p1.p(a, b, x, y) + (1 - weight) * p2.p(a, b, x, y),
                    )

    def test_blend_rejects_bad_weight(self):
        """Test blend weights outside [0, 1]."""
        model = LocalModel(self.scenario, [(1, *self.zero)])
        with self.assertRaises(ParameterError):
            blend_models(model, model, 2)


class MarginalTest(SimpleTestCase):
    """Test cases for marginals."""

    def test_uniform_and_pr_box(self):
        """Test uniform marginals of the uniform behavior and the PR box."""
        for behavior in (uniform_behavior(CHSH), pr_box()):
            for x, y in CHSH.cells():
                self.assertEqual(marginal_alice(behavior, x, y), (F(1, 2), F(1, 2)))
                self.assertEqual(marginal_bob(behavior, x, y), (F(1, 2), F(1, 2)))

    def test_point_mass(self):
        """Test the p(0,0|x,y)=1 behavior."""
        self.assertEqual(marginal_alice(point_mass_behavior(CHSH), 1, 0), (1, 0))

    def test_index_out_of_range(self):
        """Test marginals at a missing setting."""
        with self.assertRaises(ShapeError):
            marginal_alice(uniform_behavior(CHSH), 2, 0)

    def test_alice_marginal_independent_of_y(self):
        """Test a local mixture forces Alice's marginals to ignore Bob's setting."""
        rng = random.Random(5)
        for _ in range(50):
            model = random_local_model(rng)
            behavior = behavior_of_model(model)
            for x in range(model.scenario.alice_settings):
                marginals = {marginal_alice(behavior, x, y) for y in range(model.scenario.bob_settings)}
                self.assertEqual(len(marginals), 1)


class SerializerTest(SimpleTestCase):
    """Test cases for the JSON encodings."""

    def test_behavior_round_trip(self):
        """Test emitting then re-reading a behavior."""
        behavior = pr_box()
        data = BehaviorSerializer(behavior).data
        self.assertEqual(data['p'][1][1][0][1], '1/2')
        self.assertEqual(data['p'][1][1][0][0], '0')
        serializer = BehaviorSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), behavior)

    def test_float_behavior(self):
        """Test float-mode documents."""
        data = {
            'scenario': {'alice': [2], 'bob': [1]},
            'mode': 'float',
            'p': [[[[0.5], [0.5]]]],
        }
        serializer = BehaviorSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        behavior = serializer.save()
        self.assertFalse(behavior.is_exact)
        self.assertEqual(BehaviorSerializer(behavior).data['p'], [[[[0.5], [0.5]]]])

    def test_behavior_shape_error(self):
        """Test a ragged table is reported on the p field."""
        data = {'scenario': {'alice': [2], 'bob': [2]}, 'p': [[[['1/2', '1/2']]]]}
        serializer = BehaviorSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('p', serializer.errors)

    def test_bad_rational_is_located(self):
        """Test a bad leaf is reported with its JSON path."""
        data = {'scenario': {'alice': [1], 'bob': [1]}, 'p': [[[['0.5']]]]}
        serializer = BehaviorSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('p[0][0][0][0]', str(serializer.errors))

    def test_model_round_trip(self):
        """Test emitting then re-reading a local model."""
        model = random_local_model(random.Random(1))
        data = LocalModelSerializer(model).data
        serializer = LocalModelSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), model)

    def test_model_shape_error(self):
        """Test a response table with the wrong number of settings."""
        data = {
            'scenario': {'alice': [2, 2], 'bob': [2]},
            'components': [{'weight': '1', 'alice': [['1', '0']], 'bob': [['1', '0']]}],
        }
        serializer = LocalModelSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('components', serializer.errors)

    def test_validation_report(self):
        """Test a failing report lists each violation with its location."""
        entries = [[[[F(1, 2), F(1, 2)], [F(1, 4), 0]]]]
        report = validate_behavior(Behavior(Scenario((2,), (2,)), entries))
        data = ValidationReportSerializer(report).data
        self.assertFalse(data['ok'])
        self.assertEqual(data['violations'][0]['kind'], 'normalization')
        self.assertEqual(data['violations'][0]['location'], {'x': 0, 'y': 0})
        self.assertEqual(data['violations'][0]['message'], 'sum 5/4 != 1 at (x=0,y=0)')
