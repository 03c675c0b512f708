import math
import random
from fractions import Fraction

import pytest
from django.test import SimpleTestCase

from behaviors.models import Behavior, NumericMode, Scenario
from behaviors.services.fixture_service import CHSH_SCENARIO, pr_box, uniform_behavior
from behaviors.services.synthesis_service import behavior_of_model
from behaviors.utils.random_models import random_distribution, random_local_model
from core.exceptions import InvariantError, ParameterError, ShapeError, SizeError
from determinization.services import determinize

from .models.bell_functional_model import BellFunctional
from .models.membership_model import MembershipMethod, MembershipStatus
from .models.strategy_model import DeterministicStrategy
from .repositories.strategy_repository import StrategyRepository
from .serializers.polytope_serializer import (
    BellFunctionalSerializer,
    ClassificationSerializer,
    MembershipResultSerializer,
)
from .services.bell_functional_service import evaluate_bell_functional
from .services.chsh_service import (
    CHSH_SIGN_PATTERNS,
    chsh_all_variants,
    chsh_functional,
    chsh_value,
    correlator,
)
from .services.classification_service import Verdict, classify_behavior
from .services.membership_service import MembershipService, membership
from .services.strategy_service import count_strategies, deterministic_behavior, enumerate_strategies
from .utils.rationalize import rationalize_behavior
from .utils.simplex import solve_phase_one

F = Fraction


def mix(behaviors, weights):
    """Exact convex combination of behaviors on one scenario."""
    scenario = behaviors[0].scenario
    entries = [
        [
            [
                [
                    sum(w * b.p(a, bb, x, y) for w, b in zip(weights, behaviors))
                    for bb in range(scenario.bob_outcomes[y])
                ]
                for a in range(scenario.alice_outcomes[x])
            ]
            for y in range(scenario.bob_settings)
        ]
        for x in range(scenario.alice_settings)
    ]
    return Behavior(scenario, entries)


def random_chsh_behavior(rng):
    """Random mixture of PR-type extremals and deterministic behaviors."""
    extremals = [pr_box(v) for v in range(8)]
    extremals += [s.behavior(CHSH_SCENARIO) for s in enumerate_strategies(CHSH_SCENARIO)]
    chosen = rng.sample(extremals, rng.randint(1, 4))
    return mix(chosen, random_distribution(rng, len(chosen), 24))


def relabel(behavior):
    """Swap Alice's settings, flip Bob's outcomes at y=0, then swap parties."""
    scenario = behavior.scenario
    entries = [list(row) for row in reversed(behavior.entries)]
    for row in entries:
        row[0] = [tuple(reversed(outcomes)) for outcomes in row[0]]
    swapped = Scenario(tuple(reversed(scenario.alice_outcomes)), scenario.bob_outcomes)
    return Behavior(swapped, entries).transposed()


def brute_force_bound(functional):
    scenario = functional.scenario
    return max(
        evaluate_bell_functional(functional, s.behavior(scenario)).value
        for s in enumerate_strategies(scenario)
    )


def pr_box_with_idle_setting():
    """PR box plus a third Bob setting that always answers 0."""
    scenario = Scenario((2, 2), (2, 2, 2))
    box = pr_box()
    entries = [
        [box.entries[x][0], box.entries[x][1], ((F(1, 2), F(0)), (F(1, 2), F(0)))]
        for x in range(2)
    ]
    return Behavior(scenario, entries)


class StrategyRepositoryTest(SimpleTestCase):
    """Test cases for deterministic strategy enumeration."""

    def setUp(self):
        """Set up test data."""
        self.repository = StrategyRepository()

    def test_counts(self):
        """Test counts for (2,2,2), a single ternary setting and (3,3,2)."""
        self.assertEqual(count_strategies(CHSH_SCENARIO), 16)
        self.assertEqual(len(enumerate_strategies(CHSH_SCENARIO)), 16)
        self.assertEqual(len(enumerate_strategies(Scenario((3,), (3,)))), 9)
        self.assertEqual(len(enumerate_strategies(Scenario((2, 2, 2), (2, 2, 2)))), 64)

    def test_lexicographic_order(self):
        """Test Alice's map varies slowest."""
        strategies = enumerate_strategies(CHSH_SCENARIO)
        self.assertEqual(strategies[0], DeterministicStrategy((0, 0), (0, 0)))
        self.assertEqual(strategies[1], DeterministicStrategy((0, 0), (0, 1)))
        self.assertEqual(strategies[4], DeterministicStrategy((0, 1), (0, 0)))
        self.assertEqual(strategies[-1], DeterministicStrategy((1, 1), (1, 1)))

    def test_cap(self):
        """Test exceeding the cap is a size error naming the count."""
        with self.assertRaisesMessage(SizeError, '16'):
            StrategyRepository(cap=10).get_strategies(CHSH_SCENARIO)
        with self.assertRaises(SizeError):
            enumerate_strategies(Scenario((3,) * 13, (2,)))

    def test_deterministic_behavior(self):
        """Test the behavior of a strategy is a one-hot table."""
        behavior = deterministic_behavior(DeterministicStrategy((1, 0), (0, 1)), CHSH_SCENARIO)
        self.assertEqual(behavior.p(1, 0, 0, 0), 1)
        self.assertEqual(behavior.p(0, 1, 1, 1), 1)
        self.assertEqual(behavior.p(0, 0, 1, 1), 0)
        with self.assertRaises(ShapeError):
            deterministic_behavior(DeterministicStrategy((2, 0), (0, 1)), CHSH_SCENARIO)


class BellFunctionalTest(SimpleTestCase):
    """Test cases for BellFunctional and its evaluation."""

    def test_local_bound_is_recomputed(self):
        """Test the CHSH functional has local bound 2 and a wrong bound is rejected."""
        functional = chsh_functional()
        self.assertEqual(functional.local_bound, 2)
        self.assertEqual(brute_force_bound(functional), 2)
        with self.assertRaises(InvariantError):
            BellFunctional(CHSH_SCENARIO, functional.coefficients, 3)

    def test_chsh_on_pr_box(self):
        """Test the CHSH functional on the PR box."""
        evaluation = evaluate_bell_functional(chsh_functional(), pr_box())
        self.assertEqual(evaluation.value, 4)
        self.assertTrue(evaluation.violated)

    def test_chsh_on_members(self):
        """Test no member behavior violates any CHSH functional."""
        rng = random.Random(5)
        for _ in range(20):
            behavior = behavior_of_model(random_local_model(rng, CHSH_SCENARIO))
            for variant in range(8):
                self.assertFalse(evaluate_bell_functional(chsh_functional(variant), behavior).violated)

    def test_zero_functional(self):
        """Test the zero functional is never violated."""
        zero = BellFunctional(CHSH_SCENARIO, [[[[0, 0], [0, 0]]] * 2] * 2)
        self.assertEqual(zero.local_bound, 0)
        evaluation = evaluate_bell_functional(zero, pr_box())
        self.assertEqual(evaluation.value, 0)
        self.assertFalse(evaluation.violated)

    def test_float_margin(self):
        """Test approximate behaviors need to clear the margin."""
        functional = chsh_functional()
        evaluation = evaluate_bell_functional(functional, pr_box().as_float())
        self.assertAlmostEqual(evaluation.value, 4.0)
        self.assertTrue(evaluation.violated)
        self.assertFalse(evaluate_bell_functional(functional, pr_box().as_float(), margin=3).violated)

    def test_shape_mismatch(self):
        """Test evaluating on another scenario fails."""
        with self.assertRaises(ShapeError):
            evaluate_bell_functional(chsh_functional(), uniform_behavior(Scenario((2,), (2,))))

    def test_serializer_round_trip(self):
        """Test a functional document is parsed and its bound checked."""
        data = BellFunctionalSerializer(chsh_functional()).data
        self.assertEqual(data['bound'], '2')
        serializer = BellFunctionalSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), chsh_functional())
        data['bound'] = '5/2'
        self.assertFalse(BellFunctionalSerializer(data=data).is_valid())


class ChshTest(SimpleTestCase):
    """Test cases for the CHSH family."""

    def test_sign_patterns(self):
        """Test the eight odd-minus patterns and the canonical first one."""
        self.assertEqual(len(CHSH_SIGN_PATTERNS), 8)
        self.assertEqual(CHSH_SIGN_PATTERNS[0], (1, 1, 1, -1))
        self.assertTrue(all(p.count(-1) % 2 == 1 for p in CHSH_SIGN_PATTERNS))

    def test_uniform(self):
        """Test every variant vanishes on the uniform behavior."""
        summary = chsh_all_variants(uniform_behavior(CHSH_SCENARIO))
        self.assertEqual(summary.values, (0,) * 8)
        self.assertEqual(summary.argmax, 0)

    def test_pr_box(self):
        """Test the PR box reaches 4 on variant 0."""
        box = pr_box()
        self.assertEqual([correlator(box, x, y) for x, y in CHSH_SCENARIO.cells()], [1, 1, 1, -1])
        self.assertEqual(chsh_value(box, 0), 4)
        self.assertEqual(chsh_all_variants(box).maximum, 4)

    def test_deterministic_strategies(self):
        """Test deterministic behaviors reach |S| = 2 exactly."""
        for strategy in enumerate_strategies(CHSH_SCENARIO):
            values = chsh_all_variants(strategy.behavior(CHSH_SCENARIO)).values
            self.assertEqual(max(abs(v) for v in values), 2)

    def test_errors(self):
        """Test wrong shapes and variant indices."""
        with self.assertRaises(ShapeError):
            chsh_all_variants(uniform_behavior(Scenario((2, 2), (3, 2))))
        with self.assertRaises(ParameterError):
            chsh_value(pr_box(), 8)


class SimplexTest(SimpleTestCase):
    """Test cases for the exact phase-one tableau."""

    def test_feasible(self):
        """Test a small feasible system returns an exact solution."""
        result = solve_phase_one([[1, 1, 0], [0, 1, 1]], [F(1, 2), F(3, 4)])
        self.assertTrue(result.feasible)
        q = result.solution
        self.assertEqual(q[0] + q[1], F(1, 2))
        self.assertEqual(q[1] + q[2], F(3, 4))
        self.assertTrue(all(v >= 0 for v in q))

    def test_farkas_vector(self):
        """Test the dual of an infeasible system separates b from the cone."""
        rows = [[1, 1], [1, 1]]
        rhs = [F(1), F(2)]
        result = solve_phase_one(rows, rhs)
        self.assertFalse(result.feasible)
        y = result.duals
        for j in range(2):
            self.assertLessEqual(sum(y[i] * rows[i][j] for i in range(2)), 0)
        self.assertEqual(sum(yi * bi for yi, bi in zip(y, rhs)), result.objective)
        self.assertGreater(result.objective, 0)

    def test_negative_rhs(self):
        """Test rows with negative right-hand side are handled."""
        result = solve_phase_one([[-1, 0], [0, 1]], [F(-1, 3), F(1)])
        self.assertTrue(result.feasible)
        self.assertEqual(result.solution, (F(1, 3), F(1)))


class MembershipTest(SimpleTestCase):
    """Test cases for local-polytope membership."""

    def setUp(self):
        """Set up test data."""
        self.service = MembershipService()

    def assert_sound(self, behavior, result):
        if result.is_member:
            self.assertEqual(behavior_of_model(result.model), behavior)
        else:
            bound = brute_force_bound(result.certificate)
            self.assertEqual(bound, result.certificate.local_bound)
            self.assertGreater(result.value, bound)

    def test_pr_box_is_not_local(self):
        """Test the PR box gets the CHSH certificate with bound 2 and value 4."""
        result = membership(pr_box())
        self.assertEqual(result.status, MembershipStatus.NON_MEMBER)
        self.assertEqual(result.certificate.local_bound, 2)
        self.assertEqual(result.value, 4)
        self.assert_sound(pr_box(), result)

    def test_deterministic_behavior_is_its_own_model(self):
        """Test a deterministic behavior returns the single matching strategy."""
        strategy = DeterministicStrategy((1, 0), (1, 1))
        behavior = strategy.behavior(CHSH_SCENARIO)
        result = self.service.execute(behavior)
        self.assertTrue(result.is_member)
        self.assertEqual(len(result.model), 1)
        self.assertEqual(result.model.components[0], strategy.component(CHSH_SCENARIO))

    def test_uniform_is_local(self):
        """Test the uniform behavior in a mixed-outcome scenario."""
        behavior = uniform_behavior(Scenario((2, 3), (3,)))
        result = self.service.execute(behavior)
        self.assertTrue(result.is_member)
        self.assert_sound(behavior, result)

    def test_farkas_certificate_outside_chsh(self):
        """Test a nonlocal behavior with an idle setting gets an integer certificate."""
        behavior = pr_box_with_idle_setting()
        result = self.service.execute(behavior)
        self.assertEqual(result.status, MembershipStatus.NON_MEMBER)
        coefficients = [c for row in result.certificate.coefficients for cell in row
                        for outcomes in cell for c in outcomes]
        self.assertTrue(all(c.denominator == 1 for c in coefficients))
        self.assertEqual(math.gcd(*(int(c) for c in coefficients)), 1)
        self.assert_sound(behavior, result)

    def test_signalling_behavior_is_not_local(self):
        """Test signalling input is rejected with a sound certificate."""
        entries = [[[[0, 0], [0, 0]] for _ in range(2)] for _ in range(2)]
        for x in range(2):
            entries[x][0][0][0] = 1
            entries[x][1][1][0] = 1
        behavior = Behavior(CHSH_SCENARIO, entries)
        result = self.service.execute(behavior)
        self.assertFalse(result.is_member)
        self.assert_sound(behavior, result)

    def test_invalid_behavior(self):
        """Test unnormalized input is an invariant error."""
        entries = [[[[F(1, 2)] * 2] * 2] * 2] * 2
        with self.assertRaises(InvariantError):
            self.service.execute(Behavior(CHSH_SCENARIO, entries))

    def test_cap(self):
        """Test the cap propagates as a size error."""
        with self.assertRaises(SizeError):
            MembershipService(strategy_cap=8).execute(pr_box())

    def farkas_certificate(self, behavior):
        strategies = self.service.repository.get_strategies(behavior.scenario)
        rows, rhs, index = MembershipService.constraint_system(behavior, strategies)
        result = solve_phase_one(rows, rhs)
        self.assertFalse(result.feasible)
        return MembershipService.farkas_functional(behavior, result.duals, index)

    def test_farkas_functional_separates_chsh_behaviors(self):
        """Test the simplex certificate itself separates nonlocal (2,2,2) behaviors."""
        noisy = mix([pr_box(), uniform_behavior(CHSH_SCENARIO)], [F(3, 4), F(1, 4)])
        for behavior in (pr_box(), pr_box(5), noisy):
            functional, value = self.farkas_certificate(behavior)
            bound = brute_force_bound(functional)
            self.assertEqual(functional.local_bound, bound)
            self.assertGreater(value, bound)
            self.assertEqual(evaluate_bell_functional(functional, behavior).value, value)
            entries = [c for row in functional.coefficients for cell in row for outcomes in cell for c in outcomes]
            self.assertTrue(all(isinstance(c, int) or c.denominator == 1 for c in entries))

    def test_round_trip_with_determinize(self):
        """Test LP and determinize both witness membership of random local behaviors."""
        rng = random.Random(77)
        for _ in range(15):
            model = random_local_model(rng)
            behavior = behavior_of_model(model)
            result = self.service.execute(behavior)
            self.assertTrue(result.is_member)
            self.assertEqual(behavior_of_model(result.model), behavior)
            self.assertEqual(behavior_of_model(determinize(model)), behavior)

    @pytest.mark.slow
    def test_round_trip_with_determinize_sweep(self):
        """Test the round trip over 100 models with up to 3 settings and 3 outcomes."""
        rng = random.Random(2024)
        for _ in range(100):
            model = random_local_model(rng, max_settings=3, max_outcomes=3)
            behavior = behavior_of_model(model)
            result = self.service.execute(behavior)
            self.assertTrue(result.is_member)
            self.assertEqual(behavior_of_model(result.model), behavior)
            self.assertEqual(behavior_of_model(determinize(model)), behavior)

    def test_fine_criterion(self):
        """Test membership matches max CHSH <= 2 on random no-signalling mixtures."""
        rng = random.Random(11)
        members = 0
        for _ in range(100):
            behavior = random_chsh_behavior(rng)
            result = self.service.execute(behavior)
            self.assertEqual(result.is_member, chsh_all_variants(behavior).maximum <= 2)
            self.assert_sound(behavior, result)
            members += result.is_member
        self.assertGreater(members, 0)
        self.assertLess(members, 100)

    def test_relabelling_invariance(self):
        """Test permuting settings, outcomes and parties keeps the status."""
        rng = random.Random(3)
        for _ in range(30):
            behavior = random_chsh_behavior(rng)
            relabelled = relabel(behavior)
            self.assertEqual(
                self.service.execute(behavior).status,
                self.service.execute(relabelled).status,
            )
        behavior = pr_box_with_idle_setting()
        self.assertEqual(self.service.execute(relabel(behavior)).status, MembershipStatus.NON_MEMBER)

    def test_float_chsh_criterion(self):
        """Test approximate (2,2,2) input uses the CHSH criterion."""
        result = self.service.execute(pr_box().as_float())
        self.assertEqual(result.method, MembershipMethod.CHSH)
        self.assertFalse(result.is_member)
        self.assertAlmostEqual(result.value, 4.0)

        local = self.service.execute(uniform_behavior(CHSH_SCENARIO).as_float())
        self.assertTrue(local.is_member)
        self.assertIsNone(local.model)

    def test_float_outside_chsh_is_rationalized(self):
        """Test approximate input elsewhere is rationalized with a warning."""
        behavior = uniform_behavior(Scenario((3,), (3,))).as_float()
        with self.assertLogs('local_polytope', level='WARNING'):
            result = self.service.execute(behavior)
        self.assertTrue(result.is_member)
        self.assertEqual(result.method, MembershipMethod.RATIONALIZED_LP)
        self.assertIn('rationalized', result.warning)

    def test_float_drift_is_rejected(self):
        """Test approximate input that does not sum to 1 is an invariant error."""
        entries = [[[[0.3, 0.3], [0.3, 0.3]]] * 2] * 2
        with self.assertRaises(InvariantError):
            self.service.execute(Behavior(CHSH_SCENARIO, entries, NumericMode.FLOAT))

    def test_result_serialization(self):
        """Test member and non-member JSON layouts."""
        data = MembershipResultSerializer(membership(pr_box())).data
        self.assertEqual(data['status'], 'non_member')
        self.assertEqual(data['certificate']['bound'], '2')
        self.assertEqual(data['certificate']['value'], '4')

        member = membership(uniform_behavior(CHSH_SCENARIO))
        data = MembershipResultSerializer(member).data
        self.assertEqual(data['status'], 'member')
        self.assertIn('components', data['model'])


class RationalizeTest(SimpleTestCase):
    """Test cases for rationalization of approximate behaviors."""

    def test_cells_sum_to_one(self):
        """Test thirds come back exact and normalized."""
        behavior = uniform_behavior(Scenario((3,), (1,))).as_float()
        exact = rationalize_behavior(behavior, 1000)
        self.assertTrue(exact.is_exact)
        self.assertEqual(exact.cell(0, 0), ((F(1, 3),), (F(1, 3),), (F(1, 3),)))

    def test_residual_goes_to_largest_entry(self):
        """Test rounding drift lands on the largest entry."""
        behavior = Behavior(Scenario((2,), (1,)), [[[[0.2500001], [0.7499999]]]], NumericMode.FLOAT)
        exact = rationalize_behavior(behavior, 100)
        self.assertEqual(exact.cell(0, 0), ((F(1, 4),), (F(3, 4),)))


class ClassificationTest(SimpleTestCase):
    """Test cases for classify_behavior."""

    def test_verdicts(self):
        """Test the three verdicts."""
        self.assertEqual(classify_behavior(uniform_behavior(CHSH_SCENARIO)).verdict, Verdict.LOCAL_SEPARABLE)
        self.assertEqual(classify_behavior(pr_box()).verdict, Verdict.LOCAL_NONSEPARABLE)

        entries = [[[[0, 0], [0, 0]] for _ in range(2)] for _ in range(2)]
        for x in range(2):
            entries[x][0][0][0] = 1
            entries[x][1][1][0] = 1
        signalling = classify_behavior(Behavior(CHSH_SCENARIO, entries))
        self.assertEqual(signalling.verdict, Verdict.SIGNALLING)
        self.assertIsNone(signalling.membership)

    def test_serialization(self):
        """Test the classification JSON layout."""
        data = ClassificationSerializer(classify_behavior(pr_box())).data
        self.assertEqual(data['verdict'], 'local_nonseparable')
        self.assertTrue(data['no_signalling']['ok'])
        self.assertEqual(data['membership']['status'], 'non_member')


@pytest.mark.slow
class LargerScenarioMembershipTest(SimpleTestCase):
    """Test membership on three-setting scenarios."""

    def test_random_models(self):
        """Test random (3,3,2) local behaviors are members."""
        rng = random.Random(19)
        scenario = Scenario((2, 2, 2), (2, 2, 2))
        for _ in range(10):
            behavior = behavior_of_model(random_local_model(rng, scenario))
            self.assertTrue(membership(behavior).is_member)
