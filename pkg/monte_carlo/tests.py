import io
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from django.test import SimpleTestCase

from behaviors.models import LocalModel, Scenario
from behaviors.services.fixture_service import CHSH_SCENARIO, pr_box
from behaviors.services.synthesis_service import behavior_of_model
from behaviors.utils.random_models import random_local_model
from core.exceptions import CoverageError, ParameterError, ScenarioMismatchError, ShapeError
from determinization.services import determinize
from local_polytope.services.chsh_service import chsh_all_variants

from .models import SampleRecord
from .serializers import ComparisonReportSerializer
from .services.comparison_service import compare_empirical
from .services.empirical_service import empirical_behavior, max_deviation
from .services.record_io_service import read_records_csv, write_records_csv
from .services.sampling_service import (
    full_schedule,
    sample_behavior,
    sample_cell_counts,
    sample_model,
)
from .utils.prng import MASK64, Xoshiro256StarStar, derive_seed, splitmix64

F = Fraction


def half_and_half(scenario=None):
    """Alice flips a fair coin on every setting, Bob always answers 0."""
    scenario = scenario or Scenario((2,), (2,))
    return LocalModel(
        scenario,
        [(1, [[F(1, 2), F(1, 2)]] * scenario.alice_settings, [[1, 0]] * scenario.bob_settings)],
    )


class PrngTest(SimpleTestCase):
    """Test cases for splitmix64 and the lane generator."""

    def test_splitmix_reference_value(self):
        """Test the first output from state 0."""
        _, output = splitmix64(0)
        self.assertEqual(output, 0xE220A8397B1DCDAF)

    def test_derive_seed(self):
        """Test derived seeds are 64-bit, order sensitive and accept negatives."""
        self.assertNotEqual(derive_seed(1, 0, 1), derive_seed(1, 1, 0))
        self.assertEqual(derive_seed(5, 2), derive_seed(5, 2))
        self.assertLessEqual(derive_seed(-1), MASK64)

    def test_stream_is_chunk_independent(self):
        """Test drawing in pieces matches drawing at once."""
        whole = Xoshiro256StarStar(42, lanes=8).next_uint64(50)
        pieces = Xoshiro256StarStar(42, lanes=8)
        parts = np.concatenate([pieces.next_uint64(n) for n in (3, 17, 30)])
        np.testing.assert_array_equal(whole, parts)

    def test_unit_interval(self):
        """Test doubles lie in [0, 1) and look uniform."""
        values = Xoshiro256StarStar(7, lanes=16).random(100000)
        self.assertTrue(np.all(values >= 0) and np.all(values < 1))
        self.assertAlmostEqual(values.mean(), 0.5, delta=5 * math.sqrt(1 / 12 / 100000))


class SamplingTest(SimpleTestCase):
    """Test cases for sample_model and sample_behavior."""

    def test_reproducible(self):
        """Test equal seeds give equal records and other seeds differ."""
        model = random_local_model(random.Random(3), CHSH_SCENARIO)
        schedule = full_schedule(CHSH_SCENARIO, 200)
        self.assertEqual(sample_model(model, schedule, 9), sample_model(model, schedule, 9))
        self.assertNotEqual(sample_model(model, schedule, 9), sample_model(model, schedule, 10))

    def test_cell_order_does_not_matter(self):
        """Test records of a cell are the same whatever the schedule order."""
        model = random_local_model(random.Random(4), CHSH_SCENARIO)
        schedule = full_schedule(CHSH_SCENARIO, 50)
        forward = sample_model(model, schedule, 1)
        backward = sample_model(model, list(reversed(schedule)), 1)
        for x, y in CHSH_SCENARIO.cells():
            self.assertEqual(
                sorted((r.a, r.b) for r in forward if (r.x, r.y) == (x, y)),
                sorted((r.a, r.b) for r in backward if (r.x, r.y) == (x, y)),
            )

    def test_deterministic_model(self):
        """Test a deterministic model always answers its strategy."""
        model = LocalModel(CHSH_SCENARIO, [(1, [[0, 1], [1, 0]], [[1, 0], [0, 1]])])
        for seed in (0, 1, 2**63):
            for record in sample_model(model, full_schedule(CHSH_SCENARIO, 20), seed):
                self.assertEqual(record.a, 1 - record.x)
                self.assertEqual(record.b, record.y)

    def test_zero_weight_components_are_never_drawn(self):
        """Test zero weights and zero probabilities never show up."""
        model = LocalModel(
            Scenario((3,), (2,)),
            [(0, [[1, 0, 0]], [[1, 0]]), (1, [[F(1, 2), F(1, 2), 0]], [[0, 1]])],
        )
        records = sample_model(model, [(0, 0)] * 2000, 5)
        self.assertTrue(all(r.b == 1 and r.a != 2 for r in records))

    def test_uniform_frequencies(self):
        """Test a uniform cell stays within five standard deviations."""
        scenario = Scenario((2,), (2,))
        model = LocalModel(scenario, [(1, [[F(1, 2), F(1, 2)]], [[F(1, 2), F(1, 2)]])])
        n = 10 ** 6
        counts = sample_cell_counts(model, 0, 0, n, 123)
        bound = 5 * math.sqrt(0.25 * 0.75 / n)
        for a in range(2):
            for b in range(2):
                self.assertLess(abs(counts[a, b] / n - 0.25), bound)

    def test_errors(self):
        """Test empty schedules and out-of-range settings."""
        model = half_and_half()
        with self.assertRaises(ParameterError):
            sample_model(model, [], 0)
        with self.assertRaises(ShapeError):
            sample_model(model, [(1, 0)], 0)
        with self.assertRaises(ParameterError):
            full_schedule(CHSH_SCENARIO, 0)

    def test_pr_box_records(self):
        """Test PR box records reproduce CHSH 4."""
        records = sample_behavior(pr_box(), full_schedule(CHSH_SCENARIO, 10 ** 5), 0)
        behavior, _ = empirical_behavior(records, CHSH_SCENARIO)
        self.assertAlmostEqual(chsh_all_variants(behavior).maximum, 4, delta=0.05)


class EmpiricalBehaviorTest(SimpleTestCase):
    """Test cases for empirical_behavior."""

    def test_single_record(self):
        """Test one record fills its cell."""
        behavior, counts = empirical_behavior([SampleRecord(0, 0, 1, 0)], Scenario((2,), (2,)))
        self.assertEqual(behavior.p(1, 0, 0, 0), 1.0)
        self.assertEqual(counts[0][0], [[0, 0], [1, 0]])

    def test_even_split(self):
        """Test two outcome pairs in equal numbers."""
        records = [SampleRecord(0, 0, 0, 0), SampleRecord(0, 0, 1, 1)] * 5
        behavior, _ = empirical_behavior(records, Scenario((2,), (2,)))
        self.assertEqual(behavior.p(0, 0, 0, 0), 0.5)
        self.assertEqual(behavior.p(1, 1, 0, 0), 0.5)

    def test_coverage(self):
        """Test a missing cell is a coverage error naming it."""
        with self.assertRaisesMessage(CoverageError, '(x=1,y=1)'):
            empirical_behavior([SampleRecord(0, 0, 0, 0)] * 3, CHSH_SCENARIO)

    def test_bad_outcome(self):
        """Test an outcome index beyond the scenario."""
        with self.assertRaises(ShapeError):
            empirical_behavior([SampleRecord(0, 0, 2, 0)], Scenario((2,), (2,)))

    def test_consistency(self):
        """Test deviations shrink roughly tenfold when N grows a hundredfold."""
        model = random_local_model(random.Random(21), Scenario((3, 2), (2, 3)), max_denominator=8)
        exact = behavior_of_model(model)
        deviations = []
        for per_cell in (10 ** 3, 10 ** 5):
            records = sample_model(model, full_schedule(model.scenario, per_cell), 17)
            behavior, _ = empirical_behavior(records, model.scenario)
            deviations.append(max_deviation(behavior, exact))
        self.assertLess(deviations[1], 3 * deviations[0] / 10)


class RecordCsvTest(SimpleTestCase):
    """Test cases for the record CSV format."""

    def test_layout_and_reading(self):
        """Test header, LF endings and reading the same records back."""
        records = [SampleRecord(0, 1, 1, 0), SampleRecord(1, 0, 0, 1)]
        stream = io.StringIO()
        write_records_csv(records, stream)
        self.assertEqual(stream.getvalue(), 'x,y,a,b\n0,1,1,0\n1,0,0,1\n')
        self.assertEqual(read_records_csv(io.StringIO(stream.getvalue())), records)

    def test_bad_input(self):
        """Test a wrong header and a malformed line."""
        with self.assertRaises(ParameterError):
            read_records_csv(io.StringIO('a,b,x,y\n'))
        with self.assertRaisesMessage(ParameterError, 'line 3'):
            read_records_csv(io.StringIO('x,y,a,b\n0,0,0,0\n0,zero,0,0\n'))


class CompareEmpiricalTest(SimpleTestCase):
    """Test cases for compare_empirical."""

    def test_model_against_itself(self):
        """Test a model passes against itself."""
        model = random_local_model(random.Random(8), CHSH_SCENARIO, max_denominator=8)
        report = compare_empirical(model, model, samples=10 ** 4, seed=3)
        self.assertTrue(report.passed)
        self.assertEqual(len(report.cells), 8)
        self.assertEqual(report.sample_count, 10 ** 4)

    def test_planted_discrepancy(self):
        """Test a 0.1 shift in one cell fails with a huge z-score."""
        model = half_and_half()
        control = LocalModel(model.scenario, [(1, [[F(3, 5), F(2, 5)]], [[1, 0]])])
        report = compare_empirical(model, control, samples=10 ** 5, seed=0)
        self.assertFalse(report.passed)
        self.assertGreater(report.max_abs_z, 50)
        self.assertTrue(report.failing_cells)

    def test_exact_entries(self):
        """Test a zero-probability outcome that appears is an exact mismatch."""
        scenario = Scenario((2,), (2,))
        first = LocalModel(scenario, [(1, [[1, 0]], [[1, 0]])])
        second = LocalModel(scenario, [(1, [[0, 1]], [[1, 0]])])
        report = compare_empirical(first, second, samples=100, seed=0)
        self.assertFalse(report.passed)
        self.assertIn((0, 0), report.cells[0].exact_mismatches)

    def test_scenario_mismatch(self):
        """Test models on different scenarios."""
        with self.assertRaises(ScenarioMismatchError):
            compare_empirical(half_and_half(), half_and_half(CHSH_SCENARIO), samples=10)

    def test_report_serialization(self):
        """Test the JSON layout of a report."""
        report = compare_empirical(half_and_half(), half_and_half(), samples=1000, seed=1)
        data = ComparisonReportSerializer(report).data
        self.assertTrue(data['pass'])
        self.assertEqual(data['samples'], 1000)
        self.assertEqual(data['cells'][0]['z_scores'][1][1], None)

    @pytest.mark.slow
    def test_determinization_is_indistinguishable(self):
        """Test random models against their deterministic counterparts at N = 10^5."""
        rng = random.Random(2023)
        for i in range(20):
            model = random_local_model(rng, max_denominator=8)
            report = compare_empirical(model, determinize(model), samples=10 ** 5, seed=i)
            self.assertTrue(report.passed, f"model {i}: max |z| {report.max_abs_z}")
