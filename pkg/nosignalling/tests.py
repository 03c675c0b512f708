import random
from fractions import Fraction

from django.test import SimpleTestCase

from behaviors.models import Behavior, NumericMode, Scenario
from behaviors.services.fixture_service import pr_box, uniform_behavior
from behaviors.services.synthesis_service import behavior_of_model
from behaviors.utils.random_models import random_local_model
from core.exceptions import InvariantError, ModeError, ParameterError

from .serializers import NoSignallingReportSerializer
from .services import check_no_signalling

CHSH = Scenario((2, 2), (2, 2))


def signalling_behavior():
    """Alice's outcome copies Bob's setting: p(0,0|x,0) = p(1,0|x,1) = 1."""
    entries = [[[[0, 0], [0, 0]] for _ in range(2)] for _ in range(2)]
    for x in range(2):
        entries[x][0][0][0] = 1
        entries[x][1][1][0] = 1
    return Behavior(CHSH, entries)


def noisy(behavior, shift):
    """Float copy of a behavior with Alice's marginal nudged at (x=0,y=1)."""
    entries = [
        [[[float(v) for v in outcomes] for outcomes in cell] for cell in row]
        for row in behavior.entries
    ]
    entries[0][1][0][0] += shift
    entries[0][1][1][0] -= shift
    return Behavior(behavior.scenario, entries, NumericMode.FLOAT)


class CheckNoSignallingTest(SimpleTestCase):
    """Test cases for check_no_signalling."""

    def test_local_models_never_signal(self):
        """Test local models are exactly no-signalling over random models."""
        rng = random.Random(2024)
        for _ in range(200):
            report = check_no_signalling(behavior_of_model(random_local_model(rng)), 0)
            self.assertTrue(report.ok)
            self.assertEqual(report.worst_violation, 0)

    def test_pr_box(self):
        """Test the PR box is no-signalling."""
        report = check_no_signalling(pr_box(), 0)
        self.assertTrue(report.ok)
        self.assertEqual(report.worst_violation, Fraction(0))
        self.assertEqual(report.witnesses, ())

    def test_signalling_behavior(self):
        """Test Alice's marginal flipping with Bob's setting."""
        report = check_no_signalling(signalling_behavior(), 0)
        self.assertFalse(report.ok)
        self.assertEqual(report.worst_violation, 1)
        alice = [w for w in report.witnesses if w.party == 'alice']
        self.assertIn((0, 0, (0, 1)), [(w.setting, w.outcome, w.pair) for w in alice])
        self.assertTrue(all(w.discrepancy == 1 for w in alice))

    def test_negative_tolerance(self):
        """Test negative tolerance is a parameter error."""
        with self.assertRaises(ParameterError):
            check_no_signalling(pr_box(), -1e-9)

    def test_exact_mode_requires_zero_tolerance(self):
        """Test exact behaviors refuse a positive tolerance."""
        with self.assertRaises(ModeError):
            check_no_signalling(pr_box(), 1e-9)

    def test_invalid_behavior(self):
        """Test unnormalized input is rejected."""
        entries = [[[[Fraction(1, 2)] * 2 for _ in range(2)] for _ in range(2)] for _ in range(2)]
        with self.assertRaises(InvariantError):
            check_no_signalling(Behavior(CHSH, entries))

    def test_float_tolerance_and_monotonicity(self):
        """Test a 1e-6 drift passes at 1e-5 and every larger tolerance, fails at 1e-7."""
        behavior = noisy(uniform_behavior(CHSH), 1e-6)
        self.assertFalse(check_no_signalling(behavior, 1e-7).ok)
        for tolerance in (1e-5, 1e-4, 1e-2, 1.0):
            self.assertTrue(check_no_signalling(behavior, tolerance).ok)
        report = check_no_signalling(behavior, 1e-7)
        self.assertAlmostEqual(report.worst_violation, 1e-6, places=12)

    def test_party_relabelling_symmetry(self):
        """Test transposing the behavior swaps witness parties only."""
        behavior = signalling_behavior()
        report = check_no_signalling(behavior, 0)
        swapped = check_no_signalling(behavior.transposed(), 0)
        self.assertEqual(report.ok, swapped.ok)
        self.assertEqual(report.worst_violation, swapped.worst_violation)
        flip = {'alice': 'bob', 'bob': 'alice'}
        self.assertEqual(
            sorted((flip[w.party], w.setting, w.outcome, w.pair) for w in report.witnesses),
            sorted((w.party, w.setting, w.outcome, w.pair) for w in swapped.witnesses),
        )

    def test_report_serialization(self):
        """Test the JSON report layout."""
        data = NoSignallingReportSerializer(check_no_signalling(signalling_behavior(), 0)).data
        self.assertEqual(list(data.keys()), ['ok', 'worst', 'witnesses'])
        self.assertFalse(data['ok'])
        self.assertEqual(data['worst'], '1')
        self.assertEqual(data['witnesses'][0]['party'], 'alice')
