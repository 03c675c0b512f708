import logging
import math

from behaviors.services.synthesis_service import behavior_of_model
from core.conf import bell_setting
from core.exceptions import ParameterError, ScenarioMismatchError

from ..models import CellComparison, ComparisonReport
from ..utils.prng import derive_seed
from .sampling_service import sample_cell_counts

logger = logging.getLogger(__name__)


class ComparisonService:
    """
    Sample each model on every (x,y) cell and test its frequencies against
    the exact behavior of the other model, in both directions.

    For an exact probability p strictly between 0 and 1 the test statistic
    is z = (f - p) / sqrt(p (1 - p) / N); probabilities 0 and 1 must be
    matched by the counts exactly.
    """

    def __init__(self, samples=None, seed=None, threshold=None, lanes=None):
        self.samples = bell_setting('DEFAULT_SAMPLES', samples)
        self.seed = bell_setting('DEFAULT_SEED', seed)
        self.threshold = bell_setting('Z_THRESHOLD', threshold)
        self.lanes = lanes
        if self.samples < 1:
            raise ParameterError(f"samples per cell must be positive, got {self.samples}")
        if self.threshold <= 0:
            raise ParameterError(f"z threshold must be positive, got {self.threshold}")

    def execute(self, first, second):
        if first.scenario != second.scenario:
            raise ScenarioMismatchError(
                f"cannot compare a model on {first.scenario} with one on {second.scenario}"
            )
        first_behavior = behavior_of_model(first)
        second_behavior = behavior_of_model(second)

        cells = []
        for direction, sampled, reference, stream in (
            ('first_vs_second', first, second_behavior, 1),
            ('second_vs_first', second, first_behavior, 2),
        ):
            seed = derive_seed(self.seed, stream)
            for x, y in sampled.scenario.cells():
                counts = sample_cell_counts(sampled, x, y, self.samples, seed, self.lanes)
                cells.append(self.compare_cell(direction, x, y, counts, reference.cell(x, y)))

        passed = all(
            not cell.exact_mismatches and cell.max_abs_z <= self.threshold for cell in cells
        )
        report = ComparisonReport(
            cells=tuple(cells),
            passed=passed,
            sample_count=self.samples,
            seed=self.seed,
            threshold=self.threshold,
        )
        if not passed:
            logger.info(
                "comparison failed: %d cells beyond |z| = %s", len(report.failing_cells), self.threshold
            )
        return report

    def compare_cell(self, direction, x, y, counts, exact_cell):
        n = self.samples
        z_scores = []
        mismatches = []
        deviation = 0.0
        for a, outcomes in enumerate(exact_cell):
            row = []
            for b, p in enumerate(outcomes):
                observed = int(counts[a][b])
                frequency = observed / n
                deviation = max(deviation, abs(frequency - float(p)))
                if p in (0, 1):
                    if observed != p * n:
                        mismatches.append((a, b))
                    row.append(None)
                else:
                    p = float(p)
                    row.append((frequency - p) / math.sqrt(p * (1 - p) / n))
            z_scores.append(tuple(row))
        return CellComparison(
            direction=direction,
            x=x,
            y=y,
            max_deviation=deviation,
            z_scores=tuple(z_scores),
            exact_mismatches=tuple(mismatches),
        )


def compare_empirical(first, second, samples=None, seed=None, threshold=None):
    return ComparisonService(samples, seed, threshold).execute(first, second)
