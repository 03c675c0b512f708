from behaviors.serializers.behavior_serializer import LocalModelSerializer
from monte_carlo.serializers import ComparisonReportSerializer
from monte_carlo.services.comparison_service import ComparisonService

from ..base import BellCommand


class Command(BellCommand):
    help = 'Sample two local models and z-test each against the other\'s exact behavior.'
    takes_input = False

    def add_command_arguments(self, parser):
        parser.add_argument('inputs', nargs=2, metavar='MODEL', help='the two local model documents')
        parser.add_argument('--seed', type=int, help='64-bit seed (default 0)')
        parser.add_argument('--samples', type=int, help='samples per (x,y) cell (default 10^5)')
        parser.add_argument('--threshold', type=float, help='|z| threshold (default 5)')

    def execute_invocation(self, invocation):
        first, second = (self.load(path, LocalModelSerializer) for path in invocation.inputs)
        service = ComparisonService(
            samples=invocation.samples,
            seed=invocation.seed,
            threshold=invocation.flags['threshold'],
        )
        report = service.execute(first, second)
        self.emit(ComparisonReportSerializer(report).data, invocation)
        if not report.passed:
            self.property_fails(
                f"models differ: {len(report.failing_cells)} cells beyond |z| = {report.threshold}"
            )
        self.summary(f"pass: max |z| = {report.max_abs_z:.3f}")
