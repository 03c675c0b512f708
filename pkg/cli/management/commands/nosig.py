from behaviors.serializers.behavior_serializer import BehaviorSerializer
from nosignalling.serializers import NoSignallingReportSerializer
from nosignalling.services import check_no_signalling

from ..base import BellCommand


class Command(BellCommand):
    help = 'Check that neither party can signal through its setting choice.'

    def add_command_arguments(self, parser):
        parser.add_argument('--tolerance', type=float, help='float behaviors only (default 1e-9)')

    def execute_invocation(self, invocation):
        behavior = self.load(invocation.inputs[0], BehaviorSerializer)
        report = check_no_signalling(behavior, invocation.tolerance)
        self.emit(NoSignallingReportSerializer(report).data, invocation)
        if not report.ok:
            self.property_fails(f"signalling: {len(report.witnesses)} witnesses")
        self.summary('no-signalling holds')
