from behaviors.serializers.behavior_serializer import BehaviorSerializer
from core.conf import bell_setting
from local_polytope.serializers.polytope_serializer import ChshSummarySerializer
from local_polytope.services.chsh_service import CHSH_LOCAL_BOUND, chsh_all_variants

from ..base import BellCommand


class Command(BellCommand):
    help = 'Evaluate the eight CHSH variants; fails when one exceeds the local bound 2.'

    def add_command_arguments(self, parser):
        parser.add_argument('--tolerance', type=float, help='float behaviors only (default 1e-9)')

    def execute_invocation(self, invocation):
        behavior = self.load(invocation.inputs[0], BehaviorSerializer)
        summary = chsh_all_variants(behavior)
        self.emit(ChshSummarySerializer(summary).data, invocation)

        margin = 0 if behavior.is_exact else bell_setting('FLOAT_TOLERANCE', invocation.tolerance)
        if summary.maximum > CHSH_LOCAL_BOUND + margin:
            self.property_fails(f"CHSH variant {summary.argmax} reaches {summary.maximum}")
        self.summary(f"max CHSH {summary.maximum} (variant {summary.argmax})")
