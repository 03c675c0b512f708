from behaviors.serializers.behavior_serializer import BehaviorSerializer
from local_polytope.serializers.polytope_serializer import ClassificationSerializer
from local_polytope.services.classification_service import Verdict, classify_behavior

from ..base import BellCommand


class Command(BellCommand):
    help = 'Classify a behavior as local_separable, local_nonseparable or signalling.'

    def add_command_arguments(self, parser):
        parser.add_argument('--cap', type=int, help='deterministic strategy cap (default 10^6)')
        parser.add_argument('--tolerance', type=float, help='float behaviors only (default 1e-9)')

    def execute_invocation(self, invocation):
        behavior = self.load(invocation.inputs[0], BehaviorSerializer)
        classification = classify_behavior(behavior, invocation.tolerance, invocation.cap)
        self.emit(ClassificationSerializer(classification).data, invocation)
        if classification.verdict != Verdict.LOCAL_SEPARABLE:
            self.property_fails(str(classification.verdict))
        self.summary(str(classification.verdict))
