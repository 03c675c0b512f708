from behaviors.models import NumericMode
from behaviors.serializers.behavior_serializer import BehaviorSerializer, LocalModelSerializer
from behaviors.services.synthesis_service import behavior_of_model

from ..base import BellCommand


class Command(BellCommand):
    help = 'Compute the behavior p(a,b|x,y) generated by a local model.'

    def add_command_arguments(self, parser):
        parser.add_argument('--mode', choices=NumericMode.values, default=NumericMode.EXACT)

    def execute_invocation(self, invocation):
        model = self.load(invocation.inputs[0], LocalModelSerializer)
        behavior = behavior_of_model(model)
        if invocation.mode == NumericMode.FLOAT:
            behavior = behavior.as_float()
        self.emit(BehaviorSerializer(behavior).data, invocation)
