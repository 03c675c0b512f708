from behaviors.serializers.behavior_serializer import LocalModelSerializer
from determinization.serializers import ComponentAtomsSerializer
from determinization.services import determinize

from ..base import BellCommand


class Command(BellCommand):
    help = 'Rewrite a stochastic local model as a deterministic one with the same behavior.'

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--atoms', action='store_true',
            help='emit the interval atoms of every component instead of the model',
        )

    def execute_invocation(self, invocation):
        model = self.load(invocation.inputs[0], LocalModelSerializer)
        if invocation.flags['atoms']:
            self.emit(ComponentAtomsSerializer(model.components, many=True).data, invocation)
            return
        result = determinize(model)
        self.emit(LocalModelSerializer(result).data, invocation)
        self.summary(f"components: {len(model)} -> {len(result)}")
