from django.core.management.base import CommandError

from behaviors.serializers.behavior_serializer import BehaviorSerializer
from quantum.serializers.quantum_serializer import QuantumSetupSerializer
from quantum.services.fixture_service import singlet_setup
from quantum.services.quantum_behavior_service import quantum_behavior

from ..base import BellCommand
from ...models import ExitCode


class Command(BellCommand):
    help = 'Born-rule behavior of a bipartite state and measurement assemblage.'

    def add_command_arguments(self, parser):
        parser.add_argument('--singlet', action='store_true', help='use the singlet CHSH fixture')
        parser.add_argument('--emit-setup', action='store_true', help='print the setup instead of its behavior')

    def add_arguments(self, parser):
        parser.add_argument('input', nargs='?', help="setup JSON document, '-' for stdin")
        parser.add_argument('-o', '--output', help='write the result here instead of stdout')
        self.add_command_arguments(parser)

    def execute_invocation(self, invocation):
        path = invocation.inputs[0]
        if invocation.flags['singlet']:
            setup = singlet_setup()
        elif path is None:
            raise CommandError('either an input setup or --singlet is required', returncode=ExitCode.USAGE)
        else:
            setup = self.load(path, QuantumSetupSerializer)

        if invocation.flags['emit_setup']:
            self.emit(QuantumSetupSerializer(setup).data, invocation)
            return
        self.emit(BehaviorSerializer(quantum_behavior(*setup)).data, invocation)
