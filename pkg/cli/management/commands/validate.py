from behaviors.serializers.behavior_serializer import BehaviorSerializer, LocalModelSerializer
from behaviors.serializers.validation_serializer import ValidationReportSerializer
from behaviors.services.validation_service import validate_behavior, validate_model

from ..base import BellCommand


def document_kind(data):
    return 'model' if isinstance(data, dict) and 'components' in data else 'behavior'


class Command(BellCommand):
    help = 'Check a behavior or local model document against its invariants.'

    def add_command_arguments(self, parser):
        parser.add_argument('--kind', choices=['auto', 'behavior', 'model'], default='auto')
        parser.add_argument('--tolerance', type=float, help='normalization tolerance for float behaviors')

    def execute_invocation(self, invocation):
        path = invocation.inputs[0]
        data = self.load_json(path)
        kind = invocation.flags['kind']
        kind = document_kind(data) if kind == 'auto' else kind

        if kind == 'model':
            report = validate_model(self.load(path, LocalModelSerializer, data))
        else:
            report = validate_behavior(self.load(path, BehaviorSerializer, data), invocation.tolerance)

        result = ValidationReportSerializer(report).data
        result = {'kind': kind, **result}
        self.emit(result, invocation)
        if not report.ok:
            self.property_fails(f"{path}: {len(report.violations)} violations")
        self.summary(f"{path}: valid {kind}")
