import io

from behaviors.serializers.behavior_serializer import BehaviorSerializer, LocalModelSerializer
from core.conf import bell_setting
from monte_carlo.serializers import EmpiricalBehaviorSerializer
from monte_carlo.services.empirical_service import empirical_behavior
from monte_carlo.services.record_io_service import read_records_csv, write_records_csv
from monte_carlo.services.sampling_service import full_schedule, sample_behavior, sample_model

from ..base import BellCommand
from .validate import document_kind


class Command(BellCommand):
    help = 'Draw seeded x,y,a,b records from a local model (or behavior) on every setting pair.'

    def add_command_arguments(self, parser):
        parser.add_argument('--seed', type=int, help='64-bit seed (default 0)')
        parser.add_argument('--samples', type=int, help='records per (x,y) cell (default 10^5)')
        parser.add_argument(
            '--empirical', action='store_true',
            help='emit the empirical behavior of the records instead of the CSV',
        )
        parser.add_argument(
            '--records', help='with --empirical, read recorded x,y,a,b CSV instead of sampling',
        )

    def execute_invocation(self, invocation):
        path = invocation.inputs[0]
        data = self.load_json(path)
        if document_kind(data) == 'model':
            source = self.load(path, LocalModelSerializer, data)
            draw = sample_model
        else:
            source = self.load(path, BehaviorSerializer, data)
            draw = sample_behavior

        if invocation.flags['records']:
            records = read_records_csv(io.StringIO(self.read_text(invocation.flags['records'])))
        else:
            per_cell = bell_setting('DEFAULT_SAMPLES', invocation.samples)
            seed = bell_setting('DEFAULT_SEED', invocation.seed)
            records = draw(source, full_schedule(source.scenario, per_cell), seed)

        if invocation.flags['empirical']:
            result = empirical_behavior(records, source.scenario)
            self.emit(EmpiricalBehaviorSerializer(result).data, invocation)
            return

        stream = io.StringIO(newline='')
        write_records_csv(records, stream)
        self.write_output(stream.getvalue(), invocation.output)
        self.summary(f"{len(records)} records")
