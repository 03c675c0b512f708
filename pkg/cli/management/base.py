import io
import logging
import os
import sys
import tempfile

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from core.exceptions import BellKitError

from ..models import CommandInvocation, ExitCode

logger = logging.getLogger(__name__)


def _flatten_errors(errors, prefix=''):
    """Turn nested serializer errors into 'field: message' lines."""
    if isinstance(errors, dict):
        for key, value in errors.items():
            name = key if key != 'non_field_errors' else ''
            path = f"{prefix}.{name}" if prefix and name else (prefix or name)
            yield from _flatten_errors(value, path)
    elif isinstance(errors, list):
        for i, value in enumerate(errors):
            if isinstance(value, (dict, list)):
                yield from _flatten_errors(value, f"{prefix}[{i}]")
            else:
                yield f"{prefix}: {value}" if prefix else str(value)
    else:
        yield f"{prefix}: {errors}" if prefix else str(errors)


class BellCommand(BaseCommand):
    """
    Base for every subcommand: reads JSON documents through the REST
    framework parser and serializers, writes canonical JSON to stdout or to
    --output, and maps failures onto the exit-code contract (0 holds,
    1 fails, 2 usage or input error).
    """
    requires_system_checks = []
    takes_input = True

    def add_arguments(self, parser):
        if self.takes_input:
            parser.add_argument('input', help="input JSON document, '-' for stdin")
        parser.add_argument('-o', '--output', help='write the result here instead of stdout')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        inputs = [options['input']] if self.takes_input else options.get('inputs', [])
        invocation = CommandInvocation.from_options(self.subcommand_name, options, inputs)
        logger.debug("running %s", invocation)
        try:
            self.execute_invocation(invocation)
        except BellKitError as exc:
            raise CommandError(str(exc), returncode=ExitCode.USAGE)

    @property
    def subcommand_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def execute_invocation(self, invocation):
        raise NotImplementedError('subclasses of BellCommand must provide execute_invocation()')

    def read_text(self, path):
        try:
            if path == '-':
                return sys.stdin.read()
            with open(path, encoding='utf-8') as stream:
                return stream.read()
        except OSError as exc:
            raise CommandError(f"{path}: {exc.strerror}", returncode=ExitCode.USAGE) from exc
        except UnicodeDecodeError as exc:
            raise CommandError(
                f"{path}: not UTF-8 text ({exc.reason} at byte {exc.start})", returncode=ExitCode.USAGE
            ) from exc

    def load_json(self, path):
        raw = self.read_text(path).encode('utf-8')
        try:
            return JSONParser().parse(io.BytesIO(raw))
        except ParseError as exc:
            raise CommandError(f"{path}: {exc.detail}", returncode=ExitCode.USAGE)

    def load(self, path, serializer_class, data=None):
        data = self.load_json(path) if data is None else data
        serializer = serializer_class(data=data)
        if not serializer.is_valid():
            details = '; '.join(_flatten_errors(serializer.errors))
            raise CommandError(f"{path}: {details}", returncode=ExitCode.USAGE)
        return serializer.save()

    @staticmethod
    def render(data):
        return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8') + '\n'

    def write_output(self, text, output=None):
        """Write to stdout, or atomically replace the output file."""
        if not output or output == '-':
            self.stdout.write(text, ending='')
            return
        directory = os.path.dirname(os.path.abspath(output))
        try:
            handle, temporary = tempfile.mkstemp(dir=directory, prefix='.bellkit-', suffix='.tmp')
        except OSError as exc:
            raise CommandError(f"{output}: {exc.strerror}", returncode=ExitCode.USAGE) from exc
        try:
            with os.fdopen(handle, 'w', encoding='utf-8', newline='\n') as stream:
                stream.write(text)
            os.replace(temporary, output)
        except BaseException as exc:
            if os.path.exists(temporary):
                os.unlink(temporary)
            if isinstance(exc, OSError):
                raise CommandError(f"{output}: {exc.strerror}", returncode=ExitCode.USAGE) from exc
            raise

    def emit(self, data, invocation):
        self.write_output(self.render(data), invocation.output)

    def summary(self, message):
        self.stderr.write(message)

    def property_fails(self, message):
        raise CommandError(message, returncode=ExitCode.FAILS)
