import json
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from behaviors.models import LocalModel, Scenario
from behaviors.serializers.behavior_serializer import BehaviorSerializer, LocalModelSerializer
from behaviors.services.fixture_service import CHSH_SCENARIO, pr_box, uniform_behavior

from .management.base import BellCommand
from .models import CommandInvocation, ExitCode
from .runner import SUBCOMMANDS, run

F = Fraction


def run_cli(*argv):
    out, err = StringIO(), StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


class CliTestCase(SimpleTestCase):
    """Shared temporary directory and document fixtures."""

    def setUp(self):
        """Set up test data."""
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.model = LocalModel(
            Scenario((2, 2), (2,)),
            [
                (F(1, 3), [[F(1, 2), F(1, 2)], [F(1, 4), F(3, 4)]], [[F(2, 3), F(1, 3)]]),
                (F(2, 3), [[1, 0], [F(1, 5), F(4, 5)]], [[0, 1]]),
            ],
        )
        self.model_path = self.write('model.json', LocalModelSerializer(self.model).data)
        self.pr_box_path = self.write('pr_box.json', BehaviorSerializer(pr_box()).data)
        self.uniform_path = self.write('uniform.json', BehaviorSerializer(uniform_behavior(CHSH_SCENARIO)).data)

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def write(self, name, data):
        path = self.path(name)
        with open(path, 'w', encoding='utf-8') as stream:
            stream.write(data if isinstance(data, str) else json.dumps(data))
        return path

    def read(self, name):
        with open(self.path(name), 'rb') as stream:
            return stream.read()


class RunnerTest(CliTestCase):
    """Test cases for the run() entry point and exit codes."""

    def test_help(self):
        """Test --help lists every subcommand and exits 0."""
        code, out, _ = run_cli('--help')
        self.assertEqual(code, 0)
        for name in SUBCOMMANDS:
            self.assertIn(name, out)

    def test_usage_errors(self):
        """Test missing and unknown subcommands exit 2."""
        self.assertEqual(run_cli()[0], ExitCode.USAGE)
        code, _, err = run_cli('migrate')
        self.assertEqual(code, 2)
        self.assertIn("unknown subcommand 'migrate'", err)
        self.assertEqual(run_cli('nosig')[0], 2)
        self.assertEqual(run_cli('nosig', self.pr_box_path, '--bogus')[0], 2)

    def test_nosig_pr_box(self):
        """Test the PR box is reported no-signalling with exit 0."""
        code, out, _ = run_cli('nosig', self.pr_box_path)
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertTrue(report['ok'])
        self.assertEqual(report['worst'], '0')

    def test_membership_pr_box(self):
        """Test the PR box exits 1 with a CHSH certificate."""
        code, out, err = run_cli('membership', self.pr_box_path)
        self.assertEqual(code, 1)
        result = json.loads(out)
        self.assertEqual(result['status'], 'non_member')
        self.assertEqual(result['certificate']['bound'], '2')
        self.assertEqual(result['certificate']['value'], '4')
        self.assertIn('non_member', err)

    def test_membership_member(self):
        """Test a local behavior exits 0 with a model."""
        code, out, _ = run_cli('membership', self.uniform_path)
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['status'], 'member')

    def test_malformed_json_is_located(self):
        """Test a syntax error names its line and exits 2."""
        path = self.write('broken.json', '{\n  "scenario": {"alice": [2], "bob": [2]},\n  "p": [,]\n}\n')
        code, out, err = run_cli('nosig', path)
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertIn('line 3', err)

    def test_invalid_document_is_located(self):
        """Test a bad rational names its JSON path."""
        path = self.write('bad.json', {'scenario': {'alice': [1], 'bob': [1]}, 'p': [[[['0.5']]]]})
        code, _, err = run_cli('nosig', path)
        self.assertEqual(code, 2)
        self.assertIn('p[0][0][0][0]', err)

    def test_missing_file(self):
        """Test an unreadable input exits 2."""
        self.assertEqual(run_cli('nosig', self.path('nowhere.json'))[0], 2)

    def test_non_utf8_input(self):
        """Test an input that is not UTF-8 exits 2."""
        path = self.path('binary.json')
        with open(path, 'wb') as stream:
            stream.write(b'\xff\xfe{')
        code, out, err = run_cli('nosig', path)
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertIn('not UTF-8', err)

    def test_unwritable_output(self):
        """Test an output path in a missing directory exits 2."""
        target = self.path(os.path.join('missing', 'deeper', 'out.json'))
        code, _, err = run_cli('behavior', self.model_path, '-o', target)
        self.assertEqual(code, 2)
        self.assertIn('out.json', err)
        self.assertFalse(os.path.exists(target))

    def test_determinize_then_behavior(self):
        """Test the behavior of the determinized model is byte-identical."""
        self.assertEqual(run_cli('determinize', self.model_path, '-o', self.path('det.json'))[0], 0)
        self.assertEqual(run_cli('behavior', self.model_path, '-o', self.path('b1.json'))[0], 0)
        self.assertEqual(run_cli('behavior', self.path('det.json'), '-o', self.path('b2.json'))[0], 0)
        self.assertEqual(self.read('b1.json'), self.read('b2.json'))
        self.assertTrue(self.read('b1.json').endswith(b'}\n'))

    def test_sample_is_reproducible(self):
        """Test repeated sample runs give byte-identical CSV."""
        for name in ('first.csv', 'second.csv'):
            code, _, _ = run_cli('sample', self.model_path, '--seed', '11', '--samples', '500', '-o', self.path(name))
            self.assertEqual(code, 0)
        first = self.read('first.csv')
        self.assertEqual(first, self.read('second.csv'))
        self.assertTrue(first.startswith(b'x,y,a,b\n'))
        self.assertEqual(first.count(b'\n'), 1 + 2 * 500)
        self.assertNotIn(b'\r', first)

    def test_sample_empirical_from_records(self):
        """Test recorded CSV feeds the empirical behavior."""
        run_cli('sample', self.model_path, '--samples', '300', '-o', self.path('records.csv'))
        code, out, _ = run_cli('sample', self.model_path, '--empirical', '--records', self.path('records.csv'))
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data['mode'], 'float')
        self.assertEqual(sum(sum(row) for row in data['counts'][1][0]), 300)

    def test_validate(self):
        """Test a valid model passes and an unnormalized behavior fails."""
        code, out, _ = run_cli('validate', self.model_path)
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['kind'], 'model')

        path = self.write('unnormalized.json', {
            'scenario': {'alice': [2], 'bob': [2]},
            'p': [[[['1/2', '1/2'], ['1/4', '0']]]],
        })
        code, out, _ = run_cli('validate', path)
        self.assertEqual(code, 1)
        report = json.loads(out)
        self.assertFalse(report['ok'])
        self.assertEqual(report['violations'][0]['message'], 'sum 5/4 != 1 at (x=0,y=0)')

    def test_chsh(self):
        """Test the uniform behavior respects every CHSH bound and the PR box does not."""
        code, out, _ = run_cli('chsh', self.uniform_path)
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['values'], ['0'] * 8)
        self.assertEqual(run_cli('chsh', self.pr_box_path)[0], 1)

    def test_quantum_singlet(self):
        """Test the singlet fixture, its setup document and its CHSH value."""
        code, _, _ = run_cli('quantum', '--singlet', '-o', self.path('singlet.json'))
        self.assertEqual(code, 0)
        code, out, _ = run_cli('chsh', self.path('singlet.json'))
        self.assertEqual(code, 1)
        self.assertAlmostEqual(json.loads(out)['max'], 2 * 2 ** 0.5, delta=1e-9)

        run_cli('quantum', '--singlet', '--emit-setup', '-o', self.path('setup.json'))
        self.assertEqual(run_cli('quantum', self.path('setup.json'), '-o', self.path('again.json'))[0], 0)
        self.assertEqual(self.read('singlet.json'), self.read('again.json'))
        self.assertEqual(run_cli('quantum')[0], 2)

    def test_compare(self):
        """Test a model against its deterministic counterpart passes."""
        run_cli('determinize', self.model_path, '-o', self.path('det.json'))
        code, out, _ = run_cli('compare', self.model_path, self.path('det.json'), '--samples', '2000', '--seed', '4')
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)['pass'])

    def test_classify(self):
        """Test the PR box is local_nonseparable with exit 1."""
        code, out, _ = run_cli('classify', self.pr_box_path)
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)['verdict'], 'local_nonseparable')
        self.assertEqual(run_cli('classify', self.uniform_path)[0], 0)

    def test_failed_input_writes_no_file(self):
        """Test an input error leaves no output file behind."""
        path = self.write('broken.json', '{')
        self.assertEqual(run_cli('behavior', path, '-o', self.path('out.json'))[0], 2)
        self.assertFalse(os.path.exists(self.path('out.json')))
        self.assertEqual(
            [name for name in os.listdir(self.directory.name) if name.endswith('.tmp')], []
        )


class CallCommandTest(CliTestCase):
    """Test cases for the commands through call_command."""

    def test_behavior_to_stdout(self):
        """Test the behavior command prints canonical JSON."""
        out = StringIO()
        call_command('behavior', self.model_path, stdout=out, stderr=StringIO())
        data = json.loads(out.getvalue())
        self.assertEqual(data['mode'], 'exact')
        self.assertEqual(data['scenario'], {'alice': [2, 2], 'bob': [2]})

    def test_float_mode(self):
        """Test --mode float emits numbers."""
        out = StringIO()
        call_command('behavior', self.model_path, '--mode', 'float', stdout=out)
        self.assertIsInstance(json.loads(out.getvalue())['p'][0][0][0][0], float)

    def test_failure_return_code(self):
        """Test a failing property raises CommandError with return code 1."""
        with self.assertRaises(CommandError) as context:
            call_command('membership', self.pr_box_path, stdout=StringIO())
        self.assertEqual(context.exception.returncode, ExitCode.FAILS)

    def test_determinize_atoms(self):
        """Test --atoms emits one atom partition per component."""
        out = StringIO()
        call_command('determinize', self.model_path, '--atoms', stdout=out)
        atoms = json.loads(out.getvalue())
        self.assertEqual(len(atoms), 2)
        self.assertEqual(atoms[0]['alice'][1]['upper'], '1/2')

    def test_render_is_canonical(self):
        """Test rendering ends with a newline and is stable."""
        data = BehaviorSerializer(pr_box()).data
        self.assertEqual(BellCommand.render(data), BellCommand.render(data))
        self.assertTrue(BellCommand.render(data).endswith('}\n'))

    def test_invocation(self):
        """Test options map onto a CommandInvocation."""
        invocation = CommandInvocation.from_options(
            'sample', {'output': 'x.csv', 'seed': 3, 'samples': 10, 'empirical': True, 'verbosity': 1},
            ['model.json'],
        )
        self.assertEqual(invocation.inputs, ('model.json',))
        self.assertEqual(invocation.seed, 3)
        self.assertEqual(invocation.flags, {'empirical': True})
