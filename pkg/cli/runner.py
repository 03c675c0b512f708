import os
import sys

SUBCOMMANDS = {
    'validate': 'check a behavior or local model document',
    'behavior': 'behavior generated by a local model',
    'nosig': 'no-signalling report',
    'determinize': 'deterministic model with the same behavior',
    'membership': 'local-polytope membership with a certificate',
    'chsh': 'all eight CHSH values',
    'quantum': 'Born-rule behavior of a state and measurements',
    'sample': 'seeded x,y,a,b records',
    'compare': 'statistical comparison of two models',
    'classify': 'local_separable / local_nonseparable / signalling verdict',
}

USAGE_ERROR = 2


def main_help():
    lines = [
        'usage: manage.py <subcommand> [options]',
        '',
        'Exit codes: 0 the property holds, 1 it fails, 2 usage or input error.',
        "Run 'manage.py <subcommand> --help' for the flags of a subcommand.",
        '',
        'subcommands:',
    ]
    width = max(len(name) for name in SUBCOMMANDS)
    lines += [f"  {name.ljust(width)}  {text}" for name, text in SUBCOMMANDS.items()]
    return '\n'.join(lines) + '\n'


def run(argv=None):
    """
    Dispatch one subcommand through Django's management machinery and return
    its exit code instead of exiting.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'core.settings')

    if not argv or argv[0] in ('-h', '--help', 'help'):
        sys.stdout.write(main_help())
        return 0 if argv else USAGE_ERROR
    if argv[0] not in SUBCOMMANDS:
        sys.stderr.write(f"unknown subcommand {argv[0]!r}\n\n{main_help()}")
        return USAGE_ERROR

    from django.core.management import execute_from_command_line

    try:
        execute_from_command_line(['manage.py', *argv])
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        if isinstance(code, int):
            return code
        sys.stderr.write(f"{code}\n")
        return USAGE_ERROR
    return 0
