from dataclasses import dataclass, field
from typing import Optional

from django.db import models


class ExitCode(models.IntegerChoices):
    HOLDS = 0, 'Operation ran and the property holds'
    FAILS = 1, 'Operation ran and the property fails'
    USAGE = 2, 'Usage or input error'


@dataclass(frozen=True)
class CommandInvocation:
    """One parsed subcommand call: paths, numeric flags and mode."""
    subcommand: str
    inputs: tuple = field(default_factory=tuple)
    output: Optional[str] = None
    tolerance: Optional[float] = None
    seed: Optional[int] = None
    samples: Optional[int] = None
    cap: Optional[int] = None
    mode: Optional[str] = None
    flags: dict = field(default_factory=dict)

    @classmethod
    def from_options(cls, subcommand, options, inputs=()):
        known = {'output', 'tolerance', 'seed', 'samples', 'cap', 'mode'}
        django_options = {
            'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color',
            'force_color', 'skip_checks', 'stdout', 'stderr',
        }
        return cls(
            subcommand=subcommand,
            inputs=tuple(inputs),
            output=options.get('output'),
            tolerance=options.get('tolerance'),
            seed=options.get('seed'),
            samples=options.get('samples'),
            cap=options.get('cap'),
            mode=options.get('mode'),
            flags={
                key: value for key, value in options.items()
                if key not in known and key not in django_options and key != 'input'
                and key != 'inputs'
            },
        )
