from dataclasses import dataclass, field

from django.db import models


class Party(models.TextChoices):
    ALICE = 'alice', 'Alice'
    BOB = 'bob', 'Bob'


@dataclass(frozen=True)
class SignallingWitness:
    """
    A marginal of `party` at (setting, outcome) that moves when the other
    party switches between the two counterpart settings in `pair`.
    """
    party: str
    setting: int
    outcome: int
    pair: tuple
    discrepancy: object


@dataclass(frozen=True)
class NoSignallingReport:
    ok: bool
    worst_violation: object
    tolerance: object
    witnesses: tuple = field(default_factory=tuple)
