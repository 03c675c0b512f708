import math
from dataclasses import dataclass
from fractions import Fraction

from django.db import models

from core.exceptions import InvariantError, ModeError, ShapeError

from .scenario_model import Scenario


class NumericMode(models.TextChoices):
    EXACT = 'exact', 'Exact'
    FLOAT = 'float', 'Float'


def coerce_probability(value, mode, location):
    if mode == NumericMode.EXACT:
        if isinstance(value, float):
            raise ModeError(f"floating value {value!r} at {location} in an exact table")
        return Fraction(value)
    value = float(value)
    if not math.isfinite(value):
        raise InvariantError(f"non-finite value {value!r} at {location}")
    return value


@dataclass(frozen=True)
class Behavior:
    """
    Full table p(a,b|x,y), stored dense as entries[x][y][a][b].

    Only the shape is enforced here; positivity and normalization are
    reported by behaviors.services.validation_service so that broken
    tables can still be loaded and diagnosed.
    """
    scenario: Scenario
    entries: tuple
    mode: str = NumericMode.EXACT

    def __post_init__(self):
        object.__setattr__(self, 'mode', NumericMode(self.mode))
        object.__setattr__(self, 'entries', self._freeze(self.entries))

    def _freeze(self, table):
        scenario = self.scenario
        if len(table) != scenario.alice_settings:
            raise ShapeError(
                f"expected {scenario.alice_settings} alice settings, got {len(table)}"
            )
        frozen = []
        for x, row in enumerate(table):
            if len(row) != scenario.bob_settings:
                raise ShapeError(
                    f"expected {scenario.bob_settings} bob settings at x={x}, got {len(row)}"
                )
            frozen_row = []
            for y, cell in enumerate(row):
                if len(cell) != scenario.alice_outcomes[x]:
                    raise ShapeError(
                        f"expected {scenario.alice_outcomes[x]} alice outcomes at (x={x},y={y}), "
                        f"got {len(cell)}"
                    )
                frozen_cell = []
                for a, outcomes in enumerate(cell):
                    if len(outcomes) != scenario.bob_outcomes[y]:
                        raise ShapeError(
                            f"expected {scenario.bob_outcomes[y]} bob outcomes at "
                            f"(x={x},y={y},a={a}), got {len(outcomes)}"
                        )
                    frozen_cell.append(tuple(
                        coerce_probability(value, self.mode, f"(x={x},y={y},a={a},b={b})")
                        for b, value in enumerate(outcomes)
                    ))
                frozen_row.append(tuple(frozen_cell))
            frozen.append(tuple(frozen_row))
        return tuple(frozen)

    @property
    def is_exact(self):
        return self.mode == NumericMode.EXACT

    def p(self, a, b, x, y):
        return self.entries[x][y][a][b]

    def cell(self, x, y):
        self.scenario.check_setting(x, y)
        return self.entries[x][y]

    def transposed(self):
        """Swap the roles of Alice and Bob."""
        scenario = self.scenario
        entries = [
            [
                [
                    [self.entries[x][y][a][b] for a in range(scenario.alice_outcomes[x])]
                    for b in range(scenario.bob_outcomes[y])
                ]
                for x in range(scenario.alice_settings)
            ]
            for y in range(scenario.bob_settings)
        ]
        return Behavior(scenario.transposed(), entries, self.mode)

    def as_float(self):
        if not self.is_exact:
            return self
        entries = [
            [[[float(v) for v in outcomes] for outcomes in cell] for cell in row]
            for row in self.entries
        ]
        return Behavior(self.scenario, entries, NumericMode.FLOAT)
