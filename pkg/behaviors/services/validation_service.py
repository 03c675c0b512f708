from dataclasses import dataclass, field
from fractions import Fraction

from core.conf import bell_setting
from core.exceptions import InvariantError

from ..utils.rational import format_rational


@dataclass(frozen=True)
class Violation:
    kind: str
    location: dict
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.violations

    def raise_for_violations(self, subject):
        if self.violations:
            details = '; '.join(v.message for v in self.violations[:5])
            more = len(self.violations) - 5
            if more > 0:
                details += f"; ... {more} more"
            raise InvariantError(f"invalid {subject}: {details}")


def _show(value):
    return format_rational(value) if isinstance(value, Fraction) else f"{value:.12g}"


def validate_behavior(behavior, tolerance=None, negativity_floor=None):
    """
    Report every broken Behavior invariant with its (x,y) location.
    Exact tables are checked exactly; floating ones against the configured
    normalization tolerance and negativity floor.
    """
    if behavior.is_exact:
        tolerance, floor = 0, 0
    else:
        tolerance = bell_setting('FLOAT_TOLERANCE', tolerance)
        floor = bell_setting('NEGATIVITY_FLOOR', negativity_floor)

    violations = []
    for x, y in behavior.scenario.cells():
        cell = behavior.entries[x][y]
        for a, outcomes in enumerate(cell):
            for b, value in enumerate(outcomes):
                if value < -floor:
                    violations.append(Violation(
                        kind='negative',
                        location={'x': x, 'y': y, 'a': a, 'b': b},
                        message=f"negative entry {_show(value)} at (x={x},y={y},a={a},b={b})",
                    ))
        total = sum(value for outcomes in cell for value in outcomes)
        if abs(total - 1) > tolerance:
            violations.append(Violation(
                kind='normalization',
                location={'x': x, 'y': y},
                message=f"sum {_show(total)} != 1 at (x={x},y={y})",
            ))
    return ValidationReport(tuple(violations))


def validate_model(model):
    """Check weights and response rows of a LocalModel, exactly."""
    violations = []
    total_weight = Fraction(0)
    for k, component in enumerate(model.components):
        if component.weight < 0:
            violations.append(Violation(
                kind='weight',
                location={'component': k},
                message=f"negative weight {_show(component.weight)} at component {k}",
            ))
        total_weight += component.weight

        for party, table in (('alice', component.alice), ('bob', component.bob)):
            for setting, row in enumerate(table):
                location = {'component': k, 'party': party, 'setting': setting}
                if any(value < 0 for value in row):
                    violations.append(Violation(
                        kind='response',
                        location=location,
                        message=f"negative response probability at component {k}, {party} setting {setting}",
                    ))
                row_sum = sum(row)
                if row_sum != 1:
                    violations.append(Violation(
                        kind='response',
                        location=location,
                        message=f"response sum {_show(row_sum)} != 1 at component {k}, "
                                f"{party} setting {setting}",
                    ))

    if not model.components:
        violations.append(Violation(kind='weight', location={}, message="model has no components"))
    elif total_weight != 1:
        violations.append(Violation(
            kind='weight',
            location={},
            message=f"weights sum to {_show(total_weight)}, expected 1",
        ))
    return ValidationReport(tuple(violations))


def ensure_valid_behavior(behavior):
    validate_behavior(behavior).raise_for_violations('behavior')


def ensure_valid_model(model):
    validate_model(model).raise_for_violations('local model')
