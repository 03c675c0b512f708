from fractions import Fraction

from behaviors.models import Behavior, NumericMode
from core.exceptions import InvariantError


def rationalize_cell(cell, max_denominator):
    """
    Round each probability of one (x,y) cell to the closest fraction with a
    bounded denominator, then hand the rounding residual to the largest
    entry so the cell sums to exactly 1.
    """
    values = [
        [max(Fraction(v).limit_denominator(max_denominator), Fraction(0)) for v in outcomes]
        for outcomes in cell
    ]
    residual = 1 - sum(v for outcomes in values for v in outcomes)
    if residual:
        flat = [(v, a, b) for a, outcomes in enumerate(values) for b, v in enumerate(outcomes)]
        _, a, b = max(flat, key=lambda item: item[0])
        values[a][b] += residual
        if values[a][b] < 0:
            raise InvariantError("cannot renormalize a rationalized cell")
    return values


def rationalize_behavior(behavior, max_denominator):
    if behavior.is_exact:
        return behavior
    entries = [
        [rationalize_cell(cell, max_denominator) for cell in row]
        for row in behavior.entries
    ]
    return Behavior(behavior.scenario, entries, NumericMode.EXACT)
