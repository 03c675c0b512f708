from dataclasses import dataclass

from core.conf import bell_setting
from core.exceptions import ShapeError


@dataclass(frozen=True)
class FunctionalEvaluation:
    value: object
    local_bound: object
    violated: bool


def evaluate_bell_functional(functional, behavior, margin=None):
    """
    Value of sum c * p on the behavior. Exact behaviors violate the
    functional when the value strictly exceeds the local bound; floating
    ones only beyond the bound plus a margin.
    """
    if functional.scenario != behavior.scenario:
        raise ShapeError(f"functional on {functional.scenario} applied to a behavior on {behavior.scenario}")

    if behavior.is_exact:
        value = sum(
            c * p
            for c_row, p_row in zip(functional.coefficients, behavior.entries)
            for c_cell, p_cell in zip(c_row, p_row)
            for c_out, p_out in zip(c_cell, p_cell)
            for c, p in zip(c_out, p_out)
        )
        violated = value > functional.local_bound
    else:
        value = sum(
            float(c) * p
            for c_row, p_row in zip(functional.coefficients, behavior.entries)
            for c_cell, p_cell in zip(c_row, p_row)
            for c_out, p_out in zip(c_cell, p_cell)
            for c, p in zip(c_out, p_out)
        )
        margin = bell_setting('FLOAT_TOLERANCE', margin)
        violated = value > float(functional.local_bound) + margin
    return FunctionalEvaluation(value=value, local_bound=functional.local_bound, violated=violated)
