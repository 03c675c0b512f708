from fractions import Fraction

from core.exceptions import ParameterError, ScenarioMismatchError

from ..models import Behavior, LocalModel, ModelComponent, NumericMode
from .validation_service import ensure_valid_model


def behavior_of_model(model):
    """
    Behavior generated by a finite mixture:
    p(a,b|x,y) = sum_k w_k p(a|x,k) p(b|y,k), in exact arithmetic.
    """
    ensure_valid_model(model)
    scenario = model.scenario

    entries = [
        [
            [[Fraction(0)] * scenario.bob_outcomes[y] for _ in range(scenario.alice_outcomes[x])]
            for y in range(scenario.bob_settings)
        ]
        for x in range(scenario.alice_settings)
    ]
    for component in model.components:
        if component.weight == 0:
            continue
        for x, y in scenario.cells():
            cell = entries[x][y]
            for a, p_a in enumerate(component.alice[x]):
                if p_a == 0:
                    continue
                weighted = component.weight * p_a
                for b, p_b in enumerate(component.bob[y]):
                    if p_b:
                        cell[a][b] += weighted * p_b

    return Behavior(scenario, entries, NumericMode.EXACT)


def is_deterministic(model):
    """True iff every response probability is exactly 0 or 1."""
    return all(value in (0, 1) for row in model.responses() for value in row)


def blend_models(first, second, weight):
    """The mixture weight*first + (1-weight)*second, as one model."""
    weight = Fraction(weight)
    if not 0 <= weight <= 1:
        raise ParameterError(f"blend weight {weight} outside [0, 1]")
    if first.scenario != second.scenario:
        raise ScenarioMismatchError(f"cannot blend {first.scenario} with {second.scenario}")

    components = [
        ModelComponent(weight * c.weight, c.alice, c.bob) for c in first.components
    ] + [
        ModelComponent((1 - weight) * c.weight, c.alice, c.bob) for c in second.components
    ]
    return LocalModel(first.scenario, components)
