from dataclasses import dataclass
from fractions import Fraction

from core.exceptions import ModeError, ShapeError

from .scenario_model import Scenario


def _exact(value, location):
    if isinstance(value, float):
        raise ModeError(f"floating value {value!r} at {location}; local models are exact-only")
    return Fraction(value)


def _freeze_response(table, outcome_counts, party, component):
    if len(table) != len(outcome_counts):
        raise ShapeError(
            f"component {component}: expected {len(outcome_counts)} {party} settings, got {len(table)}"
        )
    frozen = []
    for setting, row in enumerate(table):
        if len(row) != outcome_counts[setting]:
            raise ShapeError(
                f"component {component}: {party} setting {setting} expects "
                f"{outcome_counts[setting]} outcomes, got {len(row)}"
            )
        frozen.append(tuple(
            _exact(value, f"component {component}, {party} setting {setting}, outcome {outcome}")
            for outcome, value in enumerate(row)
        ))
    return tuple(frozen)


@dataclass(frozen=True)
class ModelComponent:
    """One hidden-variable value: its weight and both response tables."""
    weight: Fraction
    alice: tuple
    bob: tuple


@dataclass(frozen=True)
class LocalModel:
    """
    Finite mixture p(a,b|x,y) = sum_k w_k p(a|x,k) p(b|y,k).
    Component index k plays the role of the hidden variable, the weights
    are its distribution.
    """
    scenario: Scenario
    components: tuple

    def __post_init__(self):
        frozen = []
        for k, component in enumerate(self.components):
            if isinstance(component, ModelComponent):
                weight, alice, bob = component.weight, component.alice, component.bob
            else:
                weight, alice, bob = component
            frozen.append(ModelComponent(
                weight=_exact(weight, f"component {k} weight"),
                alice=_freeze_response(alice, self.scenario.alice_outcomes, 'alice', k),
                bob=_freeze_response(bob, self.scenario.bob_outcomes, 'bob', k),
            ))
        object.__setattr__(self, 'components', tuple(frozen))

    def __len__(self):
        return len(self.components)

    def responses(self):
        for component in self.components:
            yield from component.alice
            yield from component.bob
