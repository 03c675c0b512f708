from dataclasses import dataclass
from fractions import Fraction

from behaviors.models import Behavior, ModelComponent
from core.exceptions import ShapeError


@dataclass(frozen=True)
class DeterministicStrategy:
    """
    One extreme point of the local polytope: Alice answers setting x with
    alice_map[x], Bob answers setting y with bob_map[y].
    """
    alice_map: tuple
    bob_map: tuple

    def check_scenario(self, scenario):
        for party, mapping, counts in (
            ('alice', self.alice_map, scenario.alice_outcomes),
            ('bob', self.bob_map, scenario.bob_outcomes),
        ):
            if len(mapping) != len(counts):
                raise ShapeError(f"{party} map covers {len(mapping)} settings, scenario has {len(counts)}")
            for setting, (outcome, count) in enumerate(zip(mapping, counts)):
                if not 0 <= outcome < count:
                    raise ShapeError(f"{party} setting {setting} answers {outcome}, outside 0..{count - 1}")

    def component(self, scenario, weight=1):
        return ModelComponent(
            weight=Fraction(weight),
            alice=tuple(
                tuple(Fraction(int(a == chosen)) for a in range(n))
                for chosen, n in zip(self.alice_map, scenario.alice_outcomes)
            ),
            bob=tuple(
                tuple(Fraction(int(b == chosen)) for b in range(n))
                for chosen, n in zip(self.bob_map, scenario.bob_outcomes)
            ),
        )

    def behavior(self, scenario):
        self.check_scenario(scenario)
        entries = [
            [
                [
                    [Fraction(int(a == self.alice_map[x] and b == self.bob_map[y]))
                     for b in range(scenario.bob_outcomes[y])]
                    for a in range(scenario.alice_outcomes[x])
                ]
                for y in range(scenario.bob_settings)
            ]
            for x in range(scenario.alice_settings)
        ]
        return Behavior(scenario, entries)
