from itertools import product
from math import prod

from core.conf import bell_setting
from core.exceptions import SizeError

from ..models.strategy_model import DeterministicStrategy


class StrategyRepository:
    """
    Source of the deterministic strategies of a scenario, in lexicographic
    (alice_map, bob_map) order.
    """

    def __init__(self, cap=None):
        self.cap = bell_setting('STRATEGY_CAP', cap)

    @staticmethod
    def count(scenario):
        return prod(scenario.alice_outcomes) * prod(scenario.bob_outcomes)

    def check_size(self, scenario):
        count = self.count(scenario)
        if count > self.cap:
            raise SizeError(f"{count} deterministic strategies exceed the cap of {self.cap}")
        return count

    @staticmethod
    def alice_maps(scenario):
        return product(*(range(n) for n in scenario.alice_outcomes))

    @staticmethod
    def bob_maps(scenario):
        return product(*(range(n) for n in scenario.bob_outcomes))

    def get_strategies(self, scenario):
        self.check_size(scenario)
        bob_maps = list(self.bob_maps(scenario))
        return [
            DeterministicStrategy(alice_map, bob_map)
            for alice_map in self.alice_maps(scenario)
            for bob_map in bob_maps
        ]

    def local_bound(self, scenario, coefficients):
        """
        max over strategies of sum_{x,y} c[x][y][a_x][b_y]. For a fixed Alice
        map, Bob's best response decouples across his settings.
        """
        self.check_size(scenario)
        best = None
        for alice_map in self.alice_maps(scenario):
            total = 0
            for y in range(scenario.bob_settings):
                total += max(
                    sum(coefficients[x][y][a][b] for x, a in enumerate(alice_map))
                    for b in range(scenario.bob_outcomes[y])
                )
            if best is None or total > best:
                best = total
        return best
