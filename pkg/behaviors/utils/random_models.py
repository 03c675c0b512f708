import random
from fractions import Fraction

from ..models import LocalModel, Scenario


def random_distribution(rng, outcomes, max_denominator=64):
    """A random exact distribution over `outcomes` values with a small denominator."""
    denominator = rng.randint(1, max_denominator)
    cuts = sorted(rng.randint(0, denominator) for _ in range(outcomes - 1))
    bounds = [0] + cuts + [denominator]
    return [Fraction(hi - lo, denominator) for lo, hi in zip(bounds, bounds[1:])]


def random_scenario(rng, max_settings=3, max_outcomes=3):
    return Scenario(
        [rng.randint(1, max_outcomes) for _ in range(rng.randint(1, max_settings))],
        [rng.randint(1, max_outcomes) for _ in range(rng.randint(1, max_settings))],
    )


def random_local_model(rng=None, scenario=None, max_settings=3, max_outcomes=3,
                       max_components=4, max_denominator=64):
    """
    Random exact stochastic model, the kind used to exercise the
    determinization and membership round trips.
    """
    rng = rng or random.Random()
    scenario = scenario or random_scenario(rng, max_settings, max_outcomes)
    count = rng.randint(1, max_components)
    weights = random_distribution(rng, count, max_denominator)
    components = [
        (
            weight,
            [random_distribution(rng, n, max_denominator) for n in scenario.alice_outcomes],
            [random_distribution(rng, n, max_denominator) for n in scenario.bob_outcomes],
        )
        for weight in weights
    ]
    return LocalModel(scenario, components)
